#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hfbs/sysmodel.hpp"

namespace hfbs {

/// Pole-magnitude summary produced whenever a plant is loaded.
struct PlantStabilityReport {
    std::vector<double> poles_gxx;
    std::vector<double> poles_gyy;
    std::vector<double> poles_gxtheta;
    bool all_stable = false;

    std::string summary() const;
};

struct LoadedPlant {
    HFramePlant plant;
    PlantStabilityReport stability;
    bool synthetic = false;
};

/// Parses a plant config. Coefficient form (highest power first, monic
/// denominator with explicit leading 1):
///
///   ts = 0.001
///   gxx.b = 0.07632 -0.231 ...
///   gxx.a = 1 -3.577 ...
///   gyy.b = ...        gyy.a = ...
///   gxtheta.b = ...    gxtheta.a = ...
///
/// Synthetic form:
///
///   type = synthetic
///   ts = 0.001
///   resonance_x_hz = 40   resonance_y_hz = 35   resonance_rack_hz = 30
///   damping = 0.15        rack_gain = 2e-5
///
/// '#' starts a comment. Throws std::runtime_error with a line number on
/// parse errors.
LoadedPlant load_plant_config(const std::string& path,
                              CouplingMode mode = CouplingMode::nonlinear);
LoadedPlant parse_plant_config(std::istream& in, const std::string& name,
                               CouplingMode mode = CouplingMode::nonlinear);

PlantStabilityReport stability_report(const HFramePlant& plant);

} // namespace hfbs
