#pragma once

#include <Eigen/Core>
#include <vector>

#include "hfbs/sysmodel.hpp"

namespace hfbs {

struct MotionLimits {
    double vmax = 0.0; // mm/s
    double amax = 0.0; // mm/s^2
    double jmax = 0.0; // mm/s^3

    void validate() const;
};

/// Polyline path in mm. Closed paths are traversed back to the first
/// waypoint.
struct PathSpec {
    std::vector<Eigen::Vector2d> waypoints;
    bool closed = false;

    void validate() const; // >= 2 waypoints, consecutive waypoints distinct
};

/// Rest-to-rest 7-phase S-curve displacement profile from 0 to distance,
/// sampled at Ts. Phase durations are whole sample counts and the jerk
/// magnitude is rescaled so the profile lands exactly on the target with
/// zero end velocity and acceleration; limits are never exceeded. The
/// first and last samples are duplicated (one-sample dwell at rest).
std::vector<double> jerk_limited_profile(double distance, const MotionLimits& limits,
                                         double Ts);

/// Closed counterclockwise rectangle from (0,0): (0,0) (length,0)
/// (length,width) (0,width).
PathSpec rectangle_path(double length, double width);

/// Concatenated per-edge jerk-limited profiles with a full stop at each
/// waypoint, each edge projected onto its direction.
Trajectory sample_trajectory(const PathSpec& path, const MotionLimits& limits,
                             double Ts);

/// Synthetic H-frame plant for simulation studies: each axis a stable,
/// biproper, minimum-phase second-order resonator with unit dc gain
/// (rack_gain for the racking channel). Poles from z = exp(s*Ts), double
/// numerator zero at z = 0.5, gain normalized at z = 1.
HFramePlant synthetic_plant(double resonance_x_hz, double resonance_y_hz,
                            double resonance_rack_hz, double damping,
                            double rack_gain, double Ts,
                            CouplingMode mode = CouplingMode::nonlinear);

} // namespace hfbs
