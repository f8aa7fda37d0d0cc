#pragma once

#include <Eigen/Core>
#include <vector>

#include "hfbs/sysmodel.hpp"
#include "hfbs/trajgen.hpp"

namespace hfbs {

struct ErrorReport {
    Eigen::VectorXd tracking_x; // mm, reference minus output
    Eigen::VectorXd tracking_y;
    Eigen::VectorXd contour;    // mm, distance to the desired path
    Eigen::VectorXd arc_length; // mm along the reference trajectory
    double rms_tracking_x = 0.0;
    double rms_tracking_y = 0.0;
    double rms_contour = 0.0;
};

double rms(const Eigen::Ref<const Eigen::VectorXd>& v);

/// Per-axis elementwise reference minus output.
std::pair<Eigen::VectorXd, Eigen::VectorXd> tracking_error(const Trajectory& reference,
                                                           const Trajectory& output);

/// Minimum Euclidean distance from each output sample to the path
/// polyline (including the closure segment of closed paths).
Eigen::VectorXd contour_error(const PathSpec& path, const Trajectory& output);

/// Cumulative polyline length of the reference trajectory.
Eigen::VectorXd arc_length(const Trajectory& reference);

ErrorReport evaluate_errors(const PathSpec& path, const Trajectory& reference,
                            const Trajectory& output);

/// One row of the coupled-vs-decoupled accuracy/timing sweep.
struct BenchmarkRow {
    int n = 0;
    double rms_contour_coupled = 0.0;   // mm
    double rms_contour_decoupled = 0.0; // mm
    double time_coupled = 0.0;          // s, median pseudo-solve wall time
    double time_decoupled = 0.0;
    bool skipped = false;               // n rounded below m+1
};

/// Runs both LPV solvers at n = round(fraction * E) for each fraction,
/// simulates the plant on the resulting commands and records RMS contour
/// error plus median solve time over `repeats` runs. Accuracy columns are
/// deterministic; fractions rounding below m+1 are reported as skipped.
std::vector<BenchmarkRow> benchmark_sweep(const HFramePlant& plant,
                                          const Trajectory& trajectory,
                                          const PathSpec& path,
                                          const std::vector<double>& n_fractions,
                                          int m, int repeats);

} // namespace hfbs
