#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "hfbs/metrics.hpp"
#include "hfbs/sysmodel.hpp"
#include "hfbs/trajgen.hpp"

namespace hfbs {

/// Full-precision scientific formatting (%.17e) so values round-trip
/// bit-exactly through the file pipeline.
std::string format_full(double v);

/// CSV with header `t,x,y` (seconds, mm).
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

/// CSV with header `t,xdm,ydm`.
void write_command_csv(const std::string& path, const Trajectory& commands);
Trajectory read_command_csv(const std::string& path);

/// CSV with header `t,x,y,theta`.
void write_output_csv(const std::string& path, const SimulationResult& out,
                      double sample_period);
struct OutputSeries {
    Trajectory traj;
    Eigen::VectorXd theta;
};
OutputSeries read_output_csv(const std::string& path);

/// CSV with header `t,arclen,ex,ey,contour`.
void write_error_csv(const std::string& path, const ErrorReport& report,
                     double sample_period);

/// CSV with header `n,rms_coupled_mm,rms_decoupled_mm,time_coupled_s,time_decoupled_s`.
void write_benchmark_csv(const std::string& path,
                         const std::vector<BenchmarkRow>& rows);

/// Path file: one `x,y` pair per line, optional leading `closed` flag line.
PathSpec read_path_file(const std::string& path);
void write_path_file(const std::string& path, const PathSpec& spec);

} // namespace hfbs
