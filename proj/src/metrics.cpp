#include "hfbs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hfbs/fbs.hpp"

namespace hfbs {

double rms(const Eigen::Ref<const Eigen::VectorXd>& v) {
    return v.size() ? std::sqrt(v.squaredNorm() / v.size()) : 0.0;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> tracking_error(const Trajectory& reference,
                                                           const Trajectory& output) {
    if (reference.size() != output.size())
        throw std::invalid_argument("tracking_error: trajectory length mismatch");
    return {reference.x - output.x, reference.y - output.y};
}

namespace {

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

} // namespace

Eigen::VectorXd contour_error(const PathSpec& path, const Trajectory& output) {
    path.validate();
    std::vector<Eigen::Vector2d> pts = path.waypoints;
    if (path.closed) pts.push_back(path.waypoints.front());

    Eigen::VectorXd err(output.size());
    for (Eigen::Index k = 0; k < output.size(); ++k) {
        const Eigen::Vector2d p(output.x[k], output.y[k]);
        double best = std::numeric_limits<double>::infinity();
        for (size_t s = 0; s + 1 < pts.size(); ++s)
            best = std::min(best, point_segment_distance(p, pts[s], pts[s + 1]));
        err[k] = best;
    }
    return err;
}

Eigen::VectorXd arc_length(const Trajectory& reference) {
    Eigen::VectorXd s(reference.size());
    if (reference.size() == 0) return s;
    s[0] = 0.0;
    for (Eigen::Index k = 1; k < reference.size(); ++k)
        s[k] = s[k - 1] + std::hypot(reference.x[k] - reference.x[k - 1],
                                     reference.y[k] - reference.y[k - 1]);
    return s;
}

ErrorReport evaluate_errors(const PathSpec& path, const Trajectory& reference,
                            const Trajectory& output) {
    ErrorReport rep;
    std::tie(rep.tracking_x, rep.tracking_y) = tracking_error(reference, output);
    rep.contour = contour_error(path, output);
    rep.arc_length = arc_length(reference);
    rep.rms_tracking_x = rms(rep.tracking_x);
    rep.rms_tracking_y = rms(rep.tracking_y);
    rep.rms_contour = rms(rep.contour);
    return rep;
}

std::vector<BenchmarkRow> benchmark_sweep(const HFramePlant& plant,
                                          const Trajectory& trajectory,
                                          const PathSpec& path,
                                          const std::vector<double>& n_fractions,
                                          int m, int repeats) {
    if (repeats < 1)
        throw std::invalid_argument("benchmark_sweep: repeats must be >= 1");
    const int E = static_cast<int>(trajectory.size()) - 1;
    std::vector<BenchmarkRow> rows;
    rows.reserve(n_fractions.size());
    for (double f : n_fractions) {
        if (!(f > 0.0) || f > 1.0)
            throw std::invalid_argument("benchmark_sweep: fractions must lie in (0, 1]");
        BenchmarkRow row;
        row.n = static_cast<int>(std::llround(f * E));
        if (row.n < m + 1) {
            row.skipped = true;
            rows.push_back(row);
            continue;
        }
        const BasisMatrix basis = build_basis_matrix(E, row.n, m);
        std::vector<double> tc(repeats), td(repeats);
        CompensationResult coupled, decoupled;
        for (int r = 0; r < repeats; ++r) {
            coupled = solve_coupled_lpv(plant, trajectory.x, trajectory.y, basis, basis);
            decoupled =
                solve_decoupled_lpv(plant, trajectory.x, trajectory.y, basis, basis);
            tc[r] = coupled.solve_seconds;
            td[r] = decoupled.solve_seconds;
        }
        std::sort(tc.begin(), tc.end());
        std::sort(td.begin(), td.end());
        row.time_coupled = tc[repeats / 2];
        row.time_decoupled = td[repeats / 2];
        const SimulationResult sc =
            simulate_hframe(plant, coupled.xdm, coupled.ydm, trajectory.x);
        const SimulationResult sd =
            simulate_hframe(plant, decoupled.xdm, decoupled.ydm, trajectory.x);
        Trajectory oc{sc.x, sc.y, trajectory.sample_period};
        Trajectory od{sd.x, sd.y, trajectory.sample_period};
        row.rms_contour_coupled = rms(contour_error(path, oc));
        row.rms_contour_decoupled = rms(contour_error(path, od));
        rows.push_back(row);
    }
    return rows;
}

} // namespace hfbs
