#include "hfbs/trajgen.hpp"

#include <cmath>
#include <stdexcept>

namespace hfbs {

void MotionLimits::validate() const {
    if (!(vmax > 0.0) || !(amax > 0.0) || !(jmax > 0.0))
        throw std::invalid_argument("MotionLimits: vmax, amax, jmax must be positive");
}

void PathSpec::validate() const {
    if (waypoints.size() < 2)
        throw std::invalid_argument("PathSpec: need at least 2 waypoints");
    for (size_t i = 1; i < waypoints.size(); ++i)
        if ((waypoints[i] - waypoints[i - 1]).norm() == 0.0)
            throw std::invalid_argument("PathSpec: consecutive waypoints coincide");
}

namespace {

inline int ceil_samples(double t, double Ts) {
    return static_cast<int>(std::ceil(t / Ts - 1e-12));
}

struct PhasePlan {
    int nj = 1; // samples per jerk phase (4 of them)
    int na = 0; // samples per constant-acceleration phase (2 of them)
    int nv = 0; // cruise samples
    double jerk = 0.0;
};

// Continuous 7-phase solution, then phase durations rounded up to whole
// samples and a single jerk magnitude rescaled to land exactly on the
// target. Rounding up can only lower the realized jerk/accel/velocity.
PhasePlan plan_scurve(double d, const MotionLimits& lim, double Ts) {
    double tj, ta;
    if (lim.vmax * lim.jmax < lim.amax * lim.amax) {
        tj = std::sqrt(lim.vmax / lim.jmax); // amax unreachable
        ta = 0.0;
    } else {
        tj = lim.amax / lim.jmax;
        ta = lim.vmax / lim.amax - tj;
    }
    double vp = lim.vmax;
    double tv = d / vp - (2.0 * tj + ta);
    if (tv < 0.0) {
        tv = 0.0;
        const double A = lim.amax * lim.amax / lim.jmax; // velocity where amax is reached
        vp = 0.5 * (-A + std::sqrt(A * A + 4.0 * d * lim.amax));
        if (vp >= A) {
            tj = lim.amax / lim.jmax;
            ta = vp / lim.amax - tj;
        } else {
            vp = std::cbrt(d * d * lim.jmax / 4.0); // jerk-bound triangle
            tj = std::sqrt(vp / lim.jmax);
            ta = 0.0;
        }
    }
    PhasePlan p;
    p.nj = std::max(1, ceil_samples(tj, Ts));
    p.na = std::max(0, ceil_samples(ta, Ts));
    p.nv = std::max(0, ceil_samples(tv, Ts));
    const double t3 = Ts * Ts * Ts;
    p.jerk = d / (static_cast<double>(p.nj) * (p.nj + p.na) *
                  (2.0 * p.nj + p.na + p.nv) * t3);
    return p;
}

} // namespace

std::vector<double> jerk_limited_profile(double distance, const MotionLimits& limits,
                                         double Ts) {
    limits.validate();
    if (!(distance > 0.0))
        throw std::invalid_argument("jerk_limited_profile: distance must be positive");
    if (!(Ts > 0.0))
        throw std::invalid_argument("jerk_limited_profile: sample period must be positive");

    const PhasePlan p = plan_scurve(distance, limits, Ts);
    const int phase_counts[7] = {p.nj, p.na, p.nj, p.nv, p.nj, p.na, p.nj};
    const double phase_jerk[7] = {p.jerk, 0.0, -p.jerk, 0.0, -p.jerk, 0.0, p.jerk};

    std::vector<double> out;
    out.reserve(4 * p.nj + 2 * p.na + p.nv + 3);
    out.push_back(0.0); // one-sample dwell: profile starts at rest
    double s = 0.0, v = 0.0, a = 0.0;
    out.push_back(s);
    for (int ph = 0; ph < 7; ++ph) {
        const double jk = phase_jerk[ph];
        for (int i = 0; i < phase_counts[ph]; ++i) {
            // exact propagation of piecewise-constant jerk across one sample
            s += v * Ts + 0.5 * a * Ts * Ts + jk * Ts * Ts * Ts / 6.0;
            v += a * Ts + 0.5 * jk * Ts * Ts;
            a += jk * Ts;
            out.push_back(std::min(std::max(s, 0.0), distance));
        }
    }
    out.push_back(distance); // dwell at the target
    return out;
}

PathSpec rectangle_path(double length, double width) {
    if (!(length > 0.0) || !(width > 0.0))
        throw std::invalid_argument("rectangle_path: dimensions must be positive");
    PathSpec p;
    p.waypoints = {{0.0, 0.0}, {length, 0.0}, {length, width}, {0.0, width}};
    p.closed = true;
    return p;
}

Trajectory sample_trajectory(const PathSpec& path, const MotionLimits& limits,
                             double Ts) {
    path.validate();
    limits.validate();
    if (!(Ts > 0.0))
        throw std::invalid_argument("sample_trajectory: sample period must be positive");

    std::vector<Eigen::Vector2d> pts = path.waypoints;
    if (path.closed) pts.push_back(path.waypoints.front());

    std::vector<double> xs, ys;
    xs.push_back(pts[0].x());
    ys.push_back(pts[0].y());
    for (size_t e = 0; e + 1 < pts.size(); ++e) {
        const Eigen::Vector2d a = pts[e], b = pts[e + 1];
        const double d = (b - a).norm();
        const Eigen::Vector2d u = (b - a) / d;
        const std::vector<double> prof = jerk_limited_profile(d, limits, Ts);
        for (size_t i = 1; i < prof.size(); ++i) { // skip the duplicated corner
            xs.push_back(a.x() + u.x() * prof[i]);
            ys.push_back(a.y() + u.y() * prof[i]);
        }
    }
    Trajectory t;
    t.x = Eigen::Map<Eigen::VectorXd>(xs.data(), xs.size());
    t.y = Eigen::Map<Eigen::VectorXd>(ys.data(), ys.size());
    t.sample_period = Ts;
    return t;
}

HFramePlant synthetic_plant(double resonance_x_hz, double resonance_y_hz,
                            double resonance_rack_hz, double damping,
                            double rack_gain, double Ts, CouplingMode mode) {
    if (!(Ts > 0.0))
        throw std::invalid_argument("synthetic_plant: sample period must be positive");
    if (!(damping > 0.0) || !(damping < 1.0))
        throw std::invalid_argument("synthetic_plant: damping must be in (0, 1)");
    const double nyquist = 0.5 / Ts;
    auto make_axis = [&](double fn, double dc) {
        if (!(fn > 0.0) || fn >= nyquist)
            throw std::invalid_argument("synthetic_plant: resonance must lie below "
                                        "the Nyquist frequency");
        const double wn = 2.0 * M_PI * fn;
        const double wd = wn * std::sqrt(1.0 - damping * damping);
        const double r = std::exp(-damping * wn * Ts);
        std::vector<double> den = {1.0, -2.0 * r * std::cos(wd * Ts), r * r};
        // double numerator zero inside the unit circle keeps the inverse stable
        const double zero = 0.5;
        std::vector<double> num = {1.0, -2.0 * zero, zero * zero};
        const double den1 = den[0] + den[1] + den[2];
        const double num1 = num[0] + num[1] + num[2];
        const double k = dc * den1 / num1;
        for (double& c : num) c *= k;
        return DiscreteTransferFunction(num, den, Ts);
    };
    return HFramePlant(make_axis(resonance_x_hz, 1.0), make_axis(resonance_y_hz, 1.0),
                       make_axis(resonance_rack_hz, rack_gain), mode);
}

} // namespace hfbs
