#include "hfbs/sysmodel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hfbs {

DiscreteTransferFunction::DiscreteTransferFunction(std::vector<double> numerator,
                                                   std::vector<double> denominator,
                                                   double sample_period)
    : num_(std::move(numerator)), den_(std::move(denominator)), ts_(sample_period) {
    if (num_.empty() || den_.empty())
        throw std::invalid_argument("transfer function: empty coefficient list");
    if (den_.front() != 1.0)
        throw std::invalid_argument("transfer function: denominator must be monic "
                                    "with an explicit leading 1");
    if (num_.size() > den_.size())
        throw std::invalid_argument("transfer function: numerator degree exceeds "
                                    "denominator degree (improper)");
    if (!(ts_ > 0.0))
        throw std::invalid_argument("transfer function: sample period must be positive");
}

DiscreteTransferFunction DiscreteTransferFunction::gain(double b, double sample_period) {
    return DiscreteTransferFunction({b}, {1.0}, sample_period);
}

double DiscreteTransferFunction::dc_gain() const {
    double nv = 0.0, dv = 0.0;
    for (double c : num_) nv = nv + c; // polynomial at z = 1
    for (double c : den_) dv = dv + c;
    return nv / dv;
}

std::vector<double> DiscreteTransferFunction::pole_magnitudes() const {
    const int d = denominator_degree();
    if (d == 0) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) companion(0, i) = -den_[i + 1];
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    std::vector<double> mags(d);
    for (int i = 0; i < d; ++i) mags[i] = std::abs(es.eigenvalues()[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    return mags;
}

bool DiscreteTransferFunction::stable(double margin) const {
    const auto mags = pole_magnitudes();
    return mags.empty() || mags.front() < margin;
}

namespace {

// y[t] = sum_i bp[i] u[t-i] - sum_{i>=1} a[i] y[t-i], bp = numerator padded
// to denominator length (zero initial conditions)
void run_difference_equation(const DiscreteTransferFunction& tf, const double* u,
                             double* y, Eigen::Index len) {
    const auto& a = tf.denominator();
    const int d = tf.denominator_degree();
    const int pad = static_cast<int>(a.size() - tf.numerator().size());
    std::vector<double> bp(a.size(), 0.0);
    std::copy(tf.numerator().begin(), tf.numerator().end(), bp.begin() + pad);
    for (Eigen::Index t = 0; t < len; ++t) {
        double acc = 0.0;
        const int imax = static_cast<int>(std::min<Eigen::Index>(d, t));
        for (int i = 0; i <= imax; ++i) acc += bp[i] * u[t - i];
        for (int i = 1; i <= imax; ++i) acc -= a[i] * y[t - i];
        y[t] = acc;
    }
}

} // namespace

std::vector<double> impulse_response(const DiscreteTransferFunction& tf, int length) {
    if (length < 1) throw std::invalid_argument("impulse_response: length must be >= 1");
    std::vector<double> u(length, 0.0), y(length, 0.0);
    u[0] = 1.0;
    run_difference_equation(tf, u.data(), y.data(), length);
    return y;
}

Eigen::VectorXd filter_signal(const DiscreteTransferFunction& tf,
                              const Eigen::Ref<const Eigen::VectorXd>& u) {
    if (u.size() == 0) throw std::invalid_argument("filter_signal: empty input");
    Eigen::VectorXd y(u.size());
    run_difference_equation(tf, u.data(), y.data(), u.size());
    return y;
}

LiftedMatrix lift(const DiscreteTransferFunction& tf, int E) {
    if (E < 0) throw std::invalid_argument("lift: negative horizon");
    const auto h = impulse_response(tf, E + 1);
    LiftedMatrix G;
    G.entries = Eigen::MatrixXd::Zero(E + 1, E + 1);
    for (int i = 0; i <= E; ++i)
        for (int j = 0; j <= i; ++j) G.entries(i, j) = h[i - j];
    return G;
}

LiftedMatrix lift_fir(const std::vector<double>& taps, int first_tap_index, int E) {
    if (E < 0) throw std::invalid_argument("lift_fir: negative horizon");
    LiftedMatrix G;
    G.entries = Eigen::MatrixXd::Zero(E + 1, E + 1);
    const int ntaps = static_cast<int>(taps.size());
    for (int i = 0; i <= E; ++i)
        for (int j = 0; j <= E; ++j) {
            const int idx = (i - j) - first_tap_index;
            if (idx >= 0 && idx < ntaps) G.entries(i, j) = taps[idx];
        }
    return G;
}

FilteredBasisMatrix filter_basis(const DiscreteTransferFunction& tf,
                                 const Eigen::Ref<const Eigen::MatrixXd>& basis_entries) {
    if (basis_entries.rows() == 0)
        throw std::invalid_argument("filter_basis: empty basis matrix");
    FilteredBasisMatrix out;
    out.entries.resize(basis_entries.rows(), basis_entries.cols());
    for (Eigen::Index j = 0; j < basis_entries.cols(); ++j)
        run_difference_equation(tf, basis_entries.col(j).data(),
                                out.entries.col(j).data(), basis_entries.rows());
    return out;
}

FilteredBasisMatrix filter_basis(const DiscreteTransferFunction& tf,
                                 const BasisMatrix& basis) {
    return filter_basis(tf, basis.entries);
}

HFramePlant::HFramePlant(DiscreteTransferFunction gxx_, DiscreteTransferFunction gyy_,
                         DiscreteTransferFunction gxtheta_, CouplingMode mode)
    : gxx(std::move(gxx_)), gyy(std::move(gyy_)), gxtheta(std::move(gxtheta_)),
      coupling_mode(mode) {
    if (gxx.sample_period() != gyy.sample_period() ||
        gxx.sample_period() != gxtheta.sample_period())
        throw std::invalid_argument("HFramePlant: transfer functions must share one "
                                    "sample period");
}

bool HFramePlant::all_stable() const {
    return gxx.stable() && gyy.stable() && gxtheta.stable();
}

SimulationResult simulate_hframe(const HFramePlant& plant,
                                 const Eigen::Ref<const Eigen::VectorXd>& xdm,
                                 const Eigen::Ref<const Eigen::VectorXd>& ydm,
                                 const Eigen::Ref<const Eigen::VectorXd>& xd) {
    if (xdm.size() != ydm.size() || xdm.size() != xd.size())
        throw std::invalid_argument("simulate_hframe: sequence length mismatch");
    SimulationResult r;
    r.x = filter_signal(plant.gxx, xdm);
    r.theta = filter_signal(plant.gxtheta, xdm);
    r.y = filter_signal(plant.gyy, ydm);
    const Eigen::VectorXd& scale =
        (plant.coupling_mode == CouplingMode::lpv) ? xd : r.x;
    r.y += scale.cwiseProduct(r.theta); // Delta_y
    return r;
}

double racking_accel(double y1dd, double y2dd, double Lg) {
    if (!(Lg > 0.0)) throw std::invalid_argument("racking_accel: Lg must be positive");
    return (y1dd - y2dd) / Lg;
}

} // namespace hfbs
