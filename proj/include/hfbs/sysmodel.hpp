#pragma once

#include <Eigen/Core>
#include <vector>

#include "hfbs/splines.hpp"

namespace hfbs {

/// Rational discrete-time filter
///   G(z) = (b_q z^q + ... + b_0) / (z^d + a_{d-1} z^{d-1} + ... + a_0)
/// stored highest power first with a monic denominator (explicit leading 1).
/// Proper or biproper (q <= d). Filtering always starts from zero initial
/// conditions.
class DiscreteTransferFunction {
public:
    DiscreteTransferFunction(std::vector<double> numerator,
                             std::vector<double> denominator,
                             double sample_period);

    /// Pure gain b with unit sample period denominator [1].
    static DiscreteTransferFunction gain(double b, double sample_period);

    const std::vector<double>& numerator() const { return num_; }
    const std::vector<double>& denominator() const { return den_; }
    double sample_period() const { return ts_; }
    int numerator_degree() const { return static_cast<int>(num_.size()) - 1; }
    int denominator_degree() const { return static_cast<int>(den_.size()) - 1; }

    /// Nonzero direct feedthrough, i.e. q == d.
    bool biproper() const { return num_.size() == den_.size(); }
    double feedthrough() const { return biproper() ? num_.front() : 0.0; }

    double dc_gain() const;

    /// Magnitudes of the denominator roots (companion-matrix eigenvalues),
    /// sorted descending. Empty for a static gain.
    std::vector<double> pole_magnitudes() const;
    bool stable(double margin = 1.0) const;

private:
    std::vector<double> num_; // b_q .. b_0
    std::vector<double> den_; // 1, a_{d-1} .. a_0
    double ts_;
};

/// First `length` samples of the response to a unit pulse at time 0.
std::vector<double> impulse_response(const DiscreteTransferFunction& tf, int length);

/// Difference-equation filtering with zero initial conditions; output has
/// the same length as the input.
Eigen::VectorXd filter_signal(const DiscreteTransferFunction& tf,
                              const Eigen::Ref<const Eigen::VectorXd>& u);

/// Finite-horizon Toeplitz matrix of a filter: multiplying by an input
/// vector equals filtering with zero initial conditions. Lower triangular
/// for causal sources.
struct LiftedMatrix {
    Eigen::MatrixXd entries; // (E+1) x (E+1)
};

LiftedMatrix lift(const DiscreteTransferFunction& tf, int E);

/// Toeplitz lift of a raw FIR kernel taps[i] = p_{first_tap_index + i};
/// negative first_tap_index admits noncausal kernels, filling entries
/// above the diagonal.
LiftedMatrix lift_fir(const std::vector<double>& taps, int first_tap_index, int E);

/// Filtered B-splines matrix: each column of the basis run through the
/// filter (equivalently the product of the lifted matrix with N).
struct FilteredBasisMatrix {
    Eigen::MatrixXd entries; // (E+1) x (n+1)
};

FilteredBasisMatrix filter_basis(const DiscreteTransferFunction& tf,
                                 const BasisMatrix& basis);
FilteredBasisMatrix filter_basis(const DiscreteTransferFunction& tf,
                                 const Eigen::Ref<const Eigen::MatrixXd>& basis_entries);

/// How the parasitic y deviation is formed from the racking angle:
/// nonlinear uses the simulated x output, lpv the x reference.
enum class CouplingMode { nonlinear, lpv };

/// The coupled H-frame model: x = Gxx*xdm, theta = Gxtheta*xdm,
/// y = Gyy*ydm + Delta_y with Delta_y(k) = x(k)*theta(k) (nonlinear) or
/// xd(k)*theta(k) (lpv). Gxtheta maps mm of x command to rad.
struct HFramePlant {
    DiscreteTransferFunction gxx;
    DiscreteTransferFunction gyy;
    DiscreteTransferFunction gxtheta;
    CouplingMode coupling_mode = CouplingMode::nonlinear;

    HFramePlant(DiscreteTransferFunction gxx_, DiscreteTransferFunction gyy_,
                DiscreteTransferFunction gxtheta_,
                CouplingMode mode = CouplingMode::nonlinear);

    double sample_period() const { return gxx.sample_period(); }
    bool all_stable() const;
};

/// Uniformly sampled two-axis position series (mm, seconds).
struct Trajectory {
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    double sample_period = 0.0;

    Eigen::Index size() const { return x.size(); }
};

struct SimulationResult {
    Eigen::VectorXd x;     // mm
    Eigen::VectorXd y;     // mm
    Eigen::VectorXd theta; // rad
};

SimulationResult simulate_hframe(const HFramePlant& plant,
                                 const Eigen::Ref<const Eigen::VectorXd>& xdm,
                                 const Eigen::Ref<const Eigen::VectorXd>& ydm,
                                 const Eigen::Ref<const Eigen::VectorXd>& xd);

/// Racking angular acceleration from the two bridge-end accelerations:
/// (y1dd - y2dd) / Lg. Requires Lg > 0.
double racking_accel(double y1dd, double y2dd, double Lg);

} // namespace hfbs
