#pragma once

#include <Eigen/Core>
#include <string>

#include "hfbs/splines.hpp"
#include "hfbs/sysmodel.hpp"

namespace hfbs {

inline constexpr double kDefaultSvdTol = 1e-10;

/// Minimum-norm least-squares solution via SVD; singular values below
/// tol * sigma_max are treated as zero.
Eigen::VectorXd pseudo_solve(const Eigen::Ref<const Eigen::MatrixXd>& A,
                             const Eigen::Ref<const Eigen::VectorXd>& b,
                             double tol = kDefaultSvdTol);

struct ControlPoints {
    Eigen::VectorXd px;
    Eigen::VectorXd py;
};

enum class MethodTag { standard, coupled_lpv, decoupled_lpv, exact_inverse };

const char* to_string(MethodTag tag);

struct CompensationResult {
    ControlPoints control_points;
    Eigen::VectorXd xdm;      // modified command, N_x * px
    Eigen::VectorXd ydm;      // modified command, N_y * py
    double residual_rms_x = 0.0; // predicted tracking residual, mm
    double residual_rms_y = 0.0;
    double solve_seconds = 0.0;  // wall time of the pseudo-solve(s) only
    MethodTag method = MethodTag::standard;
};

/// Single-axis FBS solve: p* = pinv(filtered basis) * rd, command = N p*.
struct StandardSolveResult {
    Eigen::VectorXd control_points;
    Eigen::VectorXd command;
    Eigen::VectorXd predicted; // filtered-basis reconstruction
    double residual_rms = 0.0;
    double solve_seconds = 0.0;
};

StandardSolveResult solve_standard(const DiscreteTransferFunction& tf,
                                   const Eigen::Ref<const Eigen::VectorXd>& rd,
                                   const BasisMatrix& basis,
                                   double tol = kDefaultSvdTol);

/// Coupled LPV solve: one stacked pseudo-solve of
///   [[Nxx~, 0], [diag(xd) Nxtheta~, Nyy~]] p = [xd; yd].
CompensationResult solve_coupled_lpv(const HFramePlant& plant,
                                     const Eigen::Ref<const Eigen::VectorXd>& xd,
                                     const Eigen::Ref<const Eigen::VectorXd>& yd,
                                     const BasisMatrix& basis_x,
                                     const BasisMatrix& basis_y,
                                     double tol = kDefaultSvdTol);

/// Decoupled sequential approximation: px from the x-axis standard solve,
/// then py = pinv(Nyy~) (yd - diag(xd) Nxtheta~ px).
CompensationResult solve_decoupled_lpv(const HFramePlant& plant,
                                       const Eigen::Ref<const Eigen::VectorXd>& xd,
                                       const Eigen::Ref<const Eigen::VectorXd>& yd,
                                       const BasisMatrix& basis_x,
                                       const BasisMatrix& basis_y,
                                       double tol = kDefaultSvdTol);

/// Analytic inversion of the lifted coupled system:
///   xdm = Gxx^-1 xd,  ydm = Gyy^-1 (yd - diag(xd) Gxtheta Gxx^-1 xd).
/// Requires biproper Gxx and Gyy (nonzero feedthrough); throws otherwise.
struct ExactInverseResult {
    Eigen::VectorXd xdm;
    Eigen::VectorXd ydm;
};

ExactInverseResult exact_inverse_reference(const HFramePlant& plant,
                                           const Eigen::Ref<const Eigen::VectorXd>& xd,
                                           const Eigen::Ref<const Eigen::VectorXd>& yd);

} // namespace hfbs
