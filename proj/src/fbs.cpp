#include "hfbs/fbs.hpp"

#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace hfbs {

namespace {

double rms_of(const Eigen::VectorXd& v) {
    return v.size() ? std::sqrt(v.squaredNorm() / v.size()) : 0.0;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

const char* to_string(MethodTag tag) {
    switch (tag) {
        case MethodTag::standard: return "standard";
        case MethodTag::coupled_lpv: return "coupled_lpv";
        case MethodTag::decoupled_lpv: return "decoupled_lpv";
        case MethodTag::exact_inverse: return "exact_inverse";
    }
    return "unknown";
}

Eigen::VectorXd pseudo_solve(const Eigen::Ref<const Eigen::MatrixXd>& A,
                             const Eigen::Ref<const Eigen::VectorXd>& b, double tol) {
    if (A.rows() != b.size())
        throw std::invalid_argument("pseudo_solve: dimension mismatch");
    if (A.rows() == 0 || A.cols() == 0)
        throw std::invalid_argument("pseudo_solve: empty matrix");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(tol);
    return svd.solve(b);
}

StandardSolveResult solve_standard(const DiscreteTransferFunction& tf,
                                   const Eigen::Ref<const Eigen::VectorXd>& rd,
                                   const BasisMatrix& basis, double tol) {
    if (basis.entries.rows() != rd.size())
        throw std::invalid_argument("solve_standard: basis rows must match the "
                                    "reference length");
    const FilteredBasisMatrix filtered = filter_basis(tf, basis);
    StandardSolveResult r;
    const auto t0 = Clock::now();
    r.control_points = pseudo_solve(filtered.entries, rd, tol);
    r.solve_seconds = seconds_since(t0);
    r.command = basis.entries * r.control_points;
    r.predicted = filtered.entries * r.control_points;
    r.residual_rms = rms_of((rd - r.predicted).eval());
    return r;
}

CompensationResult solve_coupled_lpv(const HFramePlant& plant,
                                     const Eigen::Ref<const Eigen::VectorXd>& xd,
                                     const Eigen::Ref<const Eigen::VectorXd>& yd,
                                     const BasisMatrix& basis_x,
                                     const BasisMatrix& basis_y, double tol) {
    const Eigen::Index E1 = xd.size();
    if (yd.size() != E1 || basis_x.entries.rows() != E1 || basis_y.entries.rows() != E1)
        throw std::invalid_argument("solve_coupled_lpv: dimension mismatch");
    const Eigen::Index nx1 = basis_x.entries.cols();
    const Eigen::Index ny1 = basis_y.entries.cols();

    const Eigen::MatrixXd nxx = filter_basis(plant.gxx, basis_x).entries;
    const Eigen::MatrixXd nxt = filter_basis(plant.gxtheta, basis_x).entries;
    const Eigen::MatrixXd nyy = filter_basis(plant.gyy, basis_y).entries;

    // stacked block system [[Nxx~, 0], [D Nxt~, Nyy~]], solved in one shot
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * E1, nx1 + ny1);
    A.topLeftCorner(E1, nx1) = nxx;
    A.bottomLeftCorner(E1, nx1) = xd.asDiagonal() * nxt;
    A.bottomRightCorner(E1, ny1) = nyy;
    Eigen::VectorXd rhs(2 * E1);
    rhs << xd, yd;

    CompensationResult r;
    r.method = MethodTag::coupled_lpv;
    const auto t0 = Clock::now();
    const Eigen::VectorXd p = pseudo_solve(A, rhs, tol);
    r.solve_seconds = seconds_since(t0);
    r.control_points.px = p.head(nx1);
    r.control_points.py = p.tail(ny1);
    r.xdm = basis_x.entries * r.control_points.px;
    r.ydm = basis_y.entries * r.control_points.py;
    r.residual_rms_x = rms_of((xd - nxx * r.control_points.px).eval());
    r.residual_rms_y = rms_of(
        (yd - A.bottomLeftCorner(E1, nx1) * r.control_points.px - nyy * r.control_points.py)
            .eval());
    return r;
}

CompensationResult solve_decoupled_lpv(const HFramePlant& plant,
                                       const Eigen::Ref<const Eigen::VectorXd>& xd,
                                       const Eigen::Ref<const Eigen::VectorXd>& yd,
                                       const BasisMatrix& basis_x,
                                       const BasisMatrix& basis_y, double tol) {
    const Eigen::Index E1 = xd.size();
    if (yd.size() != E1 || basis_x.entries.rows() != E1 || basis_y.entries.rows() != E1)
        throw std::invalid_argument("solve_decoupled_lpv: dimension mismatch");

    const Eigen::MatrixXd nxx = filter_basis(plant.gxx, basis_x).entries;
    const Eigen::MatrixXd nxt = filter_basis(plant.gxtheta, basis_x).entries;
    const Eigen::MatrixXd nyy = filter_basis(plant.gyy, basis_y).entries;

    CompensationResult r;
    r.method = MethodTag::decoupled_lpv;
    const auto t0 = Clock::now();
    r.control_points.px = pseudo_solve(nxx, xd, tol);
    const Eigen::VectorXd racking = xd.cwiseProduct(nxt * r.control_points.px);
    r.control_points.py = pseudo_solve(nyy, yd - racking, tol);
    r.solve_seconds = seconds_since(t0);
    r.xdm = basis_x.entries * r.control_points.px;
    r.ydm = basis_y.entries * r.control_points.py;
    r.residual_rms_x = rms_of((xd - nxx * r.control_points.px).eval());
    r.residual_rms_y = rms_of((yd - racking - nyy * r.control_points.py).eval());
    return r;
}

ExactInverseResult exact_inverse_reference(const HFramePlant& plant,
                                           const Eigen::Ref<const Eigen::VectorXd>& xd,
                                           const Eigen::Ref<const Eigen::VectorXd>& yd) {
    if (xd.size() != yd.size())
        throw std::invalid_argument("exact_inverse_reference: length mismatch");
    if (xd.size() == 0)
        throw std::invalid_argument("exact_inverse_reference: empty references");
    if (!plant.gxx.biproper() || plant.gxx.feedthrough() == 0.0 ||
        !plant.gyy.biproper() || plant.gyy.feedthrough() == 0.0)
        throw std::runtime_error("exact_inverse_reference: lifted matrix is singular "
                                 "(strictly proper axis model has zero feedthrough)");
    const int E = static_cast<int>(xd.size()) - 1;
    const Eigen::MatrixXd gxx = lift(plant.gxx, E).entries;
    const Eigen::MatrixXd gyy = lift(plant.gyy, E).entries;

    ExactInverseResult r;
    r.xdm = gxx.triangularView<Eigen::Lower>().solve(xd);
    const Eigen::VectorXd theta = filter_signal(plant.gxtheta, r.xdm);
    r.ydm = gyy.triangularView<Eigen::Lower>().solve(
        (yd - xd.cwiseProduct(theta)).eval());
    return r;
}

} // namespace hfbs
