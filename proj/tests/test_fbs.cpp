#include <doctest.h>

#include <random>

#include "hfbs/fbs.hpp"
#include "hfbs/metrics.hpp"
#include "hfbs/trajgen.hpp"
#include "oracles.hpp"

using namespace hfbs;

namespace {

HFramePlant biproper_synthetic(CouplingMode mode = CouplingMode::lpv) {
    return synthetic_plant(40.0, 35.0, 30.0, 0.15, 2e-5, 1e-3, mode);
}

Eigen::VectorXd smooth_reference(int count) {
    Eigen::VectorXd r(count);
    for (int k = 0; k < count; ++k) {
        const double t = k * 1e-3;
        r[k] = 10.0 * std::sin(2.0 * M_PI * 3.0 * t) * (1.0 - std::exp(-t / 0.02));
    }
    return r;
}

} // namespace

TEST_CASE("pseudo_solve") {
    SUBCASE("identity returns the rhs") {
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(6, 6);
        const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(6, -1.0, 2.0);
        CHECK((pseudo_solve(I, b) - b).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("single column gives the mean") {
        Eigen::MatrixXd A(2, 1);
        A << 1, 1;
        Eigen::Vector2d b(1, 3);
        CHECK(pseudo_solve(A, b)[0] == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("residual is orthogonal to the column space") {
        std::mt19937 rng(5);
        Eigen::MatrixXd A(50, 20);
        for (int i = 0; i < 50; ++i)
            for (int j = 0; j < 20; ++j) A(i, j) = oracle::random_vector(rng, 1)[0];
        const Eigen::VectorXd b = oracle::random_vector(rng, 50);
        const Eigen::VectorXd x = pseudo_solve(A, b);
        CHECK((A.transpose() * (A * x - b)).norm() < 1e-9 * b.norm());
    }
    SUBCASE("dimension mismatch rejected") {
        CHECK_THROWS_AS(pseudo_solve(Eigen::MatrixXd::Identity(3, 3),
                                     Eigen::VectorXd::Zero(4)),
                        std::invalid_argument);
    }
}

TEST_CASE("solve_standard") {
    const double ts = 1e-3;
    SUBCASE("identity plant with n=E reproduces the reference") {
        const BasisMatrix basis = build_basis_matrix(40, 40, 2);
        const Eigen::VectorXd rd = smooth_reference(41);
        const auto r = solve_standard(DiscreteTransferFunction::gain(1.0, ts), rd, basis);
        CHECK((r.command - rd).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("static gain inversion") {
        const BasisMatrix basis = build_basis_matrix(60, 20, 3);
        const Eigen::VectorXd rd = smooth_reference(61);
        const auto r = solve_standard(DiscreteTransferFunction::gain(2.0, ts), rd, basis);
        CHECK(r.residual_rms < 1e-9);
        CHECK((r.command - 0.5 * rd).cwiseAbs().maxCoeff() < 1e-8);
    }
    SUBCASE("fitted gxx on the rectangle x profile beats no compensation") {
        const DiscreteTransferFunction gxx(
            {0.07632, -0.231, -0.236, -0.0813, -2.193e-13},
            {1, -3.577, 4.774, -2.815, 0.6175, 1.934e-33}, ts);
        const Trajectory ref =
            sample_trajectory(rectangle_path(120.0, 20.0), {150.0, 1e4, 5e7}, ts);
        const int E = static_cast<int>(ref.size()) - 1;
        const auto r = solve_standard(gxx, ref.x, build_basis_matrix(E, 125, 5));
        const double uncomp = rms((ref.x - filter_signal(gxx, ref.x)).eval());
        CHECK(r.residual_rms < uncomp);
    }
}

TEST_CASE("coupled LPV solve") {
    const double ts = 1e-3;
    const auto g1 = DiscreteTransferFunction::gain(1.0, ts);
    const Eigen::VectorXd xd = smooth_reference(120);
    const Eigen::VectorXd yd = 0.5 * smooth_reference(120).reverse();
    const BasisMatrix basis = build_basis_matrix(119, 30, 3);

    SUBCASE("zero racking reduces to two standard solves") {
        HFramePlant plant(g1, g1, DiscreteTransferFunction::gain(0.0, ts),
                          CouplingMode::lpv);
        const auto c = solve_coupled_lpv(plant, xd, yd, basis, basis);
        const auto sx = solve_standard(plant.gxx, xd, basis);
        const auto sy = solve_standard(plant.gyy, yd, basis);
        CHECK((c.xdm - sx.command).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((c.ydm - sy.command).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("zero x reference removes the coupling term") {
        const HFramePlant plant = biproper_synthetic();
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(120);
        const auto c = solve_coupled_lpv(plant, zero, yd, basis, basis);
        const auto sy = solve_standard(plant.gyy, yd, basis);
        CHECK((c.control_points.py - sy.control_points).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("n=E makes both LPV solvers match the analytic inverse") {
    const HFramePlant plant = biproper_synthetic(CouplingMode::lpv);
    const int E = 200;
    Eigen::VectorXd xd = smooth_reference(E + 1);
    Eigen::VectorXd yd(E + 1);
    for (int k = 0; k <= E; ++k) yd[k] = 5.0 * std::cos(2.0 * M_PI * 2.0 * k * 1e-3) - 5.0;

    const auto exact = exact_inverse_reference(plant, xd, yd);
    const BasisMatrix basis = build_basis_matrix(E, E, 2);
    const auto c = solve_coupled_lpv(plant, xd, yd, basis, basis);
    const auto d = solve_decoupled_lpv(plant, xd, yd, basis, basis);

    const double scale = std::max(exact.xdm.cwiseAbs().maxCoeff(),
                                  exact.ydm.cwiseAbs().maxCoeff());
    CHECK((c.xdm - exact.xdm).cwiseAbs().maxCoeff() / scale < 1e-6);
    CHECK((c.ydm - exact.ydm).cwiseAbs().maxCoeff() / scale < 1e-6);
    CHECK((d.xdm - exact.xdm).cwiseAbs().maxCoeff() / scale < 1e-6);
    CHECK((d.ydm - exact.ydm).cwiseAbs().maxCoeff() / scale < 1e-6);
    CHECK((c.xdm - d.xdm).cwiseAbs().maxCoeff() / scale < 1e-6);
    CHECK((c.ydm - d.ydm).cwiseAbs().maxCoeff() / scale < 1e-6);
}

TEST_CASE("exact inverse reference") {
    const double ts = 1e-3;
    const auto g1 = DiscreteTransferFunction::gain(1.0, ts);
    const Eigen::VectorXd xd = smooth_reference(50);
    const Eigen::VectorXd yd = 2.0 * smooth_reference(50);

    SUBCASE("identity plant passes references through") {
        HFramePlant plant(g1, g1, DiscreteTransferFunction::gain(0.0, ts));
        const auto r = exact_inverse_reference(plant, xd, yd);
        CHECK((r.xdm - xd).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((r.ydm - yd).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("pure-gain racking subtracts c*xd^2") {
        const double c = 1e-3;
        HFramePlant plant(g1, g1, DiscreteTransferFunction::gain(c, ts));
        const auto r = exact_inverse_reference(plant, xd, yd);
        const Eigen::VectorXd want = yd - c * xd.cwiseProduct(xd);
        CHECK((r.ydm - want).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("round trip through the lpv plant") {
        std::mt19937 rng(11);
        const HFramePlant plant = biproper_synthetic(CouplingMode::lpv);
        const Eigen::VectorXd rx = oracle::random_vector(rng, 100, 5.0);
        const Eigen::VectorXd ry = oracle::random_vector(rng, 100, 5.0);
        const auto inv = exact_inverse_reference(plant, rx, ry);
        const auto sim = simulate_hframe(plant, inv.xdm, inv.ydm, rx);
        const double scale = std::max(rx.cwiseAbs().maxCoeff(), ry.cwiseAbs().maxCoeff());
        CHECK((sim.x - rx).cwiseAbs().maxCoeff() / scale < 1e-8);
        CHECK((sim.y - ry).cwiseAbs().maxCoeff() / scale < 1e-8);
    }
    SUBCASE("strictly proper plant is reported as singular") {
        const DiscreteTransferFunction strictly({1.0}, {1.0, -0.5}, ts);
        HFramePlant plant(strictly, strictly, g1);
        CHECK_THROWS_AS(exact_inverse_reference(plant, xd, yd), std::runtime_error);
    }
}

TEST_CASE("normal-equations optimality for every solver") {
    const HFramePlant plant = biproper_synthetic();
    const Eigen::VectorXd xd = smooth_reference(150);
    const Eigen::VectorXd yd = 0.7 * smooth_reference(150);
    const BasisMatrix basis = build_basis_matrix(149, 40, 3);

    const Eigen::MatrixXd nxx = filter_basis(plant.gxx, basis).entries;
    const Eigen::MatrixXd nxt = filter_basis(plant.gxtheta, basis).entries;
    const Eigen::MatrixXd nyy = filter_basis(plant.gyy, basis).entries;

    const auto check_orth = [](const Eigen::MatrixXd& A, const Eigen::VectorXd& resid,
                               double scale) {
        CHECK((A.transpose() * resid).norm() < 1e-8 * std::max(scale, 1.0));
    };

    SUBCASE("standard") {
        const auto r = solve_standard(plant.gxx, xd, basis);
        check_orth(nxx, xd - nxx * r.control_points, xd.norm());
    }
    SUBCASE("coupled") {
        const auto r = solve_coupled_lpv(plant, xd, yd, basis, basis);
        Eigen::MatrixXd A(300, 82);
        A.setZero();
        A.topLeftCorner(150, 41) = nxx;
        A.bottomLeftCorner(150, 41) = xd.asDiagonal() * nxt;
        A.bottomRightCorner(150, 41) = nyy;
        Eigen::VectorXd p(82), rhs(300);
        p << r.control_points.px, r.control_points.py;
        rhs << xd, yd;
        check_orth(A, rhs - A * p, rhs.norm());
    }
    SUBCASE("decoupled") {
        const auto r = solve_decoupled_lpv(plant, xd, yd, basis, basis);
        check_orth(nxx, xd - nxx * r.control_points.px, xd.norm());
        const Eigen::VectorXd target =
            yd - xd.cwiseProduct(nxt * r.control_points.px);
        check_orth(nyy, target - nyy * r.control_points.py, target.norm());
    }
}

TEST_CASE("predicted error is non-increasing over nested refinements") {
    const HFramePlant plant = biproper_synthetic();
    const Eigen::VectorXd rd = smooth_reference(201);
    double prev = std::numeric_limits<double>::infinity();
    for (int intervals : {8, 16, 32, 64}) { // knot sets nest when intervals double
        const int n = intervals + 2; // m = 3
        const auto r = solve_standard(plant.gxx, rd, build_basis_matrix(200, n, 3));
        CHECK(r.residual_rms <= prev + 1e-12);
        prev = r.residual_rms;
    }
}

TEST_CASE("zero references give zero control points and commands") {
    const HFramePlant plant = biproper_synthetic();
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(100);
    const BasisMatrix basis = build_basis_matrix(99, 20, 3);
    for (const auto& r : {solve_coupled_lpv(plant, zero, zero, basis, basis),
                          solve_decoupled_lpv(plant, zero, zero, basis, basis)}) {
        CHECK(r.control_points.px.cwiseAbs().maxCoeff() < 1e-12);
        CHECK(r.control_points.py.cwiseAbs().maxCoeff() < 1e-12);
        CHECK(r.xdm.cwiseAbs().maxCoeff() < 1e-12);
        CHECK(r.ydm.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("lpv-mode simulation reproduces the decoupled solver residual") {
    const HFramePlant plant = biproper_synthetic(CouplingMode::lpv);
    const Eigen::VectorXd xd = smooth_reference(180);
    const Eigen::VectorXd yd = 0.4 * smooth_reference(180);
    const BasisMatrix basis = build_basis_matrix(179, 45, 3);
    const auto r = solve_decoupled_lpv(plant, xd, yd, basis, basis);
    const auto sim = simulate_hframe(plant, r.xdm, r.ydm, xd);
    CHECK(rms((yd - sim.y).eval()) == doctest::Approx(r.residual_rms_y).epsilon(1e-8));
    CHECK(rms((xd - sim.x).eval()) == doctest::Approx(r.residual_rms_x).epsilon(1e-8));
}
