#include <doctest.h>

#include <random>

#include "hfbs/metrics.hpp"
#include "hfbs/plant_config.hpp"
#include "hfbs/sysmodel.hpp"
#include "hfbs/trajgen.hpp"
#include "oracles.hpp"

using namespace hfbs;

namespace {

const std::vector<double> kGxxNum{0.07632, -0.231, -0.236, -0.0813, -2.193e-13};
const std::vector<double> kGxxDen{1, -3.577, 4.774, -2.815, 0.6175, 1.934e-33};

DiscreteTransferFunction table_gxx() { return {kGxxNum, kGxxDen, 1e-3}; }

HFramePlant default_synthetic(CouplingMode mode = CouplingMode::nonlinear) {
    return synthetic_plant(40.0, 35.0, 30.0, 0.15, 2e-5, 1e-3, mode);
}

Trajectory paper_rectangle() {
    return sample_trajectory(rectangle_path(120.0, 20.0), {150.0, 1e4, 5e7}, 1e-3);
}

} // namespace

TEST_CASE("transfer function construction rules") {
    CHECK_THROWS_AS(DiscreteTransferFunction({1.0}, {2.0, 1.0}, 1e-3),
                    std::invalid_argument); // not monic
    CHECK_THROWS_AS(DiscreteTransferFunction({1.0, 0.0}, {1.0}, 1e-3),
                    std::invalid_argument); // improper
    CHECK_THROWS_AS(DiscreteTransferFunction({1.0}, {1.0}, 0.0),
                    std::invalid_argument); // bad Ts
    const auto tf = DiscreteTransferFunction::gain(2.0, 1e-3);
    CHECK(tf.biproper());
    CHECK(tf.dc_gain() == 2.0);
}

TEST_CASE("impulse responses") {
    const double ts = 1e-3;
    SUBCASE("pure gain") {
        const auto h = impulse_response(DiscreteTransferFunction::gain(1.0, ts), 5);
        CHECK(h == std::vector<double>{1, 0, 0, 0, 0});
    }
    SUBCASE("unit delay") {
        const DiscreteTransferFunction delay({1.0}, {1.0, 0.0}, ts);
        CHECK(impulse_response(delay, 4) == std::vector<double>{0, 1, 0, 0});
    }
    SUBCASE("1/(z-0.5) long division") {
        const DiscreteTransferFunction tf({1.0}, {1.0, -0.5}, ts);
        const auto h = impulse_response(tf, 5);
        const std::vector<double> want{0, 1, 0.5, 0.25, 0.125};
        for (int i = 0; i < 5; ++i) CHECK(h[i] == doctest::Approx(want[i]).epsilon(1e-15));
    }
}

TEST_CASE("lifting a noncausal FIR reproduces the appendix matrix") {
    const std::vector<double> p{-0.3, 0.1, 1.0, 0.4, -0.2}; // p_{-2}..p_{2}
    const LiftedMatrix G = lift_fir(p, -2, 2);
    Eigen::Matrix3d want;
    want << p[2], p[1], p[0],
            p[3], p[2], p[1],
            p[4], p[3], p[2];
    CHECK((G.entries - want).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lift of a pure gain is the identity") {
    const LiftedMatrix G = lift(DiscreteTransferFunction::gain(1.0, 1e-3), 4);
    CHECK((G.entries - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lifted product equals difference-equation filtering") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        const auto tf = oracle::random_stable_tf(rng, 6, trial % 2 == 0, 1e-3);
        const Eigen::VectorXd u = oracle::random_vector(rng, 50);
        const Eigen::VectorXd via_lift = lift(tf, 49).entries * u;
        const Eigen::VectorXd via_rec = filter_signal(tf, u);
        const double scale = std::max(1e-30, via_rec.cwiseAbs().maxCoeff());
        CHECK((via_lift - via_rec).cwiseAbs().maxCoeff() / scale < 1e-10);
    }
}

TEST_CASE("filter_signal basics") {
    const double ts = 1e-3;
    Eigen::Vector3d ones(1, 1, 1);
    CHECK(filter_signal(DiscreteTransferFunction::gain(2.0, ts), ones) ==
          Eigen::Vector3d(2, 2, 2));
    Eigen::Vector3d u(3, 5, 7);
    const DiscreteTransferFunction delay({1.0}, {1.0, 0.0}, ts);
    CHECK(filter_signal(delay, u) == Eigen::Vector3d(0, 3, 5));
}

TEST_CASE("fitted gxx on a unit step: recursion equals lifted product") {
    const auto tf = table_gxx();
    const Eigen::VectorXd step = Eigen::VectorXd::Ones(120);
    const Eigen::VectorXd a = filter_signal(tf, step);
    const Eigen::VectorXd b = lift(tf, 119).entries * step;
    CHECK((a - b).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("filter linearity") {
    std::mt19937 rng(7);
    const auto tf = oracle::random_stable_tf(rng, 5, true, 1e-3);
    const Eigen::VectorXd u = oracle::random_vector(rng, 80);
    const Eigen::VectorXd v = oracle::random_vector(rng, 80);
    const Eigen::VectorXd lhs = filter_signal(tf, (2.5 * u - 1.25 * v).eval());
    const Eigen::VectorXd rhs = 2.5 * filter_signal(tf, u) - 1.25 * filter_signal(tf, v);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() /
              std::max(1e-30, rhs.cwiseAbs().maxCoeff()) <
          1e-10);
}

TEST_CASE("lifted matrices are Toeplitz and causal") {
    std::mt19937 rng(99);
    const auto tf = oracle::random_stable_tf(rng, 4, false, 1e-3);
    const LiftedMatrix G = lift(tf, 30);
    for (int i = 0; i <= 30; ++i)
        for (int j = 0; j <= 30; ++j) {
            if (j > i) CHECK(G.entries(i, j) == 0.0);
            if (i > 0 && j > 0) CHECK(G.entries(i, j) == G.entries(i - 1, j - 1));
        }
}

TEST_CASE("filter_basis") {
    const BasisMatrix basis = build_basis_matrix(30, 10, 3);
    const double ts = 1e-3;
    SUBCASE("gain 1 returns the basis") {
        const auto f = filter_basis(DiscreteTransferFunction::gain(1.0, ts), basis);
        CHECK((f.entries - basis.entries).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("unit delay shifts rows down") {
        const DiscreteTransferFunction delay({1.0}, {1.0, 0.0}, ts);
        const auto f = filter_basis(delay, basis);
        CHECK(f.entries.row(0).cwiseAbs().maxCoeff() == 0.0);
        CHECK((f.entries.bottomRows(30) - basis.entries.topRows(30))
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }
    SUBCASE("column recursion equals lifted product") {
        std::mt19937 rng(3);
        const auto tf = oracle::random_stable_tf(rng, 5, true, ts);
        const auto f = filter_basis(tf, basis);
        const Eigen::MatrixXd want = lift(tf, 30).entries * basis.entries;
        CHECK((f.entries - want).cwiseAbs().maxCoeff() /
                  want.cwiseAbs().maxCoeff() <
              1e-10);
    }
}

TEST_CASE("simulate_hframe with pure gains") {
    const double ts = 1e-3;
    const auto g1 = DiscreteTransferFunction::gain(1.0, ts);
    SUBCASE("racking algebra in lpv mode") {
        HFramePlant plant(g1, g1, DiscreteTransferFunction::gain(1e-3, ts),
                          CouplingMode::lpv);
        const Eigen::VectorXd xdm = Eigen::VectorXd::Constant(10, 100.0);
        const Eigen::VectorXd ydm = Eigen::VectorXd::Zero(10);
        const auto r = simulate_hframe(plant, xdm, ydm, xdm);
        CHECK(r.theta[5] == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(r.y[5] == doctest::Approx(10.0).epsilon(1e-15));
        CHECK(r.x[5] == doctest::Approx(100.0).epsilon(1e-15));
    }
    SUBCASE("zero racking gain decouples the axes") {
        HFramePlant plant(g1, g1, DiscreteTransferFunction::gain(0.0, ts));
        const Eigen::VectorXd xdm = Eigen::VectorXd::Constant(8, 50.0);
        const Eigen::VectorXd ydm = Eigen::VectorXd::LinSpaced(8, 0.0, 7.0);
        const auto r = simulate_hframe(plant, xdm, ydm, xdm);
        CHECK((r.y - ydm).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("length mismatch rejected") {
        HFramePlant plant(g1, g1, g1);
        CHECK_THROWS_AS(simulate_hframe(plant, Eigen::VectorXd::Zero(3),
                                        Eigen::VectorXd::Zero(4),
                                        Eigen::VectorXd::Zero(3)),
                        std::invalid_argument);
    }
}

TEST_CASE("uncompensated rectangle shows racking in y during the first x edge") {
    const HFramePlant plant = default_synthetic();
    const Trajectory ref = paper_rectangle();
    const auto r = simulate_hframe(plant, ref.x, ref.y, ref.x);
    // the first edge is pure x motion, so any y deviation there is Delta_y
    const int first_edge = 800;
    const double ey = rms((ref.y.head(first_edge) - r.y.head(first_edge)).eval());
    CHECK(ey > 0.05);
    // regression pin for the shipped synthetic plant
    CHECK(ey == doctest::Approx(0.1248189).epsilon(0.02));
}

TEST_CASE("lpv and nonlinear coupling stay close on the rectangle") {
    const Trajectory ref = paper_rectangle();
    const auto nl = simulate_hframe(default_synthetic(CouplingMode::nonlinear), ref.x,
                                    ref.y, ref.x);
    const auto lp = simulate_hframe(default_synthetic(CouplingMode::lpv), ref.x, ref.y,
                                    ref.x);
    const Eigen::VectorXd dy_nl = nl.y - filter_signal(default_synthetic().gyy, ref.y);
    const Eigen::VectorXd dy_lpv = lp.y - filter_signal(default_synthetic().gyy, ref.y);
    const double ratio =
        (dy_lpv - dy_nl).cwiseAbs().maxCoeff() / dy_nl.cwiseAbs().maxCoeff();
    CHECK(ratio < 0.1);
}

TEST_CASE("racking_accel") {
    CHECK(racking_accel(2.0, 1.0, 0.5) == 2.0);
    CHECK(racking_accel(5.0, 5.0, 123.4) == 0.0);
    CHECK(racking_accel(-1.0, 1.0, 2.0) == -1.0);
    CHECK_THROWS_AS(racking_accel(1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(racking_accel(1.0, 0.0, -2.0), std::invalid_argument);
}

TEST_CASE("fitted transfer functions are unstable as printed") {
    // spot-check of the pole magnitudes the loader reports
    CHECK(table_gxx().pole_magnitudes().front() == doctest::Approx(1.0687).epsilon(1e-3));
    CHECK_FALSE(table_gxx().stable());
}

TEST_CASE("plants demand one shared sample period") {
    const auto a = DiscreteTransferFunction::gain(1.0, 1e-3);
    const auto b = DiscreteTransferFunction::gain(1.0, 2e-3);
    CHECK_THROWS_AS(HFramePlant(a, a, b), std::invalid_argument);
}
