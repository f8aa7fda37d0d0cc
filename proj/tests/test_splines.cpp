#include <doctest.h>

#include <random>

#include "hfbs/splines.hpp"
#include "oracles.hpp"

using namespace hfbs;

TEST_CASE("degree-0 basis is the span indicator") {
    KnotVector kv{{0.0, 0.2, 0.4, 0.6, 1.0}, 0, KnotMode::normalized};
    CHECK(eval_basis(1, 0, 0.3, kv) == 1.0);
    CHECK(eval_basis(1, 0, 0.5, kv) == 0.0);
    CHECK(eval_basis(1, 0, 0.2, kv) == 1.0);  // left-closed
    CHECK(eval_basis(1, 0, 0.4, kv) == 0.0);  // right-open interior
}

TEST_CASE("linear hats peak at 1") {
    const KnotVector kv = build_normalized_knots(1, 3);
    // interior knots at 1/3 and 2/3; hat 1 peaks at 1/3
    CHECK(eval_basis(1, 1, 1.0 / 3.0, kv) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("partition of unity at a single parameter") {
    const KnotVector kv = build_normalized_knots(3, 10);
    double sum = 0.0;
    for (int j = 0; j <= 10; ++j) sum += eval_basis(j, 3, 0.37, kv);
    CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("eval_basis matches the naive recursion oracle") {
    const KnotVector kv = build_normalized_knots(2, 4);
    for (double xi : {0.0, 0.1, 0.5, 0.77, 1.0})
        for (int j = 0; j <= 4; ++j)
            CHECK(eval_basis(j, 2, xi, kv) ==
                  doctest::Approx(oracle::naive_basis(j, 2, xi, kv.values))
                      .epsilon(1e-14));
}

TEST_CASE("normalized knot vectors") {
    SUBCASE("m=2 n=4") {
        const KnotVector kv = build_normalized_knots(2, 4);
        const std::vector<double> want{0, 0, 0, 1.0 / 3.0, 2.0 / 3.0, 1, 1, 1};
        REQUIRE(kv.values.size() == want.size());
        for (size_t i = 0; i < want.size(); ++i)
            CHECK(kv.values[i] == doctest::Approx(want[i]).epsilon(1e-15));
    }
    SUBCASE("m=1 n=1") {
        CHECK(build_normalized_knots(1, 1).values == std::vector<double>{0, 0, 1, 1});
    }
    SUBCASE("m=5 n=5 has no interior knots") {
        CHECK(build_normalized_knots(5, 5).values ==
              std::vector<double>{0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1});
    }
    SUBCASE("n < m rejected") {
        CHECK_THROWS_AS(build_normalized_knots(3, 2), std::invalid_argument);
    }
}

TEST_CASE("open-ended knot vectors") {
    SUBCASE("m=2 L=20 Ts=1ms") {
        const KnotVector kv = build_open_knots(2, 20, 0.001, 6);
        const std::vector<double> want{0, 0, 0, 0.02, 0.04, 0.06};
        REQUIRE(kv.values.size() == want.size());
        for (size_t i = 0; i < want.size(); ++i)
            CHECK(kv.values[i] == doctest::Approx(want[i]).epsilon(1e-15));
    }
    SUBCASE("entry at j=m+2") {
        const KnotVector kv = build_open_knots(5, 20, 0.001, 10);
        CHECK(kv.values[7] == doctest::Approx(0.04).epsilon(1e-15));
    }
    SUBCASE("unit spacing") {
        CHECK(build_open_knots(1, 1, 1.0, 4).values == std::vector<double>{0, 0, 1, 2});
    }
    SUBCASE("nonpositive Ts rejected") {
        CHECK_THROWS_AS(build_open_knots(2, 20, 0.0, 6), std::invalid_argument);
        CHECK_THROWS_AS(build_open_knots(2, 20, -1.0, 6), std::invalid_argument);
    }
}

TEST_CASE("basis matrix endpoints and tiny case") {
    const BasisMatrix bm = build_basis_matrix(1, 1, 1);
    CHECK(bm.entries(0, 0) == 1.0);
    CHECK(bm.entries(0, 1) == 0.0);
    CHECK(bm.entries(1, 0) == 0.0);
    CHECK(bm.entries(1, 1) == 1.0);
}

TEST_CASE("basis matrix rows sum to one") {
    for (auto [E, n, m] : {std::tuple{10, 5, 3}, {40, 12, 2}, {100, 30, 5}}) {
        const BasisMatrix bm = build_basis_matrix(E, n, m);
        for (int k = 0; k <= E; ++k)
            CHECK(std::abs(bm.entries.row(k).sum() - 1.0) < 1e-12);
    }
}

TEST_CASE("basis matrix matches a per-point oracle sweep") {
    const BasisMatrix bm = build_basis_matrix(10, 5, 3);
    const auto& g = bm.knots.values;
    for (int k = 0; k <= 10; ++k)
        for (int j = 0; j <= 5; ++j)
            CHECK(bm.entries(k, j) ==
                  doctest::Approx(oracle::naive_basis(j, 3, k / 10.0, g))
                      .epsilon(1e-14));
}

TEST_CASE("basis matrix rejects E < n") {
    CHECK_THROWS_AS(build_basis_matrix(4, 5, 2), std::invalid_argument);
}

TEST_CASE("eval_basis argument validation") {
    const KnotVector kv = build_normalized_knots(2, 4);
    CHECK_THROWS_AS(eval_basis(5, 2, 0.5, kv), std::out_of_range);
    CHECK_THROWS_AS(eval_basis(-1, 2, 0.5, kv), std::out_of_range);
    CHECK_THROWS_AS(eval_basis(0, 2, 1.5, kv), std::out_of_range);
    CHECK_THROWS_AS(eval_basis(0, 2, -0.1, kv), std::out_of_range);
}

TEST_CASE("local support, endpoint interpolation, continuity") {
    std::mt19937 rng(42);
    for (auto [E, n, m] : {std::tuple{60, 17, 2}, {200, 40, 3}, {200, 40, 5}}) {
        const BasisMatrix bm = build_basis_matrix(E, n, m);
        const auto& g = bm.knots.values;

        // entry (k,j) is zero outside [g_j, g_{j+m+1}]
        for (int k = 0; k <= E; ++k)
            for (int j = 0; j <= n; ++j) {
                const double xi = bm.sample_parameters[k];
                if (xi < g[j] || xi > g[j + m + 1]) CHECK(bm.entries(k, j) == 0.0);
            }

        // first row picks the first control point, last row the last
        CHECK(bm.entries(0, 0) == 1.0);
        CHECK(bm.entries.row(0).tail(n).cwiseAbs().maxCoeff() == 0.0);
        CHECK(bm.entries(E, n) == 1.0);
        CHECK(bm.entries.row(E).head(n).cwiseAbs().maxCoeff() == 0.0);

        // no jumps between successive rows for m >= 2: the derivative of a
        // degree-m basis function is bounded by 2m/(interior knot spacing)
        if (m >= 2) {
            const double bound = 4.0 * m * (n - m + 1) / static_cast<double>(E);
            for (int k = 0; k + 1 <= E; ++k)
                CHECK((bm.entries.row(k + 1) - bm.entries.row(k)).cwiseAbs().maxCoeff() <
                      bound);
        }
    }
}
