// Test-only reference implementations, kept independent of the library's
// code paths: the basis oracle is the textbook recursion evaluated naively
// (the library builds an iterative triangle), and the random plant
// generator produces provably stable filters from their pole sets.
#pragma once

#include <Eigen/Core>
#include <complex>
#include <random>
#include <vector>

#include "hfbs/splines.hpp"
#include "hfbs/sysmodel.hpp"

namespace oracle {

// literal recursive Cox-de Boor with 0/0 -> 0 and the closed final knot
inline double naive_basis(int j, int m, double xi, const std::vector<double>& g) {
    if (m == 0) {
        const double last = g.back();
        if (g[j] <= xi && xi < g[j + 1]) return 1.0;
        if (xi == last && g[j + 1] == last && g[j] < g[j + 1]) return 1.0;
        return 0.0;
    }
    double acc = 0.0;
    if (g[j + m] - g[j] > 0.0)
        acc += (xi - g[j]) / (g[j + m] - g[j]) * naive_basis(j, m - 1, xi, g);
    if (g[j + m + 1] - g[j + 1] > 0.0)
        acc += (g[j + m + 1] - xi) / (g[j + m + 1] - g[j + 1]) *
               naive_basis(j + 1, m - 1, xi, g);
    return acc;
}

// monic real polynomial with the given roots (complex roots in conjugate pairs)
inline std::vector<double> poly_from_roots(const std::vector<std::complex<double>>& roots) {
    std::vector<std::complex<double>> c{1.0};
    for (const auto& r : roots) {
        std::vector<std::complex<double>> next(c.size() + 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= c[i] * r;
        }
        c = next;
    }
    std::vector<double> out(c.size());
    for (size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
    return out;
}

// random stable transfer function: poles drawn inside |z| < 0.95 (real or
// conjugate pairs), numerator with random coefficients; biproper on request
inline hfbs::DiscreteTransferFunction random_stable_tf(std::mt19937& rng, int max_order,
                                                       bool biproper, double ts) {
    std::uniform_int_distribution<int> order_dist(1, max_order);
    std::uniform_real_distribution<double> mag(0.0, 0.95);
    std::uniform_real_distribution<double> ang(0.0, 3.14159265358979);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const int d = order_dist(rng);
    std::vector<std::complex<double>> poles;
    while (static_cast<int>(poles.size()) < d) {
        if (d - static_cast<int>(poles.size()) >= 2 && coef(rng) > 0.0) {
            const double r = mag(rng), th = ang(rng);
            poles.emplace_back(r * std::cos(th), r * std::sin(th));
            poles.emplace_back(r * std::cos(th), -r * std::sin(th));
        } else {
            poles.emplace_back(coef(rng) * 0.95, 0.0);
        }
    }
    std::vector<double> den = poly_from_roots(poles);
    const int q = biproper ? d : std::max(0, d - 1);
    std::vector<double> num(q + 1);
    for (double& v : num) v = coef(rng);
    if (biproper && std::abs(num.front()) < 0.1)
        num.front() = (num.front() < 0 ? -0.5 : 0.5);
    return hfbs::DiscreteTransferFunction(num, den, ts);
}

inline Eigen::VectorXd random_vector(std::mt19937& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
    return v;
}

} // namespace oracle
