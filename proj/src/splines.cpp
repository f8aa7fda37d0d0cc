#include "hfbs/splines.hpp"

#include <stdexcept>
#include <string>

namespace hfbs {

namespace {

void check_knot_index(int j, int m, const KnotVector& knots) {
    const int max_j = static_cast<int>(knots.values.size()) - m - 2;
    if (j < 0 || j > max_j)
        throw std::out_of_range("eval_basis: basis index " + std::to_string(j) +
                                " outside [0, " + std::to_string(max_j) + "]");
}

} // namespace

double eval_basis(int j, int m, double xi, const KnotVector& knots) {
    if (m < 0) throw std::invalid_argument("eval_basis: negative degree");
    const auto& g = knots.values;
    if (static_cast<int>(g.size()) < m + 2)
        throw std::invalid_argument("eval_basis: knot vector shorter than m+2");
    check_knot_index(j, m, knots);
    if (xi < g.front() || xi > g.back())
        throw std::out_of_range("eval_basis: parameter outside the knot span");

    const double last = g.back();
    // degree-0 indicators over the m+1 spans feeding N_{j,m}; spans are
    // half-open except that the final knot belongs to the last nonempty span
    double table[64];
    std::vector<double> heap_table;
    double* N = table;
    if (m + 1 > 64) {
        heap_table.resize(m + 1);
        N = heap_table.data();
    }
    for (int r = 0; r <= m; ++r) {
        const int s = j + r;
        const bool inside = (g[s] <= xi && xi < g[s + 1]) ||
                            (xi == last && g[s + 1] == last && g[s] < g[s + 1]);
        N[r] = inside ? 1.0 : 0.0;
    }
    // bottom-up Cox-de Boor; 0/0 terms are dropped (denominator 0 => 0)
    for (int deg = 1; deg <= m; ++deg) {
        for (int r = 0; r + deg <= m; ++r) {
            const int s = j + r;
            double acc = 0.0;
            const double d1 = g[s + deg] - g[s];
            if (d1 > 0.0) acc += (xi - g[s]) / d1 * N[r];
            const double d2 = g[s + deg + 1] - g[s + 1];
            if (d2 > 0.0) acc += (g[s + deg + 1] - xi) / d2 * N[r + 1];
            N[r] = acc;
        }
    }
    return N[0];
}

KnotVector build_normalized_knots(int m, int n) {
    if (m < 1) throw std::invalid_argument("build_normalized_knots: degree must be >= 1");
    if (n < m)
        throw std::invalid_argument("build_normalized_knots: need n >= m, got n=" +
                                    std::to_string(n) + " m=" + std::to_string(m));
    KnotVector kv;
    kv.degree = m;
    kv.mode = KnotMode::normalized;
    kv.values.resize(m + n + 2);
    for (int j = 0; j < m + n + 2; ++j) {
        if (j <= m)
            kv.values[j] = 0.0;
        else if (j <= n)
            kv.values[j] = static_cast<double>(j - m) / (n - m + 1);
        else
            kv.values[j] = 1.0;
    }
    return kv;
}

KnotVector build_open_knots(int m, int L, double Ts, int count) {
    if (m < 1) throw std::invalid_argument("build_open_knots: degree must be >= 1");
    if (L < 1) throw std::invalid_argument("build_open_knots: knot spacing multiple must be >= 1");
    if (Ts <= 0.0) throw std::invalid_argument("build_open_knots: nonpositive sample period");
    if (count <= m + 1)
        throw std::invalid_argument("build_open_knots: need count > m+1");
    KnotVector kv;
    kv.degree = m;
    kv.mode = KnotMode::open_ended;
    kv.values.resize(count);
    for (int j = 0; j < count; ++j)
        kv.values[j] = (j <= m) ? 0.0 : static_cast<double>((j - m) * L) * Ts;
    return kv;
}

BasisMatrix build_basis_matrix(int E, int n, int m) {
    if (n < m)
        throw std::invalid_argument("build_basis_matrix: need n >= m");
    if (E < n)
        throw std::invalid_argument("build_basis_matrix: need E >= n, got E=" +
                                    std::to_string(E) + " n=" + std::to_string(n));
    BasisMatrix bm;
    bm.degree = m;
    bm.knots = build_normalized_knots(m, n);
    bm.sample_parameters.resize(E + 1);
    bm.entries = Eigen::MatrixXd::Zero(E + 1, n + 1);
    const auto& g = bm.knots.values;
    for (int k = 0; k <= E; ++k) {
        const double xi = static_cast<double>(k) / E;
        bm.sample_parameters[k] = xi;
        for (int j = 0; j <= n; ++j) {
            if (xi < g[j] || xi > g[j + m + 1]) continue; // local support
            bm.entries(k, j) = eval_basis(j, m, xi, bm.knots);
        }
    }
    return bm;
}

} // namespace hfbs
