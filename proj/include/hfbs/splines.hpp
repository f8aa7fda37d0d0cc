#pragma once

#include <Eigen/Core>
#include <vector>

namespace hfbs {

enum class KnotMode { normalized, open_ended };

/// Clamped B-spline knot vector. Normalized mode spans [0,1] with uniformly
/// spaced interior knots; open-ended mode starts clamped at 0 and continues
/// in steps of L*Ts seconds without an upper end.
struct KnotVector {
    std::vector<double> values;
    int degree = 0;
    KnotMode mode = KnotMode::normalized;

    double front() const { return values.front(); }
    double back() const { return values.back(); }
};

/// Sampled B-spline basis: entries(k, j) = N_{j,m}(xi_k).
struct BasisMatrix {
    Eigen::MatrixXd entries;           // (E+1) x (n+1)
    int degree = 0;
    KnotVector knots;
    Eigen::VectorXd sample_parameters; // the E+1 evaluation points
};

/// Cox-de Boor evaluation of N_{j,m}(xi). Any 0/0 ratio in the recursion is
/// taken as 0. The final knot is treated as part of the last nonempty span,
/// so the last basis function evaluates to 1 there.
double eval_basis(int j, int m, double xi, const KnotVector& knots);

/// Uniform clamped knot vector on [0,1]: m+1 zeros, n-m interior knots at
/// (j-m)/(n-m+1), m+1 ones. Length m+n+2. Requires n >= m.
KnotVector build_normalized_knots(int m, int n);

/// Open-ended knot vector: m+1 zeros, then entry j = (j-m)*L*Ts for
/// j >= m+1. Requires count > m+1, integer L >= 1, Ts > 0.
KnotVector build_open_knots(int m, int L, double Ts, int count);

/// Dense basis matrix on the uniform parameter grid xi_k = k/E, k = 0..E.
/// Requires E >= n >= m.
BasisMatrix build_basis_matrix(int E, int n, int m);

} // namespace hfbs
