#pragma once

// Gauss-Legendre and generalized Gauss-Laguerre rules via the Golub-Welsch
// method: nodes are eigenvalues of the symmetric tridiagonal Jacobi matrix of
// the three-term recurrence, weights come from the first components of its
// eigenvectors.

#include <vector>

namespace chiquad {

enum class GaussKind {
    legendre,
    generalized_laguerre,
};

struct GaussRule {
    GaussKind kind;
    double alpha;  ///< Laguerre weight exponent; unused for Legendre
    int m;
    std::vector<double> nodes;    ///< strictly increasing
    std::vector<double> weights;  ///< quadrature weights; sum to the weight-function mass

    /// weights / mass, summing to 1. Stays finite even where the mass
    /// Gamma(alpha + 1) overflows (alpha = nu/2 - 1 for large nu), which is
    /// why consumers dividing by Gamma(nu/2) should use these directly.
    std::vector<double> normalized_weights;
    double log_weight_sum;  ///< ln of the weight-function mass
};

/// m-point rule on [-1, 1] with unit weight; recurrence b_k = k / sqrt(4k^2 - 1).
/// Requires 1 <= m <= 500.
GaussRule legendre_rule(int m);

/// m-point rule for int_0^inf f(y) y^alpha e^{-y} dy; recurrence
/// a_k = 2k + alpha + 1, b_k = sqrt(k (k + alpha)). Requires alpha > -1 and
/// 1 <= m <= 200.
GaussRule generalized_laguerre_rule(double alpha, int m);

}  // namespace chiquad
