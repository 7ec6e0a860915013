#pragma once

// Trapezoidal evaluation of int_0^inf a(x) f_nu(x) dx on a Mori window, and
// two nested refinement procedures on top of it:
//
//  * simple_procedure    - fixed window, step halving with endpoints included
//                          (node counts 5, 9, 17, 33, 65, ...);
//  * exponential_procedure - window growing by 2b per iteration while the
//                          step halves, giving n_k = (n0 + 2k) 2^k nodes and
//                          exponential convergence for suitable integrands.
//
// Both reuse every previously evaluated node.

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chiquad/mori.hpp"
#include "chiquad/specfun.hpp"

namespace chiquad {

/// Thrown when an integrand evaluation exceeds its certified bound.
struct integrand_bound_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A bounded integrand a: (0, inf) -> R with a certified sup |a|.
/// The bound is spot-checked at every quadrature node.
struct Integrand {
    std::function<double(double)> eval;
    double bound = 1.0;
};

/// An evaluation grid: nodes y_lo + h*j for j = 0 .. n-1.
struct GridSpec {
    double y_lo;
    double h;
    int n;
};

/// One refinement iteration: node count, step, and the raw approximation.
struct IterationRecord {
    long long n;
    double h;
    double value;
};

struct QuadratureResult {
    double value = 0.0;
    long long evaluations = 0;  ///< distinct integrand calls across all iterations
    std::vector<IterationRecord> history;
    double est_discretization_error = 0.0;  ///< |A_k - A_{k-1}| of the final pair
    double trimming_bound = 0.0;            ///< guaranteed tail bound for the window used
    bool converged = false;
};

/// Machine floor used when reporting approximation errors.
inline constexpr double kErrorFloor = 1.11e-16;

/// h * sum_j a(x(y_j)) psi_nu(y_j), accumulated in index order with
/// compensated summation. Nodes where psi underflows to 0 are skipped without
/// calling (or counting) the integrand.
double trapezoid_sum(DegreesOfFreedom nu, const Integrand& a, const GridSpec& grid,
                     long long* evaluations = nullptr);

enum class StoppingMode {
    adaptive,     ///< stop once successive approximations agree (see below)
    full_budget,  ///< always run to the largest node count <= n_max
};

/// Nested halving on the window solved from target 1e-3 * epsilon. Starts at
/// n = 5 nodes spanning the window (h = d/(n-1), endpoints included) and
/// refines n <- 2n - 1, evaluating only new midpoints. In adaptive mode stops
/// after iteration k >= 2 once |A_k - A_{k-1}| <= max(epsilon, 4 ulp-scale);
/// non-convergence within n_max is reported via converged = false.
QuadratureResult simple_procedure(DegreesOfFreedom nu, const Integrand& a, double epsilon,
                                  int n_max, StoppingMode mode = StoppingMode::adaptive);

/// The exponentially convergent variant: d0 from solve_window(nu,
/// initial_target), h0 = d0/n0, b = h0; each iteration adds 2b to d, halves h
/// and shifts y_lo left by b. Runs k = 0 .. k_max and returns the full
/// history (node counts (n0 + 2k) 2^k, nested grids).
QuadratureResult exponential_procedure(DegreesOfFreedom nu, const Integrand& a, int n0,
                                       double initial_target, int k_max);

/// Per-iteration (n, log10 |A - exact|), flooring |error| at kErrorFloor.
std::vector<std::pair<long long, double>> convergence_diagnostic(const QuadratureResult& result,
                                                                 double exact);

}  // namespace chiquad
