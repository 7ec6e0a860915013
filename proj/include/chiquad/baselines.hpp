#pragma once

// The three fixed-budget comparison integrators for int_0^inf a(x) f_nu(x) dx:
//
//  * gen_gauss_laguerre  - substitute y = nu x^2 / 2, apply the generalized
//                          Gauss-Laguerre rule with weight y^{nu/2-1} e^{-y};
//  * inverse_cdf_legendre - substitute y = F_nu(x), then z = 2y - 1, apply
//                          Gauss-Legendre on [-1, 1];
//  * truncated_legendre  - Gauss-Legendre on the Mori window [y_lo, y_lo + d]
//                          applied to a(x(y)) psi_nu(y).
//
// Each spends exactly m integrand evaluations.

#include "chiquad/gauss.hpp"
#include "chiquad/mori.hpp"
#include "chiquad/specfun.hpp"
#include "chiquad/trapz.hpp"

namespace chiquad {

enum class BaselineMethod {
    gen_gauss_laguerre,
    inverse_cdf_legendre,
    truncated_legendre,
};

struct BaselineResult {
    BaselineMethod method;
    int m;
    double value;
    long long evaluations;  ///< always equal to m
};

BaselineResult gen_gauss_laguerre(DegreesOfFreedom nu, const Integrand& a, int m);

BaselineResult inverse_cdf_legendre(DegreesOfFreedom nu, const Integrand& a, int m);

BaselineResult truncated_legendre(DegreesOfFreedom nu, const Integrand& a,
                                  const MoriWindow& window, int m);

}  // namespace chiquad
