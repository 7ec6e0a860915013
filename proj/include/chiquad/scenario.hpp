#pragma once

// The known-answer test family: the t-interval coverage integrand
//   a_{nu,alpha}(x) = 2 Phi(t_{nu,1-alpha/2} x) - 1
// whose expectation against f_nu is exactly 1 - alpha, plus the conversion of
// weighted-moment integrals int lambda(x) x^xi f_kappa(x) dx to the standard
// form.

#include <functional>

#include "chiquad/specfun.hpp"
#include "chiquad/trapz.hpp"

namespace chiquad {

struct ScenarioSpec {
    DegreesOfFreedom nu;
    double alpha;
    double t_crit;      ///< t_{nu,1-alpha/2}, cached at construction
    bool normal_limit;  ///< true for the nu = infinity curve: t_crit = Phi^{-1}(1-alpha/2)

    static ScenarioSpec make(DegreesOfFreedom nu, double alpha);

    /// The limiting curve with the normal quantile in place of t_crit; nu is
    /// a placeholder and must not be used to pick a density.
    static ScenarioSpec make_normal_limit(double alpha);
};

/// The coverage integrand: eval(x) = 2 Phi(t_crit x) - 1 with bound 1.
Integrand t_interval_integrand(const ScenarioSpec& spec);

/// The exact value of the scenario integral, 1 - alpha.
double exact_value(const ScenarioSpec& spec);

/// A weighted-moment integral int_0^inf lambda(x) x^xi f_kappa(x) dx.
struct WeightedMomentSpec {
    int kappa;  ///< positive
    int xi;     ///< positive
    std::function<double(double)> lambda;  ///< smooth bounded
    double lambda_bound = 1.0;
};

/// The integral rewritten in standard form: prefactor * int a(y) f_nu(y) dy
/// with nu = kappa + xi and a(y) = lambda(y / c(kappa, xi)).
struct StandardForm {
    DegreesOfFreedom nu;
    Integrand a;
    double prefactor;      ///< (2/kappa)^{xi/2} Gamma(nu/2) / Gamma(kappa/2)
    double log_prefactor;  ///< computed first; prefactor = exp of this
};

/// The substitution scale c(kappa, xi) = sqrt(kappa / (kappa + xi)).
double weighted_moment_scale(int kappa, int xi);

StandardForm weighted_moment_to_standard(const WeightedMomentSpec& spec);

}  // namespace chiquad
