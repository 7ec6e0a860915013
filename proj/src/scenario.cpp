#include "chiquad/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chiquad {

ScenarioSpec ScenarioSpec::make(DegreesOfFreedom nu, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("ScenarioSpec: alpha must lie in (0, 1)");
    return ScenarioSpec{nu, alpha, t_quantile(nu, 1.0 - 0.5 * alpha), false};
}

ScenarioSpec ScenarioSpec::make_normal_limit(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("ScenarioSpec: alpha must lie in (0, 1)");
    return ScenarioSpec{DegreesOfFreedom(1), alpha, normal_quantile(1.0 - 0.5 * alpha), true};
}

Integrand t_interval_integrand(const ScenarioSpec& spec) {
    const double t_crit = spec.t_crit;
    return Integrand{[t_crit](double x) { return 2.0 * normal_cdf(t_crit * x) - 1.0; }, 1.0};
}

double exact_value(const ScenarioSpec& spec) {
    return 1.0 - spec.alpha;
}

double weighted_moment_scale(int kappa, int xi) {
    return std::sqrt((double)kappa / (double)(kappa + xi));
}

StandardForm weighted_moment_to_standard(const WeightedMomentSpec& spec) {
    if (spec.kappa < 1 || spec.xi < 1)
        throw std::domain_error("weighted_moment_to_standard: kappa and xi must be positive");
    const DegreesOfFreedom nu(spec.kappa + spec.xi);
    const double c = weighted_moment_scale(spec.kappa, spec.xi);
    const double log_prefactor = 0.5 * spec.xi * (std::numbers::ln2 - std::log((double)spec.kappa))
        + log_gamma(0.5 * nu.value()) - log_gamma(0.5 * spec.kappa);
    auto lambda = spec.lambda;
    Integrand a{[lambda, c](double y) { return lambda(y / c); }, spec.lambda_bound};
    return StandardForm{nu, std::move(a), std::exp(log_prefactor), log_prefactor};
}

}  // namespace chiquad
