#include "chiquad/baselines.hpp"

#include <cmath>

namespace chiquad {

namespace {

struct KahanAccumulator {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double eval_checked(const Integrand& a, double x) {
    const double v = a.eval(x);
    if (!(std::abs(v) <= a.bound))
        throw integrand_bound_error("integrand exceeded its certified bound");
    return v;
}

}  // namespace

BaselineResult gen_gauss_laguerre(DegreesOfFreedom nu, const Integrand& a, int m) {
    const GaussRule rule = generalized_laguerre_rule(0.5 * nu.value() - 1.0, m);
    // The 1/Gamma(nu/2) prefactor cancels the rule's weight mass Gamma(nu/2)
    // exactly, so the normalized weights are the whole story; nothing here
    // can overflow even for nu in the thousands.
    KahanAccumulator acc;
    for (int j = 0; j < m; ++j) {
        const double x = std::sqrt(2.0 * rule.nodes[j] / nu.value());
        acc.add(rule.normalized_weights[j] * eval_checked(a, x));
    }
    return BaselineResult{BaselineMethod::gen_gauss_laguerre, m, acc.sum, m};
}

BaselineResult inverse_cdf_legendre(DegreesOfFreedom nu, const Integrand& a, int m) {
    const GaussRule rule = legendre_rule(m);
    KahanAccumulator acc;
    for (int j = 0; j < m; ++j) {
        const double p = 0.5 * (rule.nodes[j] + 1.0);  // never 0 or 1: open nodes
        const double x = chi_scaled_quantile(nu, p);
        acc.add(rule.weights[j] * eval_checked(a, x) * 0.5);
    }
    return BaselineResult{BaselineMethod::inverse_cdf_legendre, m, acc.sum, m};
}

BaselineResult truncated_legendre(DegreesOfFreedom nu, const Integrand& a,
                                  const MoriWindow& window, int m) {
    if (window.nu.value() != nu.value())
        throw std::domain_error("truncated_legendre: window built for a different nu");
    const GaussRule rule = legendre_rule(m);
    const TransformedWeight w(nu);
    const double half_d = 0.5 * window.d;
    KahanAccumulator acc;
    for (int j = 0; j < m; ++j) {
        const double y = window.y_lo + (rule.nodes[j] + 1.0) * half_d;
        const double x = std::exp(log_x(y));
        acc.add(rule.weights[j] * eval_checked(a, x) * w(y));
    }
    return BaselineResult{BaselineMethod::truncated_legendre, m, half_d * acc.sum, m};
}

}  // namespace chiquad
