#include "chiquad/trapz.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

namespace chiquad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Compensated summation carried in extended precision; the reference error
// tables sit at the last ulp of the result, where plain double accumulation
// noise would show.
struct KahanAccumulator {
    long double sum = 0.0L;
    long double comp = 0.0L;

    void add(long double v) {
        const long double y = v - comp;
        const long double t = sum + y;
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

// a(x(y)) * psi_nu(y); skips the integrand call when psi underflows to zero
// in double (exp flushes below about -745.1). Returns whether the integrand
// was actually evaluated.
bool weighted_eval(const TransformedWeight& w, const Integrand& a, double y, long double* out) {
    const double lp = w.log_at(y);
    if (!(lp >= -746.0)) {
        *out = 0.0L;
        return false;
    }
    const double x = std::exp(log_x(y));
    *out = (long double)eval_checked(a, x) * std::exp((long double)lp);
    return true;
}

double ulp_scale(double v) {
    return kErrorFloor * std::max(1.0, std::abs(v));
}

}  // namespace

double trapezoid_sum(DegreesOfFreedom nu, const Integrand& a, const GridSpec& grid,
                     long long* evaluations) {
    if (grid.n < 1 || !(grid.h > 0.0))
        throw std::domain_error("trapezoid_sum: grid must have n >= 1 and h > 0");
    const TransformedWeight w(nu);
    KahanAccumulator acc;
    long long evals = 0;
    for (int j = 0; j < grid.n; ++j) {
        long double g;
        if (weighted_eval(w, a, grid.y_lo + grid.h * j, &g)) ++evals;
        acc.add(g);
    }
    if (evaluations) *evaluations = evals;
    return (double)((long double)grid.h * acc.sum);
}

QuadratureResult simple_procedure(DegreesOfFreedom nu, const Integrand& a, double epsilon,
                                  int n_max, StoppingMode mode) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("simple_procedure: epsilon must lie in (0, 1)");
    if (n_max < 5)
        throw std::domain_error("simple_procedure: n_max must be at least 5");

    const MoriWindow window = solve_window(nu, 1e-3 * epsilon);
    const TransformedWeight w(nu);

    // Levels l = 0..L have n_l = 2^{l+2} + 1 nodes; all grids live on the
    // finest one, so node positions are computed once and bit-identical
    // across iterations.
    int levels = 0;
    while (((1LL << (levels + 3)) + 1) <= n_max) ++levels;
    const long long n_fine = (1LL << (levels + 2)) + 1;
    const double h_fine = window.d / (double)(n_fine - 1);

    std::vector<long double> g(n_fine, 0.0L);
    std::vector<char> have(n_fine, 0);

    QuadratureResult result;
    result.trimming_bound = window.bound;

    for (int level = 0; level <= levels; ++level) {
        const long long stride = 1LL << (levels - level);
        const long long n = (1LL << (level + 2)) + 1;
        const double h = h_fine * (double)stride;

        KahanAccumulator acc;
        for (long long j = 0; j < n; ++j) {
            const long long idx = j * stride;
            if (!have[idx]) {
                if (weighted_eval(w, a, window.y_lo + h_fine * (double)idx, &g[idx]))
                    ++result.evaluations;
                have[idx] = 1;
            }
            acc.add(g[idx]);
        }
        const double value = (double)((long double)h * acc.sum);
        result.history.push_back(IterationRecord{n, h, value});

        if (result.history.size() >= 2) {
            const double prev = result.history[result.history.size() - 2].value;
            result.est_discretization_error = std::abs(value - prev);
        }
        if (mode == StoppingMode::adaptive && result.history.size() >= 3) {
            const double thr = std::max(epsilon, 4.0 * ulp_scale(value));
            if (result.est_discretization_error <= thr) {
                result.converged = true;
                break;
            }
        }
    }

    result.value = result.history.back().value;
    if (result.history.size() < 2)
        result.est_discretization_error = kInf;
    else if (mode == StoppingMode::full_budget) {
        const double thr = std::max(epsilon, 4.0 * ulp_scale(result.value));
        result.converged = result.est_discretization_error <= thr;
    }
    return result;
}

QuadratureResult exponential_procedure(DegreesOfFreedom nu, const Integrand& a, int n0,
                                       double initial_target, int k_max) {
    if (n0 < 2)
        throw std::domain_error("exponential_procedure: n0 must be at least 2");
    if (!(initial_target > 0.0 && initial_target < 1.0))
        throw std::domain_error("exponential_procedure: initial_target must lie in (0, 1)");
    if (k_max < 0 || k_max > 20)
        throw std::invalid_argument("exponential_procedure: k_max must lie in [0, 20]");

    const MoriWindow w0 = solve_window(nu, initial_target);
    const TransformedWeight w(nu);
    const double h0 = w0.d / (double)n0;  // d = n h convention; b = h0

    // All iterations share the grid of step h0 / 2^{k_max}; node q sits at
    // y_lo0 + q * h_fine. Old nodes reappear with identical positions, so the
    // cache is exact.
    const double h_fine = h0 / (double)(1LL << k_max);
    std::unordered_map<long long, long double> cache;
    cache.reserve((size_t)((n0 + 2 * k_max) << k_max) + 16);

    QuadratureResult result;
    for (int k = 0; k <= k_max; ++k) {
        const double h = h0 / (double)(1LL << k);
        const long long n = (long long)(n0 + 2 * k) << k;
        const long long stride = 1LL << (k_max - k);
        const long long q0 = -((long long)k << k_max);  // y_lo shifted left by k*h0

        KahanAccumulator acc;
        for (long long j = 0; j < n; ++j) {
            const long long q = q0 + j * stride;
            auto it = cache.find(q);
            long double gv;
            if (it == cache.end()) {
                if (weighted_eval(w, a, w0.y_lo + h_fine * (double)q, &gv))
                    ++result.evaluations;
                cache.emplace(q, gv);
            } else {
                gv = it->second;
            }
            acc.add(gv);
        }
        result.history.push_back(IterationRecord{n, h, (double)((long double)h * acc.sum)});
    }

    result.value = result.history.back().value;
    if (result.history.size() >= 2) {
        result.est_discretization_error =
            std::abs(result.value - result.history[result.history.size() - 2].value);
        result.converged = result.est_discretization_error <= 4.0 * ulp_scale(result.value);
    } else {
        result.est_discretization_error = kInf;
    }
    const int k_last = k_max;
    result.trimming_bound =
        trimming_bound(nu, w0.y_lo - k_last * h0, w0.d + 2.0 * k_last * h0);
    return result;
}

std::vector<std::pair<long long, double>> convergence_diagnostic(const QuadratureResult& result,
                                                                 double exact) {
    if (result.history.empty())
        throw std::domain_error("convergence_diagnostic: empty history");
    std::vector<std::pair<long long, double>> out;
    out.reserve(result.history.size());
    for (const auto& rec : result.history) {
        const double err = std::max(std::abs(rec.value - exact), kErrorFloor);
        out.emplace_back(rec.n, std::log10(err));
    }
    return out;
}

}  // namespace chiquad
