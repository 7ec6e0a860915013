#include "chiquad/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "chiquad/specfun.hpp"

namespace chiquad {

namespace {

// Implicit-shift QL on a symmetric tridiagonal matrix, tracking the first row
// of the accumulated rotations (all that Golub-Welsch needs). diag/off are
// destroyed; on return diag holds unsorted eigenvalues and first[i] the first
// component of the corresponding unit eigenvector.
void tridiagonal_eigen_first_row(std::vector<double>& diag, std::vector<double>& off,
                                 std::vector<double>& first) {
    const int n = (int)diag.size();
    first.assign(n, 0.0);
    first[0] = 1.0;
    if (n == 1) return;

    off.push_back(0.0);  // sentinel
    const double eps = std::numeric_limits<double>::epsilon();

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error("gauss: QL sweep limit exceeded");
                double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                bool underflowed = false;
                for (; i >= l; --i) {
                    double f = s * off[i];
                    const double b = c * off[i];
                    r = std::hypot(f, g);
                    off[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        off[m] = 0.0;
                        underflowed = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - b;
                    f = first[i + 1];
                    first[i + 1] = s * first[i] + c * f;
                    first[i] = c * first[i] - s * f;
                }
                if (underflowed && i >= l) continue;
                diag[l] -= p;
                off[l] = g;
                off[m] = 0.0;
            }
        } while (m != l);
    }
}

GaussRule build_rule(GaussKind kind, double alpha, int m, std::vector<double> diag,
                     std::vector<double> off, double log_mass) {
    std::vector<double> first;
    tridiagonal_eigen_first_row(diag, off, first);

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });

    GaussRule rule;
    rule.kind = kind;
    rule.alpha = alpha;
    rule.m = m;
    rule.log_weight_sum = log_mass;
    rule.nodes.resize(m);
    rule.normalized_weights.resize(m);
    rule.weights.resize(m);
    const double mass = std::exp(log_mass);
    for (int i = 0; i < m; ++i) {
        rule.nodes[i] = diag[order[i]];
        const double z = first[order[i]];
        rule.normalized_weights[i] = z * z;
        rule.weights[i] = mass * (z * z);
    }
    return rule;
}

}  // namespace

GaussRule legendre_rule(int m) {
    if (m < 1 || m > 500)
        throw std::domain_error("legendre_rule: m must lie in [1, 500]");
    std::vector<double> diag(m, 0.0);
    std::vector<double> off(m - 1);
    for (int k = 1; k < m; ++k)
        off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    GaussRule rule = build_rule(GaussKind::legendre, 0.0, m, std::move(diag), std::move(off),
                                std::numbers::ln2);

    // Newton polish on the Legendre polynomial: the eigenvalues are accurate
    // to a few ulps already, but the inverse-cdf comparison runs at the
    // 1e-15 floor where those ulps are visible.
    for (int i = 0; i < m; ++i) {
        long double z = rule.nodes[i];
        long double dp = 0.0L;
        for (int it = 0; it < 3; ++it) {
            long double p0 = 1.0L, p1 = z;
            for (int k = 2; k <= m; ++k) {
                const long double p2 = ((2.0L * k - 1.0L) * z * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (z * p1 - p0) / (z * z - 1.0L);
            if (dp == 0.0L) break;
            const long double step = p1 / dp;
            z -= step;
            if (std::abs(step) < 1e-19L * std::max(1.0L, std::abs(z))) break;
        }
        rule.nodes[i] = (double)z;
        const double w = (double)(2.0L / ((1.0L - z * z) * dp * dp));
        rule.weights[i] = w;
        rule.normalized_weights[i] = 0.5 * w;
    }
    // keep the midpoint rule exact
    if (m == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
        rule.normalized_weights[0] = 1.0;
    }
    return rule;
}

GaussRule generalized_laguerre_rule(double alpha, int m) {
    if (!(alpha > -1.0))
        throw std::domain_error("generalized_laguerre_rule: alpha must exceed -1");
    if (m < 1 || m > 200)
        throw std::domain_error("generalized_laguerre_rule: m must lie in [1, 200]");
    std::vector<double> diag(m);
    std::vector<double> off(m - 1);
    for (int k = 0; k < m; ++k) diag[k] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < m; ++k) off[k - 1] = std::sqrt(k * (k + alpha));
    return build_rule(GaussKind::generalized_laguerre, alpha, m, std::move(diag),
                      std::move(off), log_gamma(alpha + 1.0));
}

}  // namespace chiquad
