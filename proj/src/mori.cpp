#include "chiquad/mori.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chiquad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// nu * x^2(y) without intermediate overflow; clamps the exponent so the
// chi-square CDF/tail arguments stay finite (the tails are exactly 0/1 in
// double precision long before the clamp matters).
double nu_x_squared(int nu, double y) {
    const double emy = std::exp(-y);
    if (std::isinf(emy)) return 0.0;
    double arg = y - 2.0 * emy + std::log((double)nu);
    if (arg > 700.0) arg = 700.0;
    return std::exp(arg);
}

}  // namespace

double log_x(double y) {
    return 0.5 * y - std::exp(-y);  // -inf when exp(-y) overflows
}

TransformedWeight::TransformedWeight(DegreesOfFreedom nu)
    : params_(ChiScaledDensityParams::make(nu)) {
    const long double n = nu.value();
    log_tau_ld_ = 0.5L * n * std::log(n) - detail::lgamma_ld(0.5L * n)
        - (0.5L * n - 1.0L) * std::numbers::ln2_v<long double>;
}

MoriPoint transform(double y) {
    const double emy = std::exp(-y);
    if (std::isinf(emy)) return MoriPoint{y, 0.0, 0.0};
    const double x = std::exp(0.5 * y - emy);
    return MoriPoint{y, x, x * (0.5 + emy)};
}

double TransformedWeight::log_at(double y) const {
    // Assembled in extended precision: for large nu the constant, the
    // nu*ln(x) term and the nu/2*x^2 term are all of magnitude ~nu/2 and
    // cancel to O(1), so double-precision assembly would leave ~nu*eps of
    // noise in the result.
    const long double yl = y;
    const long double emy = std::exp(-yl);
    if (std::isinf((double)emy)) return -kInf;
    const long double n = params_.nu.value();
    const long double lx = 0.5L * yl - emy;
    const long double x2_arg = yl - 2.0L * emy;  // ln x^2
    if (x2_arg > 708.0L) return -kInf;           // nu/2 * x^2 dwarfs everything else
    // ln(1/2 + e^{-y}) = log1p(2 e^{-y}) - ln 2, switching to -y before 2e^{-y}
    // can overflow.
    const long double ljac = (emy > 1e15L)
        ? -yl
        : std::log1p(2.0L * emy) - std::numbers::ln2_v<long double>;
    return (double)(log_tau_ld_ + n * lx + ljac - 0.5L * n * std::exp(x2_arg));
}

double psi(DegreesOfFreedom nu, double y) {
    return TransformedWeight(nu)(y);
}

double psi_mode(DegreesOfFreedom nu) {
    const TransformedWeight w(nu);

    // Coarse scan protects the golden-section search against landing on a
    // non-maximal plateau.
    constexpr int kScan = 201;
    constexpr double kLo = -5.0, kHi = 5.0;
    double best = -kInf;
    int best_i = 0;
    for (int i = 0; i < kScan; ++i) {
        const double y = kLo + (kHi - kLo) * i / (kScan - 1);
        const double v = w.log_at(y);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double step = (kHi - kLo) / (kScan - 1);
    double a = kLo + step * std::max(best_i - 1, 0);
    double b = kLo + step * std::min(best_i + 1, kScan - 1);

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = w.log_at(c), fd = w.log_at(d);
    while (b - a > 1e-11) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = w.log_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = w.log_at(d);
        }
    }
    double mode = 0.5 * (a + b);
    if (w.log_at(mode) < best - 1e-9)
        throw std::runtime_error("psi_mode: refinement lost the grid maximum; psi not unimodal?");

    // Value comparisons cannot resolve the flat maximum below ~sqrt(eps);
    // polish by bisecting the sign change of d(ln psi)/dy, which is O(1)
    // accurate in double.
    const double n = nu.value();
    const auto slope = [n](double y) {
        const double emy = std::exp(-y);
        const double jac = 0.5 + emy;
        const double xsq = std::exp(y - 2.0 * emy);
        return n * jac * (1.0 - xsq) - emy / jac;
    };
    double lo = mode - 1e-4, hi = mode + 1e-4;
    if (slope(lo) > 0.0 && slope(hi) < 0.0) {
        for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (slope(mid) > 0.0) lo = mid; else hi = mid;
        }
        mode = 0.5 * (lo + hi);
    }
    return mode;
}

double trimming_bound(DegreesOfFreedom nu, double y, double d) {
    if (!(d > 0.0)) throw std::domain_error("trimming_bound: d must be positive");
    return chi2_cdf(nu, nu_x_squared(nu.value(), y)) +
           chi2_tail(nu, nu_x_squared(nu.value(), y + d));
}

MoriWindow solve_window(DegreesOfFreedom nu, double target) {
    if (!(target > 0.0 && target < 1.0))
        throw std::domain_error("solve_window: target must lie in (0, 1)");
    if (target < 1e-300)
        throw std::runtime_error(
            "solve_window: target below 1e-300; the tail probabilities cannot resolve it");

    const TransformedWeight w(nu);
    const double y_star = psi_mode(nu);
    const double left_edge = y_star - 60.0;  // psi underflows here for all nu <= 1e6

    // Minimizing y for a given d: du/dy = psi(y) - psi(y+d), so balance the
    // two edge densities. Solved by bisection in log space, which stays
    // conditioned where u itself is flat to machine precision.
    const auto minimizing_y = [&](double d) {
        double lo = left_edge, hi = y_star;
        double slo = w.log_at(lo) - w.log_at(lo + d);
        if (!(slo < 0.0)) {
            // window so wide that both edges underflow; any y gives u = 0
            return lo;
        }
        for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double s = w.log_at(mid) - w.log_at(mid + d);
            if (s < 0.0) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    const auto min_bound = [&](double d) {
        return trimming_bound(nu, minimizing_y(d), d);
    };

    // Outer bisection on d; the minimized bound is decreasing in d. The lower
    // bracket shrinks adaptively: for large nu the distribution concentrates
    // and the window can be shorter than 0.5.
    double d_lo = 0.5, d_hi = 200.0;
    if (min_bound(d_hi) > target)
        throw std::runtime_error("solve_window: target unreachable with d <= 200");
    double u_lo = min_bound(d_lo);
    while (u_lo <= target) {
        d_hi = d_lo;
        d_lo *= 0.5;
        if (d_lo < 1e-8)
            throw std::runtime_error("solve_window: no bracket; target too large");
        u_lo = min_bound(d_lo);
    }

    double d_mid = 0.5 * (d_lo + d_hi), u_mid = 0.0;
    for (int it = 0; it < 200; ++it) {
        d_mid = 0.5 * (d_lo + d_hi);
        u_mid = min_bound(d_mid);
        if (std::abs(u_mid - target) <= 1e-3 * target) break;
        if (u_mid > target) d_lo = d_mid; else d_hi = d_mid;
        if (d_hi - d_lo < 1e-13 * d_mid)
            throw std::runtime_error("solve_window: bisection stalled before reaching tolerance");
    }
    if (std::abs(u_mid - target) > 1e-3 * target)
        throw std::runtime_error("solve_window: failed to hit target bound");

    const double y_lo = minimizing_y(d_mid);
    if (!(y_lo < y_star && y_star < y_lo + d_mid))
        throw std::runtime_error("solve_window: window does not straddle the mode");
    return MoriWindow{nu, y_lo, d_mid, u_mid};
}

}  // namespace chiquad
