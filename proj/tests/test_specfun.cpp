#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "chiquad/specfun.hpp"
#include "oracles.hpp"

using namespace chiquad;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("log_gamma at classic points") {
    CHECK(std::abs(log_gamma(1.0)) <= 1e-15);
    CHECK(std::abs(log_gamma(2.0)) <= 1e-15);
    CHECK(rel_err(log_gamma(0.5), 0.57236494292470008707) <= 1e-14);
    // 30-digit reference values computed once offline
    CHECK(rel_err(log_gamma(10.5), 13.940625219403763633) <= 1e-14);
    CHECK(rel_err(log_gamma(5.75), 4.3667160366222863439) <= 1e-14);
    CHECK(rel_err(log_gamma(123.456), 469.60554712992946873) <= 1e-14);
    CHECK(rel_err(log_gamma(1e6), 12815504.569147611660) <= 1e-14);
}

TEST_CASE("log_gamma matches libm across the working range") {
    for (double z = 0.5; z < 1.1e6; z *= 1.37) {
        const double want = std::lgamma(z);
        if (std::abs(want) < 0.1) continue;  // lgamma zeros at z = 1, 2
        CHECK(rel_err(log_gamma(z), want) <= 1e-13);
    }
}

TEST_CASE("log_gamma rejects nonpositive arguments") {
    CHECK_THROWS_AS((void)log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS((void)log_gamma(-3.2), std::domain_error);
}

TEST_CASE("chi2_cdf basics") {
    CHECK(chi2_cdf(DegreesOfFreedom(2), 0.0) == 0.0);
    // chi2 with 2 dof is Exponential(1/2); its median is 2 ln 2
    CHECK(std::abs(chi2_cdf(DegreesOfFreedom(2), 2.0 * std::log(2.0)) - 0.5) <= 1e-14);
    CHECK_THROWS_AS((void)chi2_cdf(DegreesOfFreedom(2), -1.0), std::domain_error);
    CHECK_THROWS_AS((void)chi2_tail(DegreesOfFreedom(2), -1.0), std::domain_error);
}

TEST_CASE("chi2_cdf against a brute-force Simpson pass over the raw density") {
    const double got = chi2_cdf(DegreesOfFreedom(5), 4.351);
    const double want = oracles::chi2_cdf_raw_simpson(5, 4.351, 10'000'000);
    CHECK(std::abs(got - want) <= 1e-10);
}

TEST_CASE("chi2_cdf against the Simpson oracle across nu and t") {
    std::mt19937 rng(20240617);
    for (int nu = 1; nu <= 20; ++nu) {
        std::uniform_real_distribution<double> dist(0.0, 3.0 * nu + 15.0);
        for (int i = 0; i < 200; ++i) {
            const double t = dist(rng);
            const double want = oracles::chi2_cdf_simpson(nu, t);
            CHECK(std::abs(chi2_cdf(DegreesOfFreedom(nu), t) - want) <= 1e-10);
        }
    }
}

TEST_CASE("chi2_cdf is monotone in t") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 60.0);
    for (int nu : {1, 2, 5, 17}) {
        for (int i = 0; i < 500; ++i) {
            double t1 = dist(rng), t2 = dist(rng);
            if (t1 > t2) std::swap(t1, t2);
            CHECK(chi2_cdf(DegreesOfFreedom(nu), t1) <= chi2_cdf(DegreesOfFreedom(nu), t2));
        }
    }
}

TEST_CASE("cdf and tail sum to one") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(1e-4, 80.0);
    for (int nu : {1, 2, 3, 7, 19}) {
        for (int i = 0; i < 300; ++i) {
            const double t = dist(rng);
            const double p = chi2_cdf(DegreesOfFreedom(nu), t);
            const double q = chi2_tail(DegreesOfFreedom(nu), t);
            if (p < 1e-300 || q < 1e-300) continue;
            CHECK(std::abs(p + q - 1.0) <= 1e-14);
        }
    }
}

TEST_CASE("chi_scaled_pdf values") {
    const auto p1 = ChiScaledDensityParams::make(DegreesOfFreedom(1));
    // x -> 0+ leaves tau_1 = sqrt(2/pi)
    CHECK(rel_err(chi_scaled_pdf(p1, 1e-12), 0.79788456080286536) <= 1e-9);

    const auto p3 = ChiScaledDensityParams::make(DegreesOfFreedom(3));
    CHECK(chi_scaled_pdf(p3, 0.0) == 0.0);
    CHECK(chi_scaled_pdf(p3, -2.0) == 0.0);

    // tau_4 = 16 / (Gamma(2) * 2) = 8, so f_4(1) = 8 e^{-2}
    const auto p4 = ChiScaledDensityParams::make(DegreesOfFreedom(4));
    CHECK(rel_err(p4.tau, 8.0) <= 1e-14);
    CHECK(rel_err(chi_scaled_pdf(p4, 1.0), 1.0826822658929015) <= 1e-13);
}

TEST_CASE("tau matches a direct log-gamma computation") {
    for (int nu = 1; nu <= 50; ++nu) {
        const auto params = ChiScaledDensityParams::make(DegreesOfFreedom(nu));
        const double direct = std::exp(0.5 * nu * std::log((double)nu) - std::lgamma(0.5 * nu) -
                                       (0.5 * nu - 1.0) * std::log(2.0));
        CHECK(rel_err(params.tau, direct) <= 1e-13);
    }
}

TEST_CASE("scaled-chi density integrates to one") {
    for (int nu : {1, 2, 5, 10}) {
        const double mass =
            oracles::simpson([nu](double x) { return oracles::chi_scaled_density(nu, x); }, 0.0,
                             20.0, 200'000);
        // the tail beyond 20 is below e^{-190} for every nu >= 1
        CHECK(std::abs(mass - 1.0) <= 1e-10);

        // start a hair right of 0: the pdf's piecewise value at exactly 0
        // would cost Simpson its order for nu = 1, and the skipped mass is
        // below 1e-12
        const auto params = ChiScaledDensityParams::make(DegreesOfFreedom(nu));
        const double ours =
            oracles::simpson([&](double x) { return chi_scaled_pdf(params, x); }, 1e-12, 20.0,
                             200'000);
        CHECK(std::abs(ours - 1.0) <= 1e-10);
    }
}

TEST_CASE("normal_cdf basics") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(std::numeric_limits<double>::max()) == 1.0);
    CHECK(normal_cdf(-std::numeric_limits<double>::max()) == 0.0);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-8.0, 8.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = dist(rng);
        CHECK(std::abs(normal_cdf(x) + normal_cdf(-x) - 1.0) <= 1e-15);
    }
}

TEST_CASE("normal_cdf two-sided 95% point") {
    // invert by bisection, then evaluate at the classical quantile
    double lo = 1.9, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < 0.975) lo = mid; else hi = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) - 1.9599639845400542) <= 1e-12);
    CHECK(std::abs(normal_cdf(1.9599639845400542) - 0.975) <= 1e-15);
    // the double nearest 0.975 sits 2.2e-17 below it, which moves the
    // quantile by ~3.8e-16
    CHECK(std::abs(normal_quantile(0.975) - 1.9599639845400542) <= 8e-16);
}

TEST_CASE("t_quantile closed-form checks") {
    // nu = 1: F(t) = 1/2 + atan(t)/pi, so the 97.5% point is tan(0.475 pi)
    CHECK(rel_err(t_quantile(DegreesOfFreedom(1), 0.975), 12.706204736174704646) <= 1e-12);
    // bisection oracle on the arctan form
    double lo = 12.0, hi = 13.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (0.5 + std::atan(mid) / std::numbers::pi < 0.975) lo = mid; else hi = mid;
    }
    CHECK(rel_err(t_quantile(DegreesOfFreedom(1), 0.975), 0.5 * (lo + hi)) <= 1e-12);

    // nu = 2: F(t) = 1/2 + t / (2 sqrt(2 + t^2)) inverts to u sqrt(2/(1-u^2))
    CHECK(rel_err(t_quantile(DegreesOfFreedom(2), 0.95), 2.9199855803537256870) <= 1e-12);

    for (int nu : {1, 2, 7}) CHECK(t_quantile(DegreesOfFreedom(nu), 0.5) == 0.0);

    CHECK_THROWS_AS((void)t_quantile(DegreesOfFreedom(3), 0.0), std::domain_error);
    CHECK_THROWS_AS((void)t_quantile(DegreesOfFreedom(3), 1.0), std::domain_error);
    CHECK_THROWS_AS((void)t_quantile(DegreesOfFreedom(3), -0.2), std::domain_error);
}

TEST_CASE("t_quantile round-trips through the t CDF") {
    for (int nu : {1, 2, 5, 10, 100, 1000}) {
        for (double p : {0.02, 0.25, 0.6, 0.9, 0.975, 0.99, 0.999}) {
            const double t = t_quantile(DegreesOfFreedom(nu), p);
            CHECK(std::abs(t_cdf(DegreesOfFreedom(nu), t) - p) <= 1e-11);
        }
    }
}

TEST_CASE("chi2_quantile round-trips") {
    for (int nu : {1, 2, 10, 100}) {
        for (double p : {1e-6, 1e-3, 0.2, 0.5, 0.9, 0.999, 1.0 - 1e-6}) {
            const double t = chi2_quantile(DegreesOfFreedom(nu), p);
            CHECK(std::abs(chi2_cdf(DegreesOfFreedom(nu), t) - p) <= 1e-12);
        }
    }
    CHECK(chi2_quantile(DegreesOfFreedom(3), 0.0) == 0.0);
    CHECK_THROWS_AS((void)chi2_quantile(DegreesOfFreedom(3), 1.0), std::domain_error);
}
