#pragma once

// The double-exponential change of variable x(y) = exp(y/2 - e^{-y}), the
// transformed weight psi_nu(y) = f_nu(x(y)) dx/dy, its mode, and the
// tail-trimming machinery: the computable bound
//   u_nu(y, d) = Q_nu(nu x^2(y)) + 1 - Q_nu(nu x^2(y + d))
// on the mass discarded when the infinite trapezoidal sum is cut to the
// window [y, y + d], and the (y_lo, d) solver that drives it to a target.

#include <cmath>

#include "chiquad/specfun.hpp"

namespace chiquad {

/// A point of the transform: y, x = x(y), and the Jacobian dx/dy.
struct MoriPoint {
    double y;
    double x;
    double dxdy;
};

/// A trimming window [y_lo, y_lo + d] with its guaranteed tail bound.
struct MoriWindow {
    DegreesOfFreedom nu;
    double y_lo;
    double d;
    double bound;  ///< u_nu(y_lo, d)

    double y_hi() const noexcept { return y_lo + d; }
};

/// The transformed weight psi_nu for a fixed nu; caches the density constant.
class TransformedWeight {
public:
    explicit TransformedWeight(DegreesOfFreedom nu);

    DegreesOfFreedom nu() const noexcept { return params_.nu; }

    /// ln psi_nu(y); -inf when psi underflows.
    double log_at(double y) const;

    /// psi_nu(y); clean 0 instead of NaN/Inf at extreme y.
    double operator()(double y) const { return std::exp(log_at(y)); }

private:
    ChiScaledDensityParams params_;
    long double log_tau_ld_;
};

/// x(y) and dx/dy. Underflows to (x=0, dxdy=0) for very negative y instead
/// of producing NaN.
MoriPoint transform(double y);

/// ln x(y) = y/2 - e^{-y}; -inf when e^{-y} overflows.
double log_x(double y);

/// psi_nu(y) = f_nu(x(y)) dx/dy, evaluated in log space.
double psi(DegreesOfFreedom nu, double y);

/// The maximizer y*_nu of psi_nu, located by golden-section search to
/// |dy| <= 1e-10. Throws std::runtime_error if the coarse scan contradicts
/// unimodality (which would indicate a density defect).
double psi_mode(DegreesOfFreedom nu);

/// The trimming bound u_nu(y, d). Requires d > 0.
double trimming_bound(DegreesOfFreedom nu, double y, double d);

/// Solve for the window: d such that min_y u_nu(y, d) = target, with y_lo the
/// minimizing y (the stationarity condition psi(y_lo) = psi(y_lo + d)).
/// Requires 0 < target < 1; throws std::runtime_error if no d <= 200 reaches
/// the target.
MoriWindow solve_window(DegreesOfFreedom nu, double target);

}  // namespace chiquad
