#pragma once

#include "polya/types.hpp"

namespace polya {

/// Highest z-derivative order accepted by eval_derivative. The moment factor
/// t^k inflates the integrand's mass away from the peak, so accuracy degrades
/// slowly with k; consumers cap their own orders against this.
inline constexpr int kMaxDerivativeOrder = 24;

/// Half-width T of the integration window such that
/// 2 * int_T^inf t^k exp(-t^(2n) + |sigma| t) dt <= tol.
///
/// T is the smallest t >= 1 beyond which
/// t^(2n)/2 >= |sigma| t + k ln t + ln(2/tol) holds for all larger t; the
/// integrand is then below (tol/2) exp(-t^(2n)/2), whose tail integrates to
/// less than one.
double truncation_radius(KernelIndex n, double sigma, int k, double tol);

/// F_2n(z) = int exp(-t^(2n)) exp(i z t) dt at z = w - i sigma.
EvalResult eval_transform(KernelIndex n, PlanePoint p, const QuadratureSpec& q = {});

/// k-th z-derivative, int (i t)^k exp(-t^(2n)) exp(i z t) dt. k = 0 is
/// eval_transform.
///
/// The integral is taken along the horizontal line Im t = eta through the
/// dominant saddle point of the exponent (eta = 0 when no shift helps). The
/// integrand is entire and decays along every horizontal line, so the value
/// is unchanged, but the integrand's magnitude on the line stays comparable to
/// |F| instead of exceeding it by exp(c |w|^(2n/(2n-1))). Without this, values
/// past the first few real zeros are lost to cancellation.
///
/// err_estimate = sum of per-panel |Q_p - Q_2p| + analytic tail bound +
/// floating-point rounding floor. The panel refinement stops once it is below
/// q.target(L1 mass of the integrand). Throws ToleranceNotMet when the panel
/// budget runs out or the rounding floor alone exceeds the target, and
/// OverflowGuard when the peak exponent leaves [-700, 700].
EvalResult eval_derivative(KernelIndex n, int k, PlanePoint p, const QuadratureSpec& q = {});

/// sqrt(pi) exp(-z^2/4) = sqrt(pi) exp((sigma^2 - w^2)/4) exp(i sigma w / 2).
EvalResult closed_form_gaussian(PlanePoint p);

/// How eval_derivative integrates at a point; exposed for diagnostics and tests.
struct ContourInfo {
    double shift = 0.0;          ///< eta, imaginary offset of the integration line
    double peak_exponent = 0.0;  ///< max of Re(exponent) along the line
    double radius = 0.0;         ///< half-width of the truncated window
    int panels = 0;              ///< panels after adaptive refinement
};

ContourInfo describe_contour(KernelIndex n, int k, PlanePoint p, const QuadratureSpec& q = {});

}  // namespace polya
