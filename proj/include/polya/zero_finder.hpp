#pragma once

#include "polya/types.hpp"

#include <span>
#include <vector>

namespace polya {

/// A certified positive real zero alpha_r of F_2n. Negative zeros are implied
/// by evenness and never stored.
struct ZeroRecord {
    KernelIndex n{1};
    int index = 0;            ///< r, 1-based, ascending in alpha
    double alpha = 0.0;
    double f_prime = 0.0;     ///< F'(alpha)
    double residual = 0.0;    ///< |F(alpha)| + its error estimate
};

struct SimplicityReport {
    ZeroRecord zero;
    double derivative_magnitude = 0.0;
    double derivative_error = 0.0;
    double ode_residual_at_zero = 0.0;
};

/// Sampling step of the sign scan at abscissa w: zeros thicken like
/// w^(1/(2n-1)), so the step shrinks with that density.
double scan_step(KernelIndex n, double w);

/// Every sign change of F_2n on (0, w_max], refined by bisection to 1e-8 then
/// Illinois regula falsi. Each bracket is re-sampled at 1/16 of the scan step
/// so a bracket hiding three sign changes splits into three zeros.
/// Throws ToleranceNotMet if a refined zero fails residual <= q.tol.
std::vector<ZeroRecord> scan_real_zeros(KernelIndex n, double w_max, const QuadratureSpec& q = {});

/// The first `count` positive zeros, scanning outward in chunks. Throws NoZeros
/// for n = 1 (F_2 is a Gaussian).
std::vector<ZeroRecord> first_real_zeros(KernelIndex n, int count, const QuadratureSpec& q = {});

/// Recomputes F'(alpha) at half tolerance. Throws NotAZero if |F(alpha)|
/// exceeds q.tol beyond its error, and SimplicityIndeterminate if |F'(alpha)|
/// is not above ten times its own error estimate.
SimplicityReport verify_simplicity(KernelIndex n, const ZeroRecord& zero, const QuadratureSpec& q = {});

struct OdeReport {
    double residual_first = 0.0;   ///< |F^(2n-1) - (-1)^n/(2n) w F|
    double bound_first = 0.0;      ///< summed error estimates of its terms
    double residual_second = 0.0;  ///< |F^(2n) - (-1)^n/(2n) (F + w F')|
    double bound_second = 0.0;
};

OdeReport ode_report(KernelIndex n, double w, const QuadratureSpec& q = {});

/// residual_first of ode_report.
double ode_residual(KernelIndex n, double w, const QuadratureSpec& q = {});

/// Second log-derivative of |F| against its zero sum:
/// (F'^2 - F'' F) / F^2 = sum_r (w - alpha_r)^-2 + (w + alpha_r)^-2.
struct LogDerivativeCheck {
    double lhs = 0.0;
    double lhs_error = 0.0;
    std::vector<double> partial_sums;  ///< after 1, 2, ... zero pairs
    bool monotone = false;             ///< partial sums strictly increasing
    bool no_overshoot = false;         ///< every partial sum <= lhs + lhs_error
    double relative_deficit = 0.0;     ///< (lhs - last partial sum) / lhs
};

LogDerivativeCheck log_derivative_check(KernelIndex n, double w, std::span<const ZeroRecord> zeros,
                                        const QuadratureSpec& q = {});

}  // namespace polya
