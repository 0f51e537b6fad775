#pragma once

#include "polya/types.hpp"

#include <span>
#include <utility>
#include <vector>

namespace polya {

/// Leibniz route needs derivatives up to order 2m.
inline constexpr int kMaxCoeffOrder = 12;
/// The 2-D route is a desk-scale cross-check only.
inline constexpr int kMaxDirectOrder = 3;
inline constexpr double kMaxDirectW = 8.0;

enum class CoeffMethod { leibniz, direct2d };

const char* to_string(CoeffMethod method) noexcept;

/// A_{2m,2n}(w), the coefficient of sigma^(2m)/(2m)! in 2 |F(w - i sigma)|^2.
struct ACoeffSample {
    KernelIndex n{1};
    int m = 0;
    double w = 0.0;
    double value = 0.0;
    CoeffMethod method = CoeffMethod::leibniz;
    double err_estimate = 0.0;
    bool cancellation_alarm = false;  ///< err_estimate > 1e-3 |value| + 10 tol
    double imag_part = 0.0;           ///< direct2d only; vanishes by X -> -X symmetry
};

/// 2 (-1)^m sum_k C(2m,k) (-1)^k F^(k)(w) F^(2m-k)(w), derivatives taken with
/// the absolute tolerance tightened to tol / 4^m.
ACoeffSample a_coeff(KernelIndex n, int m, double w, const QuadratureSpec& q = {});

/// a_coeff for m = 0..m_max sharing one set of derivatives (tol / 4^m_max).
std::vector<ACoeffSample> a_coeff_series(KernelIndex n, int m_max, double w, const QuadratureSpec& q = {});

/// Tensor-product Gauss-Legendre over the (t, X) square
///   int int t^2m exp(-((t+X)/2)^2n - ((t-X)/2)^2n + i w X) dt dX,
/// doubling the panel count per axis until |Q_p - Q_2p| + tail <= target.
ACoeffSample a_coeff_direct(KernelIndex n, int m, double w, const QuadratureSpec& q2d = {});

struct SeriesValue {
    double value = 0.0;
    double err_estimate = 0.0;
    double last_term = 0.0;
    bool truncation_flag = false;  ///< |last term| > stop_tol * |partial sum|
};

/// 1/2 sum_{m<=m_max} sigma^2m/(2m)! A_{2m,2n}(w).
SeriesValue l2_series(KernelIndex n, PlanePoint p, int m_max, const QuadratureSpec& q = {},
                      double stop_tol = 1e-9);

struct MonotonicityProfile {
    std::vector<std::pair<double, double>> samples;  ///< (sigma, L^2)
    bool monotone = false;
};

/// L^2 by direct evaluation along ascending nonnegative sigma; monotone when
/// every step satisfies L2[i+1] >= L2[i] - 1e-12 max(1, L2[i]).
MonotonicityProfile monotonicity_profile(KernelIndex n, double w, std::span<const double> sigma_grid,
                                         const QuadratureSpec& q = {});

/// The r-th factor of |P(z)|^2 / c^2 written two ways, and its sigma-derivative.
double p_factor_expanded(double w, double sigma, double alpha);
double p_factor_sum_of_squares(double w, double sigma, double alpha);
double p_factor_sigma_derivative(double w, double sigma, double alpha);

}  // namespace polya
