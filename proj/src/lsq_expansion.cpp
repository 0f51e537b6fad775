#include "polya/lsq_expansion.hpp"

#include "polya/error.hpp"
#include "polya/kernel_eval.hpp"
#include "polya/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace polya {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

QuadratureSpec tightened(const QuadratureSpec& q, int m)
{
    QuadratureSpec out = q;
    out.tol = q.tol / std::pow(4.0, m);
    return out;
}

ACoeffSample combine(KernelIndex n, int m, double w, const std::vector<EvalResult>& d, double tol)
{
    CompensatedSum sum;
    double err = 0.0, mass = 0.0;
    for (int k = 0; k <= 2 * m; ++k) {
        const double c = binomial(2 * m, k);
        const EvalResult& a = d[static_cast<std::size_t>(k)];
        const EvalResult& b = d[static_cast<std::size_t>(2 * m - k)];
        const double term = c * a.re * b.re;
        sum.add(k % 2 == 0 ? term : -term);
        err += c * (std::abs(a.re) * b.err_estimate + a.err_estimate * std::abs(b.re) +
                    a.err_estimate * b.err_estimate);
        mass += std::abs(term);
    }
    const double sign = (m % 2 == 0) ? 2.0 : -2.0;
    ACoeffSample s;
    s.n = n;
    s.m = m;
    s.w = w;
    s.method = CoeffMethod::leibniz;
    s.value = sign * sum.value();
    s.err_estimate = 2.0 * err + 2.0 * kEps * mass * (2 * m + 2);
    s.cancellation_alarm = s.err_estimate > 1e-3 * std::abs(s.value) + 10.0 * tol;
    return s;
}

std::vector<EvalResult> derivatives(KernelIndex n, int k_max, double w, const QuadratureSpec& q)
{
    std::vector<EvalResult> d(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) d[static_cast<std::size_t>(k)] = eval_derivative(n, k, PlanePoint(w, 0.0), q);
    return d;
}

/// int |x|^j exp(-x^(2n)) dx over the real line.
double absolute_moment(KernelIndex n, int j)
{
    return std::tgamma((j + 1.0) / n.degree()) / n.value();
}

struct Grid1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Grid1D composite(double lo, double hi, int panels, const GaussLegendreRule& rule)
{
    Grid1D g;
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            g.nodes.push_back(mid + 0.5 * h * rule.nodes[i]);
            g.weights.push_back(0.5 * h * rule.weights[i]);
        }
    }
    return g;
}

struct DirectSum {
    complex value;
    double l1 = 0.0;
    double floor = 0.0;
};

DirectSum direct_sum(KernelIndex n, int m, double w, const Grid1D& tg, const Grid1D& xg)
{
    const int two_n = n.degree();
    ComplexCompensatedSum total;
    CompensatedSum l1, floor;
    std::vector<complex> phase(xg.nodes.size());
    for (std::size_t j = 0; j < xg.nodes.size(); ++j)
        phase[j] = std::polar(xg.weights[j], w * xg.nodes[j]);
    for (std::size_t i = 0; i < tg.nodes.size(); ++i) {
        const double t = tg.nodes[i];
        const double moment = std::pow(t, 2 * m) * tg.weights[i];
        ComplexCompensatedSum row;
        double row_l1 = 0.0, row_floor = 0.0;
        for (std::size_t j = 0; j < xg.nodes.size(); ++j) {
            const double X = xg.nodes[j];
            const double e = std::pow(0.5 * (t + X), two_n) + std::pow(0.5 * (t - X), two_n);
            const double g = std::exp(-e);
            row.add(g * phase[j]);
            const double mag = g * xg.weights[j];
            row_l1 += mag;
            row_floor += mag * (4.0 + e + std::abs(w * X) + 2 * m);
        }
        total.add(moment * row.value());
        l1.add(std::abs(moment) * row_l1);
        floor.add(std::abs(moment) * row_floor);
    }
    return {total.value(), l1.value(), 2.0 * kEps * floor.value()};
}

}  // namespace

const char* to_string(CoeffMethod method) noexcept
{
    return method == CoeffMethod::leibniz ? "leibniz" : "direct2d";
}

ACoeffSample a_coeff(KernelIndex n, int m, double w, const QuadratureSpec& q)
{
    require(m >= 0 && m <= kMaxCoeffOrder, "a_coeff order m must lie in [0, " + std::to_string(kMaxCoeffOrder) + "]");
    const QuadratureSpec qt = tightened(q, m);
    return combine(n, m, w, derivatives(n, 2 * m, w, qt), qt.tol);
}

std::vector<ACoeffSample> a_coeff_series(KernelIndex n, int m_max, double w, const QuadratureSpec& q)
{
    require(m_max >= 0 && m_max <= kMaxCoeffOrder,
            "a_coeff order m must lie in [0, " + std::to_string(kMaxCoeffOrder) + "]");
    const QuadratureSpec qt = tightened(q, m_max);
    const auto d = derivatives(n, 2 * m_max, w, qt);
    std::vector<ACoeffSample> out;
    for (int m = 0; m <= m_max; ++m) out.push_back(combine(n, m, w, d, qt.tol));
    return out;
}

ACoeffSample a_coeff_direct(KernelIndex n, int m, double w, const QuadratureSpec& q2d)
{
    q2d.validate();
    require(m >= 0 && m <= kMaxDirectOrder, "direct2d order m must lie in [0, " + std::to_string(kMaxDirectOrder) + "]");
    require(std::abs(w) <= kMaxDirectW, "direct2d is limited to |w| <= 8");

    // The square [-2T, 2T]^2 in (t, X) contains |x|, |y| <= T with x = (t+X)/2,
    // y = (t-X)/2. Outside, |t|^2m <= 2^(2m-1)(|x|^2m + |y|^2m) and the 1-D
    // radius bounds each moment's tail by tau.
    const double tail = 0.25 * q2d.tol;
    const double tau = tail / (std::pow(2.0, 2 * m + 1) * (absolute_moment(n, 0) + absolute_moment(n, 2 * m)));
    double half = q2d.truncation_radius_override.value_or(
        std::max(truncation_radius(n, 0.0, 2 * m, tau), truncation_radius(n, 0.0, 0, tau)));
    half *= 2.0;

    const auto& lo = gauss_legendre(q2d.panel_order);
    const auto& hi = gauss_legendre(2 * q2d.panel_order);
    double x_width = 0.5;
    if (w != 0.0) x_width = std::min(x_width, std::numbers::pi / std::abs(w));
    int t_panels = std::max(2, static_cast<int>(std::ceil(2.0 * half / 0.5)));
    int x_panels = std::max(2, static_cast<int>(std::ceil(2.0 * half / x_width)));

    for (;;) {
        const DirectSum s_hi = direct_sum(n, m, w, composite(-half, half, t_panels, hi),
                                          composite(-half, half, x_panels, hi));
        const DirectSum s_lo = direct_sum(n, m, w, composite(-half, half, t_panels, lo),
                                          composite(-half, half, x_panels, lo));
        const double quad_err = std::abs(s_hi.value - s_lo.value);
        const double err = quad_err + s_hi.floor + tail;
        if (err <= q2d.target(s_hi.l1)) {
            ACoeffSample out;
            out.n = n;
            out.m = m;
            out.w = w;
            out.method = CoeffMethod::direct2d;
            out.value = s_hi.value.real();
            out.imag_part = s_hi.value.imag();
            out.err_estimate = err;
            out.cancellation_alarm = err > 1e-3 * std::abs(out.value) + 10.0 * q2d.tol;
            return out;
        }
        if (2 * std::max(t_panels, x_panels) > q2d.max_panels)
            fail(ErrorKind::ToleranceNotMet, "direct2d panel budget exhausted at error " + std::to_string(err));
        t_panels *= 2;
        x_panels *= 2;
    }
}

SeriesValue l2_series(KernelIndex n, PlanePoint p, int m_max, const QuadratureSpec& q, double stop_tol)
{
    const auto coeffs = a_coeff_series(n, m_max, p.w, q);
    CompensatedSum sum;
    double err = 0.0, term = 0.0;
    const double s2 = p.sigma * p.sigma;
    double weight = 0.5;  // 1/2 sigma^2m / (2m)!
    for (int m = 0; m <= m_max; ++m) {
        if (m > 0) weight *= s2 / ((2.0 * m - 1.0) * (2.0 * m));
        term = weight * coeffs[static_cast<std::size_t>(m)].value;
        sum.add(term);
        err += weight * coeffs[static_cast<std::size_t>(m)].err_estimate;
    }
    SeriesValue out;
    out.value = sum.value();
    out.err_estimate = err;
    out.last_term = term;
    out.truncation_flag = std::abs(term) > stop_tol * std::abs(out.value);
    return out;
}

MonotonicityProfile monotonicity_profile(KernelIndex n, double w, std::span<const double> sigma_grid,
                                         const QuadratureSpec& q)
{
    for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
        require(sigma_grid[i] >= 0.0, "sigma grid must be nonnegative");
        if (i > 0) require(sigma_grid[i] > sigma_grid[i - 1], "sigma grid must be ascending");
    }
    MonotonicityProfile out;
    out.samples.resize(sigma_grid.size());
    parallel_for(sigma_grid.size(), [&](std::size_t i) {
        out.samples[i] = {sigma_grid[i], eval_transform(n, PlanePoint(w, sigma_grid[i]), q).l_squared};
    });
    out.monotone = true;
    for (std::size_t i = 1; i < out.samples.size(); ++i) {
        const double prev = out.samples[i - 1].second;
        if (out.samples[i].second < prev - 1e-12 * std::max(1.0, prev)) out.monotone = false;
    }
    return out;
}

double p_factor_expanded(double w, double sigma, double alpha)
{
    const double a2 = alpha * alpha, r2 = w * w + sigma * sigma;
    return 1.0 - 2.0 * (w * w - sigma * sigma) / a2 + r2 * r2 / (a2 * a2);
}

double p_factor_sum_of_squares(double w, double sigma, double alpha)
{
    const double a2 = alpha * alpha;
    const double d = 1.0 - (w * w + sigma * sigma) / a2;
    return d * d + 4.0 * sigma * sigma / a2;
}

double p_factor_sigma_derivative(double w, double sigma, double alpha)
{
    const double a2 = alpha * alpha;
    return 4.0 * sigma / a2 + 4.0 * sigma * (w * w + sigma * sigma) / (a2 * a2);
}

}  // namespace polya
