#include "polya/kernel_eval.hpp"

#include "polya/error.hpp"
#include "polya/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace polya {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kExponentLimit = 700.0;
constexpr double kPanelWidthCap = 0.5;
constexpr complex kI{0.0, 1.0};

complex ipow(complex x, int p)
{
    complex r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

double line_exponent(int two_n, complex z, double eta, double t)
{
    const complex tau{t, eta};
    return (-ipow(tau, two_n) + kI * z * tau).real();
}

/// max over t of Re(-tau^(2n) + i z tau) on tau = t + i eta, |t| <= half_width.
double line_peak(int two_n, complex z, double eta, double half_width)
{
    constexpr int samples = 161;
    const double h = 2.0 * half_width / (samples - 1);
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double v = line_exponent(two_n, z, eta, -half_width + i * h);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    // golden-section polish inside the neighbouring samples
    double lo = -half_width + (best - 1) * h;
    double hi = -half_width + (best + 1) * h;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = line_exponent(two_n, z, eta, x1), f2 = line_exponent(two_n, z, eta, x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = line_exponent(two_n, z, eta, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = line_exponent(two_n, z, eta, x2);
        }
    }
    return std::max({best_value, f1, f2});
}

struct Contour {
    double eta = 0.0;
    double peak = 0.0;
};

/// Candidate lines pass through the saddle points of -t^(2n) + i z t, i.e. the
/// roots of t^(2n-1) = i z / (2n). The real line is kept unless a candidate
/// lowers the peak exponent by more than one unit.
Contour choose_contour(int two_n, complex z)
{
    const complex c = kI * z / static_cast<double>(two_n);
    const double r = std::pow(std::abs(c), 1.0 / (two_n - 1));
    const double half_width = 2.0 * std::max(r, 1.0) + 1.0;

    Contour best{0.0, line_peak(two_n, z, 0.0, half_width)};
    if (z.real() == 0.0 || r == 0.0) return best;

    const double base_peak = best.peak;
    for (int j = 0; j < two_n - 1; ++j) {
        const double theta = (std::arg(c) + 2.0 * std::numbers::pi * j) / (two_n - 1);
        const double eta = r * std::sin(theta);
        if (std::abs(eta) < 1e-12) continue;
        const double peak = line_peak(two_n, z, eta, half_width + std::abs(eta));
        if (peak < base_peak - 1.0 && peak < best.peak) best = {eta, peak};
    }
    return best;
}

/// Smallest T >= t_min such that h(t) = a t^p - b t - k ln(c t) - d is
/// nonnegative and nondecreasing for all t >= T. h' is increasing on t > 0.
double solve_radius(int p, double a, double b, int k, double c, double d, double t_min)
{
    auto h = [&](double t) { return a * std::pow(t, p) - b * t - k * std::log(c * t) - d; };
    auto dh = [&](double t) { return p * a * std::pow(t, p - 1) - b - k / t; };

    auto first_true = [](double lo, auto&& pred) {
        if (pred(lo)) return lo;
        double hi = 2.0 * lo;
        while (!pred(hi)) {
            lo = hi;
            hi *= 2.0;
        }
        for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (pred(mid) ? hi : lo) = mid;
        }
        return hi;
    };

    const double t1 = first_true(t_min, [&](double t) { return dh(t) >= 0.0; });
    return first_true(t1, [&](double t) { return h(t) >= 0.0; });
}

double shifted_radius(KernelIndex n, complex z, double eta, int k, double tol)
{
    if (eta == 0.0) return truncation_radius(n, -z.imag(), k, tol);
    // Off the real axis Re(tau^(2n)) >= t^(2n)/2 once 2n*atan(|eta|/t) <= pi/3,
    // and |tau| <= sqrt(2) t once t >= |eta|. The tail bound then mirrors the
    // unshifted one with t^(2n)/4 in place of t^(2n)/2.
    const int nn = n.value();
    const double t_min = std::max({2.0, std::abs(eta), 6.0 * nn * std::abs(eta) / std::numbers::pi});
    const double w = z.real(), sigma = -z.imag();
    return solve_radius(n.degree(), 0.25, std::abs(sigma), k, std::sqrt(2.0),
                        std::log(2.0 / tol) - w * eta, t_min);
}

struct Integrand {
    int two_n;
    int k;
    complex z;
    double eta;
    double shift;  // peak exponent factored out of every sample

    /// Returns the sample scaled by exp(-shift); `cond` receives a bound on the
    /// relative rounding error of that sample in units of machine epsilon.
    complex operator()(double t, double& cond) const
    {
        const complex tau{t, eta};
        const complex tp = ipow(tau, two_n);
        const complex phi = -tp + kI * z * tau;
        complex g = std::exp(phi - shift);
        if (k > 0) g *= ipow(kI * tau, k);
        cond = 4.0 + k + std::abs(phi) + std::abs(shift) + two_n * std::abs(tp) +
               std::abs(z) * std::abs(tau);
        return g;
    }
};

struct Panel {
    double a = 0.0, b = 0.0;
    complex value;
    double err = 0.0;
    double l1 = 0.0;
    double floor = 0.0;
};

Panel integrate_panel(const Integrand& f, double a, double b, const GaussLegendreRule& lo,
                      const GaussLegendreRule& hi)
{
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Panel p{a, b, {}, 0.0, 0.0, 0.0};
    ComplexCompensatedSum s_hi, s_lo;
    CompensatedSum l1, floor;
    double cond = 0.0;
    for (std::size_t i = 0; i < hi.nodes.size(); ++i) {
        const complex g = f(mid + half * hi.nodes[i], cond);
        const double mag = std::abs(g) * hi.weights[i];
        s_hi.add(g * hi.weights[i]);
        l1.add(mag);
        floor.add(mag * cond);
    }
    for (std::size_t i = 0; i < lo.nodes.size(); ++i)
        s_lo.add(f(mid + half * lo.nodes[i], cond) * lo.weights[i]);
    p.value = s_hi.value() * half;
    p.err = std::abs(s_hi.value() - s_lo.value()) * half;
    p.l1 = l1.value() * half;
    p.floor = 2.0 * kEps * floor.value() * half;
    return p;
}

EvalResult integrate(KernelIndex n, int k, PlanePoint p, const QuadratureSpec& q, ContourInfo* info)
{
    q.validate();
    require(k >= 0 && k <= kMaxDerivativeOrder,
            "derivative order must lie in [0, " + std::to_string(kMaxDerivativeOrder) + "]");

    const int two_n = n.degree();
    const complex z = p.z();
    const Contour contour = choose_contour(two_n, z);
    if (contour.peak > kExponentLimit || contour.peak < -kExponentLimit)
        fail(ErrorKind::OverflowGuard,
             "peak exponent " + std::to_string(contour.peak) + " at w=" + std::to_string(p.w) +
                 ", sigma=" + std::to_string(p.sigma) + " leaves the double range");

    const double tail_tol = 0.25 * q.tol;
    const Integrand f{two_n, k, z, contour.eta, contour.peak};
    double radius = 0.0;
    double tail = tail_tol;
    if (q.truncation_radius_override) {
        radius = *q.truncation_radius_override;
        double cond = 0.0;
        tail = 2.0 * std::exp(contour.peak) *
               std::max(std::abs(f(radius, cond)), std::abs(f(-radius, cond)));
    } else {
        radius = shifted_radius(n, z, contour.eta, k, tail_tol);
    }

    const auto& lo = gauss_legendre(q.panel_order);
    const auto& hi = gauss_legendre(2 * q.panel_order);

    double width = kPanelWidthCap;
    if (p.w != 0.0) width = std::min(width, std::numbers::pi / std::abs(p.w));
    const int initial = std::max(2, static_cast<int>(std::ceil(2.0 * radius / width)));
    if (initial > q.max_panels)
        fail(ErrorKind::ToleranceNotMet, "initial panel layout (" + std::to_string(initial) +
                                             " panels) exceeds max_panels");

    std::vector<Panel> panels;
    panels.reserve(static_cast<std::size_t>(initial) + 64);
    const double h = 2.0 * radius / initial;
    for (int i = 0; i < initial; ++i) {
        const double a = -radius + i * h;
        const double b = (i + 1 == initial) ? radius : -radius + (i + 1) * h;
        panels.push_back(integrate_panel(f, a, b, lo, hi));
    }

    const double scale_factor = std::exp(contour.peak);
    double quad_err = 0.0, rounding = 0.0, target = 0.0;
    for (;;) {
        CompensatedSum err_sum, l1_sum, floor_sum;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            err_sum.add(panels[i].err);
            l1_sum.add(panels[i].l1);
            floor_sum.add(panels[i].floor);
            if (panels[i].err > panels[worst].err) worst = i;
        }
        quad_err = err_sum.value() * scale_factor;
        rounding = floor_sum.value() * scale_factor;
        target = q.target(l1_sum.value() * scale_factor);
        if (rounding + tail > 0.5 * target && !q.truncation_radius_override)
            fail(ErrorKind::ToleranceNotMet,
                 "rounding floor " + std::to_string(rounding) + " exceeds half the target " +
                     std::to_string(target) + " at w=" + std::to_string(p.w) +
                     ", sigma=" + std::to_string(p.sigma));
        if (quad_err + rounding + tail <= target) break;
        if (static_cast<int>(panels.size()) >= q.max_panels)
            fail(ErrorKind::ToleranceNotMet,
                 "panel budget exhausted with error estimate " + std::to_string(quad_err) +
                     " above target " + std::to_string(target));
        const Panel split = panels[worst];
        const double mid = 0.5 * (split.a + split.b);
        panels[worst] = integrate_panel(f, split.a, mid, lo, hi);
        panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                      integrate_panel(f, mid, split.b, lo, hi));
    }

    ComplexCompensatedSum total;
    for (const auto& panel : panels) total.add(panel.value);

    if (info) *info = {contour.eta, contour.peak, radius, static_cast<int>(panels.size())};
    return EvalResult(total.value() * scale_factor, quad_err + rounding + tail);
}

}  // namespace

double truncation_radius(KernelIndex n, double sigma, int k, double tol)
{
    require(tol > 0.0 && std::isfinite(tol), "truncation tolerance must be positive");
    require(k >= 0, "moment order must be nonnegative");
    require(std::isfinite(sigma), "sigma must be finite");
    return solve_radius(n.degree(), 0.5, std::abs(sigma), k, 1.0, std::log(2.0 / tol), 1.0);
}

EvalResult eval_transform(KernelIndex n, PlanePoint p, const QuadratureSpec& q)
{
    return integrate(n, 0, p, q, nullptr);
}

EvalResult eval_derivative(KernelIndex n, int k, PlanePoint p, const QuadratureSpec& q)
{
    return integrate(n, k, p, q, nullptr);
}

ContourInfo describe_contour(KernelIndex n, int k, PlanePoint p, const QuadratureSpec& q)
{
    ContourInfo info;
    integrate(n, k, p, q, &info);
    return info;
}

EvalResult closed_form_gaussian(PlanePoint p)
{
    const double log_mod = 0.25 * (p.sigma * p.sigma - p.w * p.w);
    const double phase = 0.5 * p.sigma * p.w;
    const double mod = std::sqrt(std::numbers::pi) * std::exp(log_mod);
    const double err = 4.0 * kEps * mod * (2.0 + std::abs(log_mod) + std::abs(phase));
    return EvalResult(mod * std::cos(phase), mod * std::sin(phase), err);
}

}  // namespace polya
