#include "polya/orbit.hpp"

#include "polya/error.hpp"
#include "polya/kernel_eval.hpp"
#include "polya/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polya {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Pair {
    EvalResult f;
    EvalResult d;
};

Pair evaluate(KernelIndex n, PlanePoint p, const QuadratureSpec& q)
{
    return {eval_transform(n, p, q), eval_derivative(n, 1, p, q)};
}

/// Bound on |x y - u v| perturbations given bounds on each factor.
double product_err(double x, double y, double ex, double ey)
{
    return std::abs(x) * ey + ex * std::abs(y) + ex * ey;
}

double direct_j(const Pair& s, double v, double& err)
{
    const double R = s.f.re, I = s.f.im, Rw = s.d.re, Iw = s.d.im;
    const double a = R * Iw, b = I * Rw;
    err = v * (product_err(R, Iw, s.f.err_estimate, s.d.err_estimate) +
               product_err(I, Rw, s.f.err_estimate, s.d.err_estimate) + 2.0 * kEps * (std::abs(a) + std::abs(b)));
    return v * (a - b);
}

double l_squared(KernelIndex n, double w, double sigma, const QuadratureSpec& q, double& err)
{
    const EvalResult f = eval_transform(n, PlanePoint(w, sigma), q);
    const double m = f.modulus();
    err = 2.0 * m * f.err_estimate + f.err_estimate * f.err_estimate + 2.0 * kEps * m * m;
    return m * m;
}

}  // namespace

OrbitTrace orbit_trace(KernelIndex n, double sigma, double v, double t_lo, double t_hi, double dt,
                       const QuadratureSpec& q)
{
    q.validate();
    require(dt > 0.0 && std::isfinite(dt), "orbit step dt must be positive");
    require(v > 0.0 && std::isfinite(v), "orbit velocity v must be positive");
    require(std::isfinite(sigma) && std::isfinite(t_lo) && std::isfinite(t_hi) && t_hi >= t_lo,
            "orbit range must be finite and ascending");
    const auto ts = arange_inclusive(t_lo, t_hi, dt);
    OrbitTrace out{n, sigma, v, std::vector<OrbitSample>(ts.size())};
    parallel_for(ts.size(), [&](std::size_t i) {
        const double w = v * ts[i];
        const Pair s = evaluate(n, PlanePoint(w, sigma), q);
        OrbitSample& o = out.samples[i];
        o.t = ts[i];
        o.w = w;
        o.R = s.f.re;
        o.I = s.f.im;
        o.J = direct_j(s, v, o.J_err);
        o.radius_err = s.f.err_estimate;
    });
    return out;
}

double angular_momentum(KernelIndex n, PlanePoint p, double v, const QuadratureSpec& q)
{
    q.validate();
    require(v > 0.0 && std::isfinite(v), "velocity v must be positive");
    double err = 0.0;
    return direct_j(evaluate(n, p, q), v, err);
}

bool AngularMomentumForms::consistent() const noexcept
{
    return std::abs(direct - cauchy_riemann) <= direct_err + cauchy_riemann_err &&
           std::abs(direct - finite_difference) <= direct_err + finite_difference_err;
}

AngularMomentumForms angular_momentum_forms(KernelIndex n, PlanePoint p, double v, const QuadratureSpec& q)
{
    q.validate();
    require(v > 0.0 && std::isfinite(v), "velocity v must be positive");
    AngularMomentumForms out;
    const Pair s = evaluate(n, p, q);
    out.direct = direct_j(s, v, out.direct_err);

    // R_sigma + i I_sigma = -i F'
    const double R = s.f.re, I = s.f.im;
    const double Rs = s.d.im, Is = -s.d.re;
    const double a = R * Rs, b = I * Is;
    out.cauchy_riemann = v * (a + b);
    out.cauchy_riemann_err =
        v * (product_err(R, Rs, s.f.err_estimate, s.d.err_estimate) +
             product_err(I, Is, s.f.err_estimate, s.d.err_estimate) + 2.0 * kEps * (std::abs(a) + std::abs(b)));

    // central differences at h, h/2 and h/4; two Richardson values, the finer
    // one reported and their spread taken as its truncation error
    const double h = 0.01 * std::max(1.0, std::abs(p.sigma));
    double noise = 0.0;
    auto central = [&](double step) {
        double e1 = 0.0, e2 = 0.0;
        const double up = l_squared(n, p.w, p.sigma + step, q, e1);
        const double down = l_squared(n, p.w, p.sigma - step, q, e2);
        noise = std::max(noise, (e1 + e2) / (2.0 * step));
        return (up - down) / (2.0 * step);
    };
    const double d1 = central(h), d2 = central(0.5 * h), d4 = central(0.25 * h);
    const double r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d4 - d2) / 3.0;
    out.finite_difference = 0.5 * v * r2;
    out.finite_difference_err = 0.5 * v * (std::abs(r2 - r1) + 2.0 * noise);
    return out;
}

}  // namespace polya
