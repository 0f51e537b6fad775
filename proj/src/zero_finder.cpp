#include "polya/zero_finder.hpp"

#include "polya/error.hpp"
#include "polya/kernel_eval.hpp"
#include "polya/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace polya {

namespace {

constexpr double kBaseStep = 0.05;
constexpr double kDensityStep = 0.05;
constexpr int kLocalRescan = 16;
constexpr double kBisectWidth = 1e-8;
constexpr double kChunk = 16.0;

struct Sample {
    double w = 0.0;
    double f = 0.0;
    double err = 0.0;
};

Sample sample(KernelIndex n, double w, const QuadratureSpec& q)
{
    const EvalResult r = eval_transform(n, PlanePoint(w, 0.0), q);
    return {w, r.re, r.err_estimate};
}

bool positive(double f) { return f >= 0.0; }

std::vector<double> scan_nodes(KernelIndex n, double from, double to)
{
    std::vector<double> nodes{from};
    while (nodes.back() < to) nodes.push_back(std::min(to, nodes.back() + scan_step(n, nodes.back())));
    return nodes;
}

/// Bisection down to kBisectWidth, then Illinois steps inside the bracket.
Sample refine_bracket(KernelIndex n, Sample a, Sample b, const QuadratureSpec& q)
{
    while (b.w - a.w > kBisectWidth) {
        const Sample m = sample(n, 0.5 * (a.w + b.w), q);
        if (positive(m.f) == positive(a.f))
            a = m;
        else
            b = m;
    }
    Sample best = std::abs(a.f) < std::abs(b.f) ? a : b;
    int retained = 0;  // +1: a kept twice in a row, -1: b kept twice in a row
    for (int it = 0; it < 100; ++it) {
        if (b.w - a.w <= 1e-12 * std::max(1.0, best.w) || best.f == 0.0) break;
        double x = (a.w * b.f - b.w * a.f) / (b.f - a.f);
        if (!(x > a.w && x < b.w)) x = 0.5 * (a.w + b.w);
        const Sample m = sample(n, x, q);
        if (std::abs(m.f) < std::abs(best.f)) best = m;
        if (positive(m.f) == positive(a.f)) {
            a = m;
            if (retained == -1) b.f *= 0.5;
            retained = -1;
        } else {
            b = m;
            if (retained == 1) a.f *= 0.5;
            retained = 1;
        }
    }
    return best;
}

std::vector<std::pair<Sample, Sample>> split_bracket(KernelIndex n, Sample a, Sample b,
                                                     const QuadratureSpec& q)
{
    std::vector<std::pair<Sample, Sample>> out;
    Sample prev = a;
    for (int i = 1; i <= kLocalRescan; ++i) {
        const Sample cur =
            i == kLocalRescan ? b : sample(n, a.w + (b.w - a.w) * i / kLocalRescan, q);
        if (positive(cur.f) != positive(prev.f)) out.emplace_back(prev, cur);
        prev = cur;
    }
    return out;
}

std::vector<ZeroRecord> scan_interval(KernelIndex n, double from, double to, const QuadratureSpec& q)
{
    const std::vector<double> nodes = scan_nodes(n, from, to);
    std::vector<Sample> samples(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) { samples[i] = sample(n, nodes[i], q); });

    std::vector<std::pair<Sample, Sample>> brackets;
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (positive(samples[i].f) != positive(samples[i - 1].f))
            brackets.emplace_back(samples[i - 1], samples[i]);

    std::vector<std::vector<std::pair<Sample, Sample>>> split(brackets.size());
    parallel_for(brackets.size(), [&](std::size_t i) {
        split[i] = split_bracket(n, brackets[i].first, brackets[i].second, q);
    });
    std::vector<std::pair<Sample, Sample>> fine;
    for (auto& s : split) fine.insert(fine.end(), s.begin(), s.end());

    std::vector<ZeroRecord> zeros(fine.size());
    parallel_for(fine.size(), [&](std::size_t i) {
        const Sample root = refine_bracket(n, fine[i].first, fine[i].second, q);
        ZeroRecord z;
        z.n = n;
        z.alpha = root.w;
        z.residual = std::abs(root.f) + root.err;
        z.f_prime = eval_derivative(n, 1, PlanePoint(root.w, 0.0), q).re;
        if (z.residual > q.tol)
            fail(ErrorKind::ToleranceNotMet, "zero near w=" + std::to_string(root.w) +
                                                 " has residual " + std::to_string(z.residual) +
                                                 " above tol " + std::to_string(q.tol));
        zeros[i] = z;
    });
    return zeros;
}

}  // namespace

double scan_step(KernelIndex n, double w)
{
    return std::min(kBaseStep, kDensityStep * std::pow(1.0 + std::abs(w), -1.0 / (n.degree() - 1)));
}

std::vector<ZeroRecord> scan_real_zeros(KernelIndex n, double w_max, const QuadratureSpec& q)
{
    q.validate();
    require(w_max > 0.0 && std::isfinite(w_max), "w_max must be positive");
    // whole chunks, so the zeros are bit-identical to those of first_real_zeros
    std::vector<ZeroRecord> zeros;
    for (double from = 0.0; from < w_max; from += kChunk) {
        auto more = scan_interval(n, from, from + kChunk, q);
        for (const auto& z : more)
            if (z.alpha <= w_max) zeros.push_back(z);
    }
    for (std::size_t i = 0; i < zeros.size(); ++i) zeros[i].index = static_cast<int>(i) + 1;
    return zeros;
}

std::vector<ZeroRecord> first_real_zeros(KernelIndex n, int count, const QuadratureSpec& q)
{
    q.validate();
    require(count >= 0, "zero count must be nonnegative");
    if (count == 0) return {};
    if (n.value() == 1) fail(ErrorKind::NoZeros, "F_2 is a Gaussian and has no zeros");

    std::vector<ZeroRecord> zeros;
    for (double from = 0.0; static_cast<int>(zeros.size()) < count; from += kChunk) {
        auto more = scan_interval(n, from, from + kChunk, q);
        zeros.insert(zeros.end(), more.begin(), more.end());
    }
    zeros.resize(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < zeros.size(); ++i) zeros[i].index = static_cast<int>(i) + 1;
    return zeros;
}

SimplicityReport verify_simplicity(KernelIndex n, const ZeroRecord& zero, const QuadratureSpec& q)
{
    q.validate();
    const QuadratureSpec half = q.scaled(0.5);
    const PlanePoint at(zero.alpha, 0.0);
    const EvalResult f = eval_transform(n, at, half);
    if (zero.residual > q.tol || std::abs(f.re) - f.err_estimate > q.tol)
        fail(ErrorKind::NotAZero, "w=" + std::to_string(zero.alpha) + " has |F| = " +
                                      std::to_string(std::abs(f.re)) + " above tol " +
                                      std::to_string(q.tol));
    const EvalResult d = eval_derivative(n, 1, at, half);
    const double magnitude = std::abs(d.value());
    if (!(magnitude > 10.0 * d.err_estimate))
        fail(ErrorKind::SimplicityIndeterminate,
             "|F'(" + std::to_string(zero.alpha) + ")| = " + std::to_string(magnitude) +
                 " does not exceed ten times its error bound " + std::to_string(d.err_estimate));
    return {zero, magnitude, d.err_estimate, ode_residual(n, zero.alpha, half)};
}

OdeReport ode_report(KernelIndex n, double w, const QuadratureSpec& q)
{
    const int two_n = n.degree();
    const double coeff = (n.value() % 2 == 0 ? 1.0 : -1.0) / two_n;
    const PlanePoint at(w, 0.0);
    const EvalResult f0 = eval_derivative(n, 0, at, q);
    const EvalResult f1 = eval_derivative(n, 1, at, q);
    const EvalResult fa = eval_derivative(n, two_n - 1, at, q);
    const EvalResult fb = eval_derivative(n, two_n, at, q);

    OdeReport r;
    r.residual_first = std::abs(fa.value() - coeff * w * f0.value());
    r.bound_first = fa.err_estimate + std::abs(coeff * w) * f0.err_estimate;
    r.residual_second = std::abs(fb.value() - coeff * (f0.value() + w * f1.value()));
    r.bound_second = fb.err_estimate + std::abs(coeff) * (f0.err_estimate + std::abs(w) * f1.err_estimate);
    return r;
}

double ode_residual(KernelIndex n, double w, const QuadratureSpec& q)
{
    return ode_report(n, w, q).residual_first;
}

LogDerivativeCheck log_derivative_check(KernelIndex n, double w, std::span<const ZeroRecord> zeros,
                                        const QuadratureSpec& q)
{
    const PlanePoint at(w, 0.0);
    const EvalResult f0 = eval_derivative(n, 0, at, q);
    const EvalResult f1 = eval_derivative(n, 1, at, q);
    const EvalResult f2 = eval_derivative(n, 2, at, q);
    const double f = f0.re, d1 = f1.re, d2 = f2.re;
    require(std::abs(f) > 10.0 * f0.err_estimate, "log-derivative check needs w away from a zero");

    LogDerivativeCheck out;
    const double f_sq = f * f;
    out.lhs = (d1 * d1 - d2 * f) / f_sq;
    out.lhs_error = (2.0 * std::abs(d1) * f1.err_estimate + std::abs(d2) * f0.err_estimate +
                     std::abs(f) * f2.err_estimate) / f_sq +
                    2.0 * std::abs(out.lhs) * f0.err_estimate / std::abs(f);

    CompensatedSum sum;
    out.monotone = true;
    out.no_overshoot = true;
    double prev = 0.0;
    for (const auto& z : zeros) {
        const double a = w - z.alpha, b = w + z.alpha;
        sum.add(1.0 / (a * a));
        sum.add(1.0 / (b * b));
        const double s = sum.value();
        if (!(s > prev)) out.monotone = false;
        if (s > out.lhs + out.lhs_error) out.no_overshoot = false;
        out.partial_sums.push_back(s);
        prev = s;
    }
    out.relative_deficit = (out.lhs - prev) / out.lhs;
    return out;
}

}  // namespace polya
