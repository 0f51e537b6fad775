#include "polya/verify.hpp"

#include "polya/error.hpp"
#include "polya/field_tracer.hpp"
#include "polya/hadamard.hpp"
#include "polya/io.hpp"
#include "polya/kernel_eval.hpp"
#include "polya/lsq_expansion.hpp"
#include "polya/numeric.hpp"
#include "polya/orbit.hpp"
#include "polya/zero_finder.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#ifndef POLYA_GOLDEN_DIR
#define POLYA_GOLDEN_DIR "tests/golden"
#endif

namespace polya {

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

class Context {
public:
    explicit Context(std::filesystem::path golden) : golden_(std::move(golden)) {}

    /// First 40 zeros of F_4, computed once per run.
    const std::vector<ZeroRecord>& f4_zeros()
    {
        if (!zeros_) zeros_ = first_real_zeros(KernelIndex(2), 40);
        return *zeros_;
    }

    CsvTable golden(const std::string& name) const { return parse_csv(read_file(golden_ / name)); }

private:
    std::filesystem::path golden_;
    std::optional<std::vector<ZeroRecord>> zeros_;
};

struct Check {
    int criterion;
    const char* suite;
    const char* name;
    std::function<Outcome(Context&)> run;
};

// --- quadrature -----------------------------------------------------------

Outcome gaussian_oracle(Context&)
{
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double w : arange_inclusive(-6.0, 6.0, 0.5))
        for (double s : arange_inclusive(-3.0, 3.0, 0.5)) {
            const PlanePoint p(w, s);
            worst = std::max(worst, std::abs(eval_transform(KernelIndex(1), p).value() - closed_form_gaussian(p).value()));
        }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= 1e-9 && secs < 5.0, "max |F - closed form| = " + num(worst) + " in " + num(secs) + " s"};
}

Outcome origin_values(Context& ctx)
{
    const CsvTable t = ctx.golden("origin_values.csv");
    double worst = 0.0;
    int seen = 0;
    for (const auto& row : t.rows) {
        const int n = std::stoi(row[0]);
        if (n > 4) continue;
        const double ref = parse_number(row[2]);
        const double v = eval_transform(KernelIndex(n), PlanePoint(0.0, 0.0)).re;
        worst = std::max(worst, std::abs(v - ref) / v);
        ++seen;
    }
    return {seen == 4 && worst <= 1e-9, "n=1..4 max relative error " + num(worst)};
}

Outcome reflection_symmetry(Context&)
{
    double worst = 0.0;  // in units of the combined error bound
    for (int n : {2, 3})
        for (double w : {0.5, 2.0, 7.0})
            for (double s : {0.5, 2.0}) {
                const KernelIndex k(n);
                const EvalResult f = eval_transform(k, PlanePoint(w, s));
                const EvalResult conj = eval_transform(k, PlanePoint(w, -s));
                const EvalResult mirror = eval_transform(k, PlanePoint(-w, s));
                worst = std::max(worst, std::abs(conj.value() - std::conj(f.value())) / (f.err_estimate + conj.err_estimate));
                worst = std::max(worst, std::abs(mirror.value() - std::conj(f.value())) / (f.err_estimate + mirror.err_estimate));
            }
    return {worst <= 1.0, "largest asymmetry / error bound = " + num(worst)};
}

// --- zeros ----------------------------------------------------------------

Outcome f4_zero_goldens(Context& ctx)
{
    const CsvTable t = ctx.golden("f4_zeros.csv");
    const auto& zeros = ctx.f4_zeros();
    double worst_gap = 0.0, worst_f = 0.0;
    bool simple = true;
    std::string why;
    for (std::size_t i = 0; i < t.rows.size() && i < 10; ++i) {
        worst_gap = std::max(worst_gap, std::abs(zeros[i].alpha - parse_number(t.rows[i][1])));
        worst_f = std::max(worst_f, std::abs(eval_transform(KernelIndex(2), PlanePoint(zeros[i].alpha, 0.0)).re));
        try {
            verify_simplicity(KernelIndex(2), zeros[i]);
        } catch (const Error& e) {
            simple = false;
            why = std::string("; ") + e.what();
        }
    }
    return {t.rows.size() == 10 && worst_gap <= 1e-8 && worst_f <= 1e-9 && simple,
            "max |alpha - golden| = " + num(worst_gap) + ", max |F(alpha)| = " + num(worst_f) +
                (simple ? ", all simple" : why)};
}

Outcome ode_identities(Context&)
{
    double worst = 0.0;  // residual / bound
    for (int n : {2, 3})
        for (double w : arange_inclusive(0.0, 8.0, 0.5)) {
            const OdeReport r = ode_report(KernelIndex(n), w);
            worst = std::max({worst, r.residual_first / r.bound_first, r.residual_second / r.bound_second});
        }
    return {worst <= 1.0, "largest residual / error bound = " + num(worst)};
}

// --- lemma1 suite ----------------------------------------------------------

Outcome coefficient_signs(Context&)
{
    const auto ws = arange_inclusive(0.0, 8.0, 0.25);
    std::vector<double> worst(ws.size(), std::numeric_limits<double>::infinity());  // smallest value / err
    parallel_for(ws.size(), [&](std::size_t i) {
        for (const auto& a : a_coeff_series(KernelIndex(2), 6, ws[i]))
            worst[i] = std::min(worst[i], a.value / a.err_estimate);
    });
    const double low = *std::min_element(worst.begin(), worst.end());

    double rel = 0.0;
    for (double w : {0.0, 1.0, 2.0})
        for (const auto& a : a_coeff_series(KernelIndex(1), 6, w)) {
            const double exact = 2.0 * std::numbers::pi * std::exp(-0.5 * w * w) * factorial(2 * a.m) /
                                 (std::pow(2.0, a.m) * factorial(a.m));
            rel = std::max(rel, std::abs(a.value - exact) / exact);
        }
    return {low >= -1.0 && rel <= 1e-7,
            "min A/err (n=2) = " + num(low) + ", n=1 max relative error " + num(rel)};
}

Outcome coefficient_methods(Context&)
{
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int m = 0; m <= 3; ++m)
        for (double w : {0.0, 1.0, 2.0}) {
            const ACoeffSample a = a_coeff(KernelIndex(2), m, w);
            const ACoeffSample b = a_coeff_direct(KernelIndex(2), m, w);
            worst = std::max(worst, std::abs(a.value - b.value) / (a.err_estimate + b.err_estimate));
        }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= 1.0 && secs < 120.0,
            "largest |leibniz - direct2d| / combined error = " + num(worst) + " in " + num(secs) + " s"};
}

Outcome series_expansion(Context&)
{
    double worst = 0.0;
    bool flagged = false;
    for (double s : {0.25, 0.5, 1.0})
        for (double w : arange_inclusive(0.0, 6.0, 0.5)) {
            const PlanePoint p(w, s);
            const SeriesValue v = l2_series(KernelIndex(2), p, kMaxCoeffOrder);
            const double exact = eval_transform(KernelIndex(2), p).l_squared;
            worst = std::max(worst, std::abs(v.value - exact) / exact);
            flagged = flagged || v.truncation_flag;
        }
    return {worst <= 1e-6 && !flagged, "max relative error " + num(worst) + " with m_max = " +
                                           std::to_string(kMaxCoeffOrder) +
                                           (flagged ? ", truncation flagged" : ", no truncation flag")};
}

Outcome recursion_table(Context& ctx)
{
    const KernelIndex n(2);
    const ProductSpec spec(n, leading_constant(n), ctx.f4_zeros(), 40);
    double worst = std::numeric_limits<double>::infinity();  // smallest entry / row scale
    bool trend = true;
    std::string where;
    for (double w : {0.0, 1.0, 2.0, 4.0}) {
        const TTable t = t_table(spec, w, 6);
        for (int K = 1; K <= 40; ++K)
            for (int m = 0; m <= 6; ++m) worst = std::min(worst, t.at(K, m) / t.row_scale(K));
        for (int m = 0; m <= 3; ++m) {
            const double a = a_coeff(n, m, w).value;
            double prev = std::abs(t.at(10, m) - a);
            for (int N : {20, 40}) {
                const double d = std::abs(t.at(N, m) - a);
                if (d > prev) {
                    trend = false;
                    where = " (w=" + num(w) + ", m=" + std::to_string(m) + ")";
                }
                prev = d;
            }
        }
    }
    return {worst >= -1e-12 && trend, "min T/row scale = " + num(worst) +
                                          (trend ? ", |T[N] - A| nonincreasing" : ", trend broken" + where)};
}

Outcome monotone_modulus(Context& ctx)
{
    const double alpha = ctx.f4_zeros().front().alpha;
    const auto grid = arange_inclusive(0.0, 5.0, 0.05);
    bool ok = true;
    for (double w : {alpha, 0.5 * alpha}) ok = monotonicity_profile(KernelIndex(2), w, grid).monotone && ok;
    return {ok, ok ? "L^2 nondecreasing at w = alpha_1 and alpha_1/2" : "L^2 decreases somewhere"};
}

Outcome p_factor_identities(Context&)
{
    double worst = 0.0;
    bool sign = true;
    for (double a : {3.45, 6.78, 25.3})
        for (double w : arange_inclusive(0.0, 8.0, 0.5))
            for (double s : arange_inclusive(0.0, 5.0, 0.5)) {
                const double e = p_factor_expanded(w, s, a), q = p_factor_sum_of_squares(w, s, a);
                worst = std::max(worst, std::abs(e - q) / std::max(1.0, q));
                sign = sign && q >= 0.0 && p_factor_sigma_derivative(w, s, a) >= 0.0;
            }
    return {worst <= 1e-13 && sign, "expanded vs sum of squares " + num(worst) +
                                        (sign ? ", factor and its sigma-derivative nonnegative" : ", sign violated")};
}

// --- lemma2 suite ----------------------------------------------------------

Outcome zero_sum_identity(Context& ctx)
{
    const auto& zeros = ctx.f4_zeros();
    bool ok = true;
    std::string detail;
    for (double w : {0.5, zeros.front().alpha + 0.3, 5.0}) {
        const LogDerivativeCheck c = log_derivative_check(KernelIndex(2), w, zeros);
        const bool pass = c.monotone && c.no_overshoot && c.relative_deficit <= 0.05;
        ok = ok && pass;
        if (!detail.empty()) detail += ", ";
        detail += "w=" + num(w) + ": deficit " + num(100.0 * c.relative_deficit) + "%";
        if (!c.monotone) detail += " not monotone";
        if (!c.no_overshoot) detail += " overshoots";
    }
    return {ok, detail};
}

// --- fields ---------------------------------------------------------------

Outcome field_geometry(Context& ctx)
{
    const KernelIndex n(2);
    double slope = 0.0;
    for (int r = 0; r < 5; ++r) slope = std::max(slope, std::abs(crossing_gradient(n, ctx.f4_zeros()[r])));

    const GridField g = sample_field_grid(n, {0.1, 20.0, -10.0, 10.0}, {});
    auto r_lines = extract_field_lines(g, FieldKind::R_line);
    auto i_lines = extract_field_lines(g, FieldKind::I_line);
    for (auto& l : r_lines) l = refine_field_line(n, l);
    for (auto& l : i_lines) l = refine_field_line(n, l);
    const AuditResult audit = intersection_audit(r_lines, i_lines, 1e-4);

    bool gaps_ok = true;
    std::string gaps;
    for (int m = 0; m <= 3; ++m) {
        double g10 = std::abs(asymptote_gap(n, m, 10.0));
        double g20 = std::abs(asymptote_gap(n, m, 20.0));
        double g30 = std::abs(asymptote_gap(n, m, 30.0));
        const bool ok = g30 <= 0.02 && g10 > g20 && g20 > g30;
        gaps_ok = gaps_ok && ok;
        gaps += "; m=" + std::to_string(m) + " gap " + num(100 * g10) + "/" + num(100 * g20) + "/" + num(100 * g30) +
                "%" + (ok ? "" : " (FAIL)");
    }
    return {slope <= 1e-3 && audit.passed() && gaps_ok,
            "max |dw/dsigma| = " + num(slope) + ", off-axis R/I approaches " +
                std::to_string(audit.off_axis.size()) + gaps};
}

Outcome refined_lines(Context& ctx)
{
    const KernelIndex n(2);
    const QuadratureSpec q;
    const GridField g = sample_field_grid(n, {0.0, 4.0, 0.0, 8.0}, {100, 200});
    double worst_axis = 0.0;
    for (std::size_t j = 0; j < g.w_axis.size(); ++j)
        worst_axis = std::max(worst_axis, std::abs(g.at(0, j).im) / std::max(g.at(0, j).err_estimate, 1e-300));

    auto r_lines = extract_field_lines(g, FieldKind::R_line);
    auto i_lines = extract_field_lines(g, FieldKind::I_line);
    double residual = 0.0;
    for (auto& l : r_lines) residual = std::max(residual, (l = refine_field_line(n, l, q)).max_residual);
    for (auto& l : i_lines) residual = std::max(residual, (l = refine_field_line(n, l, q)).max_residual);

    // an R line ending on sigma = 0 must end on a zero
    double zero_gap = 0.0;
    int ends = 0;
    for (const auto& l : r_lines)
        for (const PlanePoint& p : {l.points.front(), l.points.back()}) {
            if (std::abs(p.sigma) > 1e-9) continue;
            double best = 1e300;
            for (const auto& z : ctx.f4_zeros()) best = std::min(best, std::abs(z.alpha - p.w));
            zero_gap = std::max(zero_gap, best);
            ++ends;
        }
    const AuditResult fr = family_audit(r_lines, 1e-4), fi = family_audit(i_lines, 1e-4);
    return {residual <= q.tol && worst_axis <= 1.0 && ends >= 2 && zero_gap <= 1e-8 && fr.passed() && fi.passed(),
            "max scaled residual " + num(residual) + ", |I|/err on sigma=0 " + num(worst_axis) + ", " +
                std::to_string(ends) + " axis endpoints within " + num(zero_gap) + " of zeros, family approaches " +
                std::to_string(fr.off_axis.size() + fi.off_axis.size())};
}

Outcome gaussian_field_lines(Context&)
{
    // R = 0 exactly on w sigma = pi(1+2m); a refined vertex may sit off it by
    // no more than the residual it was allowed, divided by |grad R| = |F'|
    const KernelIndex n(1);
    const QuadratureSpec q;
    const GridField g = sample_field_grid(n, {0.5, 3.0, 0.0, 8.0}, {60, 120}, q);
    double worst = 0.0;  // distance / allowed distance
    std::size_t count = 0;
    for (const auto& raw : extract_field_lines(g, FieldKind::R_line)) {
        const FieldLine l = refine_field_line(n, raw, q);
        for (const auto& p : l.points) {
            const double m = std::round((p.w * p.sigma / std::numbers::pi - 1.0) / 2.0);
            const double c = std::numbers::pi * (1 + 2 * m);
            const double slope = c / (p.sigma * p.sigma);
            const double distance = std::abs(p.w - c / p.sigma) / std::sqrt(1.0 + slope * slope);
            const EvalResult f = eval_transform(n, p, q);
            const double slack = std::max(q.tol * std::max(1.0, f.modulus()), f.err_estimate);
            worst = std::max(worst, distance * std::abs(eval_derivative(n, 1, p, q).value()) / slack);
        }
        ++count;
    }
    return {count > 0 && worst <= 2.0,
            std::to_string(count) + " lines, largest offset from w sigma = pi(1+2m) in units of its bound " + num(worst)};
}

// --- orbit ----------------------------------------------------------------

Outcome angular_momentum_sign(Context&)
{
    const KernelIndex n(2);
    double min_margin = 1e300, axis = 0.0;
    bool consistent = true;
    for (double s : {0.0, 0.5, 1.0, 2.0})
        for (double w : arange_inclusive(0.0, 8.0, 0.5)) {
            const AngularMomentumForms f = angular_momentum_forms(n, PlanePoint(w, s), 1.0);
            consistent = consistent && f.consistent();
            if (s == 0.0)
                axis = std::max(axis, std::abs(f.direct) / std::max(f.direct_err, 1e-300));
            else
                min_margin = std::min(min_margin, f.direct / f.direct_err);
        }
    return {min_margin > 1.0 && axis <= 1.0 && consistent,
            "min J/err off axis = " + num(min_margin) + ", max |J|/err on axis = " + num(axis) +
                (consistent ? ", three forms agree" : ", forms disagree")};
}

Outcome orbit_radius(Context&)
{
    double margin = 1e300, gauss = 0.0;
    const OrbitTrace t2 = orbit_trace(KernelIndex(2), 0.5, 1.0, 0.0, 20.0, 0.1);
    for (const auto& s : t2.samples) margin = std::min(margin, std::hypot(s.R, s.I) / s.radius_err);
    const OrbitTrace t1 = orbit_trace(KernelIndex(1), 1.0, 1.0, -6.0, 6.0, 0.25);
    for (const auto& s : t1.samples) {
        const double exact = std::sqrt(std::numbers::pi) * std::exp((1.0 - s.w * s.w) / 4.0);
        gauss = std::max(gauss, std::abs(std::hypot(s.R, s.I) - exact));
    }
    return {margin > 1.0 && gauss <= 1e-9,
            "min radius/err (n=2) = " + num(margin) + ", n=1 radius error " + num(gauss)};
}

const std::vector<Check>& checks()
{
    static const std::vector<Check> list = {
        {1, "quadrature", "Gaussian oracle", gaussian_oracle},
        {2, "quadrature", "origin values", origin_values},
        {0, "quadrature", "reflection symmetry", reflection_symmetry},
        {3, "zeros", "zeros of F_4", f4_zero_goldens},
        {4, "zeros", "differential identities", ode_identities},
        {5, "lemma1", "coefficient signs", coefficient_signs},
        {6, "lemma1", "coefficient cross-method", coefficient_methods},
        {7, "lemma1", "L^2 series", series_expansion},
        {8, "lemma1", "product recursion", recursion_table},
        {10, "lemma1", "monotone modulus", monotone_modulus},
        {0, "lemma1", "product factor identities", p_factor_identities},
        {12, "lemma2", "zero sum identity", zero_sum_identity},
        {9, "fields", "field geometry", field_geometry},
        {0, "fields", "refined lines and axis crossings", refined_lines},
        {0, "fields", "Gaussian field lines", gaussian_field_lines},
        {11, "orbit", "angular momentum", angular_momentum_sign},
        {0, "orbit", "orbit radius", orbit_radius},
    };
    return list;
}

}  // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"all", "quadrature", "zeros", "lemma1", "lemma2", "fields", "orbit"};
    return names;
}

std::filesystem::path default_golden_dir()
{
    if (const char* dir = std::getenv("POLYA_GOLDEN_DIR"); dir && *dir) return dir;
    return POLYA_GOLDEN_DIR;
}

std::vector<CheckResult> run_verify(const VerifyOptions& options)
{
    const auto& names = suite_names();
    require(std::find(names.begin(), names.end(), options.suite) != names.end(),
            "unknown suite '" + options.suite + "'");
    Context ctx(options.golden_dir.empty() ? default_golden_dir() : options.golden_dir);
    std::vector<CheckResult> out;
    const auto begin = std::chrono::steady_clock::now();
    for (const Check& c : checks()) {
        if (options.suite != "all" && options.suite != c.suite) continue;
        if (options.acceptance_only && c.criterion == 0) continue;
        CheckResult r{c.criterion, c.suite, c.name, false, {}, 0.0};
        const auto start = std::chrono::steady_clock::now();
        try {
            const Outcome o = c.run(ctx);
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
    }
    if (options.suite == "all") {
        const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
        out.push_back({0, "all", "total runtime", total < 600.0, num(total) + " s (limit 600 s)", total});
    }
    return out;
}

std::string format_results(const std::vector<CheckResult>& results)
{
    std::ostringstream s;
    int failed = 0;
    for (const auto& r : results) {
        char head[96];
        const std::string id = r.criterion ? "criterion " + std::to_string(r.criterion) : "invariant";
        std::snprintf(head, sizeof head, "%-4s %-12s %-10s %-34s %7.2fs  ", r.passed ? "PASS" : "FAIL", id.c_str(),
                      r.suite.c_str(), r.name.c_str(), r.seconds);
        s << head << r.detail << '\n';
        failed += r.passed ? 0 : 1;
    }
    s << (results.size() - failed) << " passed, " << failed << " failed\n";
    return s.str();
}

bool all_passed(const std::vector<CheckResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace polya
