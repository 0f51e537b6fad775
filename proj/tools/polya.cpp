#include "polya/error.hpp"
#include "polya/field_tracer.hpp"
#include "polya/io.hpp"
#include "polya/kernel_eval.hpp"
#include "polya/lsq_expansion.hpp"
#include "polya/numeric.hpp"
#include "polya/orbit.hpp"
#include "polya/svg.hpp"
#include "polya/verify.hpp"
#include "polya/zero_finder.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

using namespace polya;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kArgument = 2, kNumerical = 3 };

struct Options {
    std::string config;
    int n = 2;
    double w = 0.0, sigma = 0.0, tol = 1e-12;
    std::string format = "csv";
    double wmax = 0.0;
    int count = -1;
    bool no_cache = false;
    std::string out;
    std::string svg;
    std::string m_range = "0..6";
    std::string w_grid = "0:8:0.25";
    std::string method = "leibniz";
    std::string which = "both";
    std::string window = "0:30,0:8";
    std::string resolution = "400x600";
    bool asymptotes = false;
    bool no_refine = false;
    double v = 1.0, tmin = 0.0, tmax = 20.0, dt = 0.05;
    int fig = 9;
    std::string suite = "all";
    std::string golden;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

double number(const std::string& s, const std::string& what)
{
    try {
        return parse_number(s);
    } catch (const Error&) {
        fail(ErrorKind::InvalidArgument, what + ": '" + s + "' is not a number");
    }
}

std::pair<int, int> parse_m_range(const std::string& s)
{
    const auto dots = s.find("..");
    require(dots != std::string::npos, "--m-range must look like A..B");
    const double a = number(s.substr(0, dots), "--m-range"), b = number(s.substr(dots + 2), "--m-range");
    require(a == std::floor(a) && b == std::floor(b) && 0 <= a && a <= b && b <= kMaxCoeffOrder,
            "--m-range needs integers 0 <= A <= B <= " + std::to_string(kMaxCoeffOrder));
    return {static_cast<int>(a), static_cast<int>(b)};
}

std::vector<double> parse_w_grid(const std::string& s)
{
    const auto parts = split(s, ':');
    require(parts.size() == 3, "--w-grid must look like LO:HI:STEP");
    const double lo = number(parts[0], "--w-grid"), hi = number(parts[1], "--w-grid"),
                 step = number(parts[2], "--w-grid");
    require(hi >= lo && step > 0.0, "--w-grid needs LO <= HI and STEP > 0");
    return arange_inclusive(lo, hi, step);
}

Window parse_window(const std::string& s)
{
    const auto halves = split(s, ',');
    require(halves.size() == 2, "--window must look like S0:S1,W0:W1");
    const auto a = split(halves[0], ':'), b = split(halves[1], ':');
    require(a.size() == 2 && b.size() == 2, "--window must look like S0:S1,W0:W1");
    Window w{number(a[0], "--window"), number(a[1], "--window"), number(b[0], "--window"), number(b[1], "--window")};
    require(w.sigma_hi > w.sigma_lo && w.w_hi > w.w_lo, "--window ranges must be ascending");
    return w;
}

Resolution parse_resolution(const std::string& s)
{
    const auto parts = split(s, 'x');
    require(parts.size() == 2, "--resolution must look like NXxNY");
    const double a = number(parts[0], "--resolution"), b = number(parts[1], "--resolution");
    require(a == std::floor(a) && b == std::floor(b) && a >= 2 && b >= 2 && a * b <= 4e6,
            "--resolution needs integers >= 2 and at most 4e6 nodes");
    return {static_cast<int>(a), static_cast<int>(b)};
}

KernelIndex kernel(int n) { return KernelIndex(n); }

QuadratureSpec quadrature(const Options& o)
{
    QuadratureSpec q;
    q.tol = o.tol;
    q.validate();
    return q;
}

void emit(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-")
        std::cout << content;
    else
        atomic_write(path, content);
}

// --- field line helpers shared by fieldlines and figures ------------------

std::vector<FieldLine> trace_lines(KernelIndex n, const Window& win, const Resolution& res, const std::string& which,
                                   bool refine, const QuadratureSpec& q)
{
    const GridField g = sample_field_grid(n, win, res, q);
    std::vector<FieldLine> lines;
    for (FieldKind k : {FieldKind::R_line, FieldKind::I_line}) {
        if (which != "both" && which != to_string(k)) continue;
        for (auto& l : extract_field_lines(g, k)) lines.push_back(refine ? refine_field_line(n, l, q) : l);
    }
    return lines;
}

std::vector<AsymptoteCurve> window_asymptotes(KernelIndex n, const Window& win)
{
    const double lo = std::max(win.sigma_lo, 0.05 * (win.sigma_hi - win.sigma_lo));
    const auto sigmas = arange_inclusive(lo, win.sigma_hi, (win.sigma_hi - lo) / 200.0);
    // enough branches to leave the window at its left edge
    std::vector<int> branches;
    const double scale = std::pow(n.degree() / win.sigma_hi, 1.0 / (n.degree() - 1.0)) * std::numbers::pi / 2;
    for (int m = 0; scale * (1 + 2 * m) <= win.w_hi && m < 64; ++m) branches.push_back(m);
    return asymptote_curves(n, branches, sigmas);
}

std::string polylines_with_asymptotes(const std::vector<FieldLine>& lines, const std::vector<AsymptoteCurve>& asym)
{
    std::string csv = emit_polylines(lines);
    std::size_t id = lines.size();
    for (const auto& a : asym) {
        for (const auto& p : a.samples)
            csv += std::to_string(id) + ",A" + std::to_string(a.branch) + "," + format_number(p.sigma) + "," +
                   format_number(p.w) + "\n";
        ++id;
    }
    return csv;
}

SvgDataset field_plot(const std::string& title, const std::vector<FieldLine>& lines,
                      const std::vector<AsymptoteCurve>& asym)
{
    SvgDataset d{title, "sigma", "w", {}};
    SvgSeries r{"R = 0", "#000000", {}, false, false}, i{"I = 0", "#1a9641", {}, false, false};
    SvgSeries a{"asymptote", "#d7191c", {}, false, true};
    for (const auto& l : lines) {
        Polyline p;
        for (const auto& q : l.points) p.emplace_back(q.sigma, q.w);
        (l.which == FieldKind::R_line ? r : i).polylines.push_back(std::move(p));
    }
    for (const auto& c : asym) {
        Polyline p;
        for (const auto& q : c.samples) p.emplace_back(q.sigma, q.w);
        a.polylines.push_back(std::move(p));
    }
    for (auto* s : {&r, &i, &a})
        if (!s->polylines.empty()) d.series.push_back(*s);
    return d;
}

SvgDataset orbit_plot(const std::string& title, const std::vector<OrbitTrace>& traces)
{
    static const char* colors[] = {"#2c7bb6", "#d7191c", "#1a9641", "#fdae61"};
    SvgDataset d{title, "R", "I", {}};
    for (std::size_t k = 0; k < traces.size(); ++k) {
        SvgSeries s{"sigma = " + format_number(traces[k].sigma), colors[k % 4], {{}}, false, false};
        for (const auto& p : traces[k].samples) s.polylines[0].emplace_back(p.R, p.I);
        d.series.push_back(std::move(s));
    }
    return d;
}

// --- commands --------------------------------------------------------------

int run_eval(const Options& o)
{
    const QuadratureSpec q = quadrature(o);
    require(o.format == "csv" || o.format == "json", "eval --format must be csv or json");
    const EvalResult r = eval_transform(kernel(o.n), PlanePoint(o.w, o.sigma), q);
    if (o.format == "json") {
        nlohmann::json j = {{"n", o.n},       {"w", o.w},       {"sigma", o.sigma},
                            {"re", r.re},     {"im", r.im},     {"err_estimate", r.err_estimate},
                            {"l_squared", r.l_squared}};
        emit(o.out, j.dump(2) + "\n");
    } else {
        CsvTable t{{"n", "w", "sigma", "re", "im", "err_estimate", "l_squared"},
                   {{std::to_string(o.n), format_number(o.w), format_number(o.sigma), format_number(r.re),
                     format_number(r.im), format_number(r.err_estimate), format_number(r.l_squared)}}};
        emit(o.out, emit_csv(t));
    }
    return kOk;
}

int run_zeros(const Options& o)
{
    const QuadratureSpec q = quadrature(o);
    const KernelIndex n = kernel(o.n);
    require(o.wmax > 0.0 && std::isfinite(o.wmax), "--wmax must be positive");
    require(o.count >= -1, "--count must be nonnegative");
    auto zeros = o.no_cache ? scan_real_zeros(n, o.wmax, q) : cached_zeros(n, o.wmax, q);
    if (o.count >= 0 && static_cast<std::size_t>(o.count) < zeros.size()) zeros.resize(static_cast<std::size_t>(o.count));
    emit(o.out, emit_zero_table(zeros));
    return kOk;
}

int run_acoeff(const Options& o)
{
    const QuadratureSpec q = quadrature(o);
    const KernelIndex n = kernel(o.n);
    const auto [m_lo, m_hi] = parse_m_range(o.m_range);
    const auto ws = parse_w_grid(o.w_grid);
    require(o.method == "leibniz" || o.method == "direct2d" || o.method == "both",
            "--method must be leibniz, direct2d or both");
    if (o.method != "leibniz")
        require(m_hi <= kMaxDirectOrder && std::abs(ws.front()) <= kMaxDirectW && std::abs(ws.back()) <= kMaxDirectW,
                "direct2d needs m <= " + std::to_string(kMaxDirectOrder) + " and |w| <= " + std::to_string(kMaxDirectW));
    std::vector<std::vector<ACoeffSample>> per_w(ws.size());
    parallel_for(ws.size(), [&](std::size_t i) {
        if (o.method != "direct2d") {
            const auto series = a_coeff_series(n, m_hi, ws[i], q);
            per_w[i].insert(per_w[i].end(), series.begin() + m_lo, series.end());
        }
        if (o.method != "leibniz")
            for (int m = m_lo; m <= m_hi; ++m) per_w[i].push_back(a_coeff_direct(n, m, ws[i], q));
    });
    std::vector<ACoeffSample> rows;
    for (const auto& v : per_w) rows.insert(rows.end(), v.begin(), v.end());
    emit(o.out, emit_acoeff_table(rows));
    return kOk;
}

int run_fieldlines(const Options& o)
{
    const QuadratureSpec q = quadrature(o);
    const KernelIndex n = kernel(o.n);
    const Window win = parse_window(o.window);
    const Resolution res = parse_resolution(o.resolution);
    require(o.which == "R" || o.which == "I" || o.which == "both", "--which must be R, I or both");
    const auto lines = trace_lines(n, win, res, o.which, !o.no_refine, q);
    const auto asym = o.asymptotes ? window_asymptotes(n, win) : std::vector<AsymptoteCurve>{};
    emit(o.out, polylines_with_asymptotes(lines, asym));
    if (!o.svg.empty()) write_svg(o.svg, field_plot("Field lines, n = " + std::to_string(o.n), lines, asym));
    return kOk;
}

int run_orbit(const Options& o)
{
    const QuadratureSpec q = quadrature(o);
    require(o.tmax >= o.tmin, "--tmax must not be below --tmin");
    const OrbitTrace t = orbit_trace(kernel(o.n), o.sigma, o.v, o.tmin, o.tmax, o.dt, q);
    emit(o.out, emit_orbit(t));
    if (!o.svg.empty()) write_svg(o.svg, orbit_plot("Orbit, n = " + std::to_string(o.n), {t}));
    return kOk;
}

int run_figures(const Options& o)
{
    const QuadratureSpec q = quadrature(o);
    const KernelIndex n = kernel(o.n);
    require(!o.out.empty(), "figures needs --out DIR");
    const fs::path dir = o.out;
    const std::string tag = "fig" + std::to_string(o.fig);
    const std::string title = "Figure " + std::to_string(o.fig) + ", n = " + std::to_string(o.n);
    const Resolution res{400, 600};
    switch (o.fig) {
    case 1: {
        std::vector<OrbitTrace> traces;
        for (double s : {0.5, 1.0}) {
            traces.push_back(orbit_trace(n, s, 1.0, 0.0, 12.0, 0.02, q));
            atomic_write(dir / (tag + "_orbit_sigma" + format_number(s) + ".csv"), emit_orbit(traces.back()));
        }
        write_svg(dir / (tag + ".svg"), orbit_plot(title, traces));
        return kOk;
    }
    case 2:
    case 8:
    case 9:
    case 10: {
        Window win;  // sigma in [0, 30], w in [0, 8]
        if (o.fig == 2) win = {0.0, 10.0, 0.0, 8.0};
        if (o.fig == 10) win = {-2.0, 2.0, 0.0, 15.0};
        const std::string which = o.fig == 8 || o.fig == 10 ? "R" : "both";
        const auto lines = trace_lines(n, win, res, which, true, q);
        const auto asym = o.fig == 8 ? window_asymptotes(n, win) : std::vector<AsymptoteCurve>{};
        atomic_write(dir / (tag + "_lines.csv"), polylines_with_asymptotes(lines, asym));
        write_svg(dir / (tag + ".svg"), field_plot(title, lines, asym));
        return kOk;
    }
    default:
        fail(ErrorKind::InvalidArgument, "--fig must be 1, 2, 8, 9 or 10");
    }
}

int run_verify_command(const Options& o)
{
    VerifyOptions v;
    v.suite = o.suite;
    if (!o.golden.empty()) v.golden_dir = o.golden;
    const auto results = run_verify(v);
    std::cout << format_results(results);
    return all_passed(results) ? kOk : kVerifyFailed;
}

/// Fills options of the chosen subcommand that were not given on the command
/// line from `key = value` lines.
void apply_config(CLI::App* sub, const std::string& path)
{
    const auto entries = parse_config(read_file(path));
    for (const auto& [key, value] : entries) {
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (!opt) fail(ErrorKind::InvalidArgument, "config key '" + key + "' is not an option of " + sub->get_name());
        if (opt->count() > 0) continue;  // flags win
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            fail(ErrorKind::InvalidArgument, "config key '" + key + "': " + e.what());
        }
    }
}

}  // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Super-Gaussian Fourier transform toolkit"};
    app.require_subcommand(1);
    app.add_option("--config", o.config, "key = value file; command-line flags take precedence")
        ->check(CLI::ExistingFile);

    auto add_common = [&](CLI::App* s) {
        s->add_option("--n", o.n, "kernel index n (1..6)")->check(CLI::Range(1, 6));
        s->add_option("--tol", o.tol, "absolute quadrature tolerance")->check(CLI::PositiveNumber);
    };

    auto* eval = app.add_subcommand("eval", "evaluate F_2n at one point");
    add_common(eval);
    eval->add_option("--w", o.w, "real part of z");
    eval->add_option("--sigma", o.sigma, "minus the imaginary part of z");
    eval->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    eval->add_option("--out", o.out, "output path (default stdout)");

    auto* zeros = app.add_subcommand("zeros", "positive real zeros up to wmax");
    add_common(zeros);
    zeros->add_option("--wmax", o.wmax, "upper end of the scan")->required();
    zeros->add_option("--count", o.count, "keep only the first K zeros");
    zeros->add_option("--out", o.out, "output path (default stdout)");
    zeros->add_flag("--no-cache", o.no_cache, "ignore and do not touch the zero cache");

    auto* acoeff = app.add_subcommand("acoeff", "coefficients of the L^2 expansion");
    add_common(acoeff);
    acoeff->add_option("--m-range", o.m_range, "A..B");
    acoeff->add_option("--w-grid", o.w_grid, "LO:HI:STEP");
    acoeff->add_option("--method", o.method, "leibniz, direct2d or both");
    acoeff->add_option("--out", o.out, "output path (default stdout)");

    auto* lines = app.add_subcommand("fieldlines", "R = 0 and I = 0 curves");
    add_common(lines);
    lines->add_option("--which", o.which, "R, I or both");
    lines->add_option("--window", o.window, "S0:S1,W0:W1");
    lines->add_option("--resolution", o.resolution, "NSxNW grid nodes");
    lines->add_option("--out", o.out, "CSV path (default stdout)");
    lines->add_option("--svg", o.svg, "also render an SVG");
    lines->add_flag("--asymptotes", o.asymptotes, "append the asymptote curves");
    lines->add_flag("--no-refine", o.no_refine, "keep the raw marching-squares vertices");

    auto* orbit = app.add_subcommand("orbit", "(R, I) along w = v t");
    add_common(orbit);
    orbit->add_option("--sigma", o.sigma, "fixed sigma");
    orbit->add_option("--v", o.v, "sweep velocity")->check(CLI::PositiveNumber);
    orbit->add_option("--tmin", o.tmin, "first t");
    orbit->add_option("--tmax", o.tmax, "last t");
    orbit->add_option("--dt", o.dt, "t step")->check(CLI::PositiveNumber);
    orbit->add_option("--out", o.out, "CSV path (default stdout)");
    orbit->add_option("--svg", o.svg, "also render an SVG");

    auto* figures = app.add_subcommand("figures", "data and SVG for one figure");
    add_common(figures);
    figures->add_option("--fig", o.fig, "1, 2, 8, 9 or 10")->check(CLI::IsMember({1, 2, 8, 9, 10}));
    figures->add_option("--out", o.out, "output directory")->required();

    auto* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--suite", o.suite, "all, quadrature, zeros, lemma1, lemma2, fields or orbit")
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--golden", o.golden, "directory with the golden CSV files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kArgument;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!o.config.empty()) apply_config(sub, o.config);
        const std::string name = sub->get_name();
        if (name == "eval") return run_eval(o);
        if (name == "zeros") return run_zeros(o);
        if (name == "acoeff") return run_acoeff(o);
        if (name == "fieldlines") return run_fieldlines(o);
        if (name == "orbit") return run_orbit(o);
        if (name == "figures") return run_figures(o);
        return run_verify_command(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::Io:
            return kArgument;
        default:
            return kNumerical;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
}
