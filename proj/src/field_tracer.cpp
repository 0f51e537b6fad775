#include "polya/field_tracer.hpp"

#include "polya/error.hpp"
#include "polya/kernel_eval.hpp"
#include "polya/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <unordered_map>

namespace polya {

namespace {

constexpr double kAxisSigma = 1e-6;
constexpr double kMaxNewtonStep = 0.25;
constexpr int kMaxNewtonIterations = 60;

std::vector<double> linspace(double lo, double hi, int count)
{
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = (i + 1 == count) ? hi : lo + (hi - lo) * i / (count - 1);
    // keep an exact zero when the window straddles an axis, so the symmetry
    // lines of I land on grid lines
    for (double& v : out)
        if (std::abs(v) < 1e-12 * std::max(std::abs(lo), std::abs(hi))) v = 0.0;
    return out;
}

double field_value(FieldKind which, const EvalResult& r) { return which == FieldKind::R_line ? r.re : r.im; }

double scaled_residual(FieldKind which, const EvalResult& r)
{
    return std::abs(field_value(which, r)) / std::max(1.0, r.modulus());
}

/// One-sided data for I on the symmetry axes: dI/dsigma on sigma = 0,
/// dI/dw on w = 0 and d2I/(dsigma dw) at the origin.
struct AxisLimits {
    std::vector<double> d_sigma;  // indexed by w node
    std::vector<double> d_w;      // indexed by sigma node
    double d_sigma_w = 0.0;
};

AxisLimits axis_limits(const GridField& g)
{
    AxisLimits lim;
    lim.d_sigma.assign(g.w_axis.size(), 0.0);
    lim.d_w.assign(g.sigma_axis.size(), 0.0);
    const auto zero_sigma = std::find(g.sigma_axis.begin(), g.sigma_axis.end(), 0.0) != g.sigma_axis.end();
    const auto zero_w = std::find(g.w_axis.begin(), g.w_axis.end(), 0.0) != g.w_axis.end();
    if (zero_sigma)
        parallel_for(g.w_axis.size(), [&](std::size_t j) {
            if (g.w_axis[j] != 0.0)
                lim.d_sigma[j] = -eval_derivative(g.n, 1, PlanePoint(g.w_axis[j], 0.0), g.quad).re;
        });
    if (zero_w)
        parallel_for(g.sigma_axis.size(), [&](std::size_t i) {
            if (g.sigma_axis[i] != 0.0)
                lim.d_w[i] = eval_derivative(g.n, 1, PlanePoint(0.0, g.sigma_axis[i]), g.quad).im;
        });
    if (zero_sigma && zero_w) lim.d_sigma_w = -eval_derivative(g.n, 2, PlanePoint(0.0, 0.0), g.quad).re;
    return lim;
}

/// I / (sigma^ds w^dw) at a node, with the axis limits substituted where the
/// division is 0/0.
double reduced_i(const GridField& g, const AxisLimits& lim, std::size_t i, std::size_t j, bool ds, bool dw)
{
    const double s = g.sigma_axis[i], w = g.w_axis[j], v = g.at(i, j).im;
    if (ds && dw) {
        if (s == 0.0 && w == 0.0) return lim.d_sigma_w;
        if (s == 0.0) return lim.d_sigma[j] / w;
        if (w == 0.0) return lim.d_w[i] / s;
        return v / (s * w);
    }
    if (ds) return s == 0.0 ? lim.d_sigma[j] : v / s;
    if (dw) return w == 0.0 ? lim.d_w[i] : v / w;
    return v;
}

using EdgeKey = std::uint64_t;

/// Edges run along sigma (dir 0, from node (i,j) to (i+1,j)) or along w
/// (dir 1, from (i,j) to (i,j+1)).
EdgeKey edge_key(int dir, std::size_t i, std::size_t j)
{
    return (static_cast<EdgeKey>(dir) << 62) | (static_cast<EdgeKey>(i) << 31) | static_cast<EdgeKey>(j);
}

struct Segment {
    PlanePoint a, b;
    std::size_t line = 0;
};

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

/// Distance from p to segment [a, b]; `foot` receives the closest point.
double point_segment(const PlanePoint& p, const PlanePoint& a, const PlanePoint& b, PlanePoint& foot)
{
    const double dx = b.sigma - a.sigma, dy = b.w - a.w;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((p.sigma - a.sigma) * dx + (p.w - a.w) * dy) / len2, 0.0, 1.0);
    foot = PlanePoint(a.w + t * dy, a.sigma + t * dx);
    return std::hypot(p.sigma - foot.sigma, p.w - foot.w);
}

double segment_distance(const Segment& s1, const Segment& s2, PlanePoint& where)
{
    const double d1x = s1.b.sigma - s1.a.sigma, d1y = s1.b.w - s1.a.w;
    const double d2x = s2.b.sigma - s2.a.sigma, d2y = s2.b.w - s2.a.w;
    const double denom = cross(d1x, d1y, d2x, d2y);
    if (denom != 0.0) {
        const double ex = s2.a.sigma - s1.a.sigma, ey = s2.a.w - s1.a.w;
        const double t = cross(ex, ey, d2x, d2y) / denom;
        const double u = cross(ex, ey, d1x, d1y) / denom;
        if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) {
            where = PlanePoint(s1.a.w + t * d1y, s1.a.sigma + t * d1x);
            return 0.0;
        }
    }
    double best = std::numeric_limits<double>::infinity();
    PlanePoint foot;
    auto consider = [&](const PlanePoint& p, const Segment& s) {
        const double d = point_segment(p, s.a, s.b, foot);
        if (d < best) {
            best = d;
            where = PlanePoint(0.5 * (p.w + foot.w), 0.5 * (p.sigma + foot.sigma));
        }
    };
    consider(s1.a, s2);
    consider(s1.b, s2);
    consider(s2.a, s1);
    consider(s2.b, s1);
    return best;
}

std::vector<Segment> segments_of(std::span<const FieldLine> lines)
{
    std::vector<Segment> out;
    for (std::size_t l = 0; l < lines.size(); ++l) {
        const auto& pts = lines[l].points;
        for (std::size_t k = 1; k < pts.size(); ++k) out.push_back({pts[k - 1], pts[k], l});
        if (pts.size() == 1) out.push_back({pts[0], pts[0], l});
    }
    return out;
}

/// Uniform bucket grid over segment bounding boxes.
class SegmentIndex {
public:
    SegmentIndex(const std::vector<Segment>& segs, double pad) : segs_(segs), pad_(pad)
    {
        double longest = 0.0;
        for (const auto& s : segs)
            longest = std::max({longest, std::abs(s.b.sigma - s.a.sigma), std::abs(s.b.w - s.a.w)});
        cell_ = std::max(longest + 2.0 * pad, 1e-9);
        for (std::size_t k = 0; k < segs.size(); ++k)
            for_cells(segs[k], [&](std::int64_t key) { buckets_[key].push_back(k); });
    }

    std::vector<std::size_t> candidates(const Segment& s) const
    {
        std::vector<std::size_t> out;
        for_cells(s, [&](std::int64_t key) {
            if (auto it = buckets_.find(key); it != buckets_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
        });
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    template <class F>
    void for_cells(const Segment& s, F&& f) const
    {
        const auto lo_x = static_cast<std::int64_t>(std::floor((std::min(s.a.sigma, s.b.sigma) - pad_) / cell_));
        const auto hi_x = static_cast<std::int64_t>(std::floor((std::max(s.a.sigma, s.b.sigma) + pad_) / cell_));
        const auto lo_y = static_cast<std::int64_t>(std::floor((std::min(s.a.w, s.b.w) - pad_) / cell_));
        const auto hi_y = static_cast<std::int64_t>(std::floor((std::max(s.a.w, s.b.w) + pad_) / cell_));
        for (auto x = lo_x; x <= hi_x; ++x)
            for (auto y = lo_y; y <= hi_y; ++y) f(x * 1000003LL + y);
    }

    const std::vector<Segment>& segs_;
    double pad_;
    double cell_ = 1.0;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets_;
};

void record(AuditResult& out, const PlanePoint& p, double proximity_tol, double axis_tol)
{
    for (const auto& q : out.near_points)
        if (std::hypot(q.sigma - p.sigma, q.w - p.w) < 10.0 * proximity_tol) return;
    out.near_points.push_back(p);
    if (std::abs(p.sigma) > axis_tol) out.off_axis.push_back(p);
}

AuditResult audit(const std::vector<Segment>& a, const std::vector<Segment>& b, bool same_family,
                  double proximity_tol, double axis_tol)
{
    AuditResult out;
    if (a.empty() || b.empty()) return out;
    const SegmentIndex index(b, proximity_tol);
    PlanePoint where;
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t c : index.candidates(a[k])) {
            if (same_family && (b[c].line == a[k].line || c <= k)) continue;
            if (segment_distance(a[k], b[c], where) < proximity_tol) record(out, where, proximity_tol, axis_tol);
        }
    }
    return out;
}

}  // namespace

const char* to_string(FieldKind kind) noexcept { return kind == FieldKind::R_line ? "R" : "I"; }

GridField sample_field_grid(KernelIndex n, const Window& window, const Resolution& resolution,
                            const QuadratureSpec& q)
{
    q.validate();
    require(resolution.n_sigma >= 2 && resolution.n_w >= 2, "grid resolution must be at least 2x2");
    require(window.sigma_hi > window.sigma_lo && window.w_hi > window.w_lo, "window ranges must be ascending");
    GridField g;
    g.n = n;
    g.quad = q;
    g.sigma_axis = linspace(window.sigma_lo, window.sigma_hi, resolution.n_sigma);
    g.w_axis = linspace(window.w_lo, window.w_hi, resolution.n_w);
    g.values.resize(g.sigma_axis.size() * g.w_axis.size());
    const std::size_t nw = g.w_axis.size();
    parallel_for(g.values.size(), [&](std::size_t k) {
        g.values[k] = eval_transform(n, PlanePoint(g.w_axis[k % nw], g.sigma_axis[k / nw]), q);
    });
    return g;
}

std::vector<FieldLine> extract_field_lines(const GridField& g, FieldKind which)
{
    const std::size_t ns = g.sigma_axis.size(), nw = g.w_axis.size();
    require(ns >= 2 && nw >= 2 && g.values.size() == ns * nw, "grid is not populated");

    const bool is_i = which == FieldKind::I_line;
    const AxisLimits lim = is_i ? axis_limits(g) : AxisLimits{};

    std::map<EdgeKey, PlanePoint> crossing;
    std::vector<std::pair<EdgeKey, EdgeKey>> segs;
    struct Saddle {
        std::size_t i, j;
        bool ds, dw;
        double v00;
        EdgeKey e[4];
    };
    std::vector<Saddle> saddles;

    for (std::size_t i = 0; i + 1 < ns; ++i) {
        const bool ds = is_i && (g.sigma_axis[i] == 0.0 || g.sigma_axis[i + 1] == 0.0);
        for (std::size_t j = 0; j + 1 < nw; ++j) {
            const bool dw = is_i && (g.w_axis[j] == 0.0 || g.w_axis[j + 1] == 0.0);
            auto val = [&](std::size_t a, std::size_t b) {
                return is_i ? reduced_i(g, lim, a, b, ds, dw) : g.at(a, b).re;
            };
            // corners counter-clockwise from (i, j); edge k joins corner k to k+1
            const std::size_t ci[4] = {i, i + 1, i + 1, i};
            const std::size_t cj[4] = {j, j, j + 1, j + 1};
            const EdgeKey keys[4] = {edge_key(0, i, j), edge_key(1, i + 1, j), edge_key(0, i, j + 1),
                                     edge_key(1, i, j)};
            double v[4];
            for (int k = 0; k < 4; ++k) v[k] = val(ci[k], cj[k]);
            std::vector<int> cut;
            for (int k = 0; k < 4; ++k) {
                const int k1 = (k + 1) % 4;
                if ((v[k] > 0.0) == (v[k1] > 0.0)) continue;
                cut.push_back(k);
                if (!crossing.contains(keys[k])) {
                    const double t = v[k] / (v[k] - v[k1]);
                    const double s = g.sigma_axis[ci[k]] + t * (g.sigma_axis[ci[k1]] - g.sigma_axis[ci[k]]);
                    const double w = g.w_axis[cj[k]] + t * (g.w_axis[cj[k1]] - g.w_axis[cj[k]]);
                    crossing.emplace(keys[k], PlanePoint(w, s));
                }
            }
            if (cut.size() == 2) segs.emplace_back(keys[cut[0]], keys[cut[1]]);
            if (cut.size() == 4) saddles.push_back({i, j, ds, dw, v[0], {keys[0], keys[1], keys[2], keys[3]}});
        }
    }

    std::vector<double> centre(saddles.size());
    parallel_for(saddles.size(), [&](std::size_t k) {
        const auto& s = saddles[k];
        const double sc = 0.5 * (g.sigma_axis[s.i] + g.sigma_axis[s.i + 1]);
        const double wc = 0.5 * (g.w_axis[s.j] + g.w_axis[s.j + 1]);
        const EvalResult r = eval_transform(g.n, PlanePoint(wc, sc), g.quad);
        double v = field_value(which, r);
        if (s.ds) v /= sc;
        if (s.dw) v /= wc;
        centre[k] = v;
    });
    for (std::size_t k = 0; k < saddles.size(); ++k) {
        const auto& s = saddles[k];
        // centre joined to corner 0 and 2: the lines cut off corners 1 and 3
        if ((centre[k] > 0.0) == (s.v00 > 0.0)) {
            segs.emplace_back(s.e[0], s.e[1]);
            segs.emplace_back(s.e[2], s.e[3]);
        } else {
            segs.emplace_back(s.e[3], s.e[0]);
            segs.emplace_back(s.e[1], s.e[2]);
        }
    }

    std::map<EdgeKey, std::vector<std::size_t>> adjacency;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        adjacency[segs[k].first].push_back(k);
        adjacency[segs[k].second].push_back(k);
    }
    std::vector<bool> used(segs.size(), false);
    std::vector<FieldLine> lines;

    auto walk = [&](EdgeKey start) {
        FieldLine line;
        line.which = which;
        EdgeKey cur = start;
        line.points.push_back(crossing.at(cur));
        for (;;) {
            std::size_t next = segs.size();
            for (std::size_t k : adjacency[cur])
                if (!used[k]) {
                    next = k;
                    break;
                }
            if (next == segs.size()) break;
            used[next] = true;
            cur = segs[next].first == cur ? segs[next].second : segs[next].first;
            line.points.push_back(crossing.at(cur));
        }
        return line;
    };
    for (const auto& [key, list] : adjacency)
        if (list.size() == 1 && !used[list[0]]) lines.push_back(walk(key));
    for (const auto& [key, list] : adjacency)
        for (std::size_t k : list)
            if (!used[k]) lines.push_back(walk(key));

    // exact symmetry lines of I
    if (is_i) {
        if (auto it = std::find(g.sigma_axis.begin(), g.sigma_axis.end(), 0.0); it != g.sigma_axis.end()) {
            const auto i = static_cast<std::size_t>(it - g.sigma_axis.begin());
            FieldLine axis{which, {}, 0.0};
            for (std::size_t j = 0; j < nw; ++j) axis.points.emplace_back(g.w_axis[j], 0.0);
            lines.push_back(std::move(axis));
            (void)i;
        }
        if (auto it = std::find(g.w_axis.begin(), g.w_axis.end(), 0.0); it != g.w_axis.end()) {
            FieldLine axis{which, {}, 0.0};
            for (std::size_t i = 0; i < ns; ++i) axis.points.emplace_back(0.0, g.sigma_axis[i]);
            lines.push_back(std::move(axis));
        }
    }

    for (auto& line : lines) {
        std::vector<double> res(line.points.size());
        parallel_for(line.points.size(), [&](std::size_t k) {
            res[k] = scaled_residual(which, eval_transform(g.n, line.points[k], g.quad));
        });
        for (double r : res) line.max_residual = std::max(line.max_residual, r);
    }
    return lines;
}

FieldLine refine_field_line(KernelIndex n, const FieldLine& line, const QuadratureSpec& q)
{
    q.validate();
    FieldLine out = line;
    std::vector<double> res(out.points.size());
    parallel_for(out.points.size(), [&](std::size_t k) {
        PlanePoint p = out.points[k];
        double residual = 0.0;
        for (int it = 0; it <= kMaxNewtonIterations; ++it) {
            const EvalResult f = eval_transform(n, p, q);
            const double v = field_value(line.which, f);
            residual = scaled_residual(line.which, f);
            if (std::abs(v) <= std::max(q.tol * std::max(1.0, f.modulus()), f.err_estimate) ||
                it == kMaxNewtonIterations)
                break;
            const EvalResult d = eval_derivative(n, 1, p, q);
            const double a = d.re, b = d.im;
            const double g2 = a * a + b * b;
            if (std::sqrt(g2) <= 10.0 * d.err_estimate) {
                if (std::abs(p.sigma) > kAxisSigma)
                    fail(ErrorKind::NewtonStall, "gradient of the field vanishes at w=" + std::to_string(p.w) +
                                                     ", sigma=" + std::to_string(p.sigma));
                break;
            }
            const double gw = line.which == FieldKind::R_line ? a : b;
            const double gs = line.which == FieldKind::R_line ? b : -a;
            double dw = -v * gw / g2, dsig = -v * gs / g2;
            const double len = std::hypot(dw, dsig);
            if (len > kMaxNewtonStep) {
                dw *= kMaxNewtonStep / len;
                dsig *= kMaxNewtonStep / len;
            }
            p = PlanePoint(p.w + dw, p.sigma + dsig);
        }
        out.points[k] = p;
        res[k] = residual;
    });
    out.max_residual = 0.0;
    for (double r : res) out.max_residual = std::max(out.max_residual, r);
    return out;
}

std::vector<AsymptoteCurve> asymptote_curves(KernelIndex n, std::span<const int> branches,
                                             std::span<const double> sigma_samples)
{
    for (double s : sigma_samples) require(s > 0.0, "asymptote samples need sigma > 0");
    const double two_n = n.degree();
    std::vector<AsymptoteCurve> out;
    for (int m : branches) {
        AsymptoteCurve c{n, m, {}};
        for (double s : sigma_samples)
            c.samples.emplace_back(std::pow(two_n / s, 1.0 / (two_n - 1.0)) * 0.5 * std::numbers::pi * (1 + 2 * m), s);
        out.push_back(std::move(c));
    }
    return out;
}

CrossingGradient crossing_components(KernelIndex n, const ZeroRecord& zero, const QuadratureSpec& q)
{
    if (n.value() == 1) fail(ErrorKind::NoZeros, "F_2 has no zeros, so no R line crosses the axis");
    require(zero.n == n, "zero record belongs to a different kernel index");
    const EvalResult d = eval_derivative(n, 1, PlanePoint(zero.alpha, 0.0), q);
    return {d.im, d.re, -d.im / d.re};
}

double crossing_gradient(KernelIndex n, const ZeroRecord& zero, const QuadratureSpec& q)
{
    return crossing_components(n, zero, q).slope;
}

std::vector<double> field_crossings(KernelIndex n, FieldKind which, double sigma, double w_lo, double w_hi,
                                    double step, const QuadratureSpec& q)
{
    require(w_hi > w_lo && step > 0.0, "crossing scan needs an ascending range and a positive step");
    const int count = static_cast<int>(std::ceil((w_hi - w_lo) / step));
    std::vector<double> ws(static_cast<std::size_t>(count) + 1), vs(ws.size());
    for (int i = 0; i <= count; ++i) ws[static_cast<std::size_t>(i)] = std::min(w_hi, w_lo + i * step);
    parallel_for(ws.size(), [&](std::size_t i) {
        vs[i] = field_value(which, eval_transform(n, PlanePoint(ws[i], sigma), q));
    });
    std::vector<std::pair<double, double>> brackets;
    for (std::size_t i = 1; i < ws.size(); ++i)
        if ((vs[i] > 0.0) != (vs[i - 1] > 0.0)) brackets.emplace_back(ws[i - 1], ws[i]);
    std::vector<double> roots(brackets.size());
    parallel_for(brackets.size(), [&](std::size_t k) {
        auto [a, b] = brackets[k];
        const bool a_pos = field_value(which, eval_transform(n, PlanePoint(a, sigma), q)) > 0.0;
        while (b - a > 1e-12 * std::max(1.0, std::abs(b))) {
            const double m = 0.5 * (a + b);
            if ((field_value(which, eval_transform(n, PlanePoint(m, sigma), q)) > 0.0) == a_pos)
                a = m;
            else
                b = m;
        }
        roots[k] = 0.5 * (a + b);
    });
    return roots;
}

double asymptote_gap(KernelIndex n, int branch, double sigma, const QuadratureSpec& q)
{
    require(branch >= 0 && sigma > 0.0, "asymptote gap needs branch >= 0 and sigma > 0");
    const int branches[] = {branch};
    const double samples[] = {sigma};
    const double asym = asymptote_curves(n, branches, samples).front().samples.front().w;
    const auto roots = field_crossings(n, FieldKind::R_line, sigma, 0.0, 1.5 * asym + 2.0, 0.01, q);
    if (static_cast<int>(roots.size()) <= branch)
        fail(ErrorKind::ToleranceNotMet, "R line for branch " + std::to_string(branch) + " not found at sigma=" +
                                             std::to_string(sigma));
    return (roots[static_cast<std::size_t>(branch)] - asym) / asym;
}

AuditResult intersection_audit(std::span<const FieldLine> r_lines, std::span<const FieldLine> i_lines,
                               double proximity_tol, double axis_tol)
{
    return audit(segments_of(r_lines), segments_of(i_lines), false, proximity_tol, axis_tol);
}

AuditResult family_audit(std::span<const FieldLine> lines, double proximity_tol, double axis_tol)
{
    const auto segs = segments_of(lines);
    return audit(segs, segs, true, proximity_tol, axis_tol);
}

}  // namespace polya
