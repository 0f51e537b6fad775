#include "polya/svg.hpp"

#include "polya/error.hpp"
#include "polya/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace polya {

namespace {

std::string fixed(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(x) < 1e-12 ? 0.0 : x);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target)
{
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

}  // namespace

std::string emit_svg(const SvgDataset& data, const SvgStyle& style)
{
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : data.series)
        for (const auto& line : s.polylines)
            for (const auto& [x, y] : line) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            }
    if (!(x0 <= x1)) fail(ErrorKind::Io, "nothing to plot in '" + data.title + "'");
    if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;

    const double left = style.margin, top = 0.6 * style.margin;
    const double pw = style.width - 1.5 * style.margin, ph = style.height - 1.6 * style.margin;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
           std::to_string(style.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    out += "<text x=\"" + fixed(style.width / 2.0) + "\" y=\"" + fixed(0.4 * style.margin) +
           "\" text-anchor=\"middle\" font-size=\"14\">" + escape(data.title) + "</text>\n";

    // frame and ticks
    out += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(pw) + "\" height=\"" +
           fixed(ph) + "\" fill=\"none\" stroke=\"#000000\"/>\n";
    const double xs = nice_step(x1 - x0, 6), ys = nice_step(y1 - y0, 6);
    for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
        out += "<line x1=\"" + fixed(px(t)) + "\" y1=\"" + fixed(top + ph) + "\" x2=\"" + fixed(px(t)) +
               "\" y2=\"" + fixed(top + ph + 5) + "\" stroke=\"#000000\"/>\n";
        out += "<text x=\"" + fixed(px(t)) + "\" y=\"" + fixed(top + ph + 18) + "\" text-anchor=\"middle\">" +
               tick_label(t) + "</text>\n";
    }
    for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
        out += "<line x1=\"" + fixed(left - 5) + "\" y1=\"" + fixed(py(t)) + "\" x2=\"" + fixed(left) +
               "\" y2=\"" + fixed(py(t)) + "\" stroke=\"#000000\"/>\n";
        out += "<text x=\"" + fixed(left - 8) + "\" y=\"" + fixed(py(t) + 4) + "\" text-anchor=\"end\">" +
               tick_label(t) + "</text>\n";
    }
    out += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"" + fixed(style.height - 0.4 * style.margin + 10) +
           "\" text-anchor=\"middle\">" + escape(data.x_label) + "</text>\n";
    out += "<text x=\"" + fixed(0.3 * style.margin) + "\" y=\"" + fixed(top + ph / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 " + fixed(0.3 * style.margin) + " " +
           fixed(top + ph / 2) + ")\">" + escape(data.y_label) + "</text>\n";

    out += "<g clip-path=\"url(#plot)\">\n";
    out += "<clipPath id=\"plot\"><rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(pw) +
           "\" height=\"" + fixed(ph) + "\"/></clipPath>\n";
    for (const auto& s : data.series) {
        for (const auto& line : s.polylines) {
            if (line.empty()) continue;
            if (s.scatter) {
                for (const auto& [x, y] : line)
                    out += "<circle cx=\"" + fixed(px(x)) + "\" cy=\"" + fixed(py(y)) + "\" r=\"2\" fill=\"" +
                           s.color + "\"/>\n";
                continue;
            }
            out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"" + fixed(style.stroke) + "\"";
            if (s.dashed) out += " stroke-dasharray=\"6 4\"";
            out += " points=\"";
            for (std::size_t i = 0; i < line.size(); ++i) {
                if (i) out += ' ';
                out += fixed(px(line[i].first)) + "," + fixed(py(line[i].second));
            }
            out += "\"/>\n";
        }
    }
    out += "</g>\n";

    double ly = top + 14;
    for (const auto& s : data.series) {
        if (s.label.empty()) continue;
        const double lx = left + pw - 150;
        out += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly - 4) + "\" x2=\"" + fixed(lx + 24) + "\" y2=\"" +
               fixed(ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"" +
               (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        out += "<text x=\"" + fixed(lx + 30) + "\" y=\"" + fixed(ly) + "\">" + escape(s.label) + "</text>\n";
        ly += 16;
    }
    out += "</svg>\n";
    return out;
}

void write_svg(const std::filesystem::path& path, const SvgDataset& data, const SvgStyle& style)
{
    const std::string doc = emit_svg(data, style);
    atomic_write(path, doc);
}

}  // namespace polya
