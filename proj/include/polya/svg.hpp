#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace polya {

using Polyline = std::vector<std::pair<double, double>>;

struct SvgSeries {
    std::string label;
    std::string color = "#000000";
    std::vector<Polyline> polylines;
    bool scatter = false;  ///< draw points as dots instead of joining them
    bool dashed = false;
};

struct SvgDataset {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
};

struct SvgStyle {
    int width = 800;
    int height = 600;
    int margin = 60;
    double stroke = 1.2;
};

/// Same input, same bytes. Throws Io when there is no point to draw.
std::string emit_svg(const SvgDataset& data, const SvgStyle& style = {});

/// Renders first, so a failed render writes nothing.
void write_svg(const std::filesystem::path& path, const SvgDataset& data, const SvgStyle& style = {});

}  // namespace polya
