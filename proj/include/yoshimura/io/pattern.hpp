#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "yoshimura/design.hpp"

namespace yoshimura::io {

using Vec2 = Eigen::Vector2d;

enum class CreaseKind { Mountain, Valley, Boundary };

std::string_view to_string(CreaseKind kind) noexcept;

struct CreaseLine {
    CreaseKind kind;
    Vec2 a;
    Vec2 b;
};

// Flat crease layout of an m-module boom.  Every module contributes two rows
// of 2n triangles; the mid line of a module and the interfaces between
// modules are valley folds, the diagonals are mountain folds.  The last
// column of each row is the glue tab that closes the cylinder.
struct PatternDocument {
    YoshimuraDesign design;
    int modules = 1;
    double width = 0.0;
    double height = 0.0;
    std::vector<CreaseLine> lines;
    std::vector<std::array<Vec2, 3>> facets;
};

PatternDocument build_pattern(const YoshimuraDesign& design, int modules);

struct SvgStyle {
    std::string mountain_color = "#d62728";
    std::string valley_color = "#1f77b4";
    std::string boundary_color = "#000000";
    std::string units = "mm";
    double margin = 0.1;  ///< in units of L
};

std::string pattern_to_svg(const PatternDocument& doc, const SvgStyle& style = {});

}  // namespace yoshimura::io
