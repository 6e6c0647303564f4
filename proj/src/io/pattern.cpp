#include "yoshimura/io/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "yoshimura/errors.hpp"

namespace yoshimura::io {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[32];
    std::snprintf(buf, sizeof buf, spec, v == 0.0 ? 0.0 : v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (const char c : s) {
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

}  // namespace

std::string_view to_string(CreaseKind kind) noexcept {
    switch (kind) {
        case CreaseKind::Mountain: return "mountain";
        case CreaseKind::Valley: return "valley";
        case CreaseKind::Boundary: return "boundary";
    }
    return "?";
}

PatternDocument build_pattern(const YoshimuraDesign& design, int modules) {
    design.validate();
    if (modules < 1) throw InvalidArgument("pattern needs at least one module");
    const int n = design.n;
    const double L = design.L;
    const double w = design.facet_half_height();

    PatternDocument doc;
    doc.design = design;
    doc.modules = modules;
    doc.width = (n + 0.5) * L;
    doc.height = 2.0 * w * modules;

    // Grid points are keyed by (column in half-L steps, row in w steps) so
    // shared edges are detected exactly.
    using Key = std::array<int, 2>;
    auto at = [&](const Key& k) { return Vec2(0.5 * L * k[0], w * k[1]); };
    std::map<std::pair<Key, Key>, bool> edges;
    auto add_triangle = [&](Key a, Key b, Key c) {
        doc.facets.push_back({at(a), at(b), at(c)});
        for (auto [p, q] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}}) {
            if (q < p) std::swap(p, q);
            edges[{p, q}] = true;
        }
    };

    for (int row = 0; row < 2 * modules; ++row) {
        // Apexes sit on the even grid lines, mid vertices on the odd ones.
        const bool upper = row % 2 == 1;
        const int apex_row = upper ? row + 1 : row;
        const int mid_row = upper ? row : row + 1;
        for (int k = 0; k < n; ++k) {
            add_triangle({2 * k, mid_row}, {2 * k + 2, mid_row}, {2 * k + 1, apex_row});
        }
        for (int k = 1; k <= n; ++k) {
            add_triangle({2 * k - 1, apex_row}, {2 * k + 1, apex_row}, {2 * k, mid_row});
        }
    }

    const int top_row = 2 * modules;
    for (const auto& [edge, unused] : edges) {
        const auto& [p, q] = edge;
        CreaseKind kind;
        if (p[1] == q[1]) {
            kind = (p[1] == 0 || p[1] == top_row) ? CreaseKind::Boundary : CreaseKind::Valley;
        } else {
            const bool seam = std::min(p[0], q[0]) == 0 || std::max(p[0], q[0]) == 2 * n + 1;
            kind = seam ? CreaseKind::Boundary : CreaseKind::Mountain;
        }
        doc.lines.push_back({kind, at(p), at(q)});
    }
    return doc;
}

std::string pattern_to_svg(const PatternDocument& doc, const SvgStyle& style) {
    const double L = doc.design.L;
    const double margin = style.margin * L;
    const double caption = 0.15 * L;
    const double W = doc.width + 2.0 * margin;
    const double H = doc.height + 2.0 * margin + 3.0 * caption;
    const double stroke = 0.01 * L;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W) << style.units
        << "\" height=\"" << fmt(H) << style.units << "\" viewBox=\"0 0 " << fmt(W) << ' '
        << fmt(H) << "\">\n";
    svg << "  <title>Yoshimura crease pattern, n = " << doc.design.n << ", "
        << doc.modules << " module(s)</title>\n";

    const auto y_of = [&](double y) { return margin + doc.height - y; };
    const auto emit = [&](CreaseKind kind, const std::string& color, const char* dash) {
        svg << "  <g id=\"" << to_string(kind) << "\" stroke=\"" << escape(color)
            << "\" stroke-width=\"" << fmt(stroke) << "\" fill=\"none\"";
        if (dash) svg << " stroke-dasharray=\"" << dash << "\"";
        svg << ">\n";
        for (const CreaseLine& line : doc.lines) {
            if (line.kind != kind) continue;
            svg << "    <line x1=\"" << fmt(margin + line.a.x()) << "\" y1=\"" << fmt(y_of(line.a.y()))
                << "\" x2=\"" << fmt(margin + line.b.x()) << "\" y2=\"" << fmt(y_of(line.b.y()))
                << "\"/>\n";
        }
        svg << "  </g>\n";
    };
    const std::string dash = fmt(0.06 * L) + "," + fmt(0.04 * L);
    emit(CreaseKind::Boundary, style.boundary_color, nullptr);
    emit(CreaseKind::Mountain, style.mountain_color, nullptr);
    emit(CreaseKind::Valley, style.valley_color, dash.c_str());

    const double text_y = margin + doc.height + caption * 1.5;
    svg << "  <text x=\"" << fmt(margin) << "\" y=\"" << fmt(text_y) << "\" font-size=\""
        << fmt(caption * 0.8) << "\" font-family=\"sans-serif\">"
        << "&#946; = " << fmt(degrees(doc.design.beta), "%.2f") << "&#176;, L = " << fmt(L)
        << ' ' << escape(style.units) << ", n = " << doc.design.n
        << "; mountain: solid, valley: dashed</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace yoshimura::io
