#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "yoshimura/boom.hpp"
#include "yoshimura/config_space.hpp"
#include "yoshimura/io/pattern.hpp"

namespace yoshimura::io {

using nlohmann::json;

// A boom description as stored on disk: design, per-module states (base
// first) and free-form metadata carried through untouched.
struct ConfigDocument {
    int n = 3;
    double beta_degrees = degrees(golden_beta());
    double L = 1.0;
    std::vector<std::string> states;
    json metadata = json::object();

    YoshimuraDesign design() const;
    BoomConfiguration configuration() const;

    static ConfigDocument from_configuration(const BoomConfiguration& config);

    bool operator==(const ConfigDocument&) const = default;
};

ConfigDocument parse_config(std::string_view text);
std::string serialize_config(const ConfigDocument& doc);
ConfigDocument load_config(const std::string& path);

// Reads a design object {n, beta_degrees, L}; "beta" is accepted as an alias
// for beta_degrees.  Missing fields take the golden defaults.
YoshimuraDesign design_from_json(const json& j);
json design_to_json(const YoshimuraDesign& design);

json solution_to_json(const ModuleSolution& s, const YoshimuraDesign& design);
json metrics_to_json(const ShapeMetrics& m, double L);
json plan_to_json(const TransitionPlan& plan);
json workspace_to_json(const Workspace& ws, double L);
json pattern_to_json(const PatternDocument& doc);
json ranked_to_json(const std::vector<RankedConfiguration>& ranked, const YoshimuraDesign& design);

// {"type": "metric", "length": .., "curvature": .., "planar_only": ..} or
// {"type": "polyline", "points": [[x, y, z], ...]}, in the design's length
// units.
ShapeTarget target_from_json(const json& j, double L);

// Reads a whole file; throws InvalidArgument when it cannot be opened.
std::string read_file(const std::string& path);
// Parses JSON text, mapping syntax errors to ParseError with line/column.
json parse_json(std::string_view text);

}  // namespace yoshimura::io
