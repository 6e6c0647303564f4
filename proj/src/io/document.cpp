#include "yoshimura/io/document.hpp"

#include <fstream>
#include <sstream>

#include "yoshimura/errors.hpp"

namespace yoshimura::io {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

[[noreturn]] void fail_at(std::string_view text, std::string_view needle, const std::string& msg) {
    const std::size_t pos = needle.empty() ? std::string_view::npos : text.find(needle);
    if (pos == std::string_view::npos) throw ParseError(msg, 1, 1);
    const auto [line, column] = line_column(text, pos);
    throw ParseError(msg, static_cast<int>(line), static_cast<int>(column));
}

bool valid_state(const std::string& s) {
    return s.size() == 3 && s.find_first_not_of("01") == std::string::npos;
}

Vec3 point_from_json(const json& p) {
    if (!p.is_array() || p.size() != 3) throw InvalidArgument("points must be [x, y, z] triples");
    return {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
}

json point_to_json(const Vec3& p) { return json::array({p.x(), p.y(), p.z()}); }

}  // namespace

YoshimuraDesign ConfigDocument::design() const {
    YoshimuraDesign d{n, radians(beta_degrees), L};
    d.validate();
    return d;
}

BoomConfiguration ConfigDocument::configuration() const {
    BoomConfiguration config{design(), {}};
    for (const std::string& s : states) config.states.push_back(PopState::parse(s));
    config.validate();
    return config;
}

ConfigDocument ConfigDocument::from_configuration(const BoomConfiguration& config) {
    ConfigDocument doc;
    doc.n = config.design.n;
    doc.beta_degrees = degrees(config.design.beta);
    doc.L = config.design.L;
    for (const PopState s : config.states) doc.states.push_back(s.str());
    return doc;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        const auto [line, column] = line_column(text, offset);
        throw ParseError("invalid JSON", static_cast<int>(line), static_cast<int>(column));
    }
}

ConfigDocument parse_config(std::string_view text) {
    const json j = parse_json(text);
    if (!j.is_object()) fail_at(text, "", "configuration must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key != "design" && key != "states" && key != "metadata") {
            fail_at(text, "\"" + key + "\"", "unknown configuration field '" + key + "'");
        }
    }
    ConfigDocument doc;
    if (!j.contains("design") || !j["design"].is_object()) {
        fail_at(text, "\"design\"", "configuration needs a 'design' object");
    }
    const json& d = j["design"];
    for (const auto& [key, value] : d.items()) {
        if (key != "n" && key != "beta_degrees" && key != "L") {
            fail_at(text, "\"" + key + "\"", "unknown design field '" + key + "'");
        }
    }
    if (d.contains("n")) {
        if (!d["n"].is_number_integer()) fail_at(text, "\"n\"", "design.n must be an integer");
        doc.n = d["n"].get<int>();
    }
    if (!d.contains("beta_degrees") || !d["beta_degrees"].is_number()) {
        fail_at(text, "\"beta_degrees\"", "design.beta_degrees must be a number");
    }
    doc.beta_degrees = d["beta_degrees"].get<double>();
    if (d.contains("L")) {
        if (!d["L"].is_number()) fail_at(text, "\"L\"", "design.L must be a number");
        doc.L = d["L"].get<double>();
    }

    if (!j.contains("states") || !j["states"].is_array()) {
        fail_at(text, "\"states\"", "configuration needs a 'states' array");
    }
    for (const json& s : j["states"]) {
        if (!s.is_string() || !valid_state(s.get<std::string>())) {
            fail_at(text, s.dump(), "state " + s.dump() + " must be a 3-character string of 0 and 1");
        }
        doc.states.push_back(s.get<std::string>());
    }
    if (j.contains("metadata")) {
        if (!j["metadata"].is_object()) fail_at(text, "\"metadata\"", "metadata must be an object");
        doc.metadata = j["metadata"];
    }
    return doc;
}

std::string serialize_config(const ConfigDocument& doc) {
    json j;
    j["design"] = {{"n", doc.n}, {"beta_degrees", doc.beta_degrees}, {"L", doc.L}};
    j["states"] = doc.states;
    j["metadata"] = doc.metadata;
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ConfigDocument load_config(const std::string& path) { return parse_config(read_file(path)); }

YoshimuraDesign design_from_json(const json& j) {
    if (!j.is_object()) throw InvalidArgument("design must be an object");
    YoshimuraDesign d;
    try {
        if (j.contains("n")) d.n = j.at("n").get<int>();
        if (j.contains("beta_degrees")) {
            d.beta = radians(j.at("beta_degrees").get<double>());
        } else if (j.contains("beta")) {
            d.beta = radians(j.at("beta").get<double>());
        }
        if (j.contains("L")) d.L = j.at("L").get<double>();
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed design: ") + e.what());
    }
    d.validate();
    return d;
}

json design_to_json(const YoshimuraDesign& design) {
    return {{"n", design.n}, {"beta_degrees", degrees(design.beta)}, {"L", design.L}};
}

json solution_to_json(const ModuleSolution& s, const YoshimuraDesign& design) {
    return {{"design", design_to_json(design)},
            {"class", std::string(to_string(s.pop_class))},
            {"theta_degrees", degrees(s.theta)},
            {"eta_degrees", degrees(s.eta)},
            {"alpha_degrees", degrees(s.alpha)},
            {"gamma_degrees", degrees(s.gamma)},
            {"h", s.h},
            {"w", s.w},
            {"d", s.d},
            {"residuals", {{"max", s.max_residual}}}};
}

json metrics_to_json(const ShapeMetrics& m, double L) {
    return {{"length", m.length * L}, {"curvature", m.curvature / L}, {"planar", m.planar}};
}

json plan_to_json(const TransitionPlan& plan) {
    json flips = json::array();
    for (const Flip& f : plan.flips) flips.push_back({{"module", f.module}, {"bit", f.bit}});
    return {{"states", plan.sequence.size()},
            {"sequence", plan.sequence},
            {"flips", flips}};
}

json workspace_to_json(const Workspace& ws, double L) {
    json points = json::array();
    for (const WorkspacePoint& p : ws.points) {
        points.push_back({{"position", point_to_json(p.position * L)},
                          {"multiplicity", p.words.size()},
                          {"words", p.words}});
    }
    return {{"m", ws.m},
            {"dedup_tolerance", ws.dedup_tolerance},
            {"raw_count", ws.raw_count},
            {"unique_count", ws.points.size()},
            {"duplicate_count", ws.duplicate_count()},
            {"points", points}};
}

json pattern_to_json(const PatternDocument& doc) {
    json lines = json::array();
    for (const CreaseLine& line : doc.lines) {
        lines.push_back({{"kind", std::string(to_string(line.kind))},
                         {"a", {line.a.x(), line.a.y()}},
                         {"b", {line.b.x(), line.b.y()}},
                         {"length", (line.b - line.a).norm()}});
    }
    json facets = json::array();
    for (const auto& f : doc.facets) {
        facets.push_back({{f[0].x(), f[0].y()}, {f[1].x(), f[1].y()}, {f[2].x(), f[2].y()}});
    }
    return {{"design", design_to_json(doc.design)},
            {"modules", doc.modules},
            {"width", doc.width},
            {"height", doc.height},
            {"lines", lines},
            {"facets", facets}};
}

json ranked_to_json(const std::vector<RankedConfiguration>& ranked, const YoshimuraDesign& design) {
    json out = json::array();
    int rank = 1;
    for (const RankedConfiguration& r : ranked) {
        json states = json::array();
        for (const PopState s : parse_word(r.word)) states.push_back(s.str());
        out.push_back({{"rank", rank++},
                       {"word", r.word},
                       {"states", states},
                       {"objective", r.objective},
                       {"metrics", metrics_to_json(r.metrics, design.L)}});
    }
    return out;
}

ShapeTarget target_from_json(const json& j, double L) {
    if (!j.is_object()) throw InvalidArgument("target must be an object");
    const std::string type = j.value("type", j.contains("points") ? "polyline" : "metric");
    try {
        if (type == "polyline") {
            PolylineTarget target;
            for (const json& p : j.at("points")) target.points.push_back(point_from_json(p) / L);
            return target;
        }
        if (type == "metric") {
            MetricTarget target;
            if (j.contains("length") && !j["length"].is_null()) {
                target.length = j["length"].get<double>() / L;
            }
            if (j.contains("curvature") && !j["curvature"].is_null()) {
                target.curvature = j["curvature"].get<double>() * L;
            }
            target.planar_only = j.value("planar_only", false);
            return target;
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed target: ") + e.what());
    }
    throw InvalidArgument("target type must be 'metric' or 'polyline', got '" + type + "'");
}

}  // namespace yoshimura::io
