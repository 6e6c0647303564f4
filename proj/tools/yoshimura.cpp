// Command line front end: solve, chain, workspace, graycode, match, pattern
// and serve.  Exit codes: 0 success, 1 usage or input error, 2 kinematic
// infeasibility.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "yoshimura/api.hpp"
#include "yoshimura/errors.hpp"
#include "yoshimura/io/document.hpp"
#include "yoshimura/io/export.hpp"
#include "yoshimura/io/pattern.hpp"

namespace {

using namespace yoshimura;
using io::json;

constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

std::string sig6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
    return buf;
}

struct DesignFlags {
    int n = 3;
    std::optional<double> beta;
    double L = 1.0;

    void attach(CLI::App* app) {
        app->add_option("--n", n, "Number of rhombi around the circumference")->capture_default_str();
        app->add_option("--beta", beta, "Sector angle in degrees (default: golden angle)");
        app->add_option("--L", L, "Interface triangle side length")->capture_default_str();
    }
    YoshimuraDesign design() const {
        YoshimuraDesign d{n, beta ? radians(*beta) : golden_beta(), L};
        d.validate();
        return d;
    }
};

// Writes to the named file, or stdout for "" and "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << text;
}

int run_solve(const DesignFlags& flags, const std::string& cls, bool as_json) {
    const YoshimuraDesign d = flags.design();
    const ModuleSolution s = solve_module(d, parse_pop_class(cls));
    if (as_json) {
        std::cout << io::solution_to_json(s, d).dump(2) << '\n';
        return 0;
    }
    std::cout << "class     " << to_string(s.pop_class) << '\n'
              << "beta      " << sig6(degrees(d.beta)) << " deg\n"
              << "theta     " << sig6(degrees(s.theta)) << " deg\n";
    if (s.pop_class == PopClass::OnePop) {
        std::cout << "eta       " << sig6(degrees(s.eta)) << " deg\n"
                  << "alpha     " << sig6(degrees(s.alpha)) << " deg\n";
    }
    std::cout << "gamma     " << sig6(degrees(s.gamma)) << " deg\n"
              << "h         " << sig6(s.h) << '\n'
              << "d         " << sig6(s.d) << '\n'
              << "residual  " << sig6(s.max_residual) << '\n';
    return 0;
}

int run_chain(const std::string& path, const std::string& frames_path,
              const std::string& mesh_path, bool as_json) {
    const io::ConfigDocument doc = io::load_config(path);
    const BoomConfiguration config = doc.configuration();
    const StateTable table(config.design);
    const FrameChain chain = build_chain(table, config.states);
    const ShapeMetrics metrics = shape_metrics(table, config.states);
    const double L = config.design.L;

    if (!frames_path.empty()) {
        std::ostringstream csv;
        io::write_frames_csv(csv, chain, L);
        emit(frames_path, csv.str());
    }
    if (!mesh_path.empty()) {
        std::ostringstream obj;
        io::write_obj(obj, build_mesh(config), L);
        emit(mesh_path, obj.str());
    }
    const Vec3 tip = chain.endpoint().translation() * L;
    if (as_json) {
        json out = {{"modules", config.states.size()},
                    {"word", config.word()},
                    {"metrics", io::metrics_to_json(metrics, L)},
                    {"endpoint", {tip.x(), tip.y(), tip.z()}}};
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << "modules    " << config.states.size() << '\n'
              << "word       " << config.word() << '\n'
              << "length     " << sig6(metrics.length * L) << '\n'
              << "curvature  " << sig6(metrics.curvature / L) << '\n'
              << "planar     " << (metrics.planar ? "true" : "false") << '\n'
              << "endpoint   " << sig6(tip.x()) << ' ' << sig6(tip.y()) << ' ' << sig6(tip.z())
              << '\n';
    return 0;
}

int run_workspace(const DesignFlags& flags, int m, const std::string& format,
                  const std::string& output, double tol, std::uint64_t cap, unsigned threads) {
    const YoshimuraDesign d = flags.design();
    EnumerationOptions opts;
    opts.dedup_tolerance = tol;
    opts.cap = cap;
    opts.threads = threads;
    const Workspace ws = enumerate_workspace(d, m, opts);
    if (format == "json") {
        emit(output, io::workspace_to_json(ws, d.L).dump(2) + "\n");
    } else {
        std::ostringstream csv;
        io::write_workspace_csv(csv, ws, d.L);
        emit(output, csv.str());
    }
    std::cerr << ws.raw_count << " configurations, " << ws.points.size() << " unique endpoints, "
              << ws.duplicate_count() << " duplicates\n";
    return 0;
}

int run_graycode(std::optional<int> m, const std::string& from, const std::string& to,
                 const std::string& output, std::uint64_t cap) {
    TransitionPlan plan;
    if (!from.empty() || !to.empty()) {
        plan = shortest_transition(from, to);
    } else {
        if (!m) throw InvalidArgument("graycode needs --m or both --from and --to");
        plan = gray_code_plan(*m, cap);
    }
    emit(output, io::plan_to_json(plan).dump(2) + "\n");
    return 0;
}

struct MatchFlags {
    std::string target;
    int m = 1;
    std::string mode = "exhaustive";
    std::size_t beam_width = 64;
    std::size_t top_k = 10;
    double length_weight = 1.0;
    double curvature_weight = 0.5;
    std::uint64_t cap = kDefaultEnumerationCap;
    std::string output;
    std::string config_dir;
};

int run_match(const DesignFlags& flags, const MatchFlags& mf) {
    const YoshimuraDesign d = flags.design();
    const ShapeTarget target = io::target_from_json(io::parse_json(io::read_file(mf.target)), d.L);
    MatchOptions opts;
    opts.mode = parse_search_mode(mf.mode);
    opts.beam_width = mf.beam_width;
    opts.top_k = mf.top_k;
    opts.length_weight = mf.length_weight;
    opts.curvature_weight = mf.curvature_weight;
    opts.cap = mf.cap;
    const auto ranked = match_shape(d, mf.m, target, opts);

    const json results = {{"design", io::design_to_json(d)},
                          {"m", mf.m},
                          {"mode", std::string(to_string(opts.mode))},
                          {"results", io::ranked_to_json(ranked, d)}};
    if (!mf.output.empty()) emit(mf.output, results.dump(2) + "\n");
    if (!mf.config_dir.empty()) {
        std::filesystem::create_directories(mf.config_dir);
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            io::ConfigDocument doc =
                io::ConfigDocument::from_configuration(BoomConfiguration::from_word(d, ranked[i].word));
            doc.metadata = {{"rank", i + 1}, {"objective", ranked[i].objective}};
            char name[32];
            std::snprintf(name, sizeof name, "rank_%02zu.json", i + 1);
            emit((std::filesystem::path(mf.config_dir) / name).string(), io::serialize_config(doc));
        }
    }
    std::cout << "rank  objective     length      curvature   planar  word\n";
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        char line[160];
        std::snprintf(line, sizeof line, "%-5zu %-13s %-11s %-11s %-7s ", i + 1,
                      sig6(ranked[i].objective).c_str(), sig6(ranked[i].metrics.length * d.L).c_str(),
                      sig6(ranked[i].metrics.curvature / d.L).c_str(),
                      ranked[i].metrics.planar ? "yes" : "no");
        std::cout << line << ranked[i].word << '\n';
    }
    return 0;
}

int run_pattern(const DesignFlags& flags, int m, const std::string& output,
                const std::string& json_path, const io::SvgStyle& style) {
    const io::PatternDocument doc = io::build_pattern(flags.design(), m);
    emit(output, io::pattern_to_svg(doc, style));
    if (!json_path.empty()) emit(json_path, io::pattern_to_json(doc).dump(2) + "\n");
    return 0;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const NoSolution*>(&e) || dynamic_cast<const AdmissibilityError*>(&e) ||
        dynamic_cast<const Unsupported*>(&e) || dynamic_cast<const ConvergenceError*>(&e)) {
        return kExitInfeasible;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Yoshimura boom kinematics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "yoshimura 0.1.0");

    DesignFlags design;

    auto* solve = app.add_subcommand("solve", "Solve one module for a pop class");
    std::string cls = "1pop";
    bool solve_json = false;
    design.attach(solve);
    solve->add_option("--class", cls, "folded, 1pop, 2pop or 3pop")->capture_default_str();
    solve->add_flag("--json", solve_json, "Print JSON");

    auto* chain = app.add_subcommand("chain", "Forward kinematics of a configuration file");
    std::string config_path, frames_path, mesh_path;
    bool chain_json = false;
    chain->add_option("config", config_path, "Configuration JSON")->required();
    chain->add_option("--frames", frames_path, "Write interface frames as CSV");
    chain->add_option("--mesh", mesh_path, "Write the folded mesh as OBJ");
    chain->add_flag("--json", chain_json, "Print the summary as JSON");

    auto* workspace = app.add_subcommand("workspace", "Enumerate reachable endpoints");
    int ws_m = 1;
    std::string ws_format = "csv", ws_output;
    double ws_tol = 1e-9;
    std::uint64_t cap = kDefaultEnumerationCap;
    unsigned threads = 0;
    design.attach(workspace);
    workspace->add_option("--m", ws_m, "Module count")->capture_default_str();
    workspace->add_option("--format", ws_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    workspace->add_option("--output,-o", ws_output, "Output file (default stdout)");
    workspace->add_option("--dedup-tol", ws_tol, "Merge endpoints closer than this")->capture_default_str();
    workspace->add_option("--cap", cap, "Largest configuration count to enumerate")->capture_default_str();
    workspace->add_option("--threads", threads, "Worker threads (0 = hardware)");

    auto* graycode = app.add_subcommand("graycode", "Single-flip actuation plans");
    std::optional<int> gc_m;
    std::string gc_from, gc_to, gc_output;
    graycode->add_option("--m", gc_m, "Module count for a full Gray-code cycle");
    graycode->add_option("--from", gc_from, "Start word for a shortest transition");
    graycode->add_option("--to", gc_to, "Goal word for a shortest transition");
    graycode->add_option("--output,-o", gc_output, "Output file (default stdout)");
    graycode->add_option("--cap", cap, "Largest configuration count")->capture_default_str();

    auto* match = app.add_subcommand("match", "Rank configurations against a target shape");
    MatchFlags mf;
    design.attach(match);
    match->add_option("--target", mf.target, "Target JSON")->required();
    match->add_option("--m", mf.m, "Module count")->capture_default_str();
    match->add_option("--mode", mf.mode)->check(CLI::IsMember({"exhaustive", "beam"}))->capture_default_str();
    match->add_option("--beam-width", mf.beam_width)->capture_default_str();
    match->add_option("--top-k", mf.top_k)->capture_default_str();
    match->add_option("--length-weight", mf.length_weight)->capture_default_str();
    match->add_option("--curvature-weight", mf.curvature_weight)->capture_default_str();
    match->add_option("--cap", mf.cap)->capture_default_str();
    match->add_option("--output,-o", mf.output, "Write ranked results as JSON");
    match->add_option("--config-dir", mf.config_dir, "Write one configuration file per result");

    auto* pattern = app.add_subcommand("pattern", "Flat crease pattern as SVG");
    int pat_m = 1;
    std::string pat_output, pat_json;
    io::SvgStyle style;
    design.attach(pattern);
    pattern->add_option("--m", pat_m, "Module count")->capture_default_str();
    pattern->add_option("--output,-o", pat_output, "SVG file (default stdout)");
    pattern->add_option("--json", pat_json, "Also write the pattern document as JSON");
    pattern->add_option("--units", style.units)->capture_default_str();
    pattern->add_option("--mountain-color", style.mountain_color)->capture_default_str();
    pattern->add_option("--valley-color", style.valley_color)->capture_default_str();

    auto* serve = app.add_subcommand("serve", "Serve the /v1 JSON API");
    std::string host = "127.0.0.1";
    int port = api::default_port();
    api::ServiceOptions service;
    serve->add_option("--host", host)->capture_default_str();
    serve->add_option("--port", port, "Port (default from YOSHIMURA_PORT, else 8080)")->capture_default_str();
    serve->add_option("--max-searches", service.max_concurrent_searches,
                      "Concurrent enumerations and searches")->capture_default_str();
    serve->add_option("--cap", service.cap)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*solve) return run_solve(design, cls, solve_json);
        if (*chain) return run_chain(config_path, frames_path, mesh_path, chain_json);
        if (*workspace) return run_workspace(design, ws_m, ws_format, ws_output, ws_tol, cap, threads);
        if (*graycode) return run_graycode(gc_m, gc_from, gc_to, gc_output, cap);
        if (*match) return run_match(design, mf);
        if (*pattern) return run_pattern(design, pat_m, pat_output, pat_json, style);
        if (*serve) {
            std::cerr << "serving /v1 on http://" << host << ':' << port << '\n';
            api::serve(host, port, service);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitUsage;
}
