#include "yoshimura/api.hpp"

#include <cstdlib>
#include <semaphore>

#include <httplib.h>

#include "yoshimura/errors.hpp"
#include "yoshimura/io/document.hpp"

namespace yoshimura::api {

using io::json;

struct Service::Limiter {
    explicit Limiter(unsigned slots) : semaphore(static_cast<std::ptrdiff_t>(slots)) {}
    std::counting_semaphore<1024> semaphore;
};

namespace {

class SearchSlot {
public:
    explicit SearchSlot(std::counting_semaphore<1024>& s) : s_(s) { s_.acquire(); }
    ~SearchSlot() { s_.release(); }
    SearchSlot(const SearchSlot&) = delete;
    SearchSlot& operator=(const SearchSlot&) = delete;

private:
    std::counting_semaphore<1024>& s_;
};

Response ok(const json& body) { return {200, body.dump()}; }

Response error_response(int status, std::string_view type, const std::string& message) {
    return {status, json{{"error", {{"type", type}, {"message", message}}}}.dump()};
}

std::string_view error_type(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
    if (dynamic_cast<const AdmissibilityError*>(&e)) return "AdmissibilityError";
    if (dynamic_cast<const NoSolution*>(&e)) return "NoSolution";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
    if (dynamic_cast<const Unsupported*>(&e)) return "Unsupported";
    if (dynamic_cast<const ResourceLimit*>(&e)) return "ResourceLimit";
    if (dynamic_cast<const EmptyTarget*>(&e)) return "EmptyTarget";
    if (dynamic_cast<const EmptyConfiguration*>(&e)) return "EmptyConfiguration";
    if (dynamic_cast<const json::exception*>(&e)) return "InvalidArgument";
    return "InternalError";
}

json body_object(const Request& r) {
    if (r.body.empty()) return json::object();
    json j = io::parse_json(r.body);
    if (!j.is_object()) throw InvalidArgument("request body must be a JSON object");
    return j;
}

int int_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        throw InvalidArgument(std::string("'") + key + "' must be an integer");
    }
    return j[key].get<int>();
}

int query_int(const Request& r, const std::string& key) {
    const auto it = r.query.find(key);
    if (it == r.query.end()) throw InvalidArgument("missing query parameter '" + key + "'");
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(it->second, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != it->second.size()) {
        throw InvalidArgument("query parameter '" + key + "' must be an integer");
    }
    return value;
}

json design_json(const json& body) {
    if (body.contains("design")) return body["design"];
    json d = json::object();
    for (const char* key : {"n", "beta", "beta_degrees", "L"}) {
        if (body.contains(key)) d[key] = body[key];
    }
    return d;
}

json chain_json(const BoomConfiguration& config) {
    const StateTable table(config.design);
    const FrameChain chain = build_chain(table, config.states);
    const ShapeMetrics metrics = shape_metrics(table, config.states);
    const std::vector<ModuleMesh> meshes = build_mesh(config);
    const double L = config.design.L;

    json frames = json::array();
    for (const FrameTransform& f : chain.frames) {
        json row = json::array();
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) row.push_back(c == 3 && r < 3 ? f.matrix()(r, c) * L : f.matrix()(r, c));
        }
        frames.push_back(row);
    }
    json objects = json::array();
    for (std::size_t j = 0; j < meshes.size(); ++j) {
        json vertices = json::array();
        for (const Vec3& v : meshes[j].vertices) vertices.push_back({v.x() * L, v.y() * L, v.z() * L});
        objects.push_back({{"name", "module_" + std::to_string(j)},
                           {"state", meshes[j].state.str()},
                           {"labels", meshes[j].labels},
                           {"vertices", vertices},
                           {"facets", meshes[j].facets}});
    }
    json residuals = json::array();
    for (const PopState s : config.states) {
        residuals.push_back({{"state", s.str()},
                             {"max", solve_module(config.design, s.pop_class()).max_residual}});
    }
    json states = json::array();
    for (const PopState s : config.states) states.push_back(s.str());
    return {{"design", io::design_to_json(config.design)},
            {"states", states},
            {"frames", frames},
            {"mesh", {{"objects", objects}}},
            {"metrics", io::metrics_to_json(metrics, L)},
            {"residuals", residuals}};
}

}  // namespace

int status_for(const std::exception& e) noexcept {
    const std::string_view type = error_type(e);
    if (type == "NoSolution" || type == "Unsupported" || type == "AdmissibilityError" ||
        type == "ConvergenceError") {
        return 422;
    }
    if (type == "ResourceLimit") return 413;
    if (type == "InternalError") return 500;
    return 400;
}

Service::Service(ServiceOptions options)
    : options_(options), limiter_(std::make_unique<Limiter>(std::max(1u, options.max_concurrent_searches))) {}

Service::~Service() = default;

Response Service::handle(const Request& request) const {
    try {
        const std::string& path = request.path;
        const bool get = request.method == "GET";
        const bool post = request.method == "POST";

        if (path == "/v1/design") {
            if (!get) return error_response(405, "MethodNotAllowed", "use GET");
            const YoshimuraDesign d = YoshimuraDesign::golden();
            const GoldenConstants g = golden_constants();
            return ok({{"design", io::design_to_json(d)},
                       {"admissibility", std::string(to_string(classify_admissibility(d)))},
                       {"golden", {{"phi", g.phi}, {"beta_degrees", degrees(g.beta_gold)}}},
                       {"enumeration_cap", options_.cap}});
        }
        if (path == "/v1/solve") {
            if (!post) return error_response(405, "MethodNotAllowed", "use POST");
            const json body = body_object(request);
            const YoshimuraDesign d = io::design_from_json(design_json(body));
            if (!body.contains("class") || !body["class"].is_string()) {
                throw InvalidArgument("'class' must be one of folded, 1pop, 2pop, 3pop");
            }
            const PopClass cls = parse_pop_class(body["class"].get<std::string>());
            return ok(io::solution_to_json(solve_module(d, cls), d));
        }
        if (path == "/v1/chain") {
            if (!post) return error_response(405, "MethodNotAllowed", "use POST");
            const json body = body_object(request);
            const YoshimuraDesign d = io::design_from_json(design_json(body));
            if (!body.contains("states") || !body["states"].is_array()) {
                throw InvalidArgument("'states' must be an array of 3-character strings");
            }
            BoomConfiguration config{d, {}};
            for (const json& s : body["states"]) {
                if (!s.is_string()) throw InvalidArgument("states must be strings");
                config.states.push_back(PopState::parse(s.get<std::string>()));
            }
            config.validate();
            return ok(chain_json(config));
        }
        if (path == "/v1/workspace") {
            if (!get) return error_response(405, "MethodNotAllowed", "use GET");
            const int m = query_int(request, "m");
            if (m < 0) throw InvalidArgument("m must be non-negative");
            json d = json::object();
            if (request.query.count("n")) d["n"] = query_int(request, "n");
            if (request.query.count("beta")) d["beta_degrees"] = std::stod(request.query.at("beta"));
            if (request.query.count("L")) d["L"] = std::stod(request.query.at("L"));
            const YoshimuraDesign design = io::design_from_json(d);
            EnumerationOptions opts;
            opts.cap = options_.cap;
            check_enumeration_cap(m, opts.cap);
            SearchSlot slot(limiter_->semaphore);
            return ok(io::workspace_to_json(enumerate_workspace(design, m, opts), design.L));
        }
        if (path == "/v1/match") {
            if (!post) return error_response(405, "MethodNotAllowed", "use POST");
            const json body = body_object(request);
            const YoshimuraDesign d = io::design_from_json(design_json(body));
            const int m = int_field(body, "m");
            if (!body.contains("target")) throw EmptyTarget("request has no target");
            const ShapeTarget target = io::target_from_json(body["target"], d.L);
            MatchOptions opts;
            opts.cap = options_.cap;
            opts.mode = parse_search_mode(body.value("mode", std::string("exhaustive")));
            opts.beam_width = body.value("beam_width", opts.beam_width);
            opts.top_k = body.value("top_k", opts.top_k);
            opts.length_weight = body.value("length_weight", opts.length_weight);
            opts.curvature_weight = body.value("curvature_weight", opts.curvature_weight);
            SearchSlot slot(limiter_->semaphore);
            const auto ranked = match_shape(d, m, target, opts);
            return ok({{"design", io::design_to_json(d)},
                       {"m", m},
                       {"mode", std::string(to_string(opts.mode))},
                       {"results", io::ranked_to_json(ranked, d)}});
        }
        if (path == "/v1/graycode") {
            if (!post) return error_response(405, "MethodNotAllowed", "use POST");
            const json body = body_object(request);
            if (body.contains("from") || body.contains("to")) {
                const std::string from = body.at("from").get<std::string>();
                const std::string to = body.at("to").get<std::string>();
                return ok(io::plan_to_json(shortest_transition(from, to)));
            }
            return ok(io::plan_to_json(gray_code_plan(int_field(body, "m"), options_.cap)));
        }
        return error_response(404, "NotFound", "no route for " + path);
    } catch (const std::exception& e) {
        return error_response(status_for(e), error_type(e), e.what());
    }
}

int default_port() {
    if (const char* env = std::getenv("YOSHIMURA_PORT")) {
        try {
            const int port = std::stoi(env);
            if (port > 0 && port < 65536) return port;
        } catch (const std::exception&) {
        }
    }
    return 8080;
}

struct HttpServer::Impl {
    explicit Impl(ServiceOptions options) : service(options) {
        auto route = [this](const httplib::Request& req, httplib::Response& res) {
            Request r{req.method, req.path, {}, req.body};
            for (const auto& [key, value] : req.params) r.query[key] = value;
            const Response out = service.handle(r);
            res.status = out.status;
            res.set_content(out.body, "application/json");
        };
        server.Get(R"(/v1/.*)", route);
        server.Post(R"(/v1/.*)", route);
    }

    Service service;
    httplib::Server server;
};

HttpServer::HttpServer(ServiceOptions options) : impl_(std::make_unique<Impl>(options)) {}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                                : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw InvalidArgument("cannot listen on " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void serve(const std::string& host, int port, ServiceOptions options) {
    HttpServer server(options);
    server.bind(host, port);
    server.run();
}

}  // namespace yoshimura::api
