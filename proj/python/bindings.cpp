#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "yoshimura/errors.hpp"
#include "yoshimura/io/document.hpp"
#include "yoshimura/io/pattern.hpp"

namespace py = pybind11;
using namespace yoshimura;
using io::json;

namespace {

YoshimuraDesign make_design(int n, std::optional<double> beta_degrees, double L) {
    YoshimuraDesign d{n, beta_degrees ? radians(*beta_degrees) : golden_beta(), L};
    d.validate();
    return d;
}

BoomConfiguration make_config(const std::vector<std::string>& states, const YoshimuraDesign& d) {
    BoomConfiguration config{d, {}};
    for (const std::string& s : states) config.states.push_back(PopState::parse(s));
    config.validate();
    return config;
}

}  // namespace

PYBIND11_MODULE(_yoshimura, m) {
    m.doc() = "Generalized Yoshimura boom kinematics";

    auto base = py::register_exception<Error>(m, "YoshimuraError", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<AdmissibilityError>(m, "AdmissibilityError", base.ptr());
    py::register_exception<NoSolution>(m, "NoSolution", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<Unsupported>(m, "Unsupported", base.ptr());
    py::register_exception<ResourceLimit>(m, "ResourceLimit", base.ptr());
    py::register_exception<EmptyTarget>(m, "EmptyTarget", base.ptr());
    py::register_exception<EmptyConfiguration>(m, "EmptyConfiguration", base.ptr());

    m.def("golden_beta_degrees", [] { return degrees(golden_beta()); });
    m.def("phi", [] { return kPhi; });

    m.def(
        "solve_json",
        [](const std::string& pop_class, int n, std::optional<double> beta, double L) {
            const YoshimuraDesign d = make_design(n, beta, L);
            return io::solution_to_json(solve_module(d, parse_pop_class(pop_class)), d).dump();
        },
        py::arg("pop_class"), py::arg("n") = 3, py::arg("beta_degrees") = py::none(), py::arg("L") = 1.0);

    m.def(
        "transform",
        [](const std::string& state, int n, std::optional<double> beta) -> Mat4 {
            return transform_for_state(PopState::parse(state), make_design(n, beta, 1.0)).matrix();
        },
        py::arg("state"), py::arg("n") = 3, py::arg("beta_degrees") = py::none(),
        "Module transform in interface-side units.");

    m.def(
        "chain_frames",
        [](const std::vector<std::string>& states, int n, std::optional<double> beta, double L) {
            const FrameChain chain = build_chain(make_config(states, make_design(n, beta, L)));
            std::vector<Mat4> out;
            for (const FrameTransform& f : chain.frames) {
                Mat4 m4 = f.matrix();
                m4.topRightCorner<3, 1>() *= L;
                out.push_back(m4);
            }
            return out;
        },
        py::arg("states"), py::arg("n") = 3, py::arg("beta_degrees") = py::none(), py::arg("L") = 1.0);

    m.def(
        "metrics_json",
        [](const std::vector<std::string>& states, int n, std::optional<double> beta, double L) {
            return io::metrics_to_json(shape_metrics(make_config(states, make_design(n, beta, L))), L).dump();
        },
        py::arg("states"), py::arg("n") = 3, py::arg("beta_degrees") = py::none(), py::arg("L") = 1.0);

    m.def(
        "workspace_json",
        [](int modules, int n, std::optional<double> beta, double L, double tol) {
            const YoshimuraDesign d = make_design(n, beta, L);
            EnumerationOptions opts;
            opts.dedup_tolerance = tol;
            Workspace ws;
            {
                py::gil_scoped_release release;
                ws = enumerate_workspace(d, modules, opts);
            }
            return io::workspace_to_json(ws, L).dump();
        },
        py::arg("m"), py::arg("n") = 3, py::arg("beta_degrees") = py::none(), py::arg("L") = 1.0,
        py::arg("dedup_tolerance") = 1e-9);

    m.def("gray_code_json", [](int modules) { return io::plan_to_json(gray_code_plan(modules)).dump(); },
          py::arg("m"));
    m.def("shortest_transition_json",
          [](const std::string& from, const std::string& to) {
              return io::plan_to_json(shortest_transition(from, to)).dump();
          },
          py::arg("source"), py::arg("target"));

    m.def(
        "match_json",
        [](int modules, const std::string& target, const std::string& mode, std::size_t beam_width,
           std::size_t top_k, int n, std::optional<double> beta, double L) {
            const YoshimuraDesign d = make_design(n, beta, L);
            MatchOptions opts;
            opts.mode = parse_search_mode(mode);
            opts.beam_width = beam_width;
            opts.top_k = top_k;
            const ShapeTarget t = io::target_from_json(io::parse_json(target), L);
            std::vector<RankedConfiguration> ranked;
            {
                py::gil_scoped_release release;
                ranked = match_shape(d, modules, t, opts);
            }
            return io::ranked_to_json(ranked, d).dump();
        },
        py::arg("m"), py::arg("target"), py::arg("mode") = "exhaustive", py::arg("beam_width") = 64,
        py::arg("top_k") = 10, py::arg("n") = 3, py::arg("beta_degrees") = py::none(), py::arg("L") = 1.0);

    m.def(
        "pattern_svg",
        [](int modules, int n, std::optional<double> beta, double L) {
            return io::pattern_to_svg(io::build_pattern(make_design(n, beta, L), modules));
        },
        py::arg("m") = 1, py::arg("n") = 3, py::arg("beta_degrees") = py::none(), py::arg("L") = 1.0);

    m.def("canonical_config", [](const std::string& text) { return io::serialize_config(io::parse_config(text)); },
          py::arg("text"));
}
