#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "yoshimura/boom.hpp"
#include "yoshimura/errors.hpp"

using namespace yoshimura;
using doctest::Approx;

namespace {

std::string random_word(std::mt19937& rng, int m) {
    std::string w;
    for (int j = 0; j < 3 * m; ++j) w += (rng() & 1u) ? '1' : '0';
    return w;
}

double max_abs_diff(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("chain composes base to tip") {
    const YoshimuraDesign d = YoshimuraDesign::golden();
    const BoomConfiguration config = BoomConfiguration::from_word(d, "100011001");
    const FrameChain chain = build_chain(config);
    REQUIRE(chain.frames.size() == 4);
    CHECK(chain.modules() == 3);
    CHECK(chain.frames[0].matrix() == Mat4::Identity());
    const Mat4 expected = transform_for_state(PopState::parse("100"), d).matrix() *
                          transform_for_state(PopState::parse("011"), d).matrix() *
                          transform_for_state(PopState::parse("001"), d).matrix();
    CHECK(max_abs_diff(chain.endpoint().matrix(), expected) < 1e-12);
    CHECK(config.word() == "100011001");
}

TEST_CASE("empty configurations are rejected") {
    const BoomConfiguration empty{YoshimuraDesign::golden(), {}};
    CHECK_THROWS_AS(build_chain(empty), EmptyConfiguration);
    CHECK_THROWS_AS(shape_metrics(empty), EmptyConfiguration);
}

TEST_CASE("solver errors name the module") {
    const BoomConfiguration config = BoomConfiguration::from_word(YoshimuraDesign::from_degrees(3, 31.0), "000100");
    try {
        build_chain(config);
        FAIL("expected NoSolution");
    } catch (const NoSolution& e) {
        CHECK(std::string(e.what()).find("module 1 (state 100)") != std::string::npos);
    }
}

TEST_CASE("length scaling") {
    const YoshimuraDesign d = YoshimuraDesign::golden();
    SUBCASE("all-111 grows by 1/phi per module") {
        const auto chain = build_chain(BoomConfiguration::from_word(d, "111111111"));
        for (int j = 1; j <= 3; ++j) {
            const Vec3 step = chain.frames[j].translation() - chain.frames[j - 1].translation();
            CHECK(std::abs(step.norm() - 0.618) < 5e-4);
            CHECK(std::abs(step.norm() - 1.0 / kPhi) < 1e-12);
            CHECK(std::abs(step.x()) + std::abs(step.y()) < 1e-12);
        }
    }
    SUBCASE("all-000 grows by 0.2205 per module") {
        const auto chain = build_chain(BoomConfiguration::from_word(d, "000000000"));
        for (int j = 1; j <= 3; ++j) {
            const Vec3 step = chain.frames[j].translation() - chain.frames[j - 1].translation();
            CHECK(std::abs(step.norm() - 0.2205) < 5e-5);
        }
    }
    SUBCASE("a 001/110 pair behaves like one straight 111 module") {
        const auto chain = build_chain(BoomConfiguration::from_word(d, "001110001110001110"));
        // Net rotation of each pair vanishes, so the pair endpoints march along
        // one fixed line.
        const Vec3 step = chain.frames[2].translation();
        CHECK(std::abs(step.norm() - 1.0 / kPhi) < 1e-12);
        for (int p = 1; p <= 3; ++p) {
            const FrameTransform& f = chain.frames[2 * p];
            CHECK((f.rotation() - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
            const Vec3 e = f.translation();
            const double lateral = (e - e.dot(step.normalized()) * step.normalized()).norm();
            CHECK(lateral < 1e-9);
            CHECK(e.norm() == Approx(p / kPhi).epsilon(1e-12));
        }
    }
}

TEST_CASE("shape metrics") {
    const YoshimuraDesign d = YoshimuraDesign::golden();
    const double g = 2.0 * std::asin(1.0 / (std::sqrt(3.0) * kPhi));
    SUBCASE("uniform arc") {
        const ShapeMetrics m = shape_metrics(BoomConfiguration::from_word(d, "001001001"));
        CHECK(m.planar);
        CHECK(m.length == Approx(1.0 / kPhi));
        CHECK(m.curvature == Approx(g / (1.0 / (3.0 * kPhi))));
    }
    SUBCASE("opposite bends about one axis cancel") {
        const ShapeMetrics m = shape_metrics(BoomConfiguration::from_word(d, "100011"));
        CHECK(m.planar);
        CHECK(std::abs(m.curvature) < 1e-12);
    }
    SUBCASE("mixing bending axes is not planar") {
        const ShapeMetrics m = shape_metrics(BoomConfiguration::from_word(d, "100010"));
        CHECK_FALSE(m.planar);
        CHECK(m.curvature == Approx(2.0 * g / m.length));
    }
    SUBCASE("straight modules do not break planarity") {
        CHECK(shape_metrics(BoomConfiguration::from_word(d, "000110111110")).planar);
        CHECK(shape_metrics(BoomConfiguration::from_word(d, "111000")).planar);
    }
}

TEST_CASE("module meshes") {
    const YoshimuraDesign d = YoshimuraDesign::golden();
    for (const PopState s : all_pop_states()) {
        CAPTURE(s.str());
        const ModuleMesh mesh = canonical_module_mesh(s, d);
        CHECK(mesh.facets.size() == static_cast<std::size_t>(12 + 2 * s.pop_count()));
        CHECK(mesh.vertices.size() == static_cast<std::size_t>(9 + s.pop_count()));
        // The base interface triangle is the module's base frame.
        CHECK(max_abs_diff(triangle_frame(mesh.base_triangle()).matrix(), Mat4::Identity()) < 1e-12);
        // The top triangle sits where the module transform puts it.
        CHECK(max_abs_diff(triangle_frame(mesh.top_triangle()).matrix(),
                           transform_for_state(s, d).matrix()) < 1e-12);
        for (int k = 0; k < 3; ++k) {
            const Vec3 a = mesh.top_triangle()[k];
            const Vec3 b = mesh.top_triangle()[(k + 1) % 3];
            CHECK((a - b).norm() == Approx(1.0).epsilon(1e-12));
        }
        CHECK(mesh.index_of("Q9") == -1);
        CHECK_THROWS_AS(mesh.vertex("nope"), InvalidArgument);
    }
}

TEST_CASE("every facet edge keeps its flat length") {
    std::mt19937 rng(7);
    for (const double beta_deg : {31.7174744114610, 35.0, 45.0, 60.0}) {
        const YoshimuraDesign d = YoshimuraDesign::from_degrees(3, beta_deg);
        for (int trial = 0; trial < 30; ++trial) {
            const int m = 1 + static_cast<int>(rng() % 4);
            const BoomConfiguration config = BoomConfiguration::from_word(d, random_word(rng, m));
            CAPTURE(config.word());
            const auto meshes = build_mesh(config);
            const auto chain = build_chain(config);
            double worst_edge = 0.0;
            double worst_interface = 0.0;
            for (std::size_t j = 0; j < meshes.size(); ++j) {
                const ModuleMesh& mesh = meshes[j];
                for (const auto& f : mesh.facets) {
                    for (int e = 0; e < 3; ++e) {
                        const int a = f[e];
                        const int b = f[(e + 1) % 3];
                        const double len = (mesh.vertices[a] - mesh.vertices[b]).norm();
                        const double flat = flat_pattern_distance(mesh.labels[a], mesh.labels[b], d);
                        worst_edge = std::max(worst_edge, std::abs(len - flat));
                    }
                }
                if (j + 1 < meshes.size()) {
                    for (int k = 0; k < 3; ++k) {
                        worst_interface = std::max(
                            worst_interface,
                            (mesh.top_triangle()[k] - meshes[j + 1].base_triangle()[k]).norm());
                    }
                }
                CHECK(max_abs_diff(triangle_frame(mesh.top_triangle()).matrix(),
                                   chain.frames[j + 1].matrix()) < 1e-9);
            }
            CHECK(worst_edge < 1e-9);
            CHECK(worst_interface < 1e-9);
        }
    }
}

TEST_CASE("facets are oriented consistently") {
    // Each interior edge is traversed once in each direction.
    const YoshimuraDesign d = YoshimuraDesign::from_degrees(3, 40.0);
    for (const PopState s : all_pop_states()) {
        const ModuleMesh mesh = canonical_module_mesh(s, d);
        std::set<std::pair<int, int>> directed;
        for (const auto& f : mesh.facets) {
            for (int e = 0; e < 3; ++e) {
                const auto edge = std::pair{f[e], f[(e + 1) % 3]};
                CHECK(directed.insert(edge).second);
            }
        }
        for (const auto& [a, b] : directed) {
            const bool boundary = (mesh.labels[a].size() <= 2 && mesh.labels[a][0] <= 'C' &&
                                   mesh.labels[b].size() <= 2 && mesh.labels[b][0] <= 'C');
            if (!boundary) CHECK(directed.count({b, a}) == 1);
        }
    }
}

TEST_CASE("flat pattern distances") {
    const YoshimuraDesign d = YoshimuraDesign::golden();
    const double w = d.facet_half_height();
    CHECK(flat_pattern_distance("A", "B", d) == Approx(1.0));
    CHECK(flat_pattern_distance("M0", "M1", d) == Approx(1.0));
    CHECK(flat_pattern_distance("M2", "M0", d) == Approx(1.0));
    CHECK(flat_pattern_distance("A", "A'", d) == Approx(2.0 * w));
    CHECK(flat_pattern_distance("M0", "A", d) == Approx(std::hypot(0.5, w)));
    CHECK_THROWS_AS(flat_pattern_distance("Z", "A", d), InvalidArgument);
}
