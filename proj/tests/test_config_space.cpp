#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "support/oracles.hpp"
#include "yoshimura/config_space.hpp"
#include "yoshimura/errors.hpp"

using namespace yoshimura;
using doctest::Approx;

namespace {

std::string word_of(std::uint64_t code, int m) {
    std::string w;
    for (int j = m - 1; j >= 0; --j) w += PopState::from_code(static_cast<unsigned>((code >> (3 * j)) & 7u)).str();
    return w;
}

bool contains_point(const Workspace& ws, const Vec3& p, double tol) {
    return std::any_of(ws.points.begin(), ws.points.end(),
                       [&](const WorkspacePoint& q) { return (q.position - p).norm() <= tol; });
}

}  // namespace

TEST_CASE("configuration counts and caps") {
    CHECK(configuration_count(0) == 1u);
    CHECK(configuration_count(3) == 512u);
    CHECK(configuration_count(7) == kDefaultEnumerationCap);
    CHECK_FALSE(configuration_count(30).has_value());
    CHECK_NOTHROW(check_enumeration_cap(7, kDefaultEnumerationCap));
    CHECK_THROWS_AS(check_enumeration_cap(8, kDefaultEnumerationCap), ResourceLimit);
    CHECK_THROWS_AS(enumerate_workspace(YoshimuraDesign::golden(), 8), ResourceLimit);
    CHECK_THROWS_AS(gray_code_plan(3, 100), ResourceLimit);
}

TEST_CASE("single-module workspace") {
    const Workspace ws = enumerate_workspace(YoshimuraDesign::golden(), 1);
    CHECK(ws.raw_count == 8);
    REQUIRE(ws.points.size() == 8);
    CHECK(ws.duplicate_count() == 0);
    // Lexicographic order by first word.
    for (std::size_t i = 0; i < 8; ++i) CHECK(ws.points[i].words.front() == all_pop_states()[i].str());
    CHECK(ws.points[0].position.isApprox(Vec3(0, 0, std::sqrt(1.0 - kPhi * kPhi / 3.0) / kPhi)));
    CHECK(std::abs(ws.points[0].position.z() - 0.2205) < 5e-5);
    CHECK(std::abs(ws.points[7].position.z() - 0.618) < 5e-4);
    CHECK(ws.points[7].position.head<2>().norm() < 1e-15);

    const Mat3 spin = elementary::rot_z(2.0 * kPi / 3.0).topLeftCorner<3, 3>();
    const Vec3 p100 = ws.points[4].position;
    CHECK((spin * p100 - ws.points[2].position).norm() < 1e-12);         // 010
    CHECK((spin * spin * p100 - ws.points[1].position).norm() < 1e-12);  // 001
}

TEST_CASE("empty boom workspace") {
    const Workspace ws = enumerate_workspace(YoshimuraDesign::golden(), 0);
    REQUIRE(ws.points.size() == 1);
    CHECK(ws.points[0].position == Vec3::Zero());
}

TEST_CASE("raw endpoint counts and reproducibility") {
    const YoshimuraDesign d = YoshimuraDesign::golden();
    const StateTable table(d);
    for (int m = 1; m <= 3; ++m) {
        const auto endpoints = workspace_endpoints(table, m);
        CHECK(endpoints.size() == *configuration_count(m));
        const Workspace ws = enumerate_workspace(d, m);
        CHECK(ws.raw_count == endpoints.size());
        std::size_t words = 0;
        for (const WorkspacePoint& p : ws.points) {
            words += p.words.size();
            CHECK(std::is_sorted(p.words.begin(), p.words.end()));
            for (const std::string& w : p.words) {
                const Vec3 tip = build_chain(BoomConfiguration::from_word(d, w)).endpoint().translation();
                CHECK((tip - p.position).norm() < 1e-9);
            }
        }
        CHECK(words == endpoints.size());
    }
}

TEST_CASE("threaded enumeration matches the serial one") {
    const StateTable table(YoshimuraDesign::from_degrees(3, 40.0));
    EnumerationOptions serial;
    serial.threads = 1;
    EnumerationOptions parallel;
    parallel.threads = 4;
    const auto a = workspace_endpoints(table, 4, serial);
    const auto b = workspace_endpoints(table, 4, parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("workspace self-similarity") {
    const YoshimuraDesign d = YoshimuraDesign::golden();
    const StateTable table(d);
    const Workspace one = enumerate_workspace(d, 1);
    const Workspace two = enumerate_workspace(d, 2);
    CHECK(two.raw_count == 64);
    Workspace image;
    for (const PopState s : all_pop_states()) {
        for (const WorkspacePoint& p : one.points) {
            image.points.push_back({table.transform(s).apply(p.position), {}});
        }
    }
    for (const WorkspacePoint& p : image.points) CHECK(contains_point(two, p.position, 1e-9));
    for (const WorkspacePoint& p : two.points) CHECK(contains_point(image, p.position, 1e-9));
}

TEST_CASE("coincident endpoints are merged with their words") {
    const Workspace ws = enumerate_workspace(YoshimuraDesign::golden(), 2);
    // 000 then 111 and 111 then 000 end at the same point.
    const auto it = std::find_if(ws.points.begin(), ws.points.end(), [](const WorkspacePoint& p) {
        return std::find(p.words.begin(), p.words.end(), "000111") != p.words.end();
    });
    REQUIRE(it != ws.points.end());
    CHECK(it->words == std::vector<std::string>{"000111", "111000"});
}

TEST_CASE("Gray-code plans") {
    const TransitionPlan one = gray_code_plan(1);
    CHECK(one.sequence ==
          std::vector<std::string>{"000", "001", "011", "010", "110", "111", "101", "100"});
    CHECK(one.flips.front() == Flip{0, 2});
    for (int m = 1; m <= 3; ++m) {
        const TransitionPlan plan = gray_code_plan(m);
        CHECK(plan.sequence.size() == *configuration_count(m));
        CHECK(plan.flips.size() == plan.sequence.size() - 1);
        CHECK(std::set<std::string>(plan.sequence.begin(), plan.sequence.end()).size() ==
              plan.sequence.size());
        for (std::size_t i = 1; i < plan.sequence.size(); ++i) {
            CHECK(hamming_distance(plan.sequence[i - 1], plan.sequence[i]) == 1);
            std::string flipped = plan.sequence[i - 1];
            const std::size_t pos = static_cast<std::size_t>(3 * plan.flips[i - 1].module + plan.flips[i - 1].bit);
            flipped[pos] = flipped[pos] == '0' ? '1' : '0';
            CHECK(flipped == plan.sequence[i]);
        }
    }
    CHECK_THROWS_AS(gray_code_plan(0), InvalidArgument);
}

TEST_CASE("Gray flip schedule closes the cycle") {
    CHECK(gray_flip_schedule(3) == std::vector<int>{2, 1, 2, 0, 2, 1, 2, 0});
    CHECK(gray_flip_schedule(1) == std::vector<int>{0, 0});
}

TEST_CASE("minimal actuation paths on the Gray-code lattice") {
    // Independent search: every minimal path from 000 to 111 whose consecutive
    // states are also consecutive on the Gray cycle or on one of its bitwise
    // translates, which is the same as its flips forming a window of the
    // cyclic flip schedule.
    const TransitionPlan cycle = gray_code_plan(1);
    std::vector<std::vector<std::string>> found;
    std::vector<int> order{0, 1, 2};
    do {
        std::vector<std::string> path{"000"};
        for (const int bit : order) {
            std::string next = path.back();
            next[static_cast<std::size_t>(bit)] = '1';
            path.push_back(next);
        }
        // Translate the cycle so that it starts at the path's first state and
        // check that the path follows it in either direction.
        bool on_lattice = false;
        for (std::size_t start = 0; start < 8 && !on_lattice; ++start) {
            for (const int dir : {1, -1}) {
                bool ok = true;
                for (std::size_t k = 1; k < path.size(); ++k) {
                    const std::string& a = cycle.sequence[(start + 8 + dir * (k - 1)) % 8];
                    const std::string& b = cycle.sequence[(start + 8 + dir * k) % 8];
                    if (hamming_distance(a, b) != 1) ok = false;
                    int diff_ab = 0;
                    int diff_path = 0;
                    for (int i = 0; i < 3; ++i) {
                        if (a[i] != b[i]) diff_ab = i;
                        if (path[k - 1][i] != path[k][i]) diff_path = i;
                    }
                    if (diff_ab != diff_path) ok = false;
                }
                if (ok) on_lattice = true;
            }
        }
        if (on_lattice) found.push_back(path);
    } while (std::next_permutation(order.begin(), order.end()));

    const auto paths = gray_lattice_minimal_paths("000", "111");
    CHECK(paths.size() == 2);
    std::sort(found.begin(), found.end());
    CHECK(paths == found);
    CHECK(paths[0] == std::vector<std::string>{"000", "010", "011", "111"});
    CHECK(paths[1] == std::vector<std::string>{"000", "100", "101", "111"});
    CHECK(gray_lattice_minimal_paths("101", "101").size() == 1);
}

TEST_CASE("shortest transitions") {
    const TransitionPlan p = shortest_transition("000", "111");
    CHECK(p.flips.size() == 3);
    CHECK(p.sequence == std::vector<std::string>{"000", "100", "110", "111"});
    const TransitionPlan same = shortest_transition("101", "101");
    CHECK(same.flips.empty());
    CHECK(same.sequence == std::vector<std::string>{"101"});
    const TransitionPlan two = shortest_transition("001011", "110011");
    CHECK(two.flips == std::vector<Flip>{{0, 0}, {0, 1}, {0, 2}});
    CHECK_THROWS_AS(shortest_transition("000", "000000"), InvalidArgument);
    std::mt19937 rng(3);
    for (int i = 0; i < 50; ++i) {
        std::string a, b;
        for (int k = 0; k < 9; ++k) {
            a += (rng() & 1u) ? '1' : '0';
            b += (rng() & 1u) ? '1' : '0';
        }
        const TransitionPlan plan = shortest_transition(a, b);
        CHECK(static_cast<int>(plan.flips.size()) == hamming_distance(a, b));
        CHECK(plan.sequence.back() == b);
    }
}

TEST_CASE("metric match: exhaustive search finds the full-scan optimum") {
    const YoshimuraDesign d = YoshimuraDesign::golden();
    const int m = 3;
    const MatchOptions defaults;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> length(0.6, 1.9);
    std::uniform_real_distribution<double> curvature(-3.0, 3.0);
    for (int trial = 0; trial < 5; ++trial) {
        MetricTarget target;
        target.length = length(rng);
        target.curvature = curvature(rng);

        double best = std::numeric_limits<double>::infinity();
        std::string best_word;
        for (std::uint64_t code = 0; code < 512; ++code) {
            const std::string w = word_of(code, m);
            std::vector<Eigen::Matrix4d> modules;
            for (const PopState s : parse_word(w)) {
                modules.push_back(closed_form_transform(params_for_state(s, d)).matrix());
            }
            const oracle::Metrics om = oracle::metrics_from_transforms(modules);
            const double obj = defaults.length_weight * std::abs(om.length - *target.length) +
                               defaults.curvature_weight * std::abs(om.curvature - *target.curvature);
            if (obj < best - 1e-12) {
                best = obj;
                best_word = w;
            }
        }
        const auto ranked = match_shape(d, m, target);
        REQUIRE_FALSE(ranked.empty());
        CHECK(ranked[0].word == best_word);
        CHECK(ranked[0].objective == Approx(best).epsilon(1e-9));

        MatchOptions beam;
        beam.mode = SearchMode::Beam;
        beam.beam_width = 512;
        const auto via_beam = match_shape(d, m, target, beam);
        REQUIRE(via_beam.size() == ranked.size());
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            CHECK(via_beam[i].word == ranked[i].word);
            CHECK(via_beam[i].objective == ranked[i].objective);
        }
    }
}

TEST_CASE("match examples") {
    const YoshimuraDesign d = YoshimuraDesign::golden();
    SUBCASE("straight line of length 5/phi") {
        const PolylineTarget line{{Vec3::Zero(), Vec3(0, 0, 5.0 / kPhi)}};
        CHECK(match_shape(d, 5, line)[0].word == "111111111111111");
        MetricTarget metric;
        metric.length = 5.0 / kPhi;
        metric.curvature = 0.0;
        CHECK(match_shape(d, 5, metric)[0].word == "111111111111111");
    }
    SUBCASE("shortest straight boom") {
        MetricTarget metric;
        metric.length = 0.2205 * 3;
        metric.curvature = 0.0;
        CHECK(match_shape(d, 3, metric)[0].word == "000000000");
    }
    SUBCASE("uniform planar arc") {
        const StateTable table(d);
        const FrameParameters p = table.params(PopState::parse("001"));
        MetricTarget metric;
        metric.length = 3.0 * p.d;
        metric.curvature = p.gamma / p.d;
        metric.planar_only = true;
        const auto ranked = match_shape(d, 3, metric);
        CHECK(ranked[0].word == "001001001");
        for (const auto& r : ranked) CHECK(r.metrics.planar);
    }
    SUBCASE("polyline arc in beam mode") {
        const auto chain = build_chain(BoomConfiguration::from_word(d, "100100100100"));
        PolylineTarget arc;
        for (const FrameTransform& f : chain.frames) arc.points.push_back(f.translation());
        MatchOptions beam;
        beam.mode = SearchMode::Beam;
        beam.beam_width = 16;
        CHECK(match_shape(d, 4, arc, beam)[0].word == "100100100100");
        CHECK(match_shape(d, 4, arc)[0].word == "100100100100");
    }
}

TEST_CASE("match errors") {
    const YoshimuraDesign d = YoshimuraDesign::golden();
    CHECK_THROWS_AS(match_shape(d, 2, MetricTarget{}), EmptyTarget);
    CHECK_THROWS_AS(match_shape(d, 2, PolylineTarget{}), EmptyTarget);
    MetricTarget t;
    t.length = 1.0;
    CHECK_THROWS_AS(match_shape(d, 8, t), ResourceLimit);
    MatchOptions beam;
    beam.mode = SearchMode::Beam;
    CHECK_NOTHROW(match_shape(d, 8, t, beam));
    CHECK_THROWS_AS(match_shape(d, 0, t), InvalidArgument);
    CHECK(parse_search_mode("beam") == SearchMode::Beam);
    CHECK_THROWS_AS(parse_search_mode("greedy"), InvalidArgument);
}

TEST_CASE("designs without pop-outs only search folded modules") {
    MetricTarget t;
    t.length = 1.0;
    const auto ranked = match_shape(YoshimuraDesign::from_degrees(3, 31.0), 2, t);
    REQUIRE(ranked.size() == 1);
    CHECK(ranked[0].word == "000000");
}

TEST_CASE("polyline objective") {
    const PolylineTarget line{{Vec3::Zero(), Vec3(0, 0, 1)}};
    const std::vector<Vec3> on_line{Vec3::Zero(), Vec3(0, 0, 0.5), Vec3(0, 0, 1)};
    CHECK(polyline_objective(line, on_line) == Approx(0.0));
    const std::vector<Vec3> short_chain{Vec3::Zero(), Vec3(0, 0, 0.5)};
    CHECK(polyline_objective(line, short_chain) == Approx(0.25));
    const std::vector<Vec3> off{Vec3::Zero(), Vec3(0.1, 0, 1)};
    CHECK(polyline_objective(line, off) == Approx(0.01 + 0.01));
}
