#pragma once

#include <cstdint>
#include <span>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "yoshimura/boom.hpp"

namespace yoshimura {

/// 8^7 configurations: the default ceiling for anything that enumerates the
/// full configuration space.
inline constexpr std::uint64_t kDefaultEnumerationCap = 2097152;

/// Number of configurations of an m-module boom, or nullopt past 2^63.
std::optional<std::uint64_t> configuration_count(int m);

/// Throws ResourceLimit when 8^m exceeds cap.
void check_enumeration_cap(int m, std::uint64_t cap);

/// An endpoint reached by one or more state words.
struct WorkspacePoint {
    Vec3 position;
    std::vector<std::string> words;  ///< lexicographic
};

struct Workspace {
    int m = 0;
    double dedup_tolerance = 1e-9;
    std::uint64_t raw_count = 0;
    std::vector<WorkspacePoint> points;  ///< ordered by first word

    std::uint64_t duplicate_count() const { return raw_count - points.size(); }
};

struct EnumerationOptions {
    double dedup_tolerance = 1e-9;
    std::uint64_t cap = kDefaultEnumerationCap;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// Top-interface centroid for each of the 8^m words, in lexicographic word
/// order (interface side = 1).
std::vector<Vec3> workspace_endpoints(const StateTable& table, int m, const EnumerationOptions& options = {});

/// Endpoints of every word with coincident points (within the tolerance)
/// merged.  m = 0 yields the single base point at the origin.
Workspace enumerate_workspace(const YoshimuraDesign& design, int m, const EnumerationOptions& options = {});

/// One single-facet actuation: flip rhombus `bit` of module `module` (both
/// 0-based, module 0 at the base).
struct Flip {
    int module;
    int bit;
    bool operator==(const Flip&) const = default;
};

struct TransitionPlan {
    std::vector<std::string> sequence;
    std::vector<Flip> flips;
};

/// Reflected binary Gray code over 3m bits, starting at all-zero.
TransitionPlan gray_code_plan(int m, std::uint64_t cap = kDefaultEnumerationCap);

/// Bit positions flipped by the cyclic reflected Gray code over `bits` bits;
/// the last entry closes the cycle back to all-zero.
std::vector<int> gray_flip_schedule(int bits);

/// A minimal plan: one flip per differing bit, lowest module first, then
/// lowest bit.
TransitionPlan shortest_transition(std::string_view from, std::string_view to);

int hamming_distance(std::string_view a, std::string_view b);

/// Minimal paths from `from` to `to` that run along the Gray-code lattice:
/// their flip sequence is a contiguous window of the cyclic Gray flip
/// schedule (so the path is a segment of some bitwise translate of the Gray
/// cycle).  Paths are returned as state sequences, sorted.
std::vector<std::vector<std::string>> gray_lattice_minimal_paths(std::string_view from,
                                                                 std::string_view to);

/// Target described by aggregate shape metrics.  Missing fields are ignored.
struct MetricTarget {
    std::optional<double> length;
    std::optional<double> curvature;
    bool planar_only = false;
};

/// Target curve through interface-triangle centroids (interface side = 1).
struct PolylineTarget {
    std::vector<Vec3> points;
};

using ShapeTarget = std::variant<MetricTarget, PolylineTarget>;

enum class SearchMode { Exhaustive, Beam };

std::string_view to_string(SearchMode mode) noexcept;
SearchMode parse_search_mode(std::string_view text);

struct MatchOptions {
    SearchMode mode = SearchMode::Exhaustive;
    std::size_t beam_width = 64;
    std::size_t top_k = 10;
    double length_weight = 1.0;
    double curvature_weight = 0.5;
    std::uint64_t cap = kDefaultEnumerationCap;
};

struct RankedConfiguration {
    std::string word;
    double objective;
    ShapeMetrics metrics;
};

/// Metric objective: length_weight |sum d - L*| + curvature_weight |k - k*|.
double metric_objective(const MetricTarget& target, const ShapeMetrics& metrics,
                        const MatchOptions& options);

/// Polyline objective: squared distance from each interface centroid above
/// the base to the nearest point of the polyline, plus squared distance from
/// each polyline vertex to the nearest interface centroid (base included).
double polyline_objective(const PolylineTarget& target, std::span<const Vec3> centroids);

/// Ranks m-module configurations against a target, best first; ties break on
/// the state word.  Beam mode grows chains base to tip and keeps the
/// beam_width best partial chains at each depth.
std::vector<RankedConfiguration> match_shape(const YoshimuraDesign& design, int m,
                                             const ShapeTarget& target,
                                             const MatchOptions& options = {});

}  // namespace yoshimura
