#include "yoshimura/config_space.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <thread>
#include <unordered_map>

#include "yoshimura/errors.hpp"

namespace yoshimura {

namespace {

std::string word_from_code(std::uint64_t code, int m) {
    std::string word(static_cast<std::size_t>(3 * m), '0');
    for (int j = m - 1; j >= 0; --j) {
        const PopState s = PopState::from_code(static_cast<unsigned>(code & 7u));
        const std::string part = s.str();
        std::copy(part.begin(), part.end(), word.begin() + 3 * j);
        code >>= 3;
    }
    return word;
}

std::string bits_string(std::uint64_t value, int bits) {
    std::string out(static_cast<std::size_t>(bits), '0');
    for (int i = 0; i < bits; ++i) {
        if (value & (std::uint64_t{1} << i)) out[static_cast<std::size_t>(bits - 1 - i)] = '1';
    }
    return out;
}

void check_module_count(int m) {
    if (m < 1) throw InvalidArgument("module count must be at least 1, got " + std::to_string(m));
}

// Spatial hash used to merge coincident endpoints.
class PointMerger {
public:
    explicit PointMerger(double tol) : tol_(tol), cell_(std::max(tol, 1e-12)) {}

    // Index of an existing point within tolerance, or -1 after registering p
    // under `next_index`.
    long find_or_insert(const Vec3& p, long next_index, const std::vector<WorkspacePoint>& pts) {
        const auto key = cell_of(p);
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dz = -1; dz <= 1; ++dz) {
                    const auto it = cells_.find(pack({key[0] + dx, key[1] + dy, key[2] + dz}));
                    if (it == cells_.end()) continue;
                    for (const long idx : it->second) {
                        if ((pts[static_cast<std::size_t>(idx)].position - p).norm() <= tol_) {
                            return idx;
                        }
                    }
                }
            }
        }
        cells_[pack(key)].push_back(next_index);
        return -1;
    }

private:
    std::array<long long, 3> cell_of(const Vec3& p) const {
        return {static_cast<long long>(std::floor(p.x() / cell_)),
                static_cast<long long>(std::floor(p.y() / cell_)),
                static_cast<long long>(std::floor(p.z() / cell_))};
    }
    static std::size_t pack(const std::array<long long, 3>& k) {
        std::size_t h = std::hash<long long>{}(k[0]);
        h ^= std::hash<long long>{}(k[1]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<long long>{}(k[2]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    double tol_;
    double cell_;
    std::unordered_map<std::size_t, std::vector<long>> cells_;
};

double distance_to_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + s * ab)).norm();
}

double distance_to_polyline(const Vec3& p, const std::vector<Vec3>& pts) {
    if (pts.size() == 1) return (p - pts[0]).norm();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        best = std::min(best, distance_to_segment(p, pts[i], pts[i + 1]));
    }
    return best;
}

// Partial chain carried through exhaustive and beam search.
struct Partial {
    std::uint64_t code = 0;
    MetricsAccumulator metrics;
    FrameTransform frame;
    std::vector<Vec3> centroids{Vec3::Zero()};
};

struct Scored {
    double objective;
    std::uint64_t code;
    ShapeMetrics metrics;
};

bool better(const Scored& a, const Scored& b) {
    if (a.objective != b.objective) return a.objective < b.objective;
    return a.code < b.code;
}

class Scorer {
public:
    Scorer(const ShapeTarget& target, const MatchOptions& options)
        : target_(target), options_(options) {}

    bool wants_centroids() const { return std::holds_alternative<PolylineTarget>(target_); }
    bool planar_only() const {
        const auto* metric = std::get_if<MetricTarget>(&target_);
        return metric != nullptr && metric->planar_only;
    }

    Scored score(const Partial& p) const {
        const ShapeMetrics metrics = p.metrics.metrics();
        if (const auto* metric = std::get_if<MetricTarget>(&target_)) {
            return {metric_objective(*metric, metrics, options_), p.code, metrics};
        }
        return {polyline_objective(std::get<PolylineTarget>(target_), p.centroids), p.code,
                metrics};
    }

private:
    const ShapeTarget& target_;
    const MatchOptions& options_;
};

Partial extend(const Partial& base, PopState s, const StateTable& table, bool centroids) {
    Partial next;
    next.code = (base.code << 3) | s.code();
    next.metrics = base.metrics;
    next.metrics.push(table.params(s));
    next.frame = base.frame * table.transform(s);
    if (centroids) {
        next.centroids = base.centroids;
        next.centroids.push_back(next.frame.translation());
    }
    return next;
}

std::vector<RankedConfiguration> finish(std::vector<Scored> scored, int m, std::size_t top_k) {
    const std::size_t keep = std::min(top_k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                      scored.end(), better);
    std::vector<RankedConfiguration> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        out.push_back({word_from_code(scored[i].code, m), scored[i].objective, scored[i].metrics});
    }
    return out;
}

}  // namespace

std::optional<std::uint64_t> configuration_count(int m) {
    if (m < 0 || m > 20) return std::nullopt;
    return std::uint64_t{1} << (3 * m);
}

void check_enumeration_cap(int m, std::uint64_t cap) {
    const auto count = configuration_count(m);
    if (!count || *count > cap) {
        throw ResourceLimit("8^" + std::to_string(m) + " configurations exceed the cap of " +
                            std::to_string(cap));
    }
}

std::vector<Vec3> workspace_endpoints(const StateTable& table, int m,
                                      const EnumerationOptions& options) {
    if (m < 0) throw InvalidArgument("module count must be non-negative");
    check_enumeration_cap(m, options.cap);
    const std::uint64_t count = *configuration_count(m);
    std::vector<Vec3> out(count);
    if (m == 0) {
        out[0] = Vec3::Zero();
        return out;
    }
    std::array<FrameTransform, 8> transforms;
    for (const PopState s : all_pop_states()) transforms[s.code()] = table.transform(s);

    // Depth-first over the word tree, reusing prefix products.
    std::function<void(int, const FrameTransform&, std::uint64_t)> visit =
        [&](int depth, const FrameTransform& prefix, std::uint64_t code) {
            if (depth == m) {
                out[code] = prefix.translation();
                return;
            }
            for (unsigned s = 0; s < 8; ++s) visit(depth + 1, prefix * transforms[s], (code << 3) | s);
        };

    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    if (threads <= 1 || m < 4) {
        visit(0, FrameTransform::identity(), 0);
        return out;
    }
    // Partition on the base module's state; each worker writes a disjoint block.
    std::atomic<unsigned> next{0};
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < std::min(threads, 8u); ++t) {
            workers.emplace_back([&] {
                for (unsigned s = next++; s < 8; s = next++) visit(1, transforms[s], s);
            });
        }
    }
    return out;
}

Workspace enumerate_workspace(const YoshimuraDesign& design, int m,
                              const EnumerationOptions& options) {
    if (m < 0) throw InvalidArgument("module count must be non-negative");
    check_enumeration_cap(m, options.cap);
    Workspace ws;
    ws.m = m;
    ws.dedup_tolerance = options.dedup_tolerance;
    if (m == 0) {
        ws.raw_count = 1;
        ws.points.push_back({Vec3::Zero(), {""}});
        return ws;
    }
    const StateTable table(design);
    const std::vector<Vec3> endpoints = workspace_endpoints(table, m, options);
    ws.raw_count = endpoints.size();

    PointMerger merger(options.dedup_tolerance);
    for (std::uint64_t code = 0; code < endpoints.size(); ++code) {
        const long next = static_cast<long>(ws.points.size());
        const long hit = merger.find_or_insert(endpoints[code], next, ws.points);
        if (hit >= 0) {
            ws.points[static_cast<std::size_t>(hit)].words.push_back(word_from_code(code, m));
        } else {
            ws.points.push_back({endpoints[code], {word_from_code(code, m)}});
        }
    }
    return ws;
}

TransitionPlan gray_code_plan(int m, std::uint64_t cap) {
    check_module_count(m);
    check_enumeration_cap(m, cap);
    const int bits = 3 * m;
    const std::uint64_t count = *configuration_count(m);
    TransitionPlan plan;
    plan.sequence.reserve(count);
    plan.flips.reserve(count - 1);
    std::uint64_t previous = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t g = i ^ (i >> 1);
        plan.sequence.push_back(bits_string(g, bits));
        if (i > 0) {
            const int lsb_index = std::countr_zero(g ^ previous);
            const int position = bits - 1 - lsb_index;
            plan.flips.push_back({position / 3, position % 3});
        }
        previous = g;
    }
    return plan;
}

std::vector<int> gray_flip_schedule(int bits) {
    if (bits < 1 || bits > 30) throw InvalidArgument("Gray schedule needs 1..30 bits");
    const std::uint64_t count = std::uint64_t{1} << bits;
    std::vector<int> schedule;
    schedule.reserve(count);
    for (std::uint64_t i = 1; i <= count; ++i) {
        const std::uint64_t a = (i - 1) ^ ((i - 1) >> 1);
        const std::uint64_t j = i % count;
        const std::uint64_t b = j ^ (j >> 1);
        schedule.push_back(bits - 1 - std::countr_zero(a ^ b));
    }
    return schedule;
}

int hamming_distance(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) throw InvalidArgument("state words must have equal length");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

TransitionPlan shortest_transition(std::string_view from, std::string_view to) {
    (void)parse_word(from);
    (void)parse_word(to);
    hamming_distance(from, to);
    TransitionPlan plan;
    std::string current(from);
    plan.sequence.push_back(current);
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (from[i] == to[i]) continue;
        current[i] = to[i];
        plan.sequence.push_back(current);
        plan.flips.push_back({static_cast<int>(i / 3), static_cast<int>(i % 3)});
    }
    return plan;
}

std::vector<std::vector<std::string>> gray_lattice_minimal_paths(std::string_view from,
                                                                 std::string_view to) {
    (void)parse_word(from);
    (void)parse_word(to);
    const int bits = static_cast<int>(from.size());
    const int distance = hamming_distance(from, to);
    if (distance == 0) return {{std::string(from)}};
    if (bits > 24) throw ResourceLimit("lattice path search is limited to 24 bits");

    std::vector<int> differing;
    for (int i = 0; i < bits; ++i) {
        if (from[static_cast<std::size_t>(i)] != to[static_cast<std::size_t>(i)]) differing.push_back(i);
    }
    const std::vector<int> schedule = gray_flip_schedule(bits);
    const std::size_t n = schedule.size();

    std::set<std::vector<int>> orders;
    for (std::size_t start = 0; start < n; ++start) {
        for (const int direction : {+1, -1}) {
            std::vector<int> window;
            for (int k = 0; k < distance; ++k) {
                const std::size_t pos =
                    (start + n + static_cast<std::size_t>(direction * k + static_cast<int>(n))) % n;
                window.push_back(schedule[pos]);
            }
            std::vector<int> sorted = window;
            std::sort(sorted.begin(), sorted.end());
            if (sorted == differing) orders.insert(window);
        }
    }

    std::vector<std::vector<std::string>> paths;
    for (const auto& order : orders) {
        std::vector<std::string> path{std::string(from)};
        std::string current(from);
        for (const int bit : order) {
            current[static_cast<std::size_t>(bit)] = current[static_cast<std::size_t>(bit)] == '0' ? '1' : '0';
            path.push_back(current);
        }
        paths.push_back(std::move(path));
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

std::string_view to_string(SearchMode mode) noexcept {
    return mode == SearchMode::Exhaustive ? "exhaustive" : "beam";
}

SearchMode parse_search_mode(std::string_view text) {
    if (text == "exhaustive") return SearchMode::Exhaustive;
    if (text == "beam") return SearchMode::Beam;
    throw InvalidArgument("search mode must be 'exhaustive' or 'beam', got '" + std::string(text) + "'");
}

double metric_objective(const MetricTarget& target, const ShapeMetrics& metrics,
                        const MatchOptions& options) {
    double value = 0.0;
    if (target.length) value += options.length_weight * std::abs(metrics.length - *target.length);
    if (target.curvature) {
        value += options.curvature_weight * std::abs(metrics.curvature - *target.curvature);
    }
    return value;
}

double polyline_objective(const PolylineTarget& target, std::span<const Vec3> centroids) {
    double value = 0.0;
    for (std::size_t j = 1; j < centroids.size(); ++j) {
        const double d = distance_to_polyline(centroids[j], target.points);
        value += d * d;
    }
    for (const Vec3& v : target.points) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const Vec3& c : centroids) nearest = std::min(nearest, (c - v).squaredNorm());
        value += nearest;
    }
    return value;
}

std::vector<RankedConfiguration> match_shape(const YoshimuraDesign& design, int m,
                                             const ShapeTarget& target,
                                             const MatchOptions& options) {
    check_module_count(m);
    if (const auto* metric = std::get_if<MetricTarget>(&target)) {
        if (!metric->length && !metric->curvature) {
            throw EmptyTarget("metric target needs a length or a curvature");
        }
    } else if (std::get<PolylineTarget>(target).points.empty()) {
        throw EmptyTarget("polyline target has no points");
    }
    if (options.mode == SearchMode::Exhaustive) check_enumeration_cap(m, options.cap);
    if (options.mode == SearchMode::Beam && options.beam_width == 0) {
        throw InvalidArgument("beam width must be positive");
    }

    const StateTable table(design);
    std::vector<PopState> alphabet;
    for (const PopState s : all_pop_states()) {
        if (table.admissible(s)) alphabet.push_back(s);
    }
    if (alphabet.empty()) (void)table.params(PopState{});  // rethrows the design's error

    const Scorer scorer(target, options);
    const bool centroids = scorer.wants_centroids();
    std::vector<Scored> finals;

    if (options.mode == SearchMode::Exhaustive) {
        std::function<void(const Partial&, int)> visit = [&](const Partial& p, int depth) {
            if (depth == m) {
                Scored s = scorer.score(p);
                if (!scorer.planar_only() || s.metrics.planar) finals.push_back(s);
                return;
            }
            for (const PopState s : alphabet) visit(extend(p, s, table, centroids), depth + 1);
        };
        visit(Partial{}, 0);
        return finish(std::move(finals), m, options.top_k);
    }

    std::vector<Partial> beam{Partial{}};
    for (int depth = 1; depth <= m; ++depth) {
        std::vector<Partial> grown;
        grown.reserve(beam.size() * alphabet.size());
        for (const Partial& p : beam) {
            for (const PopState s : alphabet) {
                Partial next = extend(p, s, table, centroids);
                // A bend about a second axis never becomes planar again.
                if (scorer.planar_only() && !next.metrics.metrics().planar) continue;
                grown.push_back(std::move(next));
            }
        }
        if (depth == m) {
            for (const Partial& p : grown) finals.push_back(scorer.score(p));
            break;
        }
        std::vector<std::pair<Scored, std::size_t>> ranked;
        ranked.reserve(grown.size());
        for (std::size_t i = 0; i < grown.size(); ++i) ranked.push_back({scorer.score(grown[i]), i});
        const std::size_t keep = std::min(options.beam_width, ranked.size());
        std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                          ranked.end(),
                          [](const auto& a, const auto& b) { return better(a.first, b.first); });
        beam.clear();
        for (std::size_t i = 0; i < keep; ++i) beam.push_back(std::move(grown[ranked[i].second]));
    }
    return finish(std::move(finals), m, options.top_k);
}

}  // namespace yoshimura
