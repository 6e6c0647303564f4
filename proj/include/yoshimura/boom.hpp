#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "yoshimura/frames.hpp"

namespace yoshimura {

/// A stack of modules sharing one design; states[0] is the base module.
struct BoomConfiguration {
    YoshimuraDesign design;
    std::vector<PopState> states;

    static BoomConfiguration from_word(const YoshimuraDesign& design, std::string_view word);
    std::string word() const { return word_string(states); }

    /// Throws EmptyConfiguration for an empty stack and propagates design errors.
    void validate() const;
};

/// Cumulative interface frames: frames[0] is the base (identity) and
/// frames[j] = frames[j-1] * T(states[j-1]).
struct FrameChain {
    std::vector<FrameTransform> frames;

    const FrameTransform& endpoint() const { return frames.back(); }
    std::size_t modules() const { return frames.size() - 1; }
};

FrameChain build_chain(const BoomConfiguration& config);
FrameChain build_chain(const StateTable& table, std::span<const PopState> states);

struct ShapeMetrics {
    double length;     ///< sum of slant heights
    double curvature;  ///< swept tilt over length
    bool planar;       ///< every bending module bends about the same axis
};

/// Curvature is sum(gamma)/sum(d) with signed tilts for planar stacks.  For
/// non-planar stacks the tilts are summed as magnitudes and the value is only
/// a rough bending measure.
ShapeMetrics shape_metrics(const BoomConfiguration& config);
ShapeMetrics shape_metrics(const StateTable& table, std::span<const PopState> states);

/// Incremental form of shape_metrics, used by the search routines so that
/// every path accumulates in the same base-to-tip order.
class MetricsAccumulator {
public:
    void push(const FrameParameters& p);
    ShapeMetrics metrics() const;

private:
    double length_ = 0.0;
    double signed_tilt_ = 0.0;
    double abs_tilt_ = 0.0;
    double bending_psi_ = 0.0;
    bool has_bending_ = false;
    bool planar_ = true;
};

/// Vertex labels of one module.  Apexes of rhombus k are "A","B","C" on the
/// top interface and "A'","B'","C'" on the base; "M<k>" is the mid-height
/// vertex shared by rhombi k-1 and k; "Q<k>" is the centre of popped rhombus
/// k, where its bend line crosses mid height.
struct ModuleMesh {
    PopState state;
    std::vector<std::string> labels;
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> facets;
    std::array<bool, 3> popped{};

    const Vec3& vertex(std::string_view label) const;
    int index_of(std::string_view label) const;

    std::array<Vec3, 3> top_triangle() const;
    std::array<Vec3, 3> base_triangle() const;
};

/// Module vertices in the module's own base frame (interface side = 1).
ModuleMesh canonical_module_mesh(PopState state, const YoshimuraDesign& design);

/// Per-module meshes in world coordinates (interface side = 1).
std::vector<ModuleMesh> build_mesh(const BoomConfiguration& config);

/// Distance between two labelled vertices in the flat crease pattern of one
/// module, interface side = 1.
double flat_pattern_distance(std::string_view a, std::string_view b, const YoshimuraDesign& design);

/// Frame attached to a triangle given in rhombus order 0, 1, 2: origin at the
/// centroid, +y toward vertex 0, +z along (v1 - v0) x (v2 - v0).
FrameTransform triangle_frame(const std::array<Vec3, 3>& triangle);

}  // namespace yoshimura
