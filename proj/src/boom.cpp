#include "yoshimura/boom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "yoshimura/errors.hpp"

namespace yoshimura {

namespace {

constexpr std::array<const char*, 3> kTopLabels{"A", "B", "C"};
constexpr std::array<const char*, 3> kBaseLabels{"A'", "B'", "C'"};
constexpr std::array<const char*, 3> kMidLabels{"M0", "M1", "M2"};
constexpr std::array<const char*, 3> kCentreLabels{"Q0", "Q1", "Q2"};

constexpr int wrap(int k) { return ((k % 3) + 3) % 3; }

// Vertex positions of a module in its mid-height frame (mid-plane z = 0,
// rhombus 0 toward +y, rhombi numbered counter-clockwise seen from the top).
// Absent centres stay NaN.
struct MidGeometry {
    std::array<Vec3, 3> top;
    std::array<Vec3, 3> base;
    std::array<Vec3, 3> mid;
    std::array<Vec3, 3> centre;
};

Vec3 polar(double radius, double angle, double z) {
    return {radius * std::cos(angle), radius * std::sin(angle), z};
}

void mirror_base(MidGeometry& g) {
    for (int k = 0; k < 3; ++k) {
        g.base[k] = {g.top[k].x(), g.top[k].y(), -g.top[k].z()};
    }
}

MidGeometry symmetric_geometry(PopClass cls, const YoshimuraDesign& design) {
    const double t = std::tan(design.beta);
    const double w = 0.5 * t;
    const double r = 1.0 / std::sqrt(3.0);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    MidGeometry g;
    g.centre.fill(Vec3(nan, nan, nan));

    switch (cls) {
        case PopClass::Folded: {
            const double theta = solve_folded(design).theta;
            for (int k = 0; k < 3; ++k) {
                const double apex_angle = kPi / 2.0 + 2.0 * kPi / 3.0 * k;
                g.top[k] = polar(r, apex_angle, w * std::sin(theta));
                g.mid[k] = polar(r, apex_angle - kPi / 3.0, 0.0);
            }
            break;
        }
        case PopClass::OnePop: {
            // Rhombus 0 popped; M2 sits opposite it at the origin.
            const OnePopSolution s = solve_one_pop(design);
            const double reach = std::cos(s.eta) + 0.5 * std::cos(s.alpha);
            g.top[0] = {0.0, reach, w};
            g.top[1] = {-0.5, w * std::cos(s.theta), w * std::sin(s.theta)};
            g.top[2] = {0.5, w * std::cos(s.theta), w * std::sin(s.theta)};
            g.mid[0] = {std::sin(s.eta), std::cos(s.eta), 0.0};
            g.mid[1] = {-std::sin(s.eta), std::cos(s.eta), 0.0};
            g.mid[2] = {0.0, 0.0, 0.0};
            g.centre[0] = {0.0, reach, 0.0};
            break;
        }
        case PopClass::TwoPop: {
            // Rhombus 0 folded, its valley M0-M1 along the x axis.
            const TwoPopSolution s = solve_two_pop(design);
            g.top[0] = {0.0, w * std::cos(s.theta), w * std::sin(s.theta)};
            g.top[1] = {-0.5, -0.5, w};
            g.top[2] = {0.5, -0.5, w};
            g.mid[0] = {0.5, 0.0, 0.0};
            g.mid[1] = {-0.5, 0.0, 0.0};
            g.mid[2] = {0.0, -0.5, 0.0};
            g.centre[1] = {-0.5, -0.5, 0.0};
            g.centre[2] = {0.5, -0.5, 0.0};
            break;
        }
        case PopClass::FullPop: {
            (void)solve_two_pop(design);  // admissibility
            for (int k = 0; k < 3; ++k) {
                const double apex_angle = kPi / 2.0 + 2.0 * kPi / 3.0 * k;
                g.top[k] = polar(r, apex_angle, w);
                g.mid[k] = polar(0.5 * r, apex_angle - kPi / 3.0, 0.0);
                g.centre[k] = polar(r, apex_angle, 0.0);
            }
            break;
        }
    }
    mirror_base(g);
    return g;
}

struct FlatPoint {
    double x;
    double y;
};

FlatPoint flat_position(std::string_view label, double w) {
    auto index = [&](std::string_view l) -> int {
        if (l.size() < 1) return -1;
        const char c = l.back() == '\'' ? l[0] : l.back();
        if (c >= 'A' && c <= 'C') return c - 'A';
        if (c >= '0' && c <= '2') return c - '0';
        return -1;
    };
    const int k = index(label);
    if (k < 0) throw InvalidArgument("unknown vertex label '" + std::string(label) + "'");
    if (label.size() == 2 && label[1] == '\'') return {k + 0.5, 0.0};
    if (label.size() == 1) return {k + 0.5, 2.0 * w};
    if (label[0] == 'M') return {static_cast<double>(k), w};
    if (label[0] == 'Q') return {k + 0.5, w};
    throw InvalidArgument("unknown vertex label '" + std::string(label) + "'");
}

// Rethrows the solver error of the first inadmissible state, naming the
// module it belongs to.
void check_states(const StateTable& table, std::span<const PopState> states) {
    for (std::size_t j = 0; j < states.size(); ++j) {
        if (table.admissible(states[j])) continue;
        const std::string where =
            "module " + std::to_string(j) + " (state " + states[j].str() + "): ";
        try {
            (void)table.params(states[j]);
        } catch (const NoSolution& e) {
            throw NoSolution(where + e.what());
        } catch (const Unsupported& e) {
            throw Unsupported(where + e.what());
        } catch (const AdmissibilityError& e) {
            throw AdmissibilityError(where + e.what());
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(where + e.what());
        }
    }
}

}  // namespace

BoomConfiguration BoomConfiguration::from_word(const YoshimuraDesign& design,
                                               std::string_view word) {
    return {design, parse_word(word)};
}

void BoomConfiguration::validate() const {
    design.validate();
    if (states.empty()) throw EmptyConfiguration("a boom needs at least one module");
}

FrameChain build_chain(const StateTable& table, std::span<const PopState> states) {
    FrameChain chain;
    chain.frames.reserve(states.size() + 1);
    chain.frames.push_back(FrameTransform::identity());
    check_states(table, states);
    for (const PopState s : states) {
        chain.frames.push_back(chain.frames.back() * table.transform(s));
    }
    return chain;
}

FrameChain build_chain(const BoomConfiguration& config) {
    config.validate();
    return build_chain(StateTable(config.design), config.states);
}

void MetricsAccumulator::push(const FrameParameters& p) {
    length_ += p.d;
    signed_tilt_ += p.gamma;
    abs_tilt_ += std::abs(p.gamma);
    if (p.gamma != 0.0) {
        if (!has_bending_) {
            has_bending_ = true;
            bending_psi_ = p.psi;
        } else if (std::abs(p.psi - bending_psi_) > 1e-12) {
            planar_ = false;
        }
    }
}

ShapeMetrics MetricsAccumulator::metrics() const {
    const double tilt = planar_ ? signed_tilt_ : abs_tilt_;
    return {length_, length_ > 0.0 ? tilt / length_ : 0.0, planar_};
}

ShapeMetrics shape_metrics(const StateTable& table, std::span<const PopState> states) {
    check_states(table, states);
    MetricsAccumulator acc;
    for (const PopState s : states) acc.push(table.params(s));
    return acc.metrics();
}

ShapeMetrics shape_metrics(const BoomConfiguration& config) {
    config.validate();
    return shape_metrics(StateTable(config.design), config.states);
}

const Vec3& ModuleMesh::vertex(std::string_view label) const {
    const int i = index_of(label);
    if (i < 0) throw InvalidArgument("module has no vertex '" + std::string(label) + "'");
    return vertices[static_cast<std::size_t>(i)];
}

int ModuleMesh::index_of(std::string_view label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

std::array<Vec3, 3> ModuleMesh::top_triangle() const {
    return {vertex("A"), vertex("B"), vertex("C")};
}

std::array<Vec3, 3> ModuleMesh::base_triangle() const {
    return {vertex("A'"), vertex("B'"), vertex("C'")};
}

FrameTransform triangle_frame(const std::array<Vec3, 3>& tri) {
    const Vec3 centroid = (tri[0] + tri[1] + tri[2]) / 3.0;
    const Vec3 z = (tri[1] - tri[0]).cross(tri[2] - tri[0]).normalized();
    const Vec3 y = (tri[0] - centroid).normalized();
    const Vec3 x = y.cross(z);
    Mat4 m = Mat4::Identity();
    m.block<3, 1>(0, 0) = x;
    m.block<3, 1>(0, 1) = y;
    m.block<3, 1>(0, 2) = z;
    m.block<3, 1>(0, 3) = centroid;
    return FrameTransform(m);
}

ModuleMesh canonical_module_mesh(PopState state, const YoshimuraDesign& design) {
    design.validate();
    if (design.n != 3) throw Unsupported("module meshes are only defined for n = 3");

    const PopClass cls = state.pop_class();
    const MidGeometry g = symmetric_geometry(cls, design);

    // Express the symmetric representative in its base frame, then rotate it
    // onto the requested state: rhombus k of the representative becomes
    // rhombus k + shift.
    const FrameTransform to_base = triangle_frame(g.base).inverse();
    const int shift = state.odd_rhombus();
    const Mat3 spin = elementary::rot_z(phase_angle(state)).topLeftCorner<3, 3>();
    auto place = [&](const Vec3& p) { return Vec3(spin * to_base.apply(p)); };

    ModuleMesh mesh;
    mesh.state = state;
    for (int k = 0; k < 3; ++k) mesh.popped[k] = state.popped(k);

    std::array<Vec3, 3> top, base, mid, centre;
    for (int k = 0; k < 3; ++k) {
        const std::size_t dst = static_cast<std::size_t>(wrap(k + shift));
        top[dst] = place(g.top[k]);
        base[dst] = place(g.base[k]);
        mid[dst] = place(g.mid[k]);
        centre[dst] = std::isnan(g.centre[k].x()) ? g.centre[k] : place(g.centre[k]);
    }

    auto add = [&](const char* label, const Vec3& p) {
        mesh.labels.emplace_back(label);
        mesh.vertices.push_back(p);
    };
    for (int k = 0; k < 3; ++k) add(kTopLabels[k], top[k]);
    for (int k = 0; k < 3; ++k) add(kBaseLabels[k], base[k]);
    for (int k = 0; k < 3; ++k) add(kMidLabels[k], mid[k]);
    for (int k = 0; k < 3; ++k) {
        if (mesh.popped[k]) add(kCentreLabels[k], centre[k]);
    }

    auto idx = [&](const char* label) { return mesh.index_of(label); };
    for (int k = 0; k < 3; ++k) {
        const char* t = kTopLabels[k];
        const char* b = kBaseLabels[k];
        const char* m0 = kMidLabels[k];
        const char* m1 = kMidLabels[wrap(k + 1)];
        if (mesh.popped[k]) {
            const char* q = kCentreLabels[k];
            mesh.facets.push_back({idx(t), idx(m0), idx(q)});
            mesh.facets.push_back({idx(q), idx(m0), idx(b)});
            mesh.facets.push_back({idx(t), idx(q), idx(m1)});
            mesh.facets.push_back({idx(q), idx(b), idx(m1)});
        } else {
            mesh.facets.push_back({idx(m0), idx(m1), idx(t)});
            mesh.facets.push_back({idx(m1), idx(m0), idx(b)});
        }
    }
    for (int k = 0; k < 3; ++k) {
        const int prev = wrap(k - 1);
        mesh.facets.push_back({idx(kTopLabels[prev]), idx(kTopLabels[k]), idx(kMidLabels[k])});
        mesh.facets.push_back({idx(kBaseLabels[k]), idx(kBaseLabels[prev]), idx(kMidLabels[k])});
    }

    // Orient every facet outward, away from the module's axis.
    const Vec3 axis_origin = (top[0] + top[1] + top[2] + base[0] + base[1] + base[2]) / 6.0;
    const Vec3 axis_dir = ((top[0] + top[1] + top[2]) / 3.0 - (base[0] + base[1] + base[2]) / 3.0)
                              .normalized();
    for (auto& f : mesh.facets) {
        const Vec3& a = mesh.vertices[static_cast<std::size_t>(f[0])];
        const Vec3& b = mesh.vertices[static_cast<std::size_t>(f[1])];
        const Vec3& c = mesh.vertices[static_cast<std::size_t>(f[2])];
        const Vec3 normal = (b - a).cross(c - a);
        Vec3 radial = (a + b + c) / 3.0 - axis_origin;
        radial -= radial.dot(axis_dir) * axis_dir;
        if (normal.dot(radial) < 0.0) std::swap(f[1], f[2]);
    }
    return mesh;
}

std::vector<ModuleMesh> build_mesh(const BoomConfiguration& config) {
    const FrameChain chain = build_chain(config);
    std::vector<ModuleMesh> out;
    out.reserve(config.states.size());
    for (std::size_t j = 0; j < config.states.size(); ++j) {
        ModuleMesh mesh = canonical_module_mesh(config.states[j], config.design);
        for (Vec3& v : mesh.vertices) v = chain.frames[j].apply(v);
        out.push_back(std::move(mesh));
    }
    return out;
}

double flat_pattern_distance(std::string_view a, std::string_view b,
                             const YoshimuraDesign& design) {
    const double w = 0.5 * std::tan(design.beta);
    const FlatPoint pa = flat_position(a, w);
    const FlatPoint pb = flat_position(b, w);
    const double period = 3.0;
    double dx = std::fmod(std::abs(pa.x - pb.x), period);
    dx = std::min(dx, period - dx);
    return std::hypot(dx, pa.y - pb.y);
}

}  // namespace yoshimura
