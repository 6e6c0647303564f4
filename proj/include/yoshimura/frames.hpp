#pragma once

#include <array>
#include <exception>

#include <Eigen/Dense>

#include "yoshimura/design.hpp"
#include "yoshimura/kinematics.hpp"
#include "yoshimura/pop_state.hpp"

namespace yoshimura {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

/// Forward-kinematics parameters of one module, in units where the interface
/// triangle side is 1.
struct FrameParameters {
    double psi;    ///< phase angle: 0 or +-2pi/3
    double gamma;  ///< signed tilt; > 0 for 1-pop, < 0 for 2-pop states
    double d;      ///< distance between interface-triangle centroids
};

/// Homogeneous transform from a module's top interface frame to its base
/// frame.  Frames sit at the triangle centroid with +z along the boom and +y
/// toward the apex of rhombus 0.
class FrameTransform {
public:
    FrameTransform() : m_(Mat4::Identity()) {}
    explicit FrameTransform(const Mat4& m) : m_(m) {}

    static FrameTransform identity() { return FrameTransform(); }

    const Mat4& matrix() const { return m_; }
    Mat3 rotation() const { return m_.topLeftCorner<3, 3>(); }
    Vec3 translation() const { return m_.topRightCorner<3, 1>(); }

    Vec3 apply(const Vec3& p) const { return rotation() * p + translation(); }

    FrameTransform operator*(const FrameTransform& rhs) const {
        return FrameTransform(m_ * rhs.m_);
    }

    FrameTransform inverse() const;

private:
    Mat4 m_;
};

/// Elementary homogeneous matrices.
namespace elementary {
Mat4 rot_x(double angle);
Mat4 rot_z(double angle);
Mat4 trans_x(double s);
Mat4 trans_z(double s);
}  // namespace elementary

/// Phase angle that rotates a state onto its y-z-symmetric representative.
double phase_angle(PopState state);

/// psi, gamma and d for a state, derived from the kinematic solvers (never
/// tabulated).  Throws Unsupported for n != 3 and propagates NoSolution.
FrameParameters params_for_state(PopState state, const YoshimuraDesign& design,
                                 SolverOptions options = {});

/// Rot_z(psi) Rot_x(gamma/2) Tr_z(d) Rot_x(gamma/2) Rot_z(-psi).
FrameTransform compose_transform(const FrameParameters& p);

/// The same transform written out entry by entry.
FrameTransform closed_form_transform(const FrameParameters& p);

FrameTransform transform_for_state(PopState state, const YoshimuraDesign& design);

/// Read-only memo of the eight per-state parameters for one design.  States
/// that are inadmissible for the design rethrow their solver error on access.
class StateTable {
public:
    explicit StateTable(const YoshimuraDesign& design, SolverOptions options = {});

    const YoshimuraDesign& design() const { return design_; }
    const FrameParameters& params(PopState s) const;
    const FrameTransform& transform(PopState s) const;
    bool admissible(PopState s) const { return !errors_[s.code()]; }

private:
    void check(PopState s) const;

    YoshimuraDesign design_;
    std::array<FrameParameters, 8> params_{};
    std::array<FrameTransform, 8> transforms_{};
    std::array<std::exception_ptr, 8> errors_{};
};

}  // namespace yoshimura
