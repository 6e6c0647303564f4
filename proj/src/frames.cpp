#include "yoshimura/frames.hpp"

#include <cmath>
#include <string>

#include "yoshimura/errors.hpp"

namespace yoshimura {

FrameTransform FrameTransform::inverse() const {
    Mat4 inv = Mat4::Identity();
    const Mat3 rt = rotation().transpose();
    inv.topLeftCorner<3, 3>() = rt;
    inv.topRightCorner<3, 1>() = -rt * translation();
    return FrameTransform(inv);
}

namespace elementary {

Mat4 rot_x(double angle) {
    Mat4 m = Mat4::Identity();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    m(1, 1) = c;
    m(1, 2) = -s;
    m(2, 1) = s;
    m(2, 2) = c;
    return m;
}

Mat4 rot_z(double angle) {
    Mat4 m = Mat4::Identity();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    m(0, 0) = c;
    m(0, 1) = -s;
    m(1, 0) = s;
    m(1, 1) = c;
    return m;
}

Mat4 trans_x(double s) {
    Mat4 m = Mat4::Identity();
    m(0, 3) = s;
    return m;
}

Mat4 trans_z(double s) {
    Mat4 m = Mat4::Identity();
    m(2, 3) = s;
    return m;
}

}  // namespace elementary

double phase_angle(PopState state) {
    switch (state.odd_rhombus()) {
        case 1: return 2.0 * kPi / 3.0;
        case 2: return -2.0 * kPi / 3.0;
        default: return 0.0;
    }
}

FrameParameters params_for_state(PopState state, const YoshimuraDesign& design,
                                 SolverOptions options) {
    design.validate();
    if (design.n != 3) {
        throw Unsupported("module frames are only defined for n = 3 (got n = " +
                          std::to_string(design.n) + ")");
    }
    const double t = std::tan(design.beta);
    const double w = 0.5 * t;
    FrameParameters p{phase_angle(state), 0.0, 0.0};
    switch (state.pop_class()) {
        case PopClass::Folded:
            p.d = t * std::sin(solve_folded(design).theta);
            break;
        case PopClass::OnePop: {
            const OnePopSolution s = solve_one_pop(design, options);
            p.gamma = s.gamma;
            p.d = 2.0 * (w + 2.0 * w * std::sin(s.theta)) / 3.0;
            break;
        }
        case PopClass::TwoPop: {
            const TwoPopSolution s = solve_two_pop(design, options);
            p.gamma = -s.gamma;
            p.d = 2.0 * (w * std::sin(s.theta) + 2.0 * w) / 3.0;
            break;
        }
        case PopClass::FullPop:
            // Same admissibility bound as the partial pop-outs.
            (void)solve_two_pop(design, options);
            p.d = t;
            break;
    }
    return p;
}

FrameTransform compose_transform(const FrameParameters& p) {
    using namespace elementary;
    return FrameTransform(rot_z(p.psi) * rot_x(p.gamma / 2.0) * trans_z(p.d) *
                          rot_x(p.gamma / 2.0) * rot_z(-p.psi));
}

FrameTransform closed_form_transform(const FrameParameters& p) {
    const double cp = std::cos(p.psi);
    const double sp = std::sin(p.psi);
    const double cg = std::cos(p.gamma);
    const double sg = std::sin(p.gamma);
    const double sh = std::sin(p.gamma / 2.0);
    const double ch = std::cos(p.gamma / 2.0);
    const double s2p = std::sin(2.0 * p.psi);
    Mat4 m;
    m << cp * cp + cg * sp * sp, 0.5 * (1.0 - cg) * s2p, sg * sp, p.d * sh * sp,
        0.5 * (1.0 - cg) * s2p, cg * cp * cp + sp * sp, -sg * cp, -p.d * sh * cp,
        -sg * sp, sg * cp, cg, p.d * ch,
        0.0, 0.0, 0.0, 1.0;
    return FrameTransform(m);
}

FrameTransform transform_for_state(PopState state, const YoshimuraDesign& design) {
    return compose_transform(params_for_state(state, design));
}

StateTable::StateTable(const YoshimuraDesign& design, SolverOptions options) : design_(design) {
    design_.validate();
    for (const PopState s : all_pop_states()) {
        try {
            params_[s.code()] = params_for_state(s, design_, options);
            transforms_[s.code()] = compose_transform(params_[s.code()]);
        } catch (const Error&) {
            errors_[s.code()] = std::current_exception();
        }
    }
}

void StateTable::check(PopState s) const {
    if (errors_[s.code()]) std::rethrow_exception(errors_[s.code()]);
}

const FrameParameters& StateTable::params(PopState s) const {
    check(s);
    return params_[s.code()];
}

const FrameTransform& StateTable::transform(PopState s) const {
    check(s);
    return transforms_[s.code()];
}

}  // namespace yoshimura
