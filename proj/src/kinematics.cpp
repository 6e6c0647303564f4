#include "yoshimura/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "yoshimura/errors.hpp"

namespace yoshimura {

namespace {

struct FunctionValue {
    double f;
    double df;  // NaN when the derivative is unavailable
};

struct RootResult {
    double x;
    double f;
    int iterations;
};

// Safeguarded Newton iteration on a bracket [lo, hi] with f(lo) > 0 > f(hi).
// Newton steps that leave the bracket or fail to halve it fall back to
// bisection, so convergence is never worse than plain bisection.
template <typename Fn>
RootResult bracketed_root(Fn&& fn, double lo, double hi, const SolverOptions& options) {
    FunctionValue vlo = fn(lo);
    FunctionValue vhi = fn(hi);
    if (!(vlo.f > 0.0 && vhi.f < 0.0)) {
        throw ConvergenceError("root is not bracketed");
    }
    double x = 0.5 * (lo + hi);
    double previous_step = hi - lo;
    for (int it = 1; it <= options.max_iterations; ++it) {
        const FunctionValue v = fn(x);
        if (v.f > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        const bool tiny_bracket =
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
        if (std::abs(v.f) <= options.tol || tiny_bracket) return {x, v.f, it};

        const double newton = std::isfinite(v.df) && v.df != 0.0 ? x - v.f / v.df : lo - 1.0;
        double next = 0.5 * (lo + hi);
        if (newton > lo && newton < hi && std::abs(newton - x) < 0.5 * std::abs(previous_step)) {
            next = newton;
        }
        previous_step = next - x;
        x = next;
    }
    throw ConvergenceError("root finder did not converge within " +
                           std::to_string(options.max_iterations) + " iterations");
}

void require_n3(const YoshimuraDesign& design) {
    if (design.n != 3) {
        throw Unsupported("pop-out kinematics are only derived for n = 3 (got n = " +
                          std::to_string(design.n) + ")");
    }
}

[[noreturn]] void throw_below_golden(double beta) {
    throw NoSolution("no pop-out solution for beta = " + std::to_string(degrees(beta)) +
                     " deg; pop-out states require beta >= arccot(phi) = " +
                     std::to_string(degrees(golden_beta())) + " deg");
}

// True when beta sits on the golden bound (within the snap tolerance); throws
// NoSolution when it lies below it.
bool on_golden_bound(double beta) {
    const double gold = golden_beta();
    if (beta < gold - kBoundSnapTolerance) throw_below_golden(beta);
    return beta <= gold;
}

void check_options(const SolverOptions& options) {
    if (!(options.tol > 0.0) || options.max_iterations < 1) {
        throw InvalidArgument("solver tolerance must be positive and the iteration cap >= 1");
    }
}

}  // namespace

std::string_view to_string(PopClass c) noexcept {
    switch (c) {
        case PopClass::Folded: return "folded";
        case PopClass::OnePop: return "1pop";
        case PopClass::TwoPop: return "2pop";
        case PopClass::FullPop: return "3pop";
    }
    return "?";
}

PopClass parse_pop_class(std::string_view text) {
    if (text == "folded" || text == "0pop" || text == "0") return PopClass::Folded;
    if (text == "1pop" || text == "1") return PopClass::OnePop;
    if (text == "2pop" || text == "2") return PopClass::TwoPop;
    if (text == "3pop" || text == "deployed" || text == "3") return PopClass::FullPop;
    throw InvalidArgument("unknown pop class '" + std::string(text) +
                          "' (expected folded, 1pop, 2pop or 3pop)");
}

FoldedState solve_folded(const YoshimuraDesign& design) {
    design.validate();
    const double flat = flat_foldable_beta(design.n);
    if (design.beta < flat - kBoundSnapTolerance) {
        throw AdmissibilityError("beta = " + std::to_string(degrees(design.beta)) +
                                 " deg is below pi/(2n) = " + std::to_string(degrees(flat)) +
                                 " deg; the folded height and dihedral angle would be negative");
    }
    const double t = std::tan(design.beta);
    const double c = std::tan(flat) / t;
    const double theta = c >= 1.0 ? 0.0 : std::acos(c);
    return {theta, design.L * t * std::sin(theta), 0.5 * design.L * t};
}

double golden_polynomial_residual(double t) noexcept {
    const double s5 = std::sqrt(5.0);
    const double quartic = (((5.0 * t + 4.0 * s5) * t - 2.0) * t - 4.0 * s5) * t - 7.0;
    return (t - 1.0 / kPhi) * (t - kPhi) * quartic;
}

OnePopResiduals one_pop_residuals(double beta, double theta, double eta, double alpha) noexcept {
    const double t = std::tan(beta);
    const double k = 2.0 * std::cos(eta) + std::cos(alpha);
    return {
        std::sin(eta) - 0.5 * std::sin(alpha),
        2.0 * t * t * (1.0 - std::sin(theta)) + k * k - 2.0 * t * std::cos(theta) * k - 3.0,
        t * std::cos(theta) - (1.0 - std::sin(eta)) / std::cos(eta),
    };
}

double two_pop_residual(double beta, double theta) noexcept {
    const double t = std::tan(beta);
    return t * t * (1.0 - std::sin(theta)) + t * std::cos(theta) - 1.0;
}

double one_pop_tilt(double beta, double theta, double eta, double alpha) noexcept {
    const double w = 0.5 * std::tan(beta);
    const double rise = w - w * std::sin(theta);
    const double run = std::cos(eta) + 0.5 * std::cos(alpha) - w * std::cos(theta);
    return 2.0 * std::atan2(rise, run);
}

double two_pop_tilt(double beta, double theta) noexcept {
    const double w = 0.5 * std::tan(beta);
    return 2.0 * std::atan2(w - w * std::sin(theta), 0.5 + w * std::cos(theta));
}

OnePopSolution solve_one_pop(const YoshimuraDesign& design, SolverOptions options) {
    design.validate();
    require_n3(design);
    check_options(options);

    if (on_golden_bound(design.beta)) {
        // Tangent root at theta = 0: the kite closes at eta = pi/2 - 2 beta.
        const double beta = golden_beta();
        const double eta = kPi / 2.0 - 2.0 * beta;
        const double alpha = std::asin(2.0 * std::sin(eta));
        return {0.0, eta, alpha, one_pop_tilt(beta, 0.0, eta, alpha),
                one_pop_residuals(beta, 0.0, eta, alpha), 0};
    }

    const double t = std::tan(design.beta);
    // theta(eta) from the mountain-crease condition, alpha(eta) from the kite.
    auto evaluate = [t](double eta) -> FunctionValue {
        const double s = std::sin(eta);
        const double c = std::cos(eta);
        const double cos_alpha = std::sqrt(std::max(0.0, 1.0 - 4.0 * s * s));
        const double u = std::min(1.0, (1.0 - s) / (t * c));  // cos(theta)
        const double sin_theta = std::sqrt(std::max(0.0, 1.0 - u * u));
        const double k = 2.0 * c + cos_alpha;
        const double f = 2.0 * t * t * (1.0 - sin_theta) + k * k - 2.0 * t * u * k - 3.0;

        double df = std::numeric_limits<double>::quiet_NaN();
        if (cos_alpha > 1e-12 && sin_theta > 1e-12) {
            const double dk = -2.0 * s - 4.0 * s * c / cos_alpha;
            const double du = (s - 1.0) / (t * c * c);
            const double dsin_theta = -u * du / sin_theta;
            df = -2.0 * t * t * dsin_theta + 2.0 * k * dk - 2.0 * t * (du * k + u * dk);
        }
        return {f, df};
    };

    const double lo = std::max(0.0, kPi / 2.0 - 2.0 * design.beta);
    const double hi = kPi / 6.0;
    if (evaluate(lo).f <= 0.0) throw_below_golden(design.beta);

    const RootResult root = bracketed_root(evaluate, lo, hi, options);
    const double eta = root.x;
    const double alpha = std::asin(std::min(1.0, 2.0 * std::sin(eta)));
    const double theta = std::acos(std::min(1.0, (1.0 - std::sin(eta)) / (t * std::cos(eta))));
    return {theta, eta, alpha, one_pop_tilt(design.beta, theta, eta, alpha),
            one_pop_residuals(design.beta, theta, eta, alpha), root.iterations};
}

TwoPopSolution solve_two_pop(const YoshimuraDesign& design, SolverOptions options) {
    design.validate();
    require_n3(design);
    check_options(options);

    if (on_golden_bound(design.beta)) {
        const double beta = golden_beta();
        return {0.0, two_pop_tilt(beta, 0.0), two_pop_residual(beta, 0.0), 0};
    }

    const double t = std::tan(design.beta);
    auto evaluate = [t](double theta) -> FunctionValue {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        return {t * t * (1.0 - s) + t * c - 1.0, -t * t * c - t * s};
    };
    if (evaluate(0.0).f <= 0.0) throw_below_golden(design.beta);

    const RootResult root = bracketed_root(evaluate, 0.0, kPi / 2.0, options);
    return {root.x, two_pop_tilt(design.beta, root.x), two_pop_residual(design.beta, root.x),
            root.iterations};
}

ModuleSolution solve_module(const YoshimuraDesign& design, PopClass pop_class,
                            SolverOptions options) {
    design.validate();
    ModuleSolution out{pop_class};
    const double t = std::tan(design.beta);
    out.w = design.facet_half_height();
    switch (pop_class) {
        case PopClass::Folded: {
            const FoldedState folded = solve_folded(design);
            out.theta = folded.theta;
            out.h = folded.h;
            out.d = folded.h;
            out.max_residual =
                std::abs(t * std::cos(folded.theta) - std::tan(flat_foldable_beta(design.n)));
            if (folded.theta == 0.0) out.max_residual = 0.0;
            break;
        }
        case PopClass::OnePop: {
            const OnePopSolution s = solve_one_pop(design, options);
            out.theta = s.theta;
            out.eta = s.eta;
            out.alpha = s.alpha;
            out.gamma = s.gamma;
            out.d = 2.0 * (out.w + 2.0 * out.w * std::sin(s.theta)) / 3.0;
            out.max_residual = std::max({std::abs(s.residuals.kite), std::abs(s.residuals.top_edge),
                                         std::abs(s.residuals.mountain)});
            break;
        }
        case PopClass::TwoPop: {
            const TwoPopSolution s = solve_two_pop(design, options);
            out.theta = s.theta;
            out.gamma = s.gamma;
            out.d = 2.0 * (out.w * std::sin(s.theta) + 2.0 * out.w) / 3.0;
            out.max_residual = std::abs(s.residual);
            break;
        }
        case PopClass::FullPop: {
            require_n3(design);
            on_golden_bound(design.beta);
            out.theta = kPi / 2.0;
            out.h = design.L * t;
            out.d = out.h;
            break;
        }
    }
    return out;
}

}  // namespace yoshimura
