#pragma once

#include <string_view>

#include "yoshimura/design.hpp"

namespace yoshimura {

/// Number of popped-out rhombi in an n = 3 module.
enum class PopClass { Folded = 0, OnePop = 1, TwoPop = 2, FullPop = 3 };

std::string_view to_string(PopClass c) noexcept;
/// Accepts "folded"/"0pop", "1pop", "2pop", "3pop"/"deployed".
PopClass parse_pop_class(std::string_view text);

struct SolverOptions {
    double tol = 1e-12;
    int max_iterations = 200;
};

/// Fully folded module (every rhombus popped in).
struct FoldedState {
    double theta;  ///< facet inclination, rad
    double h;      ///< folded height
    double w;      ///< facet half-height
};

struct OnePopResiduals {
    double kite;        ///< sin(eta) - sin(alpha)/2
    double top_edge;    ///< |A-B| = L condition
    double mountain;    ///< |R-B| = L/(2 cos beta) condition
};

/// One rhombus popped out.  theta belongs to the two folded facet pairs; the
/// mid-surface is a kite with half-angle eta and apex angle alpha.
struct OnePopSolution {
    double theta;
    double eta;
    double alpha;
    double gamma;  ///< tilt between top and base interface triangles (magnitude)
    OnePopResiduals residuals;
    int iterations;
};

/// Two rhombi popped out; theta belongs to the remaining folded pair.
struct TwoPopSolution {
    double theta;
    double gamma;  ///< tilt magnitude
    double residual;
    int iterations;
};

FoldedState solve_folded(const YoshimuraDesign& design);

/// Solves the 1-pop-out geometry.  Eliminates alpha through the kite relation
/// and theta through the mountain-crease length, then brackets the remaining
/// top-edge condition in eta and polishes with guarded Newton steps.
///
/// Throws Unsupported (n != 3), NoSolution (beta below arccot phi) or
/// ConvergenceError.
OnePopSolution solve_one_pop(const YoshimuraDesign& design, SolverOptions options = {});

/// Solves tan^2(b)(1 - sin t) + tan(b) cos t = 1 for the folded pair of a
/// 2-pop-out module.  Same error contract as solve_one_pop.
TwoPopSolution solve_two_pop(const YoshimuraDesign& design, SolverOptions options = {});

/// (t - 1/phi)(t - phi)(5t^4 + 4 sqrt5 t^3 - 2t^2 - 4 sqrt5 t - 7), the
/// polynomial whose admissible root in tan(beta) fixes the golden bound.
double golden_polynomial_residual(double t) noexcept;

/// Residuals of the three 1-pop conditions at an arbitrary point, unit L.
OnePopResiduals one_pop_residuals(double beta, double theta, double eta, double alpha) noexcept;

/// Residual of the 2-pop condition at an arbitrary theta.
double two_pop_residual(double beta, double theta) noexcept;

/// Tilt of a 1-pop module from its vertex coordinates (unit L):
/// tan(g/2) = (w - w sin t) / (cos e + cos(a)/2 - w cos t).
double one_pop_tilt(double beta, double theta, double eta, double alpha) noexcept;

/// Tilt of a 2-pop module: tan(g/2) = (w - w sin t) / (1/2 + w cos t).
double two_pop_tilt(double beta, double theta) noexcept;

/// Everything the CLI and API report for one pop class.  Lengths carry the
/// design's L; angles are radians.  Fields that do not apply to a class are 0.
struct ModuleSolution {
    PopClass pop_class;
    double theta = 0.0;
    double eta = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
    double h = 0.0;  ///< module height for the folded and fully deployed classes
    double w = 0.0;
    double d = 0.0;  ///< centroid-to-centroid slant height
    double max_residual = 0.0;
};

ModuleSolution solve_module(const YoshimuraDesign& design, PopClass pop_class,
                            SolverOptions options = {});

}  // namespace yoshimura
