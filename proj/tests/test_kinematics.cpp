#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "yoshimura/errors.hpp"
#include "yoshimura/kinematics.hpp"

using namespace yoshimura;
using doctest::Approx;

namespace {

constexpr double kAngleTol = 1e-3;  // degrees
constexpr double kLengthTol = 1e-6;

YoshimuraDesign at(double beta_degrees) { return YoshimuraDesign::from_degrees(3, beta_degrees); }

}  // namespace

TEST_CASE("golden constants") {
    const GoldenConstants g = golden_constants();
    CHECK(g.phi == Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
    CHECK(degrees(g.beta_gold) == Approx(31.7174744).epsilon(1e-9));
    // cot(beta) = phi
    CHECK(1.0 / std::tan(g.beta_gold) == Approx(g.phi).epsilon(1e-14));
}

TEST_CASE("quartic root in [2 - sqrt3, 1] is 1/phi") {
    const double lo = 2.0 - std::sqrt(3.0);
    CHECK(golden_polynomial_residual(lo) * golden_polynomial_residual(1.0) < 0.0);
    double a = lo;
    double b = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (a + b);
        ((golden_polynomial_residual(mid) > 0.0) == (golden_polynomial_residual(a) > 0.0) ? a : b) = mid;
    }
    CHECK(0.5 * (a + b) == Approx(1.0 / kPhi).epsilon(1e-14));
    CHECK(std::abs(golden_polynomial_residual(1.0 / kPhi)) < 1e-14);
}

TEST_CASE("admissibility classes") {
    CHECK(classify_admissibility(at(30.0)) == Admissibility::FlatFoldable);
    CHECK(classify_admissibility(at(31.0)) == Admissibility::FoldableNoPop);
    CHECK(classify_admissibility(YoshimuraDesign::golden()) == Admissibility::MetaStable);
    CHECK(classify_admissibility(at(50.0)) == Admissibility::MetaStable);
    CHECK_THROWS_AS(classify_admissibility(at(20.0)), AdmissibilityError);
    CHECK_THROWS_AS(classify_admissibility(YoshimuraDesign::from_degrees(4, 40.0)), Unsupported);
    CHECK(classify_admissibility(YoshimuraDesign::from_degrees(4, 22.5)) == Admissibility::FlatFoldable);
    CHECK_THROWS_AS(YoshimuraDesign::from_degrees(2, 40.0).validate(), InvalidArgument);
    CHECK_THROWS_AS(at(95.0).validate(), InvalidArgument);
    CHECK_THROWS_AS((YoshimuraDesign{3, 0.6, -1.0}.validate()), InvalidArgument);
}

TEST_CASE("folded state") {
    SUBCASE("beta = 45 deg") {
        const FoldedState s = solve_folded(at(45.0));
        CHECK(std::abs(degrees(s.theta) - 54.735610317) < kAngleTol);
        CHECK(std::abs(s.h - std::sqrt(2.0 / 3.0)) < kLengthTol);
    }
    SUBCASE("flat-foldable design folds flat") {
        const FoldedState s = solve_folded(at(30.0));
        CHECK(s.theta == 0.0);
        CHECK(s.h == 0.0);
    }
    SUBCASE("golden design") {
        const FoldedState s = solve_folded(YoshimuraDesign::golden());
        // 1/phi sqrt(1 - phi^2/3)
        CHECK(std::abs(s.h - std::sqrt(1.0 - kPhi * kPhi / 3.0) / kPhi) < 1e-12);
        CHECK(std::abs(s.h - 0.2205) < 5e-5);
    }
    SUBCASE("scales with L") {
        YoshimuraDesign d = at(45.0);
        d.L = 100.0;
        CHECK(solve_folded(d).h == Approx(100.0 * std::sqrt(2.0 / 3.0)));
    }
    SUBCASE("general n") {
        // cos(theta) = tan(pi/2n)/tan(beta)
        const YoshimuraDesign d = YoshimuraDesign::from_degrees(6, 40.0);
        const FoldedState s = solve_folded(d);
        CHECK(std::cos(s.theta) == Approx(std::tan(kPi / 12.0) / std::tan(d.beta)));
    }
    CHECK_THROWS_AS(solve_folded(at(25.0)), AdmissibilityError);
}

TEST_CASE("golden tilt from the unsimplified relations") {
    const double expected = 2.0 * std::asin(1.0 / (std::sqrt(3.0) * kPhi));
    CHECK(std::abs(degrees(expected) - 41.810) < kAngleTol);
    const OnePopSolution one = solve_one_pop(YoshimuraDesign::golden());
    const TwoPopSolution two = solve_two_pop(YoshimuraDesign::golden());
    CHECK(std::abs(degrees(one.gamma) - degrees(expected)) < 1e-9);
    CHECK(std::abs(degrees(two.gamma) - degrees(expected)) < 1e-9);
    CHECK(one.theta == Approx(0.0));
    CHECK(two.theta == Approx(0.0));
}

TEST_CASE("one-pop solver against the grid-scan oracle") {
    // Frozen oracle output (degrees): theta, eta, alpha, gamma.
    struct Row {
        double beta, theta, eta, alpha, gamma;
    };
    const Row rows[] = {
        {31.8, 2.22336, 26.43864, 62.93342, 40.25186},
        {33.0, 15.09517, 25.82462, 60.60256, 32.19751},
        {35.0, 25.57654, 25.44750, 59.24566, 26.56319},
        {40.0, 40.66999, 25.05165, 57.87287, 19.42854},
        {45.0, 50.30869, 24.87124, 57.26291, 15.29537},
    };
    for (const Row& row : rows) {
        CAPTURE(row.beta);
        const YoshimuraDesign d = at(row.beta);
        const auto ref = oracle::grid_scan_one_pop(d.beta);
        REQUIRE(ref.has_value());
        CHECK(std::abs(degrees(ref->theta) - row.theta) < 1e-4);

        const OnePopSolution s = solve_one_pop(d);
        CHECK(std::abs(s.theta - ref->theta) < 1e-9);
        CHECK(std::abs(degrees(s.eta) - row.eta) < 1e-4);
        CHECK(std::abs(degrees(s.alpha) - row.alpha) < 1e-4);
        CHECK(std::abs(degrees(s.gamma) - row.gamma) < 1e-4);
        CHECK(std::abs(s.residuals.kite) < 1e-12);
        CHECK(std::abs(s.residuals.top_edge) < 1e-10);
        CHECK(std::abs(s.residuals.mountain) < 1e-10);
    }
}

TEST_CASE("one-pop solutions stay admissible across the meta-stable range") {
    for (double b = 31.75; b < 80.0; b += 0.5) {
        CAPTURE(b);
        const OnePopSolution s = solve_one_pop(at(b));
        CHECK(s.theta >= 0.0);
        CHECK(s.theta <= kPi / 2.0);
        CHECK(2.0 * std::sin(s.eta) == Approx(std::sin(s.alpha)).epsilon(1e-12));
        CHECK(s.gamma > 0.0);
        const auto ref = oracle::grid_scan_one_pop(radians(b));
        REQUIRE(ref.has_value());
        CHECK(std::abs(s.theta - ref->theta) < 1e-8);
    }
}

TEST_CASE("two-pop closed check at 45 deg") {
    const TwoPopSolution s = solve_two_pop(at(45.0));
    CHECK(std::abs(degrees(s.theta) - 45.0) < 1e-9);
    CHECK(std::abs(two_pop_residual(radians(45.0), kPi / 4.0)) < 1e-12);
    CHECK(std::abs(s.residual) < 1e-12);
    // tan(gamma/2) = (w - w sin45) / (1/2 + w cos45) with w = 1/2
    const double expected = 2.0 * std::atan((1.0 - std::sqrt(0.5)) / (1.0 + std::sqrt(0.5)));
    CHECK(s.gamma == Approx(expected).epsilon(1e-12));
}

TEST_CASE("two-pop residual is monotone so the root is unique") {
    for (double b = 32.0; b < 80.0; b += 4.0) {
        double prev = two_pop_residual(radians(b), 0.0);
        for (double th = 0.01; th <= kPi / 2.0; th += 0.01) {
            const double cur = two_pop_residual(radians(b), th);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("below the golden bound pop-outs have no solution") {
    CHECK_THROWS_AS(solve_one_pop(at(30.0)), NoSolution);
    CHECK_THROWS_AS(solve_two_pop(at(31.0)), NoSolution);
    CHECK_THROWS_AS(solve_module(at(20.0), PopClass::TwoPop), NoSolution);
    CHECK_THROWS_AS(solve_module(at(31.0), PopClass::FullPop), NoSolution);
    try {
        solve_one_pop(at(30.0));
    } catch (const NoSolution& e) {
        CHECK(std::string(e.what()).find("31.717") != std::string::npos);
    }
}

TEST_CASE("pop-outs need n = 3") {
    CHECK_THROWS_AS(solve_one_pop(YoshimuraDesign::from_degrees(4, 40.0)), Unsupported);
    CHECK_THROWS_AS(solve_two_pop(YoshimuraDesign::from_degrees(5, 40.0)), Unsupported);
}

TEST_CASE("values within the snap tolerance of the bound solve as golden") {
    const OnePopSolution s = solve_one_pop(at(31.717));
    CHECK(s.theta == 0.0);
    CHECK(std::abs(degrees(s.gamma) - 41.8103) < kAngleTol);
}

TEST_CASE("solve_module") {
    const YoshimuraDesign g = YoshimuraDesign::golden();
    CHECK(solve_module(g, PopClass::FullPop).d == Approx(1.0 / kPhi));
    CHECK(solve_module(g, PopClass::OnePop).d == Approx(1.0 / (3.0 * kPhi)));
    CHECK(solve_module(g, PopClass::TwoPop).d == Approx(2.0 / (3.0 * kPhi)));
    CHECK(solve_module(g, PopClass::Folded).d == Approx(0.2205).epsilon(1e-3));
    CHECK(parse_pop_class("1pop") == PopClass::OnePop);
    CHECK(parse_pop_class("folded") == PopClass::Folded);
    CHECK_THROWS_AS(parse_pop_class("4pop"), InvalidArgument);
    SolverOptions bad;
    bad.tol = -1.0;
    CHECK_THROWS_AS(solve_one_pop(at(40.0), bad), InvalidArgument);
}
