#include <doctest.h>

#include <cmath>

#include "p2pmarket/calculus.hpp"
#include "support.hpp"

using namespace p2pmarket;
using testsupport::Approx;

TEST_SUITE_BEGIN("calculus");

TEST_CASE("bracketed root finding") {
    CHECK(find_root_bracketed([](double x) { return x - 1.0; },
                              Bracket(0.0, 2.0)) == Approx(1.0).margin(1e-11));
    CHECK(find_root_bracketed([](double x) { return x * x - 4.0; },
                              Bracket(0.0, 3.0)) == Approx(2.0).margin(1e-11));

    SUBCASE("equilibrium stationarity of the reference scenario") {
        double v = find_root_bracketed(testsupport::reference_stationarity,
                                       Bracket(1.0, 3.0, 1e-12));
        CHECK(v == Approx(testsupport::reference_root_oracle()).margin(1e-9));
        CHECK(v == Approx(2.1535).margin(1e-3));
        CHECK(std::abs(testsupport::reference_stationarity(v)) < 1e-10);
    }

    SUBCASE("rejects a bracket without sign change") {
        CHECK_THROWS_AS(find_root_bracketed([](double x) { return x + 1.0; },
                                            Bracket(0.0, 2.0)),
                        Error);
    }
    SUBCASE("bracket validation") {
        CHECK_THROWS_AS(Bracket(2.0, 1.0), Error);
        CHECK_THROWS_AS(Bracket(0.0, 1.0, 0.0), Error);
    }
    SUBCASE("steep and flat shapes converge within the iteration cap") {
        CHECK(find_root_bracketed([](double x) { return std::tanh(50.0 * (x - 0.3)); },
                                  Bracket(0.0, 1.0, 1e-12)) ==
              Approx(0.3).margin(1e-10));
        CHECK(find_root_bracketed([](double x) { return std::cbrt(x - 0.7); },
                                  Bracket(0.0, 1.0, 1e-12)) ==
              Approx(0.7).margin(1e-10));
    }
}

TEST_CASE("piecewise maximization") {
    SUBCASE("single smooth piece") {
        PiecewiseObjective obj([](double x) { return -(x - 3.0) * (x - 3.0); },
                               0.0, 10.0);
        auto [x, v] = maximize_piecewise(obj);
        CHECK(x == Approx(3.0).margin(1e-7));
        CHECK(v == Approx(0.0).margin(1e-12));
    }
    SUBCASE("kink maximum lands exactly on the breakpoint") {
        // both one-sided slopes point toward the kink at x = 1
        PiecewiseObjective obj(
            [](double x) { return x <= 1.0 ? x : 2.0 - x; }, 0.0, 2.0, {1.0});
        auto [x, v] = maximize_piecewise(obj);
        CHECK(x == 1.0);
        CHECK(v == 1.0);
    }
    SUBCASE("boundary maximum") {
        PiecewiseObjective obj([](double x) { return x; }, 0.0, 5.0, {2.0});
        auto [x, v] = maximize_piecewise(obj);
        CHECK(x == 5.0);
        CHECK(v == 5.0);
    }
    SUBCASE("degenerate zero-width interval") {
        PiecewiseObjective obj([](double x) { return -x; }, 0.0, 0.0);
        auto [x, v] = maximize_piecewise(obj);
        CHECK(x == 0.0);
        CHECK(v == 0.0);
    }
    SUBCASE("result dominates breakpoints and endpoints") {
        PiecewiseObjective obj(
            [](double x) { return std::sin(3.0 * x) - 0.1 * x; }, 0.0, 6.0,
            {1.5, 3.0, 4.5});
        auto [x, v] = maximize_piecewise(obj);
        (void)x;
        for (double cand : {0.0, 1.5, 3.0, 4.5, 6.0})
            CHECK(v >= std::sin(3.0 * cand) - 0.1 * cand);
    }
    SUBCASE("breakpoint validation") {
        CHECK_THROWS_AS(
            PiecewiseObjective([](double) { return 0.0; }, 0.0, 1.0, {2.0}),
            Error);
        CHECK_THROWS_AS(PiecewiseObjective([](double) { return 0.0; }, 0.0, 1.0,
                                           {0.6, 0.4}),
                        Error);
    }
}

TEST_CASE("two-dimensional lattice maximization") {
    SUBCASE("interior paraboloid") {
        auto r = maximize_grid_2d([](double x, double y) {
            return -(x - 0.5) * (x - 0.5) - (y - 0.5) * (y - 0.5);
        });
        CHECK(r.x == Approx(0.5).margin(1e-6));
        CHECK(r.y == Approx(0.5).margin(1e-6));
        CHECK(r.value == Approx(0.0).margin(1e-10));
    }
    SUBCASE("boundary maximum") {
        auto r = maximize_grid_2d([](double x, double y) { return x + y; });
        CHECK(r.x == 1.0);
        CHECK(r.y == 1.0);
        CHECK(r.value == Approx(2.0));
    }
    SUBCASE("value never decreases with more refinement") {
        auto f = [](double x, double y) {
            return std::sin(7.0 * x) * std::cos(5.0 * y) - 0.3 * x * y;
        };
        double prev = -1e300;
        for (int levels = 2; levels <= 5; ++levels) {
            auto r = maximize_grid_2d(f, 21, levels);
            CHECK(r.value >= prev);
            prev = r.value;
        }
    }
    SUBCASE("deterministic tie-break toward the smallest pair") {
        auto r = maximize_grid_2d([](double, double) { return 1.0; }, 11, 2);
        CHECK(r.x == 0.0);
        CHECK(r.y == 0.0);
    }
    SUBCASE("precondition validation") {
        auto f = [](double, double) { return 0.0; };
        CHECK_THROWS_AS(maximize_grid_2d(f, 5, 4), Error);
        CHECK_THROWS_AS(maximize_grid_2d(f, 21, 1), Error);
    }
}

TEST_CASE("derivative checker") {
    ScalarFn square = [](double x) { return x * x; };
    CHECK(check_derivative(square, [](double x) { return 2.0 * x; }, {3.0}) <
          1e-7);
    CHECK(check_derivative([](double x) { return std::log(x + 1.0); },
                           [](double x) { return 1.0 / (x + 1.0); }, {2.0}) <
          1e-7);
    // deliberately wrong derivative: claims x, truth is 2x
    CHECK(check_derivative(square, [](double x) { return x; }, {1.0}) ==
          Approx(1.0).margin(1e-5));
    CHECK_THROWS_AS(check_derivative([](double x) { return std::sqrt(x); },
                                     [](double) { return 0.0; }, {-4.0}),
                    Error);
}

TEST_SUITE_END();
