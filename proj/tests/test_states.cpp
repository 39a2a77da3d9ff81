#include <doctest.h>

#include <cmath>

#include "p2pmarket/states.hpp"
#include "support.hpp"

using namespace p2pmarket;
using testsupport::Approx;

TEST_SUITE_BEGIN("states");

TEST_CASE("context derives the shared volumes") {
    P2PContext ctx = testsupport::reference_context();
    CHECK(ctx.v_cs == Approx(ctx.baseline.v_star * 0.4).epsilon(1e-15));
    CHECK(ctx.a == Approx(4.0));
    CHECK(ctx.v_tilde ==
          Approx((ctx.baseline.b_user * 0.75 - ctx.v_cs) / 1.7).epsilon(1e-12));
    CHECK(ctx.v_tilde == Approx(3.2936).margin(1e-3));
    CHECK(ctx.v_tilde > 0.0);
    CHECK(ctx.cap == Approx(100.0 * (1.0 - 1e-6) - ctx.v_cs));
}

TEST_CASE("flat-fee user utility") {
    P2PContext ctx = testsupport::reference_context();
    const BaselineEquilibrium& eq = ctx.baseline;

    SUBCASE("no peer volume collapses to the plain experience") {
        double expected = ctx.family.experience(ctx.v_cs) -
                          ctx.v_cs * eq.p_s - eq.tau;
        CHECK(user_utility_s1(ctx, 0.0) == Approx(expected).epsilon(1e-14));
    }
    SUBCASE("continuous at the overage kink") {
        double below = user_utility_s1(ctx, ctx.v_tilde - 1e-9);
        double above = user_utility_s1(ctx, ctx.v_tilde + 1e-9);
        CHECK(std::abs(below - above) < 1e-6);
    }
    SUBCASE("published value at the threshold") {
        CHECK(user_utility_s1(ctx, 3.2940) == Approx(9.6230).margin(2e-3));
    }
    SUBCASE("rejects volumes outside the admissible range") {
        CHECK_THROWS_AS(user_utility_s1(ctx, -0.1), Error);
        CHECK_THROWS_AS(user_utility_s1(ctx, ctx.cap + 1.0), Error);
    }
}

TEST_CASE("state 1 solution") {
    P2PContext ctx = testsupport::reference_context();
    StateOutcome s1 = solve_state1(ctx);

    SUBCASE("published utility triple") {
        CHECK(s1.utilities.isp == Approx(1.5964).margin(2e-3));
        CHECK(s1.utilities.cp == Approx(7.2021).margin(2e-3));
        CHECK(s1.utilities.user == Approx(9.6230).margin(2e-3));
    }
    SUBCASE("users fill the flat allotment exactly") {
        CHECK(s1.v_p2p == Approx(ctx.v_tilde).margin(1e-6));
        CHECK(s1.v_p2p > ctx.baseline.v_star * ctx.profile.alpha);
        CHECK(s1.v_total == Approx(s1.v_p2p + ctx.v_cs));
    }
    SUBCASE("dense scan oracle agrees") {
        // 1e-5 steps over the region around the threshold, plus a coarse
        // pass over the rest of [0, cap] to rule out a distant optimum
        double best_x = 0.0, best_u = -1e300;
        for (double x = 0.0; x <= 2.0 * ctx.v_tilde; x += 1e-5) {
            double u = user_utility_s1(ctx, x);
            if (u > best_u) {
                best_u = u;
                best_x = x;
            }
        }
        for (double x = 0.0; x <= ctx.cap; x += 1e-2) {
            double u = user_utility_s1(ctx, x);
            if (u > best_u) {
                best_u = u;
                best_x = x;
            }
        }
        CHECK(best_x == Approx(s1.v_p2p).margin(2e-5));
        CHECK(user_utility_s1(ctx, s1.v_p2p) >= best_u - 1e-10);
    }
}

TEST_CASE("volume-priced user utility") {
    P2PContext ctx = testsupport::reference_context();
    const BaselineEquilibrium& eq = ctx.baseline;

    SUBCASE("no peer volume") {
        double expected = ctx.family.experience(ctx.v_cs) - ctx.v_cs * eq.p_s -
                          ctx.v_cs * eq.p_b / ctx.params.xi_user;
        CHECK(user_utility_s2(ctx, 0.0) == Approx(expected).epsilon(1e-14));
    }
    SUBCASE("published value near the optimum") {
        CHECK(user_utility_s2(ctx, 1.5221) == Approx(5.1712).margin(2e-3));
    }
}

TEST_CASE("state 2 solution") {
    P2PContext ctx = testsupport::reference_context();
    StateOutcome s2 = solve_state2(ctx);

    SUBCASE("closed-form first-order condition pins the volume") {
        double rhs = ctx.baseline.p_s +
                     (2.0 - ctx.profile.beta) * ctx.baseline.p_b /
                         ctx.params.xi_user;
        double oracle = (ctx.a * 5.0 / rhs - ctx.v_cs - 1.0) / ctx.a;
        CHECK(s2.v_p2p == Approx(oracle).margin(1e-6));
        CHECK(s2.v_p2p == Approx(1.5221).margin(1e-3));
    }
    SUBCASE("marginal experience balances the full marginal price") {
        double rhs = ctx.baseline.p_s +
                     (2.0 - ctx.profile.beta) * ctx.baseline.p_b /
                         ctx.params.xi_user;
        double h = 1e-6;
        double slope = (user_utility_s2(ctx, s2.v_p2p + h) -
                        user_utility_s2(ctx, s2.v_p2p - h)) /
                       (2.0 * h);
        // at the interior optimum the experience slope equals rhs
        CHECK(slope == Approx(0.0).margin(1e-5));
        double experience_slope =
            (accelerated_experience(ctx.family, s2.v_total + h, ctx.v_cs, ctx.a) -
             accelerated_experience(ctx.family, s2.v_total - h, ctx.v_cs, ctx.a)) /
            (2.0 * h);
        CHECK(experience_slope == Approx(rhs).margin(1e-5));
    }
    SUBCASE("utilities: user matches the published value") {
        CHECK(s2.utilities.user == Approx(5.1712).margin(2e-3));
    }
    SUBCASE("utilities: ISP and CP match the game-tree leaf pair") {
        // these equal the published game-tree payoffs (and the published
        // percentage changes), not the differing inline state-2 pair
        CHECK(s2.utilities.isp == Approx(3.5226).margin(2e-3));
        CHECK(s2.utilities.cp == Approx(5.0835).margin(2e-3));
    }
    SUBCASE("published percentage changes against state 1") {
        StateOutcome s1 = solve_state1(ctx);
        double isp_pct = 100.0 * (s2.utilities.isp / s1.utilities.isp - 1.0);
        double cp_pct = 100.0 * (s2.utilities.cp / s1.utilities.cp - 1.0);
        CHECK(isp_pct == Approx(120.66).margin(0.2));
        CHECK(cp_pct == Approx(-29.42).margin(0.2));
    }
}

TEST_CASE("profile grid properties") {
    auto params = testsupport::reference_params();
    auto family = testsupport::reference_family();
    auto baseline = testsupport::reference_baseline();
    StateOutcome s0 = baseline_outcome(baseline);

    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            double alpha = 0.3 + 0.6 * i / 19.0;
            double beta = 0.05 + 0.45 * j / 19.0;
            CAPTURE(alpha);
            CAPTURE(beta);
            P2PContext ctx(params, family, baseline,
                           TrafficProfile(alpha, beta));
            StateOutcome s1 = solve_state1(ctx);
            StateOutcome s2 = solve_state2(ctx);

            // usage-based pricing always suppresses peer volume
            CHECK(s2.v_p2p < s1.v_p2p);
            // peer-assisted consumption always exceeds the baseline
            CHECK(s1.v_total > baseline.v_star);
            // the flat fee is unchanged and more consumption is available
            CHECK(s1.utilities.user >= s0.utilities.user);

            // when overage is dearer than the experience slope at the
            // kink, the optimizer never crosses it
            double h = 1e-7;
            double kink_slope =
                (user_utility_s1(ctx, ctx.v_tilde + h) -
                 user_utility_s1(ctx, ctx.v_tilde + 3.0 * h)) / (-2.0 * h);
            if (kink_slope < 0.0)
                CHECK(s1.v_p2p <= ctx.v_tilde + 1e-9);
        }
    }
}

TEST_CASE("a profile without peer content collapses onto the baseline") {
    auto params = testsupport::reference_params();
    auto family = testsupport::reference_family();
    auto baseline = testsupport::reference_baseline();
    P2PContext ctx(params, family, baseline, TrafficProfile(0.0, 0.3));
    CHECK(ctx.cap == 0.0);

    StateOutcome s1 = solve_state1(ctx);
    StateOutcome s2 = solve_state2(ctx);
    for (const StateOutcome* s : {&s1, &s2}) {
        CHECK(s->v_p2p == 0.0);
        CHECK(s->v_total == Approx(baseline.v_star));
        CHECK(s->utilities.isp == Approx(baseline.utilities.isp).margin(1e-9));
        CHECK(s->utilities.cp == Approx(baseline.utilities.cp).margin(1e-9));
        CHECK(s->utilities.user == Approx(baseline.utilities.user).margin(1e-9));
    }
}

TEST_SUITE_END();
