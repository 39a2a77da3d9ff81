#include <doctest.h>

#include <cmath>

#include "p2pmarket/calculus.hpp"
#include "p2pmarket/market.hpp"
#include "support.hpp"

using namespace p2pmarket;
using testsupport::Approx;

TEST_SUITE_BEGIN("market");

TEST_CASE("parameter invariants and validation") {
    MarketParameters p = testsupport::reference_params();
    CHECK(p.d() == Approx(4.0));
    CHECK(p.e() == Approx(4.0 / 3.0));
    CHECK(p.c() == p.d() + p.e());  // exact by construction

    CHECK_THROWS_AS(MarketParameters(0.25, 0.75, 100.0), Error); // xi_user > xi_cp
    CHECK_THROWS_AS(MarketParameters(1.5, 0.25, 100.0), Error);
    CHECK_THROWS_AS(MarketParameters(0.75, 0.0, 100.0), Error);
    CHECK_THROWS_AS(MarketParameters(0.75, 0.25, 0.0), Error);
}

TEST_CASE("traffic profile validation") {
    CHECK_NOTHROW(TrafficProfile(0.0, 1.0));
    CHECK_THROWS_AS(TrafficProfile(0.6, 0.0), Error);   // beta must stay positive
    CHECK_THROWS_AS(TrafficProfile(0.6, 1.01), Error);
    CHECK_THROWS_AS(TrafficProfile(-0.1, 0.3), Error);
    CHECK_THROWS_AS(TrafficProfile(1.1, 0.3), Error);
}

TEST_CASE("acceleration factor fit") {
    CHECK(acceleration_factor(TrafficProfile(0.5, 0.3)) == Approx(4.0));
    CHECK(acceleration_factor(TrafficProfile(0.5, 1.0)) == Approx(1.0));
    // midpoint of the two anchors
    CHECK(acceleration_factor(TrafficProfile(0.5, 0.65)) == Approx(2.5));

    SUBCASE("affine in beta") {
        for (double b1 : {0.1, 0.3, 0.6}) {
            for (double b2 : {0.2, 0.5, 0.9}) {
                double lhs = acceleration_factor(TrafficProfile(0.5, b1)) +
                             acceleration_factor(TrafficProfile(0.5, b2));
                double rhs =
                    2.0 * acceleration_factor(TrafficProfile(0.5, 0.5 * (b1 + b2)));
                CHECK(lhs == Approx(rhs).epsilon(1e-12));
            }
        }
    }

    SUBCASE("configurable anchors") {
        AccelerationModel model{0.5, 3.0, 1.0, 1.0};
        CHECK(acceleration_factor(TrafficProfile(0.5, 0.5), model) == Approx(3.0));
        CHECK(acceleration_factor(TrafficProfile(0.5, 1.0), model) == Approx(1.0));
    }
}

TEST_CASE("accelerated experience") {
    FunctionFamily family = testsupport::reference_family();
    CHECK(accelerated_experience(family, 3.0, 1.0, 1.0) ==
          Approx(family.experience(3.0)));
    CHECK(accelerated_experience(family, 1.0, 1.0, 4.0) ==
          Approx(family.experience(1.0)));
    // v_cs and v from the reference state-1 outcome
    CHECK(accelerated_experience(family, 4.1555, 0.8615, 4.0) ==
          Approx(5.0 * std::log(15.0375)).margin(1e-9));
    CHECK(accelerated_experience(family, 4.1555, 0.8615, 4.0) ==
          Approx(13.5528).margin(1e-3));
    CHECK_THROWS_AS(accelerated_experience(family, 0.5, 1.0, 4.0), Error);

    SUBCASE("never below the plain experience") {
        for (double v : {0.9, 2.0, 10.0, 50.0})
            CHECK(accelerated_experience(family, v, 0.9, 4.0) >=
                  family.experience(v));
    }
    SUBCASE("monotone in v") {
        double prev = accelerated_experience(family, 0.8615, 0.8615, 4.0);
        for (double v = 1.0; v < 90.0; v += 1.7) {
            double cur = accelerated_experience(family, v, 0.8615, 4.0);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("alleviated cost") {
    FunctionFamily family = testsupport::reference_family();
    CHECK(alleviated_cost(family, 3.0, 1.0, 1.0) ==
          Approx(family.content_cost(3.0)));
    CHECK(alleviated_cost(family, 1.0, 1.0, 0.3) ==
          Approx(family.content_cost(1.0)));
    CHECK(alleviated_cost(family, 56.8755, 0.8615, 0.3) ==
          Approx(std::log(18.6657) + 0.2).margin(1e-9));
    CHECK(alleviated_cost(family, 56.8755, 0.8615, 0.3) ==
          Approx(3.1267).margin(1e-3));
    CHECK(alleviated_cost(family, 10.0, 0.8615, 0.3) <=
          family.content_cost(10.0));
    CHECK_THROWS_AS(alleviated_cost(family, 0.5, 1.0, 0.3), Error);
    CHECK_THROWS_AS(alleviated_cost(family, 2.0, 1.0, 0.0), Error);

    SUBCASE("monotone in v") {
        double prev = alleviated_cost(family, 0.8615, 0.8615, 0.3);
        for (double v = 1.0; v < 90.0; v += 1.7) {
            double cur = alleviated_cost(family, v, 0.8615, 0.3);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("reference family shapes") {
    FunctionFamily family = testsupport::reference_family();

    SUBCASE("marginal experience and its inverse") {
        CHECK(family.marginal_experience(3.0) == Approx(5.0 / 4.0));
        CHECK(family.marginal_experience_inverse(1.0) == Approx(4.0));
        for (double v = 0.1; v < 90.0; v += 3.7)
            CHECK(family.marginal_experience_inverse(
                      family.marginal_experience(v)) == Approx(v).margin(1e-9));
    }

    SUBCASE("ISP cost rejects capacity and diverges toward it") {
        CHECK_THROWS_AS(family.isp_cost(100.0), Error);
        CHECK_THROWS_AS(family.isp_cost(101.0), Error);
        CHECK_THROWS_AS(family.isp_cost(-1.0), Error);
        CHECK(std::isfinite(family.isp_cost(99.9)));
        double prev = family.isp_cost(0.0);
        for (double v = 1.0; v < 100.0; v += 0.5) {
            double cur = family.isp_cost(v * 0.999);
            CHECK(cur > prev);
            prev = cur;
        }
        CHECK(family.isp_cost(99.9999) > 1e4);  // blowing up near capacity
    }

    SUBCASE("experience and ad revenue increasing and concave") {
        for (double v = 0.5; v < 89.0; v += 1.3) {
            double h = 1e-4;
            CHECK(family.experience(v + h) > family.experience(v));
            CHECK(family.ad_revenue(v + h) > family.ad_revenue(v));
            double curv_e = family.experience(v + h) - 2.0 * family.experience(v) +
                            family.experience(v - h);
            double curv_f = family.ad_revenue(v + h) - 2.0 * family.ad_revenue(v) +
                            family.ad_revenue(v - h);
            CHECK(curv_e < 0.0);
            CHECK(curv_f < 0.0);
        }
    }

    SUBCASE("marginal experience strictly decreasing") {
        double prev = family.marginal_experience(0.0);
        for (double v = 0.5; v < 90.0; v += 0.7) {
            double cur = family.marginal_experience(v);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("analytic derivatives agree with finite differences") {
    FunctionFamily f = testsupport::reference_family();
    std::vector<double> points;
    for (int i = 1; i <= 50; ++i)
        points.push_back(0.9 * 100.0 * i / 51.0);

    auto wrap = [&](double (FunctionFamily::*fn)(double) const) {
        return [&f, fn](double v) { return (f.*fn)(v); };
    };
    CHECK(check_derivative(wrap(&FunctionFamily::content_cost),
                           wrap(&FunctionFamily::content_cost_prime), points) < 1e-4);
    CHECK(check_derivative(wrap(&FunctionFamily::isp_cost),
                           wrap(&FunctionFamily::isp_cost_prime), points) < 1e-4);
    CHECK(check_derivative(wrap(&FunctionFamily::ad_revenue),
                           wrap(&FunctionFamily::ad_revenue_prime), points) < 1e-4);
    CHECK(check_derivative(wrap(&FunctionFamily::experience),
                           wrap(&FunctionFamily::marginal_experience), points) < 1e-4);
    CHECK(check_derivative(wrap(&FunctionFamily::marginal_experience),
                           wrap(&FunctionFamily::marginal_experience_prime),
                           points) < 1e-4);
    CHECK(check_derivative(wrap(&FunctionFamily::marginal_experience_prime),
                           wrap(&FunctionFamily::marginal_experience_second),
                           points) < 1e-4);
    CHECK(check_derivative(wrap(&FunctionFamily::content_cost_prime),
                           wrap(&FunctionFamily::content_cost_second), points) < 1e-4);
    CHECK(check_derivative(wrap(&FunctionFamily::isp_cost_prime),
                           wrap(&FunctionFamily::isp_cost_second), points) < 1e-4);
    CHECK(check_derivative(wrap(&FunctionFamily::ad_revenue_prime),
                           wrap(&FunctionFamily::ad_revenue_second), points) < 1e-4);
}

TEST_CASE("finite-difference fallback for user families") {
    FunctionFamily::Spec spec;
    spec.capacity = 100.0;
    spec.content_cost = [](double v) { return std::log(v + 1.0) + 0.2; };
    spec.isp_cost = [](double v) {
        return std::log(v + 1.0) + 100.0 * (1.0 / (100.0 - v) - 0.01) + 0.4;
    };
    spec.ad_revenue = [](double v) { return 5.0 * std::log(v + 1.0); };
    spec.experience = [](double v) { return 5.0 * std::log(v + 1.0); };
    FunctionFamily plain = FunctionFamily::from_spec(spec);
    FunctionFamily analytic = testsupport::reference_family();

    for (double v : {0.5, 2.0, 10.0, 60.0}) {
        CHECK(plain.content_cost_prime(v) ==
              Approx(analytic.content_cost_prime(v)).epsilon(1e-6));
        CHECK(plain.isp_cost_prime(v) ==
              Approx(analytic.isp_cost_prime(v)).epsilon(1e-6));
        CHECK(plain.marginal_experience(v) ==
              Approx(analytic.marginal_experience(v)).epsilon(1e-6));
    }
    // bisection inverse of the finite-difference marginal experience
    double y = analytic.marginal_experience(4.0);
    CHECK(plain.marginal_experience_inverse(y) == Approx(4.0).margin(1e-5));

    FunctionFamily::Spec missing;
    missing.capacity = 100.0;
    missing.content_cost = spec.content_cost;
    CHECK_THROWS_AS(FunctionFamily::from_spec(missing), Error);
}

TEST_SUITE_END();
