#include "p2pmarket/baseline.hpp"

#include <cmath>
#include <string>

namespace p2pmarket {

double phi1(const MarketParameters& params, const FunctionFamily& family,
            double v) {
    if (!(v > 0.0) || v >= family.max_volume())
        throw Error(ErrorCode::capacity_exceeded,
                    "phi1 requires 0 < v < capacity");
    return params.c() * v * (1.0 / params.d()) *
               family.marginal_experience_prime(v) -
           family.isp_cost_prime(v);
}

double phi2(const MarketParameters& params, const FunctionFamily& family,
            double v) {
    if (!(v > 0.0) || v >= family.max_volume())
        throw Error(ErrorCode::capacity_exceeded,
                    "phi2 requires 0 < v < capacity");
    return v * family.marginal_experience_prime(v) +
           family.ad_revenue_prime(v) - family.content_cost_prime(v);
}

namespace {

BaselineEquilibrium build_equilibrium(const MarketParameters& params,
                                      const FunctionFamily& family, double v) {
    BaselineEquilibrium eq;
    eq.v_star = v;
    eq.p_b = -phi1(params, family, v) / params.c();
    eq.p_s = params.e() * eq.p_b - phi2(params, family, v);
    if (eq.p_b < 0.0 || eq.p_s < 0.0)
        throw Error(ErrorCode::negative_price,
                    "equilibrium prices came out negative (p_b = " +
                        std::to_string(eq.p_b) + ", p_s = " +
                        std::to_string(eq.p_s) + ")");
    eq.b_user = v / params.xi_user;
    eq.b_cp = v / params.xi_cp;
    eq.tau = eq.b_user * eq.p_b;

    // curvature of the two best-response problems, both must be negative
    double o1 = family.marginal_experience_prime(v);
    double o2 = family.marginal_experience_second(v);
    double cd = params.c() / params.d();
    double phi1_prime = cd * (o1 + v * o2) - family.isp_cost_second(v);
    double phi2_prime = o1 + v * o2 + family.ad_revenue_second(v) -
                        family.content_cost_second(v);
    eq.second_order = {cd * o1 + phi1_prime, o1 + phi2_prime};
    eq.second_order_ok = {eq.second_order.first < 0.0,
                          eq.second_order.second < 0.0};

    eq.utilities.isp = params.c() * v * eq.p_b - family.isp_cost(v);
    eq.utilities.cp = v * eq.p_s + family.ad_revenue(v) -
                      (v / params.xi_cp) * eq.p_b - family.content_cost(v);
    eq.utilities.user = family.experience(v) -
                        (eq.p_b / params.xi_user + eq.p_s) * v;

    // the underused-network assumption: demand fits the CP-side capacity
    if (v > eq.b_user * params.xi_cp * (1.0 + 1e-12))
        throw Error(ErrorCode::invalid_argument,
                    "equilibrium volume exceeds b_user * xi_cp");
    return eq;
}

} // namespace

std::vector<BaselineEquilibrium> solve_state0(const MarketParameters& params,
                                              const FunctionFamily& family,
                                              const BaselineOptions& opts) {
    auto stationarity = [&](double v) {
        return family.marginal_experience(v) + phi1(params, family, v) +
               phi2(params, family, v);
    };

    double lo = 1e-6;
    double hi = params.b_isp * (1.0 - 1e-6);
    int n = std::max(16, opts.scan_points);
    double step = (hi - lo) / n;

    std::vector<BaselineEquilibrium> roots;
    bool any_root = false;
    bool any_second_order = false;
    double prev_x = lo;
    double prev_f = stationarity(lo);
    for (int i = 1; i <= n; ++i) {
        double x = lo + i * step;
        double fx = stationarity(x);
        if (prev_f == 0.0 || prev_f * fx < 0.0) {
            Bracket bracket(prev_x, x, opts.root_tol * params.b_isp);
            double v = find_root_bracketed(stationarity, bracket);
            any_root = true;
            BaselineEquilibrium eq = build_equilibrium(params, family, v);
            if (eq.second_order_ok.first && eq.second_order_ok.second) {
                any_second_order = true;
                roots.push_back(eq);
            }
        }
        prev_x = x;
        prev_f = fx;
    }
    if (!any_root)
        throw Error(ErrorCode::no_equilibrium_root,
                    "no root of the stationarity condition in (0, b_isp)");
    if (!any_second_order)
        throw Error(ErrorCode::second_order_failed,
                    "every stationary volume fails the curvature test");
    return roots;
}

BaselineEquilibrium solve_state0_unique(const MarketParameters& params,
                                        const FunctionFamily& family,
                                        const BaselineOptions& opts,
                                        std::size_t index) {
    auto roots = solve_state0(params, family, opts);
    if (index >= roots.size())
        throw Error(ErrorCode::invalid_argument,
                    "root index " + std::to_string(index) + " out of range (" +
                        std::to_string(roots.size()) + " roots)");
    return roots[index];
}

} // namespace p2pmarket
