#pragma once

#include <utility>
#include <vector>

#include "p2pmarket/calculus.hpp"
#include "p2pmarket/market.hpp"

namespace p2pmarket {

/// Utilities of the three communities, in (ISP, CP, user) order.
struct UtilityTriple {
    double isp = 0.0;
    double cp = 0.0;
    double user = 0.0;
};

/// Pre-P2P market equilibrium: the volume solving the stationarity
/// condition, the recovered prices, the flat fee and the purchased
/// bandwidths, plus the resulting utilities.
struct BaselineEquilibrium {
    double v_star = 0.0;   // equilibrium traffic volume
    double p_b = 0.0;      // bandwidth price per unit
    double p_s = 0.0;      // content price per volume unit
    double tau = 0.0;      // user-side flat fee, (v*/xi_user) * p_b
    double b_user = 0.0;   // v* / xi_user
    double b_cp = 0.0;     // v* / xi_cp
    UtilityTriple utilities;
    std::pair<double, double> second_order;     // curvature values, both < 0
    std::pair<bool, bool> second_order_ok{false, false};
};

/// First-stage stationarity terms. phi1 collects the ISP side
/// (price response of demand minus marginal carriage cost), phi2 the CP
/// side (demand response plus marginal ad revenue minus marginal content
/// cost). The equilibrium volume satisfies o(v) + phi1(v) + phi2(v) = 0.
double phi1(const MarketParameters& params, const FunctionFamily& family, double v);
double phi2(const MarketParameters& params, const FunctionFamily& family, double v);

struct BaselineOptions {
    int scan_points = 1000;  // sign-change scan density over (0, capacity)
    double root_tol = 1e-12; // bracket width target (scaled by capacity)
};

/// All equilibrium volumes in (0, b_isp) passing both second-order
/// inequalities, ascending in v*. Throws when the scan finds no root or
/// every root fails the curvature test or yields a negative price.
std::vector<BaselineEquilibrium> solve_state0(const MarketParameters& params,
                                              const FunctionFamily& family,
                                              const BaselineOptions& opts = {});

/// Convenience for the common single-root case: root `index` of
/// solve_state0 (ascending order), default the smallest volume.
BaselineEquilibrium solve_state0_unique(const MarketParameters& params,
                                        const FunctionFamily& family,
                                        const BaselineOptions& opts = {},
                                        std::size_t index = 0);

} // namespace p2pmarket
