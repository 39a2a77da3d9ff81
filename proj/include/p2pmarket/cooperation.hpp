#pragma once

#include <utility>

#include "p2pmarket/spne.hpp"
#include "p2pmarket/states.hpp"

namespace p2pmarket {

/// Discount rates the coalitions offer to grow peer traffic: the ISP
/// discounts overage bandwidth, the PCP discounts content.
struct DiscountPair {
    double gamma_isp = 1.0;
    double gamma_pcp = 1.0;

    DiscountPair() = default;
    DiscountPair(double gamma_isp_, double gamma_pcp_);
};

/// User's best response and the coalition profits at fixed discounts.
struct GroupProfit {
    double u_total = 0.0;
    double v_p2p = 0.0;     // user's utility-maximizing peer volume
    double u_isp_pre = 0.0; // ISP coalition profit before any transfer
    double u_cp_pre = 0.0;  // PCP coalition profit before any transfer
    double u_user = 0.0;
};

/// Cooperative solution: optimal discounts, the pre-transfer split, and
/// (once bargained) the fair split plus the settling transfer.
struct CooperativeOutcome {
    DiscountPair discounts;
    double v_p2p_s3 = 0.0;
    double u_total_s3 = 0.0;
    double u_isp_pre = 0.0;
    double u_cp_pre = 0.0;
    double u_user_s3 = 0.0;
    std::pair<double, double> starting_point{0.0, 0.0}; // (U_ISP, U_CP)
    double u_isp_s3 = 0.0;
    double u_cp_s3 = 0.0;
    double transfer_r = 0.0;
};

struct StackelbergOptions {
    int coarse_n = 101;
    int refine_levels = 4;
    MaximizeOptions inner;
};

/// User utility under cooperative discounts; reduces to the State-1
/// utility at discounts (1, 1) and drops the overage term entirely at
/// gamma_isp == 0.
double user_utility_s3(const P2PContext& ctx, const DiscountPair& discounts,
                       double v_p2p);

/// Inner best response of the users followed by the coalition profits.
GroupProfit group_profit(const P2PContext& ctx, const DiscountPair& discounts,
                         const MaximizeOptions& opts = {});

/// Leader's problem: grid-with-refinement search of the total profit
/// over the discount square. NBS fields are left for bargain().
CooperativeOutcome solve_stackelberg(const P2PContext& ctx,
                                     const StackelbergOptions& opts = {});

/// Equal split of the bargaining surplus on the Pareto line: each side
/// keeps its starting value plus half of (u_total - start_isp - start_cp).
/// Throws on a negative surplus (cooperation is not beneficial).
std::pair<double, double> nash_bargaining_split(
    double u_total, const std::pair<double, double>& start);

/// Settling payment from the PCP coalition to the ISP coalition. The two
/// defining differences must agree; both pairs must sum to the same
/// total within 1e-6.
double transfer(const std::pair<double, double>& pre,
                const std::pair<double, double>& post);

/// Full cooperative chain: Stackelberg optimum, NBS split against the
/// given starting point, and the implied transfer.
CooperativeOutcome bargain(const P2PContext& ctx,
                           const std::pair<double, double>& starting_point,
                           const StackelbergOptions& opts = {});

/// Percentage gains of the bargained split over the starting point.
std::pair<double, double> improvement_percent(const CooperativeOutcome& outcome);

} // namespace p2pmarket
