#include "p2pmarket/cooperation.hpp"

#include <cmath>
#include <string>

namespace p2pmarket {

DiscountPair::DiscountPair(double gamma_isp_, double gamma_pcp_)
    : gamma_isp(gamma_isp_), gamma_pcp(gamma_pcp_) {
    if (!(gamma_isp >= 0.0) || !(gamma_isp <= 1.0) || !(gamma_pcp >= 0.0) ||
        !(gamma_pcp <= 1.0))
        throw Error(ErrorCode::invalid_argument,
                    "discount rates must lie in [0, 1]");
}

double user_utility_s3(const P2PContext& ctx, const DiscountPair& discounts,
                       double v_p2p) {
    if (!(v_p2p >= 0.0) || v_p2p > ctx.cap)
        throw Error(ErrorCode::invalid_argument, "v_p2p outside [0, cap]");
    double v = v_p2p + ctx.v_cs;
    double u = accelerated_experience(ctx.family, v, ctx.v_cs, ctx.a) -
               (v_p2p * discounts.gamma_pcp + ctx.v_cs) * ctx.baseline.p_s -
               ctx.baseline.tau;
    if (v_p2p > ctx.v_tilde)
        u -= (v_p2p - ctx.v_tilde) * (2.0 - ctx.profile.beta) *
             (ctx.baseline.p_b / ctx.params.xi_user) * discounts.gamma_isp;
    return u;
}

GroupProfit group_profit(const P2PContext& ctx, const DiscountPair& discounts,
                         const MaximizeOptions& opts) {
    std::vector<double> kinks;
    if (ctx.v_tilde > 0.0 && ctx.v_tilde < ctx.cap)
        kinks.push_back(ctx.v_tilde);
    PiecewiseObjective obj(
        [&](double x) { return user_utility_s3(ctx, discounts, x); }, 0.0,
        ctx.cap, kinks);
    auto [v_p2p, u_user] = maximize_piecewise(obj, opts);

    double v = v_p2p + ctx.v_cs;
    double bandwidth_bill = (v_p2p * ctx.profile.beta + ctx.v_cs) /
                            ctx.params.xi_cp * ctx.baseline.p_b;

    GroupProfit result;
    result.v_p2p = v_p2p;
    result.u_user = u_user;
    result.u_isp_pre =
        ctx.baseline.tau + bandwidth_bill - ctx.family.isp_cost(v);
    if (v_p2p > ctx.v_tilde)
        result.u_isp_pre += (v_p2p - ctx.v_tilde) * (2.0 - ctx.profile.beta) *
                            (ctx.baseline.p_b / ctx.params.xi_user) *
                            discounts.gamma_isp;
    result.u_cp_pre =
        (v_p2p * discounts.gamma_pcp + ctx.v_cs) * ctx.baseline.p_s +
        ctx.family.ad_revenue(v) - bandwidth_bill -
        alleviated_cost(ctx.family, v, ctx.v_cs, ctx.profile.beta);
    result.u_total = result.u_isp_pre + result.u_cp_pre;
    return result;
}

CooperativeOutcome solve_stackelberg(const P2PContext& ctx,
                                     const StackelbergOptions& opts) {
    GridResult best = maximize_grid_2d(
        [&](double gamma_isp, double gamma_pcp) {
            return group_profit(ctx, DiscountPair(gamma_isp, gamma_pcp),
                                opts.inner)
                .u_total;
        },
        opts.coarse_n, opts.refine_levels);

    DiscountPair discounts(best.x, best.y);
    GroupProfit profit = group_profit(ctx, discounts, opts.inner);

    CooperativeOutcome outcome;
    outcome.discounts = discounts;
    outcome.v_p2p_s3 = profit.v_p2p;
    outcome.u_total_s3 = profit.u_total;
    outcome.u_isp_pre = profit.u_isp_pre;
    outcome.u_cp_pre = profit.u_cp_pre;
    outcome.u_user_s3 = profit.u_user;
    return outcome;
}

std::pair<double, double> nash_bargaining_split(
    double u_total, const std::pair<double, double>& start) {
    double surplus = u_total - start.first - start.second;
    if (surplus < 0.0 && surplus >= -1e-9 * std::max(1.0, std::abs(u_total)))
        surplus = 0.0;  // rounding slack for the break-even case
    if (surplus < 0.0)
        throw Error(ErrorCode::negative_surplus,
                    "bargaining surplus is negative (" +
                        std::to_string(surplus) + "); cooperation is not "
                        "beneficial from this starting point");
    return {start.first + 0.5 * surplus, start.second + 0.5 * surplus};
}

double transfer(const std::pair<double, double>& pre,
                const std::pair<double, double>& post) {
    double sum_pre = pre.first + pre.second;
    double sum_post = post.first + post.second;
    double tol = 1e-6 * std::max(1.0, std::abs(sum_pre));
    if (std::abs(sum_pre - sum_post) > tol)
        throw Error(ErrorCode::inconsistent_pairs,
                    "profit pairs sum to different totals (" +
                        std::to_string(sum_pre) + " vs " +
                        std::to_string(sum_post) + ")");
    return post.first - pre.first;
}

CooperativeOutcome bargain(const P2PContext& ctx,
                           const std::pair<double, double>& starting_point,
                           const StackelbergOptions& opts) {
    CooperativeOutcome outcome = solve_stackelberg(ctx, opts);
    outcome.starting_point = starting_point;
    auto split = nash_bargaining_split(outcome.u_total_s3, starting_point);
    outcome.u_isp_s3 = split.first;
    outcome.u_cp_s3 = split.second;
    outcome.transfer_r = transfer({outcome.u_isp_pre, outcome.u_cp_pre},
                                  {outcome.u_isp_s3, outcome.u_cp_s3});
    return outcome;
}

std::pair<double, double> improvement_percent(const CooperativeOutcome& o) {
    return {100.0 * (o.u_isp_s3 / o.starting_point.first - 1.0),
            100.0 * (o.u_cp_s3 / o.starting_point.second - 1.0)};
}

} // namespace p2pmarket
