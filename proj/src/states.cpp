#include "p2pmarket/states.hpp"

#include <cmath>

namespace p2pmarket {

std::string to_string(StateLabel label) {
    switch (label) {
        case StateLabel::S0: return "S0";
        case StateLabel::S1: return "S1";
        case StateLabel::S2: return "S2";
        case StateLabel::S3: return "S3";
    }
    return "?";
}

P2PContext::P2PContext(const MarketParameters& params_,
                       const FunctionFamily& family_,
                       const BaselineEquilibrium& baseline_,
                       const TrafficProfile& profile_,
                       const AccelerationModel& accel)
    : params(params_), family(family_), baseline(baseline_), profile(profile_),
      v_cs(baseline_.v_star * (1.0 - profile_.alpha)),
      a(acceleration_factor(profile_, accel)),
      v_tilde((baseline_.b_user * params_.xi_cp - v_cs) /
              (2.0 - profile_.beta)),
      cap(profile_.alpha == 0.0
              ? 0.0
              : params_.b_isp * (1.0 - 1e-6) - v_cs) {
    if (!(v_tilde > 0.0))
        throw Error(ErrorCode::invalid_argument,
                    "flat-rate peer threshold must be positive");
    if (cap < 0.0)
        throw Error(ErrorCode::capacity_exceeded,
                    "background volume alone exceeds capacity");
}

StateOutcome baseline_outcome(const BaselineEquilibrium& baseline) {
    return {StateLabel::S0, 0.0, baseline.v_star, baseline.utilities};
}

namespace {

void check_peer_volume(const P2PContext& ctx, double v_p2p) {
    if (!(v_p2p >= 0.0) || v_p2p > ctx.cap)
        throw Error(ErrorCode::invalid_argument,
                    "v_p2p outside [0, cap]");
}

double overage_price(const P2PContext& ctx) {
    return (2.0 - ctx.profile.beta) * ctx.baseline.p_b / ctx.params.xi_user;
}

// Bandwidth the CP still buys: servers feed beta of the peer volume.
double cp_bandwidth_bill(const P2PContext& ctx, double v_p2p) {
    return (v_p2p * ctx.profile.beta + ctx.v_cs) / ctx.params.xi_cp *
           ctx.baseline.p_b;
}

} // namespace

double user_utility_s1(const P2PContext& ctx, double v_p2p) {
    check_peer_volume(ctx, v_p2p);
    double v = v_p2p + ctx.v_cs;
    double u = accelerated_experience(ctx.family, v, ctx.v_cs, ctx.a) -
               v * ctx.baseline.p_s - ctx.baseline.tau;
    if (v_p2p > ctx.v_tilde)
        u -= (v_p2p - ctx.v_tilde) * overage_price(ctx);
    return u;
}

double user_utility_s2(const P2PContext& ctx, double v_p2p) {
    check_peer_volume(ctx, v_p2p);
    double v = v_p2p + ctx.v_cs;
    return accelerated_experience(ctx.family, v, ctx.v_cs, ctx.a) -
           v * ctx.baseline.p_s -
           (v_p2p * (2.0 - ctx.profile.beta) + ctx.v_cs) * ctx.baseline.p_b /
               ctx.params.xi_user;
}

double cp_utility_p2p(const P2PContext& ctx, double v_p2p) {
    double v = v_p2p + ctx.v_cs;
    return v * ctx.baseline.p_s + ctx.family.ad_revenue(v) -
           cp_bandwidth_bill(ctx, v_p2p) -
           alleviated_cost(ctx.family, v, ctx.v_cs, ctx.profile.beta);
}

StateOutcome solve_state1(const P2PContext& ctx, const MaximizeOptions& opts) {
    std::vector<double> kinks;
    if (ctx.v_tilde > 0.0 && ctx.v_tilde < ctx.cap)
        kinks.push_back(ctx.v_tilde);
    PiecewiseObjective obj([&](double x) { return user_utility_s1(ctx, x); },
                           0.0, ctx.cap, kinks);
    auto [v_p2p, ignored] = maximize_piecewise(obj, opts);
    (void)ignored;

    StateOutcome out;
    out.label = StateLabel::S1;
    out.v_p2p = v_p2p;
    out.v_total = v_p2p + ctx.v_cs;
    out.utilities.user = user_utility_s1(ctx, v_p2p);
    out.utilities.cp = cp_utility_p2p(ctx, v_p2p);
    out.utilities.isp = ctx.baseline.tau + cp_bandwidth_bill(ctx, v_p2p) -
                        ctx.family.isp_cost(out.v_total);
    if (v_p2p > ctx.v_tilde)
        out.utilities.isp += (v_p2p - ctx.v_tilde) * overage_price(ctx);
    return out;
}

StateOutcome solve_state2(const P2PContext& ctx, const MaximizeOptions& opts) {
    PiecewiseObjective obj([&](double x) { return user_utility_s2(ctx, x); },
                           0.0, ctx.cap);
    auto [v_p2p, ignored] = maximize_piecewise(obj, opts);
    (void)ignored;

    StateOutcome out;
    out.label = StateLabel::S2;
    out.v_p2p = v_p2p;
    out.v_total = v_p2p + ctx.v_cs;
    out.utilities.user = user_utility_s2(ctx, v_p2p);
    out.utilities.cp = cp_utility_p2p(ctx, v_p2p);
    out.utilities.isp =
        (v_p2p * (2.0 - ctx.profile.beta) + ctx.v_cs) * ctx.baseline.p_b /
            ctx.params.xi_user +
        cp_bandwidth_bill(ctx, v_p2p) - ctx.family.isp_cost(out.v_total);
    return out;
}

} // namespace p2pmarket
