#pragma once

#include <string>

#include "p2pmarket/baseline.hpp"
#include "p2pmarket/calculus.hpp"
#include "p2pmarket/market.hpp"

namespace p2pmarket {

enum class StateLabel { S0, S1, S2, S3 };

std::string to_string(StateLabel label);

/// Shared context of the peer-assisted states: the baseline equilibrium
/// the prices are frozen at, the traffic profile, and derived volumes.
///
/// v_tilde is the peer volume at which the user's flat allotment runs
/// out: beyond it every extra unit is billed as overage. cap keeps the
/// total volume strictly inside the ISP capacity; a profile with
/// alpha == 0 has no peer-assisted content at all, so cap == 0 and the
/// P2P states collapse onto the baseline.
struct P2PContext {
    MarketParameters params;
    FunctionFamily family;
    BaselineEquilibrium baseline;
    TrafficProfile profile;
    double v_cs;     // background client/server volume, v* (1 - alpha)
    double a;        // experience acceleration factor
    double v_tilde;  // flat-rate peer volume threshold
    double cap;      // largest admissible v_p2p

    P2PContext(const MarketParameters& params_, const FunctionFamily& family_,
               const BaselineEquilibrium& baseline_,
               const TrafficProfile& profile_,
               const AccelerationModel& accel = {});
};

/// One market state: the peer volume chosen by the users and the
/// resulting utilities.
struct StateOutcome {
    StateLabel label = StateLabel::S0;
    double v_p2p = 0.0;
    double v_total = 0.0;
    UtilityTriple utilities;
};

/// The baseline wrapped as a zero-P2P state outcome.
StateOutcome baseline_outcome(const BaselineEquilibrium& baseline);

/// User utility under the kept flat fee: overage billed only beyond
/// v_tilde, so the map is continuous with a kink there.
double user_utility_s1(const P2PContext& ctx, double v_p2p);

/// User utility when the ISP bills every unit of user-side volume.
double user_utility_s2(const P2PContext& ctx, double v_p2p);

StateOutcome solve_state1(const P2PContext& ctx, const MaximizeOptions& opts = {});
StateOutcome solve_state2(const P2PContext& ctx, const MaximizeOptions& opts = {});

/// CP utility shared by both P2P states: content revenue plus ad revenue
/// minus the reduced bandwidth bill and the peer-alleviated cost.
double cp_utility_p2p(const P2PContext& ctx, double v_p2p);

} // namespace p2pmarket
