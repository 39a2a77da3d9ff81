#include "p2pmarket/spne.hpp"

#include <cmath>

namespace p2pmarket {

GameTree computed_tree(const StateOutcome& s0, const StateOutcome& s1,
                       const StateOutcome& s2) {
    return {{s0.utilities.cp, s0.utilities.isp},
            {s1.utilities.cp, s1.utilities.isp},
            {s2.utilities.cp, s2.utilities.isp}};
}

InductionResult backward_induction(const GameTree& tree) {
    // inner node: the ISP's best reply, tie toward flat pricing
    bool reprice = tree.p2p_usage.u_isp > tree.p2p_flat.u_isp;
    const LeafPayoffs& induced = reprice ? tree.p2p_usage : tree.p2p_flat;

    InductionResult result;
    if (induced.u_cp > tree.no_p2p.u_cp) {
        result.cp = CpAction::adopt_p2p;
        result.isp = reprice ? IspAction::usage_based : IspAction::flat;
        result.payoff = induced;
    } else {
        result.cp = CpAction::no_p2p;
        result.payoff = tree.no_p2p;
    }
    return result;
}

bool leaves_differ(const GameTree& a, const GameTree& b, double tol) {
    auto differ = [tol](const LeafPayoffs& x, const LeafPayoffs& y) {
        return std::abs(x.u_cp - y.u_cp) > tol ||
               std::abs(x.u_isp - y.u_isp) > tol;
    };
    return differ(a.no_p2p, b.no_p2p) || differ(a.p2p_flat, b.p2p_flat) ||
           differ(a.p2p_usage, b.p2p_usage);
}

TransitionReport evaluate_transitions(const StateOutcome& s0,
                                      const StateOutcome& s1,
                                      const StateOutcome& s2) {
    TransitionReport report;
    report.t1 = s1.utilities.cp > s0.utilities.cp;
    report.t2 = {s1.utilities.isp < s0.utilities.isp,
                 s2.utilities.isp > s1.utilities.isp};
    report.t3 = s2.utilities.cp < s0.utilities.cp;

    bool t2 = report.t2.first && report.t2.second;
    if (!report.t1)
        report.final_state = StateLabel::S0;
    else if (!t2)
        report.final_state = StateLabel::S1;
    else if (!report.t3)
        report.final_state = StateLabel::S2;
    else {
        // adopt -> reprice -> abandon chases its own tail; the CP
        // anticipates the repricing and the game rests at the baseline
        report.cycle = true;
        report.final_state = StateLabel::S0;
    }

    report.spne = backward_induction(computed_tree(s0, s1, s2));

    const StateOutcome* rest = &s0;
    if (report.final_state == StateLabel::S1)
        rest = &s1;
    else if (report.final_state == StateLabel::S2)
        rest = &s2;
    report.starting_point = {rest->utilities.isp, rest->utilities.cp};
    return report;
}

} // namespace p2pmarket
