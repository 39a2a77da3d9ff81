#pragma once

#include <optional>
#include <utility>

#include "p2pmarket/states.hpp"

namespace p2pmarket {

enum class CpAction { no_p2p, adopt_p2p };
enum class IspAction { flat, usage_based };

/// Leaf payoffs of the two-level game tree, in (CP, ISP) order as they
/// appear on the tree.
struct LeafPayoffs {
    double u_cp = 0.0;
    double u_isp = 0.0;
};

struct GameTree {
    LeafPayoffs no_p2p;     // CP stays client/server: the baseline state
    LeafPayoffs p2p_flat;   // CP adopts, ISP keeps the flat fee
    LeafPayoffs p2p_usage;  // CP adopts, ISP reprices per volume
};

/// Tree populated from solved state outcomes.
GameTree computed_tree(const StateOutcome& s0, const StateOutcome& s1,
                       const StateOutcome& s2);

struct InductionResult {
    CpAction cp = CpAction::no_p2p;
    std::optional<IspAction> isp;  // empty when the CP never adopts
    LeafPayoffs payoff;
};

/// Backward induction: the ISP picks its pricing at the inner node, the
/// CP anticipates that reply at the root. Ties break toward the status
/// quo (no adoption, flat pricing).
InductionResult backward_induction(const GameTree& tree);

/// True when any leaf of the two trees differs by more than tol; used to
/// surface disagreement between computed payoffs and an independently
/// supplied set.
bool leaves_differ(const GameTree& a, const GameTree& b, double tol = 1e-3);

/// Market-state transition flags and the resulting resting state.
///   t1: the CP gains by adopting P2P.
///   t2: the ISP loses under the flat fee and gains by repricing.
///   t3: repricing pushes the CP below its pre-P2P profit.
/// cycle is raised when all three hold (adopt -> reprice -> abandon).
struct TransitionReport {
    bool t1 = false;
    std::pair<bool, bool> t2{false, false};
    bool t3 = false;
    bool cycle = false;
    StateLabel final_state = StateLabel::S0;
    InductionResult spne;                      // action profile + payoffs
    std::pair<double, double> starting_point;  // (U_ISP, U_CP) of the rest state
};

TransitionReport evaluate_transitions(const StateOutcome& s0,
                                      const StateOutcome& s1,
                                      const StateOutcome& s2);

} // namespace p2pmarket
