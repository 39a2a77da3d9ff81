#include "p2pmarket/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "p2pmarket/io.hpp"

namespace p2pmarket {

namespace {

[[noreturn]] void rethrow_staged(const char* stage, const Error& e) {
    throw Error(e.code(), std::string(stage) + ": " + e.what());
}

void run_coalition(const Scenario& scenario, PipelineReport& report) {
    const CoalitionConfig& cfg = *scenario.coalition;

    std::vector<PcpTraffic> traffic;
    if (!cfg.matrix_paths.empty()) {
        for (const auto& path : cfg.matrix_paths)
            traffic.push_back(read_traffic_csv(path));
        for (const auto& t : traffic)
            if (t.isp_count() != cfg.isp_count)
                throw Error(ErrorCode::dimension_mismatch,
                            "traffic matrix ISP count disagrees with "
                            "coalition.isp_count");
    } else {
        traffic = synthesize_uniform_traffic(cfg.synth_user_counts,
                                             cfg.synth_per_user_usage,
                                             scenario.profile.beta);
    }

    double v_p2p = cfg.v_p2p_override.value_or(report.cooperative.v_p2p_s3);
    report.coalition_v_p2p = v_p2p;

    WeightResult phi = pcp_weights(traffic, v_p2p);
    PcpTraffic agg = aggregate(traffic);
    report.isp_volumes.clear();
    for (std::size_t l = 0; l < cfg.isp_count; ++l)
        report.isp_volumes.push_back(isp_p2p_volume(agg, l));

    std::vector<IspUserSide> sides =
        !cfg.explicit_sides.empty()
            ? cfg.explicit_sides
            : proportional_sides(cfg.side_ratio, report.baseline.b_user,
                                 report.baseline.v_star *
                                     (1.0 - scenario.profile.alpha));

    WeightResult psi =
        isp_weights(report.isp_volumes, sides, scenario.market,
                    scenario.profile, v_p2p, report.baseline.v_star);

    std::vector<std::string> warnings = phi.warnings;
    warnings.insert(warnings.end(), psi.warnings.begin(), psi.warnings.end());
    if (scenario.strict && !warnings.empty())
        throw Error(ErrorCode::traffic_mismatch, warnings.front());

    CoalitionLedger ledger =
        distribute(report.cooperative.transfer_r, phi.weights, psi.weights);
    ledger.warnings = std::move(warnings);
    report.ledger = std::move(ledger);
}

} // namespace

PipelineReport run_pipeline(const Scenario& scenario) {
    PipelineReport report;
    FunctionFamily family =
        FunctionFamily::reference(scenario.market.b_isp, scenario.family_params);

    try {
        auto roots = solve_state0(scenario.market, family, scenario.baseline);
        report.root_count = roots.size();
        if (scenario.root_index >= roots.size())
            throw Error(ErrorCode::invalid_argument,
                        "root index out of range (" +
                            std::to_string(roots.size()) + " roots)");
        report.baseline = roots[scenario.root_index];
        if (roots.size() > 1)
            report.notes.push_back(
                "multiple equilibria pass the curvature test (" +
                std::to_string(roots.size()) + "); using root " +
                std::to_string(scenario.root_index));
    } catch (const Error& e) {
        rethrow_staged("state0", e);
    }

    P2PContext ctx(scenario.market, family, report.baseline, scenario.profile,
                   scenario.accel);
    try {
        report.s0 = baseline_outcome(report.baseline);
        report.s1 = solve_state1(ctx, scenario.line_search);
        report.s2 = solve_state2(ctx, scenario.line_search);
    } catch (const Error& e) {
        rethrow_staged("states", e);
    }

    try {
        report.transitions = evaluate_transitions(report.s0, report.s1, report.s2);
        if (report.transitions.cycle)
            report.notes.push_back(
                "transition conditions cycle (adopt -> reprice -> abandon); "
                "resting at the baseline state");
    } catch (const Error& e) {
        rethrow_staged("spne", e);
    }

    try {
        std::pair<double, double> start =
            scenario.starting_point_override.value_or(
                report.transitions.starting_point);
        if (scenario.starting_point_override)
            report.notes.push_back(
                "bargaining from supplied starting point instead of the "
                "computed " + to_string(report.transitions.final_state) +
                " utilities");
        report.cooperative = bargain(ctx, start, scenario.stackelberg);
        report.improvements = improvement_percent(report.cooperative);
    } catch (const Error& e) {
        rethrow_staged("cooperation", e);
    }

    if (scenario.coalition) {
        try {
            run_coalition(scenario, report);
        } catch (const Error& e) {
            rethrow_staged("split", e);
        }
    }
    return report;
}

namespace {

std::string utilities_line(const UtilityTriple& u) {
    return "U_isp=" + format_fixed(u.isp, 4) + "  U_cp=" + format_fixed(u.cp, 4) +
           "  U_user=" + format_fixed(u.user, 4);
}

} // namespace

std::string format_report(const PipelineReport& r) {
    std::ostringstream out;
    out << "baseline (state 0)\n"
        << "  v*=" << format_fixed(r.baseline.v_star, 4)
        << "  p_b=" << format_fixed(r.baseline.p_b, 4)
        << "  p_s=" << format_fixed(r.baseline.p_s, 4)
        << "  tau=" << format_fixed(r.baseline.tau, 4) << "\n"
        << "  " << utilities_line(r.s0.utilities) << "\n";
    out << "state 1 (flat fee kept)\n"
        << "  v_p2p=" << format_fixed(r.s1.v_p2p, 4) << "  "
        << utilities_line(r.s1.utilities) << "\n";
    out << "state 2 (volume-based)\n"
        << "  v_p2p=" << format_fixed(r.s2.v_p2p, 4) << "  "
        << utilities_line(r.s2.utilities) << "\n";

    const TransitionReport& t = r.transitions;
    out << "transitions\n"
        << "  T1=" << (t.t1 ? "yes" : "no")
        << "  T2=" << (t.t2.first && t.t2.second ? "yes" : "no")
        << "  T3=" << (t.t3 ? "yes" : "no")
        << (t.cycle ? "  (cycle)" : "") << "\n"
        << "  final state " << to_string(t.final_state) << ", SPNE ";
    if (t.spne.cp == CpAction::no_p2p)
        out << "(no-P2P, -)";
    else
        out << "(P2P, "
            << (*t.spne.isp == IspAction::flat ? "flat" : "usage-based") << ")";
    out << ", payoffs (U_cp, U_isp) = (" << format_fixed(t.spne.payoff.u_cp, 4)
        << ", " << format_fixed(t.spne.payoff.u_isp, 4) << ")\n";

    const CooperativeOutcome& c = r.cooperative;
    out << "cooperation (state 3)\n"
        << "  gamma_isp=" << format_fixed(c.discounts.gamma_isp, 4)
        << "  gamma_pcp=" << format_fixed(c.discounts.gamma_pcp, 4)
        << "  v_p2p=" << format_fixed(c.v_p2p_s3, 4) << "\n"
        << "  U_total=" << format_fixed(c.u_total_s3, 4)
        << "  U_user=" << format_fixed(c.u_user_s3, 4)
        << "  pre-transfer (" << format_fixed(c.u_isp_pre, 4) << ", "
        << format_fixed(c.u_cp_pre, 4) << ")\n"
        << "  starting point (" << format_fixed(c.starting_point.first, 4)
        << ", " << format_fixed(c.starting_point.second, 4) << ")\n"
        << "  bargained split (" << format_fixed(c.u_isp_s3, 4) << ", "
        << format_fixed(c.u_cp_s3, 4) << ")  transfer R="
        << format_fixed(c.transfer_r, 4) << "\n"
        << "  gains: ISP +" << format_fixed(r.improvements.first, 2)
        << "%  CP +" << format_fixed(r.improvements.second, 2) << "%\n";

    if (r.ledger) {
        out << "coalition split (v_p2p=" << format_fixed(r.coalition_v_p2p, 4)
            << ")\n";
        for (std::size_t i = 0; i < r.ledger->phi.size(); ++i)
            out << "  pcp_" << (i + 1) << "  phi="
                << format_fixed(r.ledger->phi[i], 4) << "  pays "
                << format_fixed(r.ledger->pcp_payments[i], 4) << "\n";
        for (std::size_t l = 0; l < r.ledger->psi.size(); ++l)
            out << "  isp_" << (l + 1) << "  psi="
                << format_fixed(r.ledger->psi[l], 4) << "  receives "
                << format_fixed(r.ledger->isp_receipts[l], 4) << "\n";
        for (const auto& w : r.ledger->warnings)
            out << "  warning: " << w << "\n";
    }
    for (const auto& note : r.notes)
        out << "note: " << note << "\n";
    return out.str();
}

} // namespace p2pmarket
