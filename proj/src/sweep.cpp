#include "p2pmarket/sweep.hpp"

#include <filesystem>
#include <fstream>

#include "p2pmarket/io.hpp"
#include "p2pmarket/parallel.hpp"

namespace p2pmarket {

namespace {

std::ofstream open_csv(const std::string& dir, const std::string& name,
                       std::vector<std::string>& written) {
    std::filesystem::create_directories(dir);
    std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::scenario, "cannot write " + path);
    written.push_back(path);
    return out;
}

void state_row(std::ofstream& out, const SweepCell& cell,
               const StateOutcome& state) {
    out << format_fixed(cell.alpha) << ',' << format_fixed(cell.beta) << ','
        << to_string(state.label) << ',' << format_fixed(state.utilities.isp)
        << ',' << format_fixed(state.utilities.cp) << ','
        << format_fixed(state.utilities.user) << ','
        << format_fixed(state.v_p2p) << ',' << cell.error << '\n';
}

} // namespace

SweepResult run_sweep(const Scenario& scenario, const std::string& out_dir) {
    SweepResult result;
    FunctionFamily family =
        FunctionFamily::reference(scenario.market.b_isp, scenario.family_params);
    result.baseline =
        solve_state0_unique(scenario.market, family, scenario.baseline,
                            scenario.root_index);

    std::vector<double> alphas = scenario.alpha_range.values();
    std::vector<double> betas = scenario.beta_range.values();
    result.cells.resize(alphas.size() * betas.size());

    parallel_for_index(result.cells.size(), [&](std::size_t i) {
        SweepCell& cell = result.cells[i];
        cell.alpha = alphas[i / betas.size()];
        cell.beta = betas[i % betas.size()];
        try {
            TrafficProfile profile(cell.alpha, cell.beta);
            P2PContext ctx(scenario.market, family, result.baseline, profile,
                           scenario.accel);
            StateOutcome s0 = baseline_outcome(result.baseline);
            cell.s1 = solve_state1(ctx, scenario.line_search);
            cell.s2 = solve_state2(ctx, scenario.line_search);
            cell.transitions = evaluate_transitions(s0, cell.s1, cell.s2);
            auto start = scenario.starting_point_override.value_or(
                cell.transitions.starting_point);
            cell.cooperative = bargain(ctx, start, scenario.sweep_stackelberg);
            cell.improvements = improvement_percent(cell.cooperative);
        } catch (const Error& e) {
            cell.error = e.what();
        }
    });

    auto states = open_csv(out_dir, "state_utilities.csv", result.files_written);
    states << "alpha,beta,state,u_isp,u_cp,u_user,v_p2p,error\n";
    auto coop = open_csv(out_dir, "cooperation.csv", result.files_written);
    coop << "alpha,beta,gamma_isp,gamma_pcp,v_p2p_s3,u_total,u_isp_pre,"
            "u_cp_pre,u_isp_s3,u_cp_s3,transfer_r,u_user_s3,error\n";
    auto gains = open_csv(out_dir, "improvement.csv", result.files_written);
    gains << "alpha,beta,isp_gain_pct,cp_gain_pct,error\n";

    StateOutcome s0 = baseline_outcome(result.baseline);
    for (const SweepCell& cell : result.cells) {
        state_row(states, cell, s0);
        state_row(states, cell, cell.s1);
        state_row(states, cell, cell.s2);

        const CooperativeOutcome& c = cell.cooperative;
        coop << format_fixed(cell.alpha) << ',' << format_fixed(cell.beta)
             << ',' << format_fixed(c.discounts.gamma_isp) << ','
             << format_fixed(c.discounts.gamma_pcp) << ','
             << format_fixed(c.v_p2p_s3) << ',' << format_fixed(c.u_total_s3)
             << ',' << format_fixed(c.u_isp_pre) << ','
             << format_fixed(c.u_cp_pre) << ',' << format_fixed(c.u_isp_s3)
             << ',' << format_fixed(c.u_cp_s3) << ','
             << format_fixed(c.transfer_r) << ',' << format_fixed(c.u_user_s3)
             << ',' << cell.error << '\n';

        gains << format_fixed(cell.alpha) << ',' << format_fixed(cell.beta)
              << ',' << format_fixed(cell.improvements.first) << ','
              << format_fixed(cell.improvements.second) << ',' << cell.error
              << '\n';
    }

    if (scenario.gamma_surface_steps > 0) {
        int n = scenario.gamma_surface_steps;
        if (n < 2)
            throw Error(ErrorCode::scenario,
                        "sweep.gamma.steps must be at least 2");
        P2PContext ctx(scenario.market, family, result.baseline,
                       scenario.profile, scenario.accel);
        std::size_t nn = static_cast<std::size_t>(n);
        std::vector<double> totals(nn * nn);
        auto lattice = [&](std::size_t i) {
            return std::pair{static_cast<double>(i / nn) / (n - 1),
                             static_cast<double>(i % nn) / (n - 1)};
        };
        parallel_for_index(totals.size(), [&](std::size_t i) {
            auto [gamma_isp, gamma_pcp] = lattice(i);
            totals[i] = group_profit(ctx, DiscountPair(gamma_isp, gamma_pcp),
                                     scenario.line_search)
                            .u_total;
        });
        auto surface =
            open_csv(out_dir, "gamma_surface.csv", result.files_written);
        surface << "gamma_isp,gamma_pcp,u_total\n";
        for (std::size_t i = 0; i < totals.size(); ++i) {
            auto [gamma_isp, gamma_pcp] = lattice(i);
            surface << format_fixed(gamma_isp) << ',' << format_fixed(gamma_pcp)
                    << ',' << format_fixed(totals[i]) << '\n';
        }
    }
    return result;
}

} // namespace p2pmarket
