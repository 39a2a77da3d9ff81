#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p2pmarket/coalition.hpp"
#include "p2pmarket/cooperation.hpp"
#include "p2pmarket/scenario.hpp"
#include "p2pmarket/spne.hpp"

namespace p2pmarket {

/// Everything one scenario run produces, stage by stage.
struct PipelineReport {
    BaselineEquilibrium baseline;
    std::size_t root_count = 1;
    StateOutcome s0, s1, s2;
    TransitionReport transitions;
    CooperativeOutcome cooperative;
    std::pair<double, double> improvements{0.0, 0.0};  // percent (ISP, CP)

    std::optional<CoalitionLedger> ledger;
    std::vector<double> isp_volumes;  // per-ISP user-side peer volume
    double coalition_v_p2p = 0.0;     // volume the weights were built on

    std::vector<std::string> notes;
};

/// Orchestrates baseline -> P2P states -> SPNE -> cooperation -> NBS ->
/// optional coalition split. Deterministic for fixed scenario values.
/// Errors from any stage are rethrown with the stage name prefixed; in
/// strict mode coalition consistency warnings become errors.
PipelineReport run_pipeline(const Scenario& scenario);

/// Human-readable report, utilities at four decimals.
std::string format_report(const PipelineReport& report);

} // namespace p2pmarket
