#pragma once

#include <string>
#include <vector>

#include "p2pmarket/pipeline.hpp"

namespace p2pmarket {

/// One sweep cell: the three non-cooperative states plus the cooperative
/// chain at a single traffic profile. `error` is set when the cell
/// failed; the sweep carries on.
struct SweepCell {
    double alpha = 0.0, beta = 0.0;
    StateOutcome s1, s2;
    TransitionReport transitions;
    CooperativeOutcome cooperative;
    std::pair<double, double> improvements{0.0, 0.0};
    std::string error;
};

struct SweepResult {
    BaselineEquilibrium baseline;
    std::vector<SweepCell> cells;           // row-major, alpha outer
    std::vector<std::string> files_written;
};

/// Sweep the (alpha, beta) ranges of the scenario and emit one CSV per
/// figure-style table into out_dir: state_utilities.csv,
/// cooperation.csv, improvement.csv and, when sweep.gamma.steps > 0,
/// gamma_surface.csv at the scenario's fixed profile. Cells run on a
/// worker pool; rows are emitted in (alpha, beta) order, so output is
/// byte-identical across runs.
SweepResult run_sweep(const Scenario& scenario, const std::string& out_dir);

} // namespace p2pmarket
