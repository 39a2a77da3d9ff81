#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "p2pmarket/baseline.hpp"
#include "p2pmarket/calculus.hpp"
#include "p2pmarket/coalition.hpp"
#include "p2pmarket/cooperation.hpp"
#include "p2pmarket/market.hpp"

namespace p2pmarket {

struct SweepRange {
    double min = 0.0, max = 0.0;
    int steps = 1; // number of grid points, >= 1

    std::vector<double> values() const;
};

/// One member of the optional coalition section. A member either points
/// at a measured traffic matrix file or is synthesized.
struct CoalitionConfig {
    std::size_t isp_count = 0;
    std::size_t pcp_count = 0;
    std::vector<std::string> matrix_paths;      // per PCP, resolved
    std::vector<double> side_ratio;             // b_l / v_cs split, default 2:3:5
    std::vector<IspUserSide> explicit_sides;    // overrides the ratio if set
    std::vector<double> synth_user_counts;      // uniform synthesis inputs
    std::vector<double> synth_per_user_usage;
    std::optional<double> v_p2p_override;       // denominator for the weights
};

/// Everything a run needs, parsed from a flat key=value file with dotted
/// section prefixes. Unknown keys are rejected.
struct Scenario {
    MarketParameters market{0.75, 0.25, 100.0};
    ReferenceParams family_params;
    AccelerationModel accel;
    TrafficProfile profile{0.6, 0.3};

    BaselineOptions baseline;
    MaximizeOptions line_search;
    StackelbergOptions stackelberg;      // single cooperative solve
    StackelbergOptions sweep_stackelberg{51, 3, {}};  // per sweep cell
    std::size_t root_index = 0;

    std::optional<std::pair<double, double>> starting_point_override;

    SweepRange alpha_range{0.3, 0.9, 20};
    SweepRange beta_range{0.05, 0.5, 20};
    int gamma_surface_steps = 0;         // 0 disables the surface sweep

    std::optional<CoalitionConfig> coalition;
    bool strict = false;
    std::string output_dir = ".";
};

/// Parse a scenario file; matrix paths resolve relative to it.
Scenario load_scenario(const std::string& path);

/// Parse from key=value lines (used by tests); `base_dir` anchors paths.
Scenario parse_scenario(const std::string& text, const std::string& base_dir = ".");

} // namespace p2pmarket
