#include "p2pmarket/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace p2pmarket {

std::vector<double> SweepRange::values() const {
    std::vector<double> out;
    if (steps <= 1) {
        out.push_back(min);
        return out;
    }
    for (int i = 0; i < steps; ++i)
        out.push_back(min + (max - min) * i / (steps - 1));
    return out;
}

namespace {

[[noreturn]] void fail(const std::string& message) {
    throw Error(ErrorCode::scenario, message);
}

std::string trim(const std::string& s) {
    std::size_t first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    std::size_t last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double x = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        fail(key + ": not a number: '" + value + "'");
    }
}

int to_int(const std::string& key, const std::string& value) {
    double x = to_double(key, value);
    int i = static_cast<int>(x);
    if (i != x)
        fail(key + ": not an integer: '" + value + "'");
    return i;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    fail(key + ": not a boolean: '" + value + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& value,
                            char sep) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(to_double(key, trim(item)));
    if (out.empty())
        fail(key + ": empty list");
    return out;
}

struct RawScenario {
    std::map<std::string, std::string> entries;
    std::string base_dir;

    bool take(const std::string& key, std::string& out) {
        auto it = entries.find(key);
        if (it == entries.end())
            return false;
        out = it->second;
        entries.erase(it);
        return true;
    }
    void number(const std::string& key, double& out) {
        std::string v;
        if (take(key, v))
            out = to_double(key, v);
    }
    void integer(const std::string& key, int& out) {
        std::string v;
        if (take(key, v))
            out = to_int(key, v);
    }
    void boolean(const std::string& key, bool& out) {
        std::string v;
        if (take(key, v))
            out = to_bool(key, v);
    }
};

void parse_coalition(RawScenario& raw, Scenario& scenario) {
    std::string value;
    bool mentioned = false;
    for (const auto& [key, ignored] : raw.entries)
        if (key.rfind("coalition.", 0) == 0)
            mentioned = true;
    if (!mentioned)
        return;

    CoalitionConfig cfg;
    int isp_count = 0, pcp_count = 0;
    raw.integer("coalition.isp_count", isp_count);
    raw.integer("coalition.pcp_count", pcp_count);
    if (isp_count <= 0 || pcp_count <= 0)
        fail("coalition section requires positive isp_count and pcp_count");
    cfg.isp_count = static_cast<std::size_t>(isp_count);
    cfg.pcp_count = static_cast<std::size_t>(pcp_count);

    for (std::size_t i = 1; i <= cfg.pcp_count; ++i) {
        std::string key = "coalition.pcp." + std::to_string(i) + ".matrix";
        if (raw.take(key, value)) {
            std::filesystem::path p(value);
            if (p.is_relative())
                p = std::filesystem::path(raw.base_dir) / p;
            cfg.matrix_paths.push_back(p.string());
        }
    }
    if (!cfg.matrix_paths.empty() && cfg.matrix_paths.size() != cfg.pcp_count)
        fail("coalition: either no matrices or one per PCP");

    if (raw.take("coalition.ratio", value))
        cfg.side_ratio = to_list("coalition.ratio", value, ':');
    else
        cfg.side_ratio = {2.0, 3.0, 5.0};
    if (cfg.side_ratio.size() != cfg.isp_count)
        fail("coalition.ratio length must equal isp_count");

    bool any_side = false, all_sides = true;
    std::vector<IspUserSide> sides(cfg.isp_count);
    for (std::size_t l = 1; l <= cfg.isp_count; ++l) {
        std::string b_key = "coalition.isp." + std::to_string(l) + ".b";
        std::string v_key = "coalition.isp." + std::to_string(l) + ".v_cs";
        std::string b_value, v_value;
        bool has_b = raw.take(b_key, b_value);
        bool has_v = raw.take(v_key, v_value);
        if (has_b != has_v)
            fail("coalition: ISP " + std::to_string(l) +
                 " needs both .b and .v_cs or neither");
        if (has_b) {
            any_side = true;
            sides[l - 1] = {to_double(b_key, b_value), to_double(v_key, v_value)};
        } else {
            all_sides = false;
        }
    }
    if (any_side) {
        if (!all_sides)
            fail("coalition: explicit ISP sides must cover every ISP");
        cfg.explicit_sides = std::move(sides);
    }

    if (raw.take("coalition.synthesize.user_counts", value))
        cfg.synth_user_counts =
            to_list("coalition.synthesize.user_counts", value, ':');
    if (raw.take("coalition.synthesize.sigma", value))
        cfg.synth_per_user_usage =
            to_list("coalition.synthesize.sigma", value, ',');
    if (cfg.synth_user_counts.empty() != cfg.synth_per_user_usage.empty())
        fail("coalition.synthesize needs both user_counts and sigma");
    if (!cfg.synth_user_counts.empty()) {
        if (cfg.synth_user_counts.size() != cfg.isp_count)
            fail("coalition.synthesize.user_counts length must equal isp_count");
        if (cfg.synth_per_user_usage.size() != cfg.pcp_count)
            fail("coalition.synthesize.sigma length must equal pcp_count");
    }
    if (cfg.matrix_paths.empty() && cfg.synth_user_counts.empty())
        fail("coalition section needs matrices or synthesis inputs");
    if (!cfg.matrix_paths.empty() && !cfg.synth_user_counts.empty())
        fail("coalition: give matrices or synthesis inputs, not both");

    if (raw.take("coalition.v_p2p", value))
        cfg.v_p2p_override = to_double("coalition.v_p2p", value);

    scenario.coalition = std::move(cfg);
}

} // namespace

Scenario parse_scenario(const std::string& text, const std::string& base_dir) {
    RawScenario raw;
    raw.base_dir = base_dir;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#')
            continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            fail("line " + std::to_string(line_no) + ": expected key=value");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            fail("line " + std::to_string(line_no) + ": empty key");
        if (!raw.entries.emplace(key, value).second)
            fail("duplicate key: " + key);
    }

    Scenario scenario;
    double xi_cp = 0.75, xi_user = 0.25, b_isp = 100.0;
    raw.number("market.xi_cp", xi_cp);
    raw.number("market.xi_user", xi_user);
    raw.number("market.b_isp", b_isp);
    try {
        scenario.market = MarketParameters(xi_cp, xi_user, b_isp);
    } catch (const Error& e) {
        fail(std::string("market: ") + e.what());
    }

    std::string value;
    if (raw.take("family.preset", value) && value != "reference")
        fail("family.preset: unknown preset '" + value + "'");
    raw.number("family.k1", scenario.family_params.k1);
    raw.number("family.k2", scenario.family_params.k2);
    raw.number("family.k3", scenario.family_params.k3);
    raw.number("family.k4", scenario.family_params.k4);
    raw.number("family.k5", scenario.family_params.k5);

    raw.number("accel.beta0", scenario.accel.beta0);
    raw.number("accel.a0", scenario.accel.a0);
    raw.number("accel.beta1", scenario.accel.beta1);
    raw.number("accel.a1", scenario.accel.a1);

    double alpha = 0.6, beta = 0.3;
    raw.number("profile.alpha", alpha);
    raw.number("profile.beta", beta);
    try {
        scenario.profile = TrafficProfile(alpha, beta);
    } catch (const Error& e) {
        fail(std::string("profile: ") + e.what());
    }

    raw.integer("solver.root_scan_points", scenario.baseline.scan_points);
    raw.number("solver.root_tol", scenario.baseline.root_tol);
    raw.number("solver.line_tol", scenario.line_search.x_tol);
    raw.integer("solver.scan_points", scenario.line_search.scan_points);
    raw.integer("solver.grid_coarse_n", scenario.stackelberg.coarse_n);
    raw.integer("solver.grid_refine_levels", scenario.stackelberg.refine_levels);
    raw.integer("solver.sweep_coarse_n", scenario.sweep_stackelberg.coarse_n);
    raw.integer("solver.sweep_refine_levels",
                scenario.sweep_stackelberg.refine_levels);
    int root_index = 0;
    raw.integer("solver.root_index", root_index);
    if (root_index < 0)
        fail("solver.root_index must be nonnegative");
    scenario.root_index = static_cast<std::size_t>(root_index);
    scenario.stackelberg.inner = scenario.line_search;
    scenario.sweep_stackelberg.inner = scenario.line_search;

    if (raw.take("cooperation.starting_point", value) && value != "auto") {
        auto pair = to_list("cooperation.starting_point", value, ',');
        if (pair.size() != 2)
            fail("cooperation.starting_point: expected 'auto' or 'isp,cp'");
        scenario.starting_point_override = {pair[0], pair[1]};
    }

    raw.number("sweep.alpha.min", scenario.alpha_range.min);
    raw.number("sweep.alpha.max", scenario.alpha_range.max);
    raw.integer("sweep.alpha.steps", scenario.alpha_range.steps);
    raw.number("sweep.beta.min", scenario.beta_range.min);
    raw.number("sweep.beta.max", scenario.beta_range.max);
    raw.integer("sweep.beta.steps", scenario.beta_range.steps);
    raw.integer("sweep.gamma.steps", scenario.gamma_surface_steps);
    if (scenario.alpha_range.steps < 1 || scenario.beta_range.steps < 1)
        fail("sweep steps must be at least 1");

    parse_coalition(raw, scenario);

    raw.boolean("strict", scenario.strict);
    raw.take("output.dir", scenario.output_dir);

    if (!raw.entries.empty())
        fail("unknown key: " + raw.entries.begin()->first);
    return scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail("cannot open scenario file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string dir = std::filesystem::path(path).parent_path().string();
    if (dir.empty())
        dir = ".";
    return parse_scenario(buffer.str(), dir);
}

} // namespace p2pmarket
