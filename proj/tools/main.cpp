// Command-line front end: scenario in, reports and CSV tables out.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "p2pmarket/io.hpp"
#include "p2pmarket/pipeline.hpp"
#include "p2pmarket/sweep.hpp"

namespace {

constexpr int kExitScenario = 2;
constexpr int kExitSolver = 3;
constexpr int kExitConsistency = 4;

int exit_code_for(const p2pmarket::Error& e) {
    switch (e.code()) {
        case p2pmarket::ErrorCode::scenario:
            return kExitScenario;
        case p2pmarket::ErrorCode::traffic_mismatch:
        case p2pmarket::ErrorCode::background_mismatch:
            return kExitConsistency;
        default:
            return kExitSolver;
    }
}

void write_ledger_csv(const p2pmarket::PipelineReport& report,
                      const std::string& out_dir) {
    if (!report.ledger)
        return;
    std::filesystem::create_directories(out_dir);
    std::string path =
        (std::filesystem::path(out_dir) / "ledger.csv").string();
    std::ofstream out(path);
    if (!out)
        throw p2pmarket::Error(p2pmarket::ErrorCode::scenario,
                               "cannot write " + path);
    out << "member_kind,member_id,weight,amount\n";
    const auto& ledger = *report.ledger;
    for (std::size_t i = 0; i < ledger.phi.size(); ++i)
        out << "pcp," << (i + 1) << ',' << p2pmarket::format_fixed(ledger.phi[i])
            << ',' << p2pmarket::format_fixed(ledger.pcp_payments[i]) << '\n';
    for (std::size_t l = 0; l < ledger.psi.size(); ++l)
        out << "isp," << (l + 1) << ',' << p2pmarket::format_fixed(ledger.psi[l])
            << ',' << p2pmarket::format_fixed(ledger.isp_receipts[l]) << '\n';
    std::cout << "wrote " << path << "\n";
}

enum class Verb { solve, state0, states, spne, cooperate, split, sweep };

int run(Verb verb, const p2pmarket::Scenario& scenario,
        const std::string& out_dir) {
    using namespace p2pmarket;
    if (verb == Verb::sweep) {
        SweepResult result = run_sweep(scenario, out_dir);
        for (const auto& f : result.files_written)
            std::cout << "wrote " << f << "\n";
        return 0;
    }

    if (verb == Verb::split && !scenario.coalition)
        throw p2pmarket::Error(p2pmarket::ErrorCode::scenario,
                               "split requires a coalition section in the "
                               "scenario");

    PipelineReport report = run_pipeline(scenario);
    std::string full = format_report(report);

    // the verbs expose successive prefixes of the full report
    auto section = [&](const char* heading) {
        std::size_t pos = full.find(heading);
        return pos == std::string::npos ? full : full.substr(0, pos);
    };
    switch (verb) {
        case Verb::state0:
            std::cout << section("state 1");
            break;
        case Verb::states:
            std::cout << section("transitions");
            break;
        case Verb::spne:
            std::cout << section("cooperation");
            break;
        case Verb::cooperate:
            std::cout << section("coalition split");
            break;
        case Verb::solve:
        case Verb::split:
            std::cout << full;
            break;
        default:
            break;
    }
    if ((verb == Verb::split || verb == Verb::solve) && report.ledger)
        write_ledger_csv(report, out_dir);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"P2P market engine: equilibrium states, bargaining and "
                 "coalition profit split"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir;
    bool strict = false;
    double tol = 0.0;
    std::size_t root_index = static_cast<std::size_t>(-1);
    app.add_option("--scenario", scenario_path, "scenario file (key=value)");
    app.add_option("--out", out_dir, "output directory for CSV tables");
    app.add_flag("--strict", strict,
                 "treat traffic consistency warnings as errors");
    app.add_option("--tol", tol, "override root/line-search tolerances");
    app.add_option("--root-index", root_index,
                   "equilibrium root to use when several exist");

    std::map<std::string, Verb> verbs{
        {"solve", Verb::solve},         {"state0", Verb::state0},
        {"states", Verb::states},       {"spne", Verb::spne},
        {"cooperate", Verb::cooperate}, {"split", Verb::split},
        {"sweep", Verb::sweep}};
    std::map<std::string, const char*> help{
        {"solve", "run the full pipeline and print the report"},
        {"state0", "solve the pre-P2P equilibrium only"},
        {"states", "solve states 0, 1 and 2"},
        {"spne", "states plus transition analysis and backward induction"},
        {"cooperate", "full non-cooperative and cooperative chain"},
        {"split", "full chain plus the coalition ledger"},
        {"sweep", "sweep the (alpha, beta) ranges and emit CSV tables"}};
    for (auto& [name, verb] : verbs)
        app.add_subcommand(name, help[name])->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        p2pmarket::Scenario scenario;
        try {
            if (!scenario_path.empty())
                scenario = p2pmarket::load_scenario(scenario_path);
        } catch (const p2pmarket::Error& e) {
            std::cerr << "scenario error: " << e.what() << "\n";
            return kExitScenario;
        }
        if (strict)
            scenario.strict = true;
        if (tol > 0.0) {
            scenario.baseline.root_tol = tol;
            scenario.line_search.x_tol = tol;
            scenario.stackelberg.inner = scenario.line_search;
            scenario.sweep_stackelberg.inner = scenario.line_search;
        }
        if (root_index != static_cast<std::size_t>(-1))
            scenario.root_index = root_index;
        std::string dir = !out_dir.empty() ? out_dir : scenario.output_dir;

        Verb verb = verbs.at(app.get_subcommands().front()->get_name());
        return run(verb, scenario, dir);
    } catch (const p2pmarket::Error& e) {
        std::cerr << "error (" << p2pmarket::to_string(e.code())
                  << "): " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}
