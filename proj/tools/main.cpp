// encsim command-line interface: scenario simulation, Monte Carlo batches
// over randomized blocking encounters, and static encounter analysis.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "encsim/duration.hpp"
#include "encsim/modes.hpp"
#include "encsim/monte_carlo.hpp"
#include "encsim/scenario_io.hpp"
#include "encsim/svg_plot.hpp"
#include "encsim/trace_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParseError = 2;
constexpr int kExitInvalidConfig = 3;
constexpr int kExitSafetyViolation = 4;

int cmd_simulate(const std::string& scenario_path, const std::string& out_path,
                 const std::string& plot_path, bool strict) {
    encsim::ScenarioConfig config;
    try {
        config = encsim::load_scenario(scenario_path);
    } catch (const encsim::ScenarioError& e) {
        std::cerr << "invalid scenario config: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const encsim::ParseError& e) {
        std::cerr << "scenario parse error: " << e.what() << "\n";
        return kExitParseError;
    }

    const encsim::SimulationTrace trace = encsim::run_scenario(config);
    encsim::write_trace_files(out_path, trace);
    if (!plot_path.empty()) {
        encsim::write_text_file(plot_path, encsim::render_trace_svg(trace, config));
    }

    std::cout << "steps: " << trace.steps.size() << "\n";
    std::cout << "events: " << trace.events.size() << "\n";
    std::cout << "min separation: " << encsim::format_number(trace.min_separation) << "\n";
    if (trace.completion_s) {
        std::cout << "completed at: " << encsim::format_number(*trace.completion_s) << " s\n";
    } else {
        std::cout << "horizon reached before completion\n";
    }
    if (strict && trace.violation_episodes > 0) {
        std::cerr << "safety violations: " << trace.violation_episodes << "\n";
        return kExitSafetyViolation;
    }
    return kExitOk;
}

int cmd_montecarlo(int n, std::uint64_t seed, const std::vector<std::string>& strategy_names,
                   const std::string& out_path, int workers) {
    std::vector<encsim::Strategy> strategies;
    for (const std::string& name : strategy_names) {
        if (name == "maintain") strategies.push_back(encsim::Strategy::None);
        else if (name == "fixed") strategies.push_back(encsim::Strategy::FixedPriority);
        else if (name == "adaptive") strategies.push_back(encsim::Strategy::Adaptive);
        else {
            std::cerr << "unknown strategy: " << name << "\n";
            return kExitParseError;
        }
    }
    const encsim::MonteCarloResult result =
        encsim::run_monte_carlo(seed, n, strategies, workers);
    encsim::write_text_file(out_path, encsim::serialize_stats(result));
    for (const auto& [name, stats] : result.stats) {
        std::cout << name << ": mean completion "
                  << encsim::format_number(stats.mean_completion_s) << " s, reduction "
                  << encsim::format_number(stats.reduction_pct) << " %, violations "
                  << stats.violations << "\n";
    }
    return kExitOk;
}

int cmd_analyze(const std::string& scenario_path) {
    encsim::ScenarioConfig config;
    try {
        config = encsim::load_scenario(scenario_path);
    } catch (const encsim::ScenarioError& e) {
        std::cerr << "invalid scenario config: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const encsim::ParseError& e) {
        std::cerr << "scenario parse error: " << e.what() << "\n";
        return kExitParseError;
    }
    if (config.agents.size() != 2) {
        std::cerr << "analyze requires a two-agent scenario\n";
        return kExitInvalidConfig;
    }

    const encsim::SafetyParams safety = config.safety();
    std::cout << "free flight threshold: "
              << encsim::format_number(encsim::free_flight_threshold(safety)) << " m\n";

    const auto& a1 = config.agents[0];
    const auto& a2 = config.agents[1];
    const bool predicted =
        encsim::predict_blocking(a1.position, a1.target, a2.position, a2.target,
                                 config.tol.angle, config.tol.angle);
    if (!encsim::encounter_point(a1.position, a1.target, a2.position, a2.target)) {
        std::cout << "no encounter point\n";
    } else {
        std::cout << (predicted ? "blocking predicted\n" : "blocking not predicted\n");
    }

    // Find the first mutual-blocking step under the maintain baseline and
    // evaluate the duration bounds and option estimates there.
    encsim::ScenarioConfig probe = config;
    for (auto& a : probe.agents) a.strategy = encsim::Strategy::None;
    const encsim::SimulationTrace trace = encsim::run_scenario(probe);
    std::size_t onset = trace.steps.size();
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        if (trace.steps[k].agents.size() == 2 &&
            trace.steps[k].agents[0].mode == encsim::ModeKind::Blocking &&
            trace.steps[k].agents[1].mode == encsim::ModeKind::Blocking) {
            onset = k;
            break;
        }
    }
    if (onset == trace.steps.size()) {
        std::cout << "no blocking onset within horizon\n";
        return kExitOk;
    }
    const auto& row = trace.steps[onset];
    const encsim::Vec2 p1 = row.agents[0].position;
    const encsim::Vec2 p2 = row.agents[1].position;
    const encsim::BlockingBounds bounds =
        encsim::blocking_bounds(p1, a1.target, p2, a2.target, safety);
    const encsim::OptionDurations options =
        encsim::option_durations(p1, a1.target, p2, a2.target, safety);
    std::cout << "blocking onset at: " << encsim::format_number(row.time) << " s\n";
    std::cout << "duration bounds: [" << encsim::format_number(bounds.lower_s) << ", "
              << encsim::format_number(bounds.upper_s) << "] s\n";
    std::cout << "option durations: maintain " << encsim::format_number(options.maintain_s)
              << " s, agent " << trace.agent_ids[0] << " unblocks "
              << encsim::format_number(options.ego_unblock_s) << " s, agent "
              << trace.agent_ids[1] << " unblocks "
              << encsim::format_number(options.opp_unblock_s) << " s\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic multi-airplane encounter simulator with a CBF heading "
                 "safety filter, blocking analysis, and communication-free resolution"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path = "trace.csv";
    std::string plot_path;
    bool strict = false;
    auto* simulate = app.add_subcommand("simulate", "Run one scenario and export the trace");
    simulate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("--out", out_path, "Trace CSV output path");
    simulate->add_option("--plot", plot_path, "Optional SVG plot path");
    simulate->add_flag("--strict", strict, "Exit 4 on any safety violation");

    int n = 100;
    std::uint64_t seed = 0;
    std::vector<std::string> strategy_names = {"maintain", "fixed", "adaptive"};
    std::string stats_path = "stats.json";
    int workers = 0;
    auto* montecarlo =
        app.add_subcommand("montecarlo", "Batch of randomized blocking encounters");
    montecarlo->add_option("--n", n, "Number of scenarios")->check(CLI::PositiveNumber);
    montecarlo->add_option("--seed", seed, "Batch seed");
    montecarlo->add_option("--strategies", strategy_names,
                           "Strategies to evaluate (maintain fixed adaptive)")
        ->delimiter(',');
    montecarlo->add_option("--out", stats_path, "Stats JSON output path");
    montecarlo->add_option("--workers", workers, "Worker threads (0 = hardware)");

    std::string analyze_path;
    auto* analyze =
        app.add_subcommand("analyze", "Static encounter analysis of a two-agent scenario");
    analyze->add_option("scenario", analyze_path, "Scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(scenario_path, out_path, plot_path, strict);
        if (montecarlo->parsed()) {
            return cmd_montecarlo(n, seed, strategy_names, stats_path, workers);
        }
        if (analyze->parsed()) return cmd_analyze(analyze_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
