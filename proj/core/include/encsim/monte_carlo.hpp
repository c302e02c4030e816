#pragma once
/// \file monte_carlo.hpp
/// \brief Randomized blocking-prone scenario generation and deterministic
///        Monte Carlo batches comparing resolution strategies.

#include <map>
#include <string>

#include "encsim/rng.hpp"
#include "encsim/sim.hpp"

namespace encsim {

/// Generates a two-airplane encounter guaranteed to block: the pair starts
/// at a separation of exactly r with mirrored cruising angles inside the
/// mutual correction arcs (the pre-blocking condition), targets 5r..15r
/// away, rejection-sampled to keep the targets separated by at least r.
/// The strategy fields are left at None; batch runs override them.
ScenarioConfig generate_blocking_scenario(SplitMix64& rng, const ScenarioConfig& base = {});

extern const char* const kStrategyNames[3];  ///< "maintain", "fixed", "adaptive"
const char* to_string(Strategy s);

struct StrategyStats {
    double mean_completion_s = 0.0;
    double reduction_pct = 0.0;  ///< paired reduction vs. the maintain baseline
    int violations = 0;
};

struct ScenarioOutcome {
    int index = 0;
    std::uint64_t seed = 0;
    /// Keyed by strategy name; values are completion times in seconds.
    std::map<std::string, double> completion_s;
    double maintain_blocking_s = 0.0;  ///< blocking time under the maintain baseline
    double min_separation = 0.0;       ///< across all strategy runs
};

struct MonteCarloResult {
    int n = 0;
    std::uint64_t seed = 0;
    std::map<std::string, StrategyStats> stats;
    std::vector<ScenarioOutcome> scenarios;
};

/// Runs n generated scenarios under each requested strategy (the maintain
/// baseline is always included) and aggregates paired statistics. Scenarios
/// are distributed over `workers` threads; each owns an RNG stream derived
/// from (seed, index), so the result is identical for any worker count.
MonteCarloResult run_monte_carlo(std::uint64_t seed, int n, std::vector<Strategy> strategies,
                                 int workers = 0, const ScenarioConfig& base = {});

}  // namespace encsim
