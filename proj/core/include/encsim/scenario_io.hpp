#pragma once
/// \file scenario_io.hpp
/// \brief Scenario-file (JSON) parsing and serialization, and the Monte
///        Carlo stats document.
///
/// The scenario format is versioned JSON: angles in radians, lengths in
/// meters, speeds in m/s. Serialization is canonical (fixed key order, all
/// fields written), so parse -> serialize -> parse is the identity.

#include <filesystem>
#include <string>

#include "encsim/monte_carlo.hpp"
#include "encsim/scenario.hpp"

namespace encsim {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses a scenario document. Throws ParseError with a field or position
/// diagnostic; the result has been through validate_scenario.
ScenarioConfig parse_scenario(const std::string& json_text);

/// Reads and parses a scenario file.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Canonical JSON form of a scenario.
std::string serialize_scenario(const ScenarioConfig& config);

/// Stats document for a Monte Carlo batch:
/// {n, seed, strategies: {name: {mean_completion_s, reduction_pct,
/// violations}}, scenarios: [...]}.
std::string serialize_stats(const MonteCarloResult& result);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace encsim
