#pragma once
/// \file scenario.hpp
/// \brief Immutable scenario configuration: physical parameters, numeric
///        tolerances, and the initial agent list.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "encsim/alt_controllers.hpp"
#include "encsim/dynamics.hpp"
#include "encsim/resolution.hpp"
#include "encsim/safety_filter.hpp"

namespace encsim {

enum class ControllerKind { Cbf, VelocityObstacle, PotentialField };

struct AgentConfig {
    int id = 0;  ///< 1-based; assigned from list order when 0
    Vec2 position;
    std::optional<double> heading;  ///< rad; defaults to the cruising angle
    Vec2 target;
    int lambda = 1;  ///< tie-break side preference, -1 or +1
    ControllerKind controller = ControllerKind::Cbf;
    Strategy strategy = Strategy::None;
    bool knows_opponent_target = true;

    bool operator==(const AgentConfig&) const = default;
};

struct Tolerances {
    double tie = 1e-9;    ///< rad; exact-tie branch of the filter
    double rate = 1e-3;   ///< rad/s; blocking bearing-rate threshold
    double reach = 0.0;   ///< m; 0 means v*dt
    double angle = 1e-6;  ///< rad; boundary-heading observation test

    bool operator==(const Tolerances&) const = default;
};

struct PFGains {
    double k_att = 1.0;
    double k_rep = 3600.0;
    double influence_radius = 60.0;

    bool operator==(const PFGains&) const = default;
};

struct ScenarioConfig {
    int schema_version = 1;
    double speed = 5.0;   ///< v, m/s
    double margin = 30.0; ///< r, m
    double alpha = 3.0;   ///< CBF slope, 1/s
    double dt = 0.05;     ///< s
    MotionModel model = MotionModel::SingleIntegrator;
    double heading_gain = 20.0;  ///< unicycle tracker gain, 1/s
    double horizon_s = 300.0;
    std::uint64_t rng_seed = 0;
    Tolerances tol;
    InteractiveParams interactive;
    double vo_horizon = 10.0;
    PFGains pf;
    /// Allows targets closer than the safety margin (shared-target studies).
    bool allow_target_conflict = false;
    std::vector<AgentConfig> agents;

    DynamicsParams dynamics() const {
        return {speed, model, heading_gain, dt};
    }
    SafetyParams safety() const { return {margin, alpha, speed}; }
    VOParams vo() const { return {vo_horizon, margin, speed, 3600}; }
    PFParams pf_params() const { return {pf.k_att, pf.k_rep, pf.influence_radius, speed}; }
    double reach_tol() const { return tol.reach > 0.0 ? tol.reach : speed * dt; }

    bool operator==(const ScenarioConfig&) const = default;
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Checks every configuration invariant (positive physical parameters,
/// stable unicycle gain, 2..16 agents, pairwise start and target separation,
/// finite coordinates). Throws ScenarioError with a field diagnostic.
/// Also assigns missing agent ids from list order.
void validate_scenario(ScenarioConfig& config);

}  // namespace encsim
