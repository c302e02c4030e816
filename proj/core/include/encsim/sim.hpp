#pragma once
/// \file sim.hpp
/// \brief Scenario orchestration: the fixed-step loop wiring dynamics,
///        safety filters, mode classification and the resolution strategy,
///        with full trace and event recording.

#include <limits>
#include <optional>
#include <vector>

#include "encsim/modes.hpp"
#include "encsim/scenario.hpp"

namespace encsim {

enum class EventKind {
    BlockingStart,
    BlockingEnd,
    UnblockStart,
    TargetEstimated,
    TemporaryTargetReached,
    TargetReached,
    SafetyViolation,
    DeadlockFlag,
    LivelockFlag,
};

const char* to_string(EventKind kind);

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::BlockingStart;
    int agent_id = 0;  ///< 0 for system-wide events (pathology flags)
};

struct AgentStepRecord {
    Vec2 position;             ///< state at the row's time
    double heading = 0.0;      ///< state at the row's time, rad
    double heading_cmd = 0.0;  ///< executed command decided at the row's time, rad
    ModeKind mode = ModeKind::Cruising;
    double delta = 0.0;  ///< unsafe-arc half-angle against the constraint peer
    bool activated = false;
    Phase phase = Phase::Normal;
};

struct StepRecord {
    double time = 0.0;
    std::vector<AgentStepRecord> agents;
};

struct SimulationTrace {
    double dt = 0.0;
    std::vector<int> agent_ids;
    std::vector<StepRecord> steps;
    std::vector<Event> events;

    // Run summary, accumulated while stepping.
    double min_separation = std::numeric_limits<double>::infinity();
    int violation_episodes = 0;
    std::optional<double> completion_s;    ///< all agents at their targets
    std::vector<double> blocking_time_s;   ///< per agent, total time classified Blocking
    std::vector<double> reach_time_s;      ///< per agent, -1 when never reached

    /// Duration of agent's first blocking episode, if any.
    std::optional<double> first_blocking_episode_s(int agent_id) const;
    /// True when `kinds` appear in the event log in order (other events may
    /// be interleaved); entries pair a kind with an agent id (0 = any).
    bool has_event_subsequence(
        const std::vector<std::pair<EventKind, int>>& kinds) const;
};

/// Picks the opponent the safety filter is applied against: the closing
/// agent (negative range rate) with the smallest barrier value, ties by
/// distance then id; falls back to the nearest agent when nobody is closing.
/// Indices refer to `positions`/`velocities`; entries where `active` is
/// false are skipped. Returns -1 when no other active agent exists.
int select_constraint_peer(int self, const std::vector<Vec2>& positions,
                           const std::vector<Vec2>& velocities,
                           const std::vector<bool>& active, const SafetyParams& params);

/// Runs one scenario to completion or horizon. Deterministic: a given config
/// produces a bit-identical trace on every run.
SimulationTrace run_scenario(const ScenarioConfig& config);

}  // namespace encsim
