#pragma once
/// \file resolution.hpp
/// \brief Communication-free blocking resolution: adaptive unblocking
///        priority, temporary-target unblocking maneuver, and the
///        interactive maneuver that provokes the opponent into revealing
///        its cruising direction for target triangulation.

#include <optional>
#include <span>
#include <vector>

#include "encsim/duration.hpp"
#include "encsim/safety_filter.hpp"

namespace encsim {

enum class Strategy { None, FixedPriority, Adaptive };

enum class Phase { Normal, Interacting, Unblocking };

enum class PriorityChoice { MaintainBlocking, EgoUnblocks, OpponentUnblocks };

struct PriorityDecision {
    PriorityChoice choice = PriorityChoice::MaintainBlocking;
    bool tie_broken = false;
};

/// Picks the option with the shortest estimated duration. When the two
/// unblock estimates tie within tol and are minimal, the right-hand rule
/// breaks the symmetry: the airplane that sees the opponent on its left
/// performs the unblock. Both airplanes evaluating this rule with swapped
/// perspectives reach complementary decisions.
PriorityDecision adaptive_priority(const OptionDurations& durations,
                                   bool ego_right_of_opponent, double tol_s = 1e-6);

struct PoseSample {
    Vec2 position;
    Angle heading;
};

/// Triangulates a target from observed cruising poses: intersects the rays
/// of the two most angularly separated poses. Empty when the best pair is
/// separated by less than min_separation_rad (ill-conditioned) or when the
/// intersection lies behind either pose (stale observation).
std::optional<Vec2> estimate_target(std::span<const PoseSample> poses,
                                    double min_separation_rad = 0.01);

/// Repulsion-blended command of the interactive maneuver: the filtered
/// command plus gain * (p_i - p_j), rescaled to speed v. Falls back to pure
/// repulsion if the blend nearly cancels.
Vec2 interactive_command(const Vec2& filtered_u, const Vec2& p_i, const Vec2& p_j,
                         double gain, double speed);

struct InteractiveParams {
    double gain = 1.0;                  ///< repulsion strength, 1/s
    double timeout_s = 20.0;            ///< give up estimating after this long
    double min_pose_separation = 0.01;  ///< rad, triangulation conditioning threshold

    bool operator==(const InteractiveParams&) const = default;
};

/// Per-agent resolution memory. The pursued target switches between the
/// original target and a temporary one during unblocking; the pose log and
/// estimate implement intention estimation against the current opponent.
struct ResolutionState {
    Vec2 pursued_target;
    Vec2 original_target;
    std::optional<Vec2> estimated_opponent_target;
    std::vector<PoseSample> pose_log;
    Phase phase = Phase::Normal;

    bool episode_decided = false;     ///< priority frozen for the ongoing blocking episode
    double interact_start_s = -1.0;   ///< first interactive step, <0 before any
    bool estimation_timed_out = false;

    explicit ResolutionState(const Vec2& target = {})
        : pursued_target(target), original_target(target) {}

    bool pursuing_temporary() const { return !(pursued_target == original_target); }
};

struct TickEvents {
    bool unblock_started = false;
    bool temporary_target_reached = false;
    bool target_estimated = false;
};

/// Restores the original target once a temporary one is reached. Returns
/// true (and reports the event) when the restore happened this step.
bool maybe_restore_target(ResolutionState& rs, const Vec2& own_pos, double reach_tol,
                          TickEvents& events);

/// Intention-estimation step: logs the opponent pose when it verifiably
/// reveals its cruising direction (ego itself cruising, opponent heading off
/// both correction boundaries), triangulates once the log is conditioned,
/// and — while blocked without an estimate — returns the repulsion-modified
/// command re-projected through the safety filter so it stays safe.
Vec2 interactive_tick(ResolutionState& rs, const Vec2& filtered_u, const Vec2& own_pos,
                      const PoseSample& opp_pose, Angle bearing_to_opp, double delta,
                      int lambda, double tie_tol, bool ego_cruising, bool opp_revealing,
                      bool ego_blocking, double now_s, const InteractiveParams& params,
                      double speed, TickEvents& events);

/// Unblocking decision step: at the first step of a blocking episode with a
/// known or estimated opponent target (or after estimation timed out), picks
/// the priority once and retargets the ego at the opponent's position when
/// the ego is selected.
void unblocking_tick(ResolutionState& rs, Strategy strategy, const Vec2& own_pos,
                     const Vec2& opp_pos, std::optional<Vec2> opp_target, bool ego_blocking,
                     bool ego_right_of_opponent, const SafetyParams& safety,
                     double priority_tol_s, TickEvents& events);

}  // namespace encsim
