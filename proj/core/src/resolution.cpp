#include "encsim/resolution.hpp"

#include <algorithm>
#include <cmath>

namespace encsim {

PriorityDecision adaptive_priority(const OptionDurations& durations,
                                   bool ego_right_of_opponent, double tol_s) {
    const double ego = durations.ego_unblock_s;
    const double opp = durations.opp_unblock_s;
    const double keep = durations.maintain_s;
    if (std::abs(ego - opp) < tol_s && std::min(ego, opp) <= keep + tol_s) {
        return {ego_right_of_opponent ? PriorityChoice::EgoUnblocks
                                      : PriorityChoice::OpponentUnblocks,
                true};
    }
    if (ego <= keep && ego < opp) return {PriorityChoice::EgoUnblocks, false};
    if (opp <= keep && opp < ego) return {PriorityChoice::OpponentUnblocks, false};
    return {PriorityChoice::MaintainBlocking, false};
}

std::optional<Vec2> estimate_target(std::span<const PoseSample> poses,
                                    double min_separation_rad) {
    if (poses.size() < 2) return std::nullopt;
    double best_sep = -1.0;
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i < poses.size(); ++i) {
        for (std::size_t j = i + 1; j < poses.size(); ++j) {
            const double sep =
                std::abs(angle_diff(poses[i].heading.rad(), poses[j].heading.rad()));
            if (sep > best_sep) {
                best_sep = sep;
                a = i;
                b = j;
            }
        }
    }
    if (best_sep <= min_separation_rad) return std::nullopt;
    const auto hit = line_intersection(poses[a].position, poses[a].heading.unit(),
                                       poses[b].position, poses[b].heading.unit());
    if (!hit || hit->k1 <= 0.0 || hit->k2 <= 0.0) return std::nullopt;
    return hit->point;
}

Vec2 interactive_command(const Vec2& filtered_u, const Vec2& p_i, const Vec2& p_j,
                         double gain, double speed) {
    // Repulsion scales with the separation vector itself, so near the margin
    // it dominates the filtered command and the pair backs apart along the
    // bearing line until both filters release.
    const Vec2 blend = filtered_u + gain * (p_i - p_j);
    const double n = blend.norm();
    if (n < 1e-9 * speed) return speed * (p_i - p_j).normalized();
    return (speed / n) * blend;
}

bool maybe_restore_target(ResolutionState& rs, const Vec2& own_pos, double reach_tol,
                          TickEvents& events) {
    if (!rs.pursuing_temporary()) return false;
    if ((own_pos - rs.pursued_target).norm() > reach_tol) return false;
    rs.pursued_target = rs.original_target;
    rs.phase = Phase::Normal;
    events.temporary_target_reached = true;
    return true;
}

Vec2 interactive_tick(ResolutionState& rs, const Vec2& filtered_u, const Vec2& own_pos,
                      const PoseSample& opp_pose, Angle bearing_to_opp, double delta,
                      int lambda, double tie_tol, bool ego_cruising, bool opp_revealing,
                      bool ego_blocking, double now_s, const InteractiveParams& params,
                      double speed, TickEvents& events) {
    if (rs.phase == Phase::Interacting && rs.interact_start_s >= 0.0 &&
        now_s - rs.interact_start_s >= params.timeout_s) {
        rs.estimation_timed_out = true;
        rs.phase = Phase::Normal;
    }

    if (!rs.estimated_opponent_target) {
        if (ego_cruising && opp_revealing) {
            rs.pose_log.push_back(opp_pose);
            if (auto target = estimate_target(rs.pose_log, params.min_pose_separation)) {
                rs.estimated_opponent_target = target;
                events.target_estimated = true;
                if (rs.phase == Phase::Interacting) rs.phase = Phase::Normal;
            }
        }
    }

    if (ego_blocking && !rs.estimated_opponent_target && !rs.estimation_timed_out) {
        if (rs.phase != Phase::Interacting) {
            rs.phase = Phase::Interacting;
            if (rs.interact_start_s < 0.0) rs.interact_start_s = now_s;
        }
        const Vec2 blended = interactive_command(filtered_u, own_pos, opp_pose.position,
                                                 params.gain, speed);
        // Re-project through the safety filter; the repulsion blend is not
        // guaranteed to satisfy the CBF condition on its own.
        const Angle blended_heading = normalize_angle(std::atan2(blended.y, blended.x));
        const FilterDecision safe =
            apply_heading_correction(bearing_to_opp, blended_heading, lambda, delta, tie_tol);
        return speed * safe.theta.unit();
    }
    return filtered_u;
}

void unblocking_tick(ResolutionState& rs, Strategy strategy, const Vec2& own_pos,
                     const Vec2& opp_pos, std::optional<Vec2> opp_target, bool ego_blocking,
                     bool ego_right_of_opponent, const SafetyParams& safety,
                     double priority_tol_s, TickEvents& events) {
    if (!ego_blocking) {
        rs.episode_decided = false;
        return;
    }
    if (rs.episode_decided || rs.phase == Phase::Unblocking) return;

    PriorityDecision decision;
    if (strategy == Strategy::FixedPriority) {
        decision = {ego_right_of_opponent ? PriorityChoice::EgoUnblocks
                                          : PriorityChoice::OpponentUnblocks,
                    false};
    } else if (opp_target) {
        const OptionDurations durations =
            option_durations(own_pos, rs.original_target, opp_pos, *opp_target, safety);
        decision = adaptive_priority(durations, ego_right_of_opponent, priority_tol_s);
    } else if (rs.estimation_timed_out) {
        // No estimate will come; fall back to the fixed right-hand rule.
        decision = {ego_right_of_opponent ? PriorityChoice::EgoUnblocks
                                          : PriorityChoice::OpponentUnblocks,
                    false};
    } else {
        return;  // still estimating; the interactive maneuver owns this step
    }

    rs.episode_decided = true;
    if (decision.choice == PriorityChoice::EgoUnblocks) {
        rs.pursued_target = opp_pos;
        rs.phase = Phase::Unblocking;
        events.unblock_started = true;
    }
}

}  // namespace encsim
