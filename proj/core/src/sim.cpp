#include "encsim/sim.hpp"

#include <algorithm>
#include <cmath>

namespace encsim {

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::BlockingStart: return "BlockingStart";
        case EventKind::BlockingEnd: return "BlockingEnd";
        case EventKind::UnblockStart: return "UnblockStart";
        case EventKind::TargetEstimated: return "TargetEstimated";
        case EventKind::TemporaryTargetReached: return "TemporaryTargetReached";
        case EventKind::TargetReached: return "TargetReached";
        case EventKind::SafetyViolation: return "SafetyViolation";
        case EventKind::DeadlockFlag: return "DeadlockFlag";
        case EventKind::LivelockFlag: return "LivelockFlag";
    }
    return "?";
}

std::optional<double> SimulationTrace::first_blocking_episode_s(int agent_id) const {
    double start = -1.0;
    for (const Event& e : events) {
        if (e.agent_id != agent_id) continue;
        if (e.kind == EventKind::BlockingStart && start < 0.0) {
            start = e.time;
        } else if (e.kind == EventKind::BlockingEnd && start >= 0.0) {
            return e.time - start;
        }
    }
    return std::nullopt;
}

bool SimulationTrace::has_event_subsequence(
    const std::vector<std::pair<EventKind, int>>& kinds) const {
    std::size_t k = 0;
    for (const Event& e : events) {
        if (k >= kinds.size()) break;
        if (e.kind == kinds[k].first && (kinds[k].second == 0 || kinds[k].second == e.agent_id)) {
            ++k;
        }
    }
    return k >= kinds.size();
}

int select_constraint_peer(int self, const std::vector<Vec2>& positions,
                           const std::vector<Vec2>& velocities,
                           const std::vector<bool>& active, const SafetyParams& params) {
    (void)params;  // the barrier value orders identically to distance for uniform params
    int best = -1;
    bool best_closing = false;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int j = 0; j < static_cast<int>(positions.size()); ++j) {
        if (j == self || !active[j]) continue;
        const Vec2 dp = positions[j] - positions[self];
        const double d2 = dp.norm_sq();
        const bool closing = dp.dot(velocities[j] - velocities[self]) < 0.0;
        if (best >= 0) {
            if (best_closing && !closing) continue;
            if (closing == best_closing && d2 >= best_d2) continue;
        }
        best = j;
        best_closing = closing;
        best_d2 = d2;
    }
    return best;
}

namespace {

struct AgentRt {
    AgentConfig cfg;
    KinematicState kin;
    ResolutionState res;
    bool done = false;
    ModeKind prev_mode = ModeKind::Cruising;
    double prev_exec_cmd = 0.0;
    bool has_prev_cmd = false;
};

// Margin shortfall below which a separation counts as a real violation
// rather than rounding noise on the d == r manifold.
constexpr double kViolationEps = 1e-6;

}  // namespace

SimulationTrace run_scenario(const ScenarioConfig& config_in) {
    ScenarioConfig config = config_in;
    validate_scenario(config);

    const int n = static_cast<int>(config.agents.size());
    const SafetyParams safety = config.safety();
    const DynamicsParams dyn = config.dynamics();
    const VOParams vo_params = config.vo();
    const PFParams pf_params = config.pf_params();
    const double dt = config.dt;
    const double reach_tol = config.reach_tol();

    std::vector<AgentRt> ag(n);
    for (int i = 0; i < n; ++i) {
        const AgentConfig& c = config.agents[i];
        ag[i].cfg = c;
        const double heading =
            c.heading ? normalize_angle(*c.heading).rad() : cruising_angle(c.position, c.target)->rad();
        ag[i].kin = {c.position, Angle{heading}};
        ag[i].res = ResolutionState(c.target);
        ag[i].prev_exec_cmd = heading;
    }

    SimulationTrace trace;
    trace.dt = dt;
    for (const auto& a : ag) trace.agent_ids.push_back(a.cfg.id);
    trace.blocking_time_s.assign(n, 0.0);
    trace.reach_time_s.assign(n, -1.0);

    std::vector<bool> pair_violating(static_cast<std::size_t>(n) * n, false);
    std::vector<std::pair<KinematicState, KinematicState>> history;
    bool deadlock_flagged = false;
    bool livelock_flagged = false;
    const std::size_t deadlock_window =
        static_cast<std::size_t>(std::llround(4.0 / dt)) + 1;
    const std::size_t livelock_window =
        static_cast<std::size_t>(std::llround(kTwoPi * config.margin / config.speed / dt)) + 1;

    std::vector<Vec2> prev_positions(n);
    bool has_prev_positions = false;

    std::vector<int> peer(n, -1);
    std::vector<FilterDecision> decision(n);
    std::vector<double> delta_vs_peer(n, 0.0);
    std::vector<Angle> exec_theta(n);
    std::vector<ModeKind> mode(n, ModeKind::Cruising);

    const auto record_row = [&](double time) {
        StepRecord row;
        row.time = time;
        row.agents.resize(n);
        for (int i = 0; i < n; ++i) {
            AgentStepRecord& r = row.agents[i];
            r.position = ag[i].kin.position;
            r.heading = ag[i].kin.heading.rad();
            if (ag[i].done) {
                r.heading_cmd = r.heading;
                r.mode = ModeKind::Cruising;
            } else {
                r.heading_cmd = exec_theta[i].rad();
                r.mode = mode[i];
                r.delta = delta_vs_peer[i];
                r.activated = decision[i].activated;
                r.phase = ag[i].res.phase;
            }
        }
        trace.steps.push_back(std::move(row));
    };

    // Pairwise separation scan: tracks the running minimum and opens/closes
    // violation episodes.
    const auto scan_separations = [&](double time) {
        for (int i = 0; i < n; ++i) {
            if (ag[i].done) continue;
            for (int j = i + 1; j < n; ++j) {
                if (ag[j].done) continue;
                const double d = (ag[i].kin.position - ag[j].kin.position).norm();
                trace.min_separation = std::min(trace.min_separation, d);
                const std::size_t key = static_cast<std::size_t>(i) * n + j;
                if (d < config.margin - kViolationEps) {
                    if (!pair_violating[key]) {
                        pair_violating[key] = true;
                        ++trace.violation_episodes;
                        trace.events.push_back({time, EventKind::SafetyViolation, 0});
                    }
                } else {
                    pair_violating[key] = false;
                }
            }
        }
    };

    const long max_steps = std::lround(std::ceil(config.horizon_s / dt));
    double time = 0.0;
    bool completed = false;

    for (long step = 0; step <= max_steps; ++step) {
        time = step * dt;

        // Reach handling on the state at `time`.
        for (int i = 0; i < n; ++i) {
            if (ag[i].done) continue;
            TickEvents ev{};
            if (maybe_restore_target(ag[i].res, ag[i].kin.position, reach_tol, ev)) {
                trace.events.push_back({time, EventKind::TemporaryTargetReached, ag[i].cfg.id});
            }
            if (!ag[i].res.pursuing_temporary() &&
                (ag[i].kin.position - ag[i].res.original_target).norm() <= reach_tol) {
                ag[i].done = true;
                trace.reach_time_s[i] = time;
                if (ag[i].prev_mode == ModeKind::Blocking) {
                    trace.events.push_back({time, EventKind::BlockingEnd, ag[i].cfg.id});
                }
                ag[i].prev_mode = ModeKind::Cruising;
                trace.events.push_back({time, EventKind::TargetReached, ag[i].cfg.id});
            }
        }
        if (std::all_of(ag.begin(), ag.end(), [](const AgentRt& a) { return a.done; })) {
            trace.completion_s = time;
            completed = true;
            break;
        }

        scan_separations(time);

        // Pass 1: constraint peers and controller decisions from the shared
        // state snapshot.
        std::vector<Vec2> positions(n), velocities(n);
        std::vector<bool> active(n);
        for (int i = 0; i < n; ++i) {
            positions[i] = ag[i].kin.position;
            velocities[i] = config.speed * ag[i].kin.heading.unit();
            active[i] = !ag[i].done;
        }
        for (int i = 0; i < n; ++i) {
            if (ag[i].done) continue;
            peer[i] = select_constraint_peer(i, positions, velocities, active, safety);
            const Angle phi = *cruising_angle(positions[i], ag[i].res.pursued_target);
            if (peer[i] < 0) {
                decision[i] = FilterDecision{phi, false, 0.0, FilterBranch::Unchanged};
                delta_vs_peer[i] = 0.0;
                continue;
            }
            const Vec2& pj = positions[peer[i]];
            const double h = cbf_value(positions[i], pj, safety);
            const double delta =
                h >= 0.0 ? half_angle_delta(positions[i], pj, safety) : kPi / 2.0;
            delta_vs_peer[i] = delta;
            switch (ag[i].cfg.controller) {
                case ControllerKind::Cbf:
                    decision[i] = apply_heading_correction(bearing(positions[i], pj), phi,
                                                           ag[i].cfg.lambda, delta,
                                                           config.tol.tie);
                    break;
                case ControllerKind::VelocityObstacle: {
                    const Vec2 pref = config.speed * phi.unit();
                    const Vec2 u = vo_filter(positions[i], pj, velocities[peer[i]], pref,
                                             vo_params);
                    const bool act = !(u == pref);
                    decision[i] = FilterDecision{
                        act ? normalize_angle(std::atan2(u.y, u.x)) : phi, act, delta,
                        FilterBranch::Unchanged};
                    break;
                }
                case ControllerKind::PotentialField: {
                    const Angle theta = potential_field_heading(
                        positions[i], ag[i].res.pursued_target, pj, ag[i].kin.heading,
                        pf_params);
                    const bool act = std::abs(angle_diff(theta.rad(), phi.rad())) > 1e-12;
                    decision[i] =
                        FilterDecision{theta, act, delta, FilterBranch::Unchanged};
                    break;
                }
            }
        }

        // Pass 2: bearing rates from the simultaneous commands, then modes.
        for (int i = 0; i < n; ++i) {
            if (ag[i].done) continue;
            if (peer[i] < 0) {
                mode[i] = ModeKind::Cruising;
                continue;
            }
            const Vec2 u_i = config.speed * decision[i].theta.unit();
            const Vec2 u_j = config.speed * decision[peer[i]].theta.unit();
            const double rate = bearing_rate(positions[i], positions[peer[i]], u_i, u_j);
            mode[i] = classify_mode(decision[i], rate, config.tol.rate);
        }
        for (int i = 0; i < n; ++i) {
            if (ag[i].done) continue;
            if (mode[i] == ModeKind::Blocking) trace.blocking_time_s[i] += dt;
            if (mode[i] == ModeKind::Blocking && ag[i].prev_mode != ModeKind::Blocking) {
                trace.events.push_back({time, EventKind::BlockingStart, ag[i].cfg.id});
            } else if (mode[i] != ModeKind::Blocking && ag[i].prev_mode == ModeKind::Blocking) {
                trace.events.push_back({time, EventKind::BlockingEnd, ag[i].cfg.id});
            }
            ag[i].prev_mode = mode[i];
        }

        // Resolution layer: may modify the executed command (interactive
        // maneuver) or retarget for the next step (unblocking maneuver).
        for (int i = 0; i < n; ++i) {
            if (ag[i].done) continue;
            exec_theta[i] = decision[i].theta;
            if (ag[i].cfg.strategy == Strategy::None || peer[i] < 0) continue;

            const int j = peer[i];
            const Vec2 u_cmd = config.speed * decision[i].theta.unit();
            const bool ego_right =
                u_cmd.cross(positions[j] - positions[i]) > 0.0;  // opponent on the left
            TickEvents ev{};

            if (!ag[i].cfg.knows_opponent_target) {
                bool revealing = false;
                if (has_prev_positions) {
                    // Test the opponent's current heading (commanded under the
                    // previous step's geometry) against that geometry's
                    // correction boundaries; off both means its filter was
                    // inactive, i.e. the heading is a genuine cruising angle.
                    const Vec2& pi_prev = prev_positions[i];
                    const Vec2& pj_prev = prev_positions[j];
                    const double h_prev = cbf_value(pj_prev, pi_prev, safety);
                    const double delta_prev =
                        h_prev >= 0.0 ? half_angle_delta(pj_prev, pi_prev, safety) : kPi / 2.0;
                    const double beta_prev = bearing(pj_prev, pi_prev).rad();
                    const double th = ag[j].kin.heading.rad();
                    revealing =
                        std::abs(angle_diff(th, beta_prev + delta_prev)) > config.tol.angle &&
                        std::abs(angle_diff(th, beta_prev - delta_prev)) > config.tol.angle;
                }
                const Vec2 u_filtered = config.speed * decision[i].theta.unit();
                const Vec2 u_exec = interactive_tick(
                    ag[i].res, u_filtered, positions[i],
                    PoseSample{positions[j], ag[j].kin.heading}, bearing(positions[i], positions[j]),
                    delta_vs_peer[i], ag[i].cfg.lambda, config.tol.tie,
                    mode[i] == ModeKind::Cruising, revealing, mode[i] == ModeKind::Blocking,
                    time, config.interactive, config.speed, ev);
                exec_theta[i] = normalize_angle(std::atan2(u_exec.y, u_exec.x));
                if (ev.target_estimated) {
                    trace.events.push_back({time, EventKind::TargetEstimated, ag[i].cfg.id});
                }
            }

            const std::optional<Vec2> opp_target =
                ag[i].cfg.knows_opponent_target
                    ? std::optional<Vec2>(ag[j].res.original_target)
                    : ag[i].res.estimated_opponent_target;
            unblocking_tick(ag[i].res, ag[i].cfg.strategy, positions[i], positions[j],
                            opp_target, mode[i] == ModeKind::Blocking, ego_right, safety,
                            1e-6, ev);
            if (ev.unblock_started) {
                trace.events.push_back({time, EventKind::UnblockStart, ag[i].cfg.id});
            }
        }

        record_row(time);

        // Pathology detection on the trailing window (two-airplane runs).
        if (n == 2 && !ag[0].done && !ag[1].done) {
            history.emplace_back(ag[0].kin, ag[1].kin);
            if (!deadlock_flagged && history.size() >= deadlock_window) {
                const StatePairWindow w{history.data() + history.size() - deadlock_window,
                                        deadlock_window};
                if (detect_deadlock(w, dyn)) {
                    deadlock_flagged = true;
                    trace.events.push_back({time, EventKind::DeadlockFlag, 0});
                }
            }
            if (!livelock_flagged && history.size() >= livelock_window) {
                const StatePairWindow w{history.data() + history.size() - livelock_window,
                                        livelock_window};
                if (detect_livelock(w, ag[0].res.original_target, ag[1].res.original_target,
                                    dyn, config.margin)) {
                    livelock_flagged = true;
                    trace.events.push_back({time, EventKind::LivelockFlag, 0});
                }
            }
        }

        // Apply all commands simultaneously.
        for (int i = 0; i < n; ++i) {
            if (ag[i].done) continue;
            if (config.model == MotionModel::SingleIntegrator) {
                ag[i].kin = step_single_integrator(ag[i].kin, exec_theta[i], dyn);
            } else {
                double rate_cmd = 0.0;
                if (ag[i].has_prev_cmd) {
                    rate_cmd = angle_diff(exec_theta[i].rad(), ag[i].prev_exec_cmd) / dt;
                    rate_cmd = std::clamp(rate_cmd, -kPi / dt, kPi / dt);
                }
                ag[i].kin = step_unicycle(ag[i].kin, exec_theta[i], rate_cmd, dyn);
            }
            ag[i].prev_exec_cmd = exec_theta[i].rad();
            ag[i].has_prev_cmd = true;
        }
        prev_positions = positions;
        has_prev_positions = true;
    }

    // Terminal state row.
    if (!completed) time = (max_steps + 1) * dt;
    scan_separations(time);
    for (int i = 0; i < n; ++i) {
        if (!ag[i].done) {
            exec_theta[i] = ag[i].kin.heading;
            decision[i] = FilterDecision{ag[i].kin.heading, false, 0.0, FilterBranch::Unchanged};
            mode[i] = ModeKind::Cruising;
            delta_vs_peer[i] = 0.0;
        }
    }
    record_row(time);

    return trace;
}

}  // namespace encsim
