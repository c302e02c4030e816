#include "encsim/scenario.hpp"

#include <cmath>

namespace encsim {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ScenarioError(message);
}

}  // namespace

void validate_scenario(ScenarioConfig& config) {
    require(config.schema_version == 1, "schema_version: expected 1");
    require(config.speed > 0.0 && std::isfinite(config.speed), "speed: must be > 0");
    require(config.margin > 0.0 && std::isfinite(config.margin), "margin: must be > 0");
    require(config.alpha > 0.0 && std::isfinite(config.alpha), "alpha: must be > 0");
    require(config.dt > 0.0 && std::isfinite(config.dt), "dt: must be > 0");
    require(config.horizon_s > 0.0 && std::isfinite(config.horizon_s), "horizon: must be > 0");
    require(config.tol.tie > 0.0, "tolerances.tie: must be > 0");
    require(config.tol.rate > 0.0, "tolerances.rate: must be > 0");
    require(config.tol.reach >= 0.0, "tolerances.reach: must be >= 0");
    require(config.tol.angle > 0.0, "tolerances.angle: must be > 0");
    require(config.interactive.gain > 0.0, "interactive.gain: must be > 0");
    require(config.interactive.timeout_s > 0.0, "interactive.timeout: must be > 0");
    require(config.vo_horizon > 0.0, "vo.horizon: must be > 0");
    require(config.pf.k_att > 0.0, "pf.k_att: must be > 0");
    require(config.pf.k_rep > 0.0, "pf.k_rep: must be > 0");
    require(config.pf.influence_radius >= config.margin,
            "pf.influence_radius: must be >= margin");
    if (config.model == MotionModel::Unicycle) {
        require(config.heading_gain > 0.0, "heading_gain: must be > 0");
        require(config.heading_gain * config.dt < 2.0,
                "heading_gain: k*dt >= 2 is unstable under explicit Euler");
    }
    require(config.agents.size() >= 2 && config.agents.size() <= 16,
            "agents: need between 2 and 16");

    for (std::size_t i = 0; i < config.agents.size(); ++i) {
        AgentConfig& a = config.agents[i];
        if (a.id == 0) a.id = static_cast<int>(i) + 1;
        const std::string tag = "agents[" + std::to_string(i) + "].";
        require(a.position.finite(), tag + "position: must be finite");
        require(a.target.finite(), tag + "target: must be finite");
        require(!a.heading || std::isfinite(*a.heading), tag + "heading: must be finite");
        require(a.lambda == 1 || a.lambda == -1, tag + "lambda: must be -1 or +1");
        require(!(a.position == a.target), tag + "target: coincides with position");
    }
    for (std::size_t i = 0; i < config.agents.size(); ++i) {
        for (std::size_t j = i + 1; j < config.agents.size(); ++j) {
            require(config.agents[i].id != config.agents[j].id, "agents: duplicate id");
            const double start_gap =
                (config.agents[i].position - config.agents[j].position).norm();
            // Tiny relative slack: generated configs place the pair at a
            // distance of exactly r up to rounding.
            require(start_gap >= config.margin * (1.0 - 1e-9),
                    "agents: initial separation below the safety margin");
            if (!config.allow_target_conflict) {
                const double target_gap =
                    (config.agents[i].target - config.agents[j].target).norm();
                require(target_gap >= config.margin * (1.0 - 1e-9),
                        "agents: target separation below the safety margin "
                        "(set allow_target_conflict to study shared targets)");
            }
        }
    }
}

}  // namespace encsim
