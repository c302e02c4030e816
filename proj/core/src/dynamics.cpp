#include "encsim/dynamics.hpp"

namespace encsim {

KinematicState step_single_integrator(const KinematicState& state, Angle commanded_heading,
                                      const DynamicsParams& params) {
    const Vec2 dir = commanded_heading.unit();
    return KinematicState{state.position + params.speed * params.dt * dir, commanded_heading};
}

KinematicState step_unicycle(const KinematicState& state, Angle commanded_heading,
                             double commanded_heading_rate, const DynamicsParams& params) {
    const double err = angle_diff(state.heading.rad(), commanded_heading.rad());
    const double rate = -params.heading_gain * err + commanded_heading_rate;
    const Vec2 dir = state.heading.unit();
    return KinematicState{
        state.position + params.speed * params.dt * dir,
        normalize_angle(state.heading.rad() + rate * params.dt),
    };
}

}  // namespace encsim
