#pragma once
/// \file dynamics.hpp
/// \brief Constant-speed kinematic models: single integrator with direct
///        heading command, and unicycle with a high-gain heading tracker.

#include "encsim/geometry.hpp"

namespace encsim {

enum class MotionModel { SingleIntegrator, Unicycle };

struct KinematicState {
    Vec2 position;
    Angle heading;
};

struct DynamicsParams {
    double speed = 5.0;                               ///< forward speed v, m/s
    MotionModel model = MotionModel::SingleIntegrator;
    double heading_gain = 20.0;                       ///< tracker gain k, 1/s (unicycle)
    double dt = 0.05;                                 ///< integration step, s
};

/// One explicit-Euler step of the single-integrator model: the heading jumps
/// to the command, the position advances v*dt along it.
KinematicState step_single_integrator(const KinematicState& state, Angle commanded_heading,
                                      const DynamicsParams& params);

/// One explicit-Euler step of the unicycle with heading tracker
/// a = -k * wrap(theta - theta_cmd) + commanded_heading_rate.
/// Position integrates along the pre-step heading.
KinematicState step_unicycle(const KinematicState& state, Angle commanded_heading,
                             double commanded_heading_rate, const DynamicsParams& params);

}  // namespace encsim
