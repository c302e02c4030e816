#pragma once
/// \file safety_filter.hpp
/// \brief CBF-based heading safety filter in closed form, plus an
///        independent angular grid/bisection oracle used to verify it.
///
/// The barrier is h(p1, p2) = |p1 - p2|^2 - r^2 with linear class-K slope
/// alpha. The filter projects a cruising heading onto the safe heading set,
/// whose unsafe region is the arc of half-width Delta centered on the
/// bearing to the other airplane.

#include "encsim/geometry.hpp"

namespace encsim {

struct SafetyParams {
    double margin = 30.0;  ///< safety margin r, m
    double alpha = 3.0;    ///< class-K slope, 1/s
    double speed = 5.0;    ///< forward speed v, m/s
};

enum class FilterBranch { Unchanged, CorrectedMinus, CorrectedPlus, TieBreak };

struct FilterDecision {
    Angle theta;                                   ///< commanded heading
    bool activated = false;                        ///< theta differs from the cruising input
    double delta = 0.0;                            ///< unsafe-arc half-angle, [0, pi/2]
    FilterBranch branch = FilterBranch::Unchanged;
};

/// Barrier value |p1 - p2|^2 - r^2 in m^2. Negative means the margin is
/// already violated.
double cbf_value(const Vec2& p1, const Vec2& p2, const SafetyParams& params);

/// Half-angle of the unsafe heading arc:
/// Delta = acos(min(1, alpha*h / (4 v |p1 - p2|))), in [0, pi/2].
/// Requires distinct points and h >= 0; h < 0 throws std::domain_error
/// (the simulator records a violation and clamps Delta to pi/2 instead).
double half_angle_delta(const Vec2& p1, const Vec2& p2, const SafetyParams& params);

/// Distance above which every heading satisfies the CBF condition:
/// 2v/alpha + sqrt(4v^2/alpha^2 + r^2).
double free_flight_threshold(const SafetyParams& params);

/// Piecewise heading correction given precomputed bearing and half-angle.
/// Exposed separately so the simulator can clamp delta to pi/2 after a
/// margin violation and keep stepping.
FilterDecision apply_heading_correction(Angle bearing_to_other, Angle cruising, int lambda,
                                        double delta, double tie_tol = 1e-9);

/// Closed-form safety filter (explicit QP solution): corrects the cruising
/// heading phi to the nearest boundary of the safe arc when phi is unsafe;
/// at the exact tie phi == bearing the side is picked by lambda in {-1,+1}.
FilterDecision filter_heading(const Vec2& p_i, const Vec2& p_j, Angle phi, int lambda,
                              const SafetyParams& params, double tie_tol = 1e-9);

/// Verification oracle: minimizes |wrap(theta - phi)| over a uniform heading
/// grid subject to cos(theta - bearing) <= alpha*h/(4 v d), then refines the
/// active constraint boundary by bisection. Independent of the closed-form
/// path (no arccos / Delta involved).
Angle qp_oracle(const Vec2& p_i, const Vec2& p_j, Angle phi, const SafetyParams& params,
                int grid_n = 3600);

/// Decentralized CBF condition (half responsibility):
/// (alpha/2) h + 2 (p_i - p_j)^T u_i >= 0.
/// A tiny relative slack keeps boundary commands, which satisfy the
/// condition with equality, from being misclassified by rounding.
bool cbf_condition_holds(const Vec2& p_i, const Vec2& p_j, const Vec2& u_i,
                         const SafetyParams& params);

}  // namespace encsim
