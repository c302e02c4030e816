#pragma once
/// \file duration.hpp
/// \brief Blocking-duration bounds and the three-option duration estimates
///        that drive the adaptive unblocking priority.

#include "encsim/safety_filter.hpp"

namespace encsim {

struct BlockingBounds {
    double lower_s = 0.0;
    double upper_s = 0.0;
};

struct OptionDurations {
    double maintain_s = 0.0;     ///< keep the blocking mode until it self-resolves
    double ego_unblock_s = 0.0;  ///< ego performs the unblocking maneuver
    double opp_unblock_s = 0.0;  ///< opponent performs the unblocking maneuver
};

/// Bounds on the remaining duration of an ongoing mutual blocking episode.
///
/// Blocking ends at the first collinearity of one airplane, the other, and
/// that airplane's target. Since the bearing line keeps its orientation and
/// sweeps sideways at most at speed v, the time to reach the nearer target's
/// parallel line is at least its perpendicular offset over v:
///   lower = min_i |p_i - T_i| * |sin(beta_i - phi_i)| / v,
///   upper = lower + (|p1 - p2| - r) / (2 v),
/// the second term bounding the sweep-speed deficit while the separation
/// converges to r.
///
/// Requires both cruising angles within pi/2 of the respective bearings
/// (true in blocking mode); otherwise throws std::logic_error.
BlockingBounds blocking_bounds(const Vec2& p1, const Vec2& T1, const Vec2& p2, const Vec2& T2,
                               const SafetyParams& params);

/// Approximate completion times of the three resolution options evaluated
/// from airplane i's perspective during mutual blocking. o is the midpoint
/// of the two airplanes; radicands are clamped at zero (tangent length from
/// a target to the circle of radius r about o).
OptionDurations option_durations(const Vec2& p_i, const Vec2& T_i, const Vec2& p_j,
                                 const Vec2& T_j, const SafetyParams& params);

}  // namespace encsim
