#include "encsim/duration.hpp"

#include <algorithm>
#include <cmath>

namespace encsim {

namespace {

// Perpendicular offset of T from the bearing line through p: the distance
// the (orientation-frozen) bearing line must sweep before p, the opponent
// and T become collinear.
double collinearity_offset(const Vec2& p, const Vec2& target, const Vec2& opponent) {
    const double off = angle_diff(bearing(p, opponent).rad(),
                                  cruising_angle(p, target)->rad());
    if (std::abs(off) > kPi / 2.0 + 1e-9) {
        throw std::logic_error("blocking_bounds: cruising angle outside the correction arc");
    }
    return (target - p).norm() * std::abs(std::sin(off));
}

}  // namespace

BlockingBounds blocking_bounds(const Vec2& p1, const Vec2& T1, const Vec2& p2, const Vec2& T2,
                               const SafetyParams& params) {
    const double sweep = std::min(collinearity_offset(p1, T1, p2),
                                  collinearity_offset(p2, T2, p1));
    const double lower = sweep / params.speed;
    const double upper = lower + ((p1 - p2).norm() - params.margin) / (2.0 * params.speed);
    return {lower, upper};
}

OptionDurations option_durations(const Vec2& p_i, const Vec2& T_i, const Vec2& p_j,
                                 const Vec2& T_j, const SafetyParams& params) {
    const double v = params.speed;
    const double r = params.margin;
    const Vec2 o = 0.5 * (p_i + p_j);
    const auto tangent_len = [&](const Vec2& target) {
        return std::sqrt(std::max(0.0, (target - o).norm_sq() - r * r));
    };
    const double sweep = std::min(collinearity_offset(p_i, T_i, p_j),
                                  collinearity_offset(p_j, T_j, p_i));
    OptionDurations out;
    out.maintain_s = (2.0 * sweep + tangent_len(T_i) + tangent_len(T_j) + kPi * r) / v;
    out.ego_unblock_s = ((T_i - p_j).norm() + (T_j - p_j).norm() + kPi * r) / v;
    out.opp_unblock_s = ((T_i - p_i).norm() + (T_j - p_i).norm() + kPi * r) / v;
    return out;
}

}  // namespace encsim
