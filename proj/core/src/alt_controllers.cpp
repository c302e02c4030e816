#include "encsim/alt_controllers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace encsim {

namespace {

// Minimum separation over t in [0, tau] for relative position w and
// relative velocity dv = u_j - u.
double min_separation(const Vec2& w, const Vec2& dv, double tau) {
    const double speed_sq = dv.norm_sq();
    double t_star = 0.0;
    if (speed_sq > 0.0) t_star = std::clamp(-w.dot(dv) / speed_sq, 0.0, tau);
    return (w + t_star * dv).norm();
}

}  // namespace

bool in_velocity_obstacle(const Vec2& p_i, const Vec2& p_j, const Vec2& u_j, const Vec2& u,
                          const VOParams& params) {
    return min_separation(p_j - p_i, u_j - u, params.horizon) <= params.margin;
}

Vec2 vo_filter(const Vec2& p_i, const Vec2& p_j, const Vec2& u_j, const Vec2& preferred,
               const VOParams& params) {
    if (!in_velocity_obstacle(p_i, p_j, u_j, preferred, params)) return preferred;

    const double pref_angle = std::atan2(preferred.y, preferred.x);
    const double step = kTwoPi / params.grid_n;
    double best_theta = 0.0;
    double best_obj = std::numeric_limits<double>::infinity();
    double fallback_theta = 0.0;
    double fallback_sep = -1.0;
    for (int k = 0; k < params.grid_n; ++k) {
        const double theta = -kPi + k * step;
        const Vec2 u = params.speed * Vec2{std::cos(theta), std::sin(theta)};
        const double sep = min_separation(p_j - p_i, u_j - u, params.horizon);
        if (sep > fallback_sep) {
            fallback_sep = sep;
            fallback_theta = theta;
        }
        if (sep <= params.margin) continue;
        const double obj = std::abs(angle_diff(theta, pref_angle));
        if (obj < best_obj) {
            best_obj = obj;
            best_theta = theta;
        }
    }
    const double theta = std::isfinite(best_obj) ? best_theta : fallback_theta;
    return params.speed * Vec2{std::cos(theta), std::sin(theta)};
}

Angle potential_field_heading(const Vec2& p_i, const Vec2& target, const Vec2& p_j,
                              Angle prev_heading, const PFParams& params) {
    if (p_i == target || p_i == p_j) {
        throw std::domain_error("potential_field_heading: degenerate geometry");
    }
    const Vec2 attraction = params.k_att * (target - p_i).normalized();
    Vec2 repulsion{0.0, 0.0};
    const double d = (p_i - p_j).norm();
    if (d < params.influence_radius) {
        repulsion = params.k_rep * (1.0 / d - 1.0 / params.influence_radius) *
                    (1.0 / (d * d)) * (p_i - p_j);
    }
    const Vec2 force = attraction + repulsion;
    if (force.norm_sq() == 0.0) return prev_heading;
    return normalize_angle(std::atan2(force.y, force.x));
}

}  // namespace encsim
