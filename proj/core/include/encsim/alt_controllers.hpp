#pragma once
/// \file alt_controllers.hpp
/// \brief Velocity-obstacle and potential-field avoidance controllers.
///
/// These exist to show that parallel-flight blocking is not specific to the
/// CBF filter; neither carries a safety guarantee.

#include "encsim/geometry.hpp"

namespace encsim {

struct VOParams {
    double horizon = 10.0;  ///< collision look-ahead tau, s
    double margin = 30.0;   ///< collision radius r, m
    double speed = 5.0;     ///< commanded speed v, m/s
    int grid_n = 3600;      ///< heading grid resolution
};

struct PFParams {
    double k_att = 1.0;
    double k_rep = 3600.0;
    double influence_radius = 60.0;  ///< repulsion cutoff, m (>= margin)
    double speed = 5.0;
};

/// True when commanding velocity u for the ego leads within [0, tau] to a
/// separation <= r against an opponent holding velocity u_j. Decided in
/// closed form from the relative-motion quadratic.
bool in_velocity_obstacle(const Vec2& p_i, const Vec2& p_j, const Vec2& u_j, const Vec2& u,
                          const VOParams& params);

/// Picks the constant-speed velocity closest to the preferred one outside
/// the velocity obstacle. If the preferred velocity is already outside it is
/// returned unchanged; if every heading is inside, falls back to the heading
/// maximizing the minimum predicted separation.
Vec2 vo_filter(const Vec2& p_i, const Vec2& p_j, const Vec2& u_j, const Vec2& preferred,
               const VOParams& params);

/// Heading of the resultant of target attraction and opponent repulsion
/// (inverse-distance repulsion with cutoff). A zero resultant holds the
/// previous heading.
Angle potential_field_heading(const Vec2& p_i, const Vec2& target, const Vec2& p_j,
                              Angle prev_heading, const PFParams& params);

}  // namespace encsim
