#include "encsim/geometry.hpp"

namespace encsim {

namespace {

double wrap_to_pi(double a) {
    double m = std::fmod(a + kPi, kTwoPi);
    if (m < 0.0) m += kTwoPi;
    double r = m - kPi;
    // fmod can land exactly on 2*pi after the negative fixup; keep the
    // half-open invariant [-pi, pi).
    if (r >= kPi) r = -kPi;
    return r;
}

}  // namespace

Angle::Angle(double radians) {
    if (!std::isfinite(radians)) {
        throw std::invalid_argument("Angle: non-finite value");
    }
    rad_ = wrap_to_pi(radians);
}

Angle normalize_angle(double radians) { return Angle{radians}; }

double angle_diff(double a, double b) { return normalize_angle(a - b).rad(); }

Angle bearing(const Vec2& p_i, const Vec2& p_j) {
    const Vec2 d = p_j - p_i;
    if (d.norm_sq() == 0.0) {
        throw std::domain_error("bearing: coincident points");
    }
    return Angle{std::atan2(d.y, d.x)};
}

double bearing_rate(const Vec2& p_i, const Vec2& p_j, const Vec2& u_i, const Vec2& u_j) {
    const Vec2 dp = p_j - p_i;
    const double d2 = dp.norm_sq();
    if (d2 == 0.0) {
        throw std::domain_error("bearing_rate: coincident points");
    }
    return dp.cross(u_j - u_i) / d2;
}

std::optional<Angle> cruising_angle(const Vec2& p, const Vec2& target) {
    const Vec2 d = target - p;
    if (d.norm_sq() == 0.0) return std::nullopt;
    return Angle{std::atan2(d.y, d.x)};
}

std::optional<RayIntersection> line_intersection(const Vec2& p1, const Vec2& d1,
                                                 const Vec2& p2, const Vec2& d2,
                                                 double parallel_tol) {
    const double den = d1.cross(d2);
    if (std::abs(den) < parallel_tol) return std::nullopt;
    const Vec2 dp = p2 - p1;
    const double k1 = dp.cross(d2) / den;
    const double k2 = dp.cross(d1) / den;
    return RayIntersection{p1 + k1 * d1, k1, k2};
}

std::optional<Vec2> encounter_point(const Vec2& p1, const Vec2& T1,
                                    const Vec2& p2, const Vec2& T2) {
    const Vec2 s1 = T1 - p1;
    const Vec2 s2 = T2 - p2;
    const double len1 = s1.norm();
    const double len2 = s2.norm();
    if (len1 == 0.0 || len2 == 0.0) return std::nullopt;
    const auto hit = line_intersection(p1, s1 * (1.0 / len1), p2, s2 * (1.0 / len2));
    if (!hit) return std::nullopt;
    if (hit->k1 < 0.0 || hit->k1 > len1) return std::nullopt;
    if (hit->k2 < 0.0 || hit->k2 > len2) return std::nullopt;
    return hit->point;
}

}  // namespace encsim
