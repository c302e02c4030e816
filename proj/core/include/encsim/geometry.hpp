#pragma once
/// \file geometry.hpp
/// \brief Planar vectors, normalized angles, bearings and ray/segment
///        intersection used throughout the encounter simulator.

#include <cmath>
#include <optional>
#include <stdexcept>

namespace encsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// 2D vector in meters (positions, targets) or m/s (velocities).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double px, double py) : x(px), y(py) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& r) { x += r.x; y += r.y; return *this; }
    Vec2& operator-=(const Vec2& r) { x -= r.x; y -= r.y; return *this; }
    constexpr bool operator==(const Vec2& r) const = default;

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    /// 2D scalar cross product: x*r.y - y*r.x.
    constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }
    constexpr double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }

    /// Unit vector; {0,0} when the norm is at or below eps.
    Vec2 normalized(double eps = 1e-300) const {
        const double n = norm();
        if (n <= eps) return {0.0, 0.0};
        return {x / n, y / n};
    }
};

/// Heading/bearing angle kept normalized to [-pi, pi).
///
/// Construction applies the wrap ((a + pi) mod 2pi) - pi, so building an
/// Angle from any real (including an already normalized one) is idempotent.
class Angle {
  public:
    constexpr Angle() = default;
    explicit Angle(double radians);

    double rad() const { return rad_; }
    Vec2 unit() const { return {std::cos(rad_), std::sin(rad_)}; }

    bool operator==(const Angle& r) const = default;

  private:
    double rad_ = 0.0;
};

/// Wraps an arbitrary finite angle into [-pi, pi).
/// Throws std::invalid_argument on NaN/infinite input.
Angle normalize_angle(double radians);

/// Shorthand for the wrapped difference normalize_angle(a - b) in [-pi, pi).
double angle_diff(double a, double b);

/// Bearing angle from p_i toward p_j (the angle of p_j - p_i).
/// Throws std::domain_error when the points coincide.
Angle bearing(const Vec2& p_i, const Vec2& p_j);

/// Time derivative of the bearing from p_i to p_j given both velocities:
/// ((p_j - p_i) x (u_j - u_i)) / |p_j - p_i|^2, in rad/s.
/// Throws std::domain_error when the points coincide.
double bearing_rate(const Vec2& p_i, const Vec2& p_j, const Vec2& u_i, const Vec2& u_j);

/// Heading that points from p straight at the target T.
/// Empty result signals "target reached" (p == T); the caller decides what
/// that means, it is not representable as an angle.
std::optional<Angle> cruising_angle(const Vec2& p, const Vec2& target);

struct RayIntersection {
    Vec2 point;
    double k1 = 0.0;  ///< distance along d1 from p1
    double k2 = 0.0;  ///< distance along d2 from p2
};

/// Intersection of two rays p1 + k1*d1 and p2 + k2*d2 (d1, d2 unit vectors).
/// Empty when |d1 x d2| is below parallel_tol.
std::optional<RayIntersection> line_intersection(const Vec2& p1, const Vec2& d1,
                                                 const Vec2& p2, const Vec2& d2,
                                                 double parallel_tol = 1e-12);

/// Intersection of the segments p1->T1 and p2->T2, when one exists with both
/// scalars inside [0, segment length].
std::optional<Vec2> encounter_point(const Vec2& p1, const Vec2& T1,
                                    const Vec2& p2, const Vec2& T2);

}  // namespace encsim
