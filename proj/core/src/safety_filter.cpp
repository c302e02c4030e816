#include "encsim/safety_filter.hpp"

#include <algorithm>
#include <limits>

namespace encsim {

double cbf_value(const Vec2& p1, const Vec2& p2, const SafetyParams& params) {
    return (p1 - p2).norm_sq() - params.margin * params.margin;
}

double half_angle_delta(const Vec2& p1, const Vec2& p2, const SafetyParams& params) {
    const double d = (p1 - p2).norm();
    if (d == 0.0) throw std::domain_error("half_angle_delta: coincident points");
    const double h = cbf_value(p1, p2, params);
    if (h < 0.0) throw std::domain_error("half_angle_delta: safety margin already violated");
    const double level = params.alpha * h / (4.0 * params.speed * d);
    return std::acos(std::min(1.0, level));
}

double free_flight_threshold(const SafetyParams& params) {
    const double a = 2.0 * params.speed / params.alpha;
    return a + std::sqrt(a * a + params.margin * params.margin);
}

FilterDecision apply_heading_correction(Angle bearing_to_other, Angle cruising, int lambda,
                                        double delta, double tie_tol) {
    const double diff = angle_diff(cruising.rad(), bearing_to_other.rad());
    FilterDecision out;
    out.delta = delta;
    if (delta > 0.0 && std::abs(diff) < tie_tol) {
        out.theta = normalize_angle(bearing_to_other.rad() + lambda * delta);
        out.activated = true;
        out.branch = FilterBranch::TieBreak;
    } else if (diff > -delta && diff < 0.0) {
        out.theta = normalize_angle(bearing_to_other.rad() - delta);
        out.activated = true;
        out.branch = FilterBranch::CorrectedMinus;
    } else if (diff > 0.0 && diff < delta) {
        out.theta = normalize_angle(bearing_to_other.rad() + delta);
        out.activated = true;
        out.branch = FilterBranch::CorrectedPlus;
    } else {
        out.theta = cruising;
    }
    return out;
}

FilterDecision filter_heading(const Vec2& p_i, const Vec2& p_j, Angle phi, int lambda,
                              const SafetyParams& params, double tie_tol) {
    const Angle beta = bearing(p_i, p_j);
    const double delta = half_angle_delta(p_i, p_j, params);
    return apply_heading_correction(beta, phi, lambda, delta, tie_tol);
}

Angle qp_oracle(const Vec2& p_i, const Vec2& p_j, Angle phi, const SafetyParams& params,
                int grid_n) {
    if (grid_n < 3600) throw std::invalid_argument("qp_oracle: grid_n must be >= 3600");
    const double d = (p_i - p_j).norm();
    if (d == 0.0) throw std::domain_error("qp_oracle: coincident points");
    const double h = cbf_value(p_i, p_j, params);
    const double level = params.alpha * h / (4.0 * params.speed * d);
    const Angle beta = bearing(p_i, p_j);
    const auto feasible = [&](double theta) {
        return std::cos(angle_diff(theta, beta.rad())) <= level;
    };

    // The objective attains its minimum of zero at phi whenever phi itself
    // satisfies the constraint.
    if (feasible(phi.rad())) return phi;

    const double step = kTwoPi / grid_n;
    double best_theta = 0.0;
    double best_obj = std::numeric_limits<double>::infinity();
    bool found = false;
    for (int k = 0; k < grid_n; ++k) {
        const double theta = -kPi + k * step;
        if (!feasible(theta)) continue;
        const double obj = std::abs(angle_diff(theta, phi.rad()));
        if (obj < best_obj) {
            best_obj = obj;
            best_theta = theta;
            found = true;
        }
    }
    if (!found) throw std::logic_error("qp_oracle: infeasible (h < 0?)");

    // Refine the active constraint boundary: bisect between the best feasible
    // grid point and its objective-improving, infeasible neighbor.
    const double toward = angle_diff(phi.rad(), best_theta) >= 0.0 ? step : -step;
    double lo = best_theta;           // feasible end
    double hi = best_theta + toward;  // infeasible end
    if (!feasible(hi)) {
        for (int it = 0; it < 30; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (feasible(mid)) lo = mid; else hi = mid;
        }
    }
    return normalize_angle(lo);
}

bool cbf_condition_holds(const Vec2& p_i, const Vec2& p_j, const Vec2& u_i,
                         const SafetyParams& params) {
    const double barrier_term = 0.5 * params.alpha * cbf_value(p_i, p_j, params);
    const double motion_term = 2.0 * (p_i - p_j).dot(u_i);
    const double slack = 1e-12 * (1.0 + std::abs(barrier_term) + std::abs(motion_term));
    return barrier_term + motion_term >= -slack;
}

}  // namespace encsim
