#include "encsim/modes.hpp"

#include <algorithm>
#include <cmath>

#include "encsim/rng.hpp"

namespace encsim {

ModeKind classify_mode(const FilterDecision& decision, double beta_rate, double tol_rate) {
    if (tol_rate <= 0.0) throw std::invalid_argument("classify_mode: tol_rate must be > 0");
    if (!decision.activated) return ModeKind::Cruising;
    return std::abs(beta_rate) < tol_rate ? ModeKind::Blocking : ModeKind::Avoiding;
}

std::optional<BlockingMatch> blocking_condition(Angle phi1, Angle beta12, Angle phi2,
                                                Angle beta21, double delta, double tol) {
    const double d1 = angle_diff(phi1.rad(), beta12.rad());
    const double d2 = angle_diff(phi2.rad(), beta21.rad());
    for (int s : {1, -1}) {
        if (s * d1 >= 0.0 && s * d1 < delta && -s * d2 >= 0.0 && -s * d2 < delta) {
            return BlockingMatch{s, BlockingCase::Mutual, 0};
        }
    }
    // One airplane blocked, the other cruising exactly along the blocked
    // airplane's correction boundary (beta + s*delta).
    for (int s : {1, -1}) {
        if (s * d1 >= 0.0 && s * d1 < delta &&
            std::abs(angle_diff(phi2.rad(), beta12.rad() + s * delta)) < tol) {
            return BlockingMatch{s, BlockingCase::OneCruising, 0};
        }
        if (s * d2 >= 0.0 && s * d2 < delta &&
            std::abs(angle_diff(phi1.rad(), beta21.rad() + s * delta)) < tol) {
            return BlockingMatch{s, BlockingCase::OneCruising, 1};
        }
    }
    return std::nullopt;
}

bool predict_blocking(const Vec2& p1, const Vec2& T1, const Vec2& p2, const Vec2& T2,
                      double tol_angle, double tol_dist) {
    const auto phi1 = cruising_angle(p1, T1);
    const auto phi2 = cruising_angle(p2, T2);
    if (!phi1 || !phi2) return false;
    const double d1 = angle_diff(phi1->rad(), bearing(p1, p2).rad());
    const double d2 = angle_diff(phi2->rad(), bearing(p2, p1).rad());
    if (std::abs(d1 + d2) > tol_angle) return false;
    const auto pc = encounter_point(p1, T1, p2, T2);
    if (!pc) return false;
    return std::abs((p1 - *pc).norm() - (p2 - *pc).norm()) <= tol_dist;
}

bool self_unblock_check(Angle phi_i, Angle beta_ij, Angle phi_j, Angle beta_ji, double tol) {
    const double di = std::abs(angle_diff(phi_i.rad(), beta_ij.rad()));
    const double dj = std::abs(angle_diff(phi_j.rad(), beta_ji.rad()));
    return (di < tol && dj > tol) || (dj < tol && di > tol);
}

namespace {

// Net displacement of agent `who` between window entries a and b.
double net_displacement(StatePairWindow w, std::size_t a, std::size_t b, int who) {
    const Vec2 pa = who == 0 ? w[a].first.position : w[a].second.position;
    const Vec2 pb = who == 0 ? w[b].first.position : w[b].second.position;
    return (pb - pa).norm();
}

// Applies `pred(net, chunk_seconds)` to every complete 2 s chunk for both
// agents; returns false as soon as the predicate fails.
template <typename Pred>
bool all_chunks(StatePairWindow w, const DynamicsParams& params, Pred pred) {
    const std::size_t chunk = std::max<std::size_t>(1, std::llround(2.0 / params.dt));
    for (std::size_t i0 = 0; i0 + chunk < w.size(); i0 += chunk) {
        const double seconds = chunk * params.dt;
        for (int who : {0, 1}) {
            if (!pred(net_displacement(w, i0, i0 + chunk, who), seconds)) return false;
        }
    }
    return true;
}

}  // namespace

bool detect_deadlock(StatePairWindow window, const DynamicsParams& params) {
    if (window.size() < 2 || (window.size() - 1) * params.dt < 2.0 - 1e-9) {
        throw std::invalid_argument("detect_deadlock: window shorter than 2 s");
    }
    return all_chunks(window, params, [&](double net, double seconds) {
        return net < 0.1 * params.speed * seconds;
    });
}

bool detect_livelock(StatePairWindow window, const Vec2& target1, const Vec2& target2,
                     const DynamicsParams& params, double margin) {
    const double orbit_period = kTwoPi * margin / params.speed;
    if (window.size() < 2 || (window.size() - 1) * params.dt < orbit_period - 1e-9) {
        throw std::invalid_argument("detect_livelock: window shorter than one orbit period");
    }
    // Moving at short scales ...
    const bool moving = all_chunks(window, params, [&](double net, double seconds) {
        return net >= 0.5 * params.speed * seconds;
    });
    if (!moving) return false;
    // ... but the distance to target shows no net decrease.
    const double span_s = (window.size() - 1) * params.dt;
    const double slack = 0.05 * params.speed * span_s;
    const auto no_progress = [&](int who, const Vec2& target) {
        const Vec2 first = who == 0 ? window.front().first.position : window.front().second.position;
        const Vec2 last = who == 0 ? window.back().first.position : window.back().second.position;
        return (last - target).norm() >= (first - target).norm() - slack;
    };
    return no_progress(0, target1) && no_progress(1, target2);
}

BlockingProbabilityResult blocking_probability_experiment(std::int64_t n_samples,
                                                          std::uint64_t seed) {
    if (n_samples < 100000) {
        throw std::invalid_argument("blocking_probability_experiment: need n >= 1e5");
    }
    SplitMix64 rng(seed);
    const Angle ego_phi{0.0};  // ego at the circle center, aimed along +x
    std::int64_t blocking = 0;
    std::int64_t deadlock = 0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        const double psi = rng.uniform_angle();
        const Angle beta_ij{psi};
        const Angle beta_ji{psi + kPi};
        const Angle phi_j{rng.uniform_angle()};
        // Distance exactly r: the unsafe arc spans the full half-plane.
        const auto match = blocking_condition(ego_phi, beta_ij, phi_j, beta_ji, kPi / 2.0);
        if (match && match->kind == BlockingCase::Mutual) ++blocking;
        if (angle_diff(ego_phi.rad(), beta_ij.rad()) == 0.0 &&
            angle_diff(phi_j.rad(), beta_ji.rad()) == 0.0) {
            ++deadlock;
        }
    }
    const double n = static_cast<double>(n_samples);
    return {static_cast<double>(blocking) / n, static_cast<double>(deadlock) / n};
}

}  // namespace encsim
