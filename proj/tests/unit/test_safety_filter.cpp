#include <doctest.h>

#include <cmath>

#include "encsim/rng.hpp"
#include "encsim/safety_filter.hpp"

using namespace encsim;

namespace {
const SafetyParams kParams{30.0, 3.0, 5.0};

// Random safe pair geometry: p_i at the origin, p_j at distance in [r, far).
struct RandomCase {
    Vec2 p_i, p_j;
    Angle phi;
};

RandomCase random_case(SplitMix64& rng, double d_lo, double d_hi) {
    const double d = rng.uniform(d_lo, d_hi);
    const double psi = rng.uniform_angle();
    return {{0, 0}, {d * std::cos(psi), d * std::sin(psi)}, Angle{rng.uniform_angle()}};
}
}  // namespace

TEST_CASE("cbf_value") {
    CHECK(cbf_value({0, 0}, {30, 0}, kParams) == doctest::Approx(0.0));
    CHECK(cbf_value({0, -30}, {0, 30}, kParams) == doctest::Approx(2700.0));
    CHECK(cbf_value({0, 0}, {0, 0}, kParams) == doctest::Approx(-900.0));
}

TEST_CASE("half_angle_delta") {
    CHECK(half_angle_delta({0, 0}, {30, 0}, kParams) == doctest::Approx(kPi / 2.0));
    // Frozen from acos(3*61/620); cross-checked against the oracle's
    // feasibility boundary below.
    CHECK(half_angle_delta({0, 0}, {31, 0}, kParams) == doctest::Approx(1.2711720012276373));
    // Beyond the free-flight threshold the arc closes.
    CHECK(half_angle_delta({0, 0}, {40, 0}, kParams) == doctest::Approx(0.0));
    CHECK_THROWS_AS(half_angle_delta({0, 0}, {10, 0}, kParams), std::domain_error);
}

TEST_CASE("half_angle_delta agrees with the oracle's feasibility boundary") {
    // Bisect the largest |phi - beta| whose filtered output still moves:
    // feed the oracle headings on one side of the bearing and find where the
    // constraint stops binding.
    const Vec2 p_i{0, 0};
    const Vec2 p_j{31, 0};
    double lo = 0.0;   // inside the unsafe arc
    double hi = kPi;   // certainly safe
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Angle result = qp_oracle(p_i, p_j, Angle{mid}, kParams);
        const bool corrected = std::abs(angle_diff(result.rad(), mid)) > 1e-9;
        if (corrected) lo = mid; else hi = mid;
    }
    CHECK(half_angle_delta(p_i, p_j, kParams) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-6));
}

TEST_CASE("free_flight_threshold") {
    CHECK(free_flight_threshold(kParams) == doctest::Approx(33.51795046045805));
    // alpha -> infinity and v -> 0 both collapse to r.
    CHECK(free_flight_threshold({30.0, 1e12, 5.0}) == doctest::Approx(30.0).epsilon(1e-6));
    CHECK(free_flight_threshold({30.0, 3.0, 1e-9}) == doctest::Approx(30.0).epsilon(1e-6));
}

TEST_CASE("no heading activates the filter just above the threshold") {
    const double d = free_flight_threshold(kParams) + 1e-9;
    const Vec2 p_i{0, 0};
    const Vec2 p_j{d, 0};
    const int grid = 10000;
    for (int k = 0; k < grid; ++k) {
        const Angle phi{-kPi + k * (kTwoPi / grid)};
        const FilterDecision dec = filter_heading(p_i, p_j, phi, 1, kParams);
        CHECK_FALSE(dec.activated);
        const Vec2 u = kParams.speed * phi.unit();
        CHECK(cbf_condition_holds(p_i, p_j, u, kParams));
    }
}

TEST_CASE("filter_heading branches") {
    const Vec2 p_i{0, 0};
    const Vec2 p_j{31, 0};  // bearing 0, delta ~ 1.2712
    const double delta = half_angle_delta(p_i, p_j, kParams);

    SUBCASE("outside the arc: unchanged") {
        const Angle phi{delta + 0.05};
        const FilterDecision dec = filter_heading(p_i, p_j, phi, 1, kParams);
        CHECK_FALSE(dec.activated);
        CHECK(dec.branch == FilterBranch::Unchanged);
        CHECK(dec.theta.rad() == phi.rad());
    }
    SUBCASE("exactly on the boundary: unchanged") {
        const FilterDecision dec = filter_heading(p_i, p_j, Angle{delta}, 1, kParams);
        CHECK_FALSE(dec.activated);
    }
    SUBCASE("negative side corrects to beta - delta") {
        const FilterDecision dec = filter_heading(p_i, p_j, Angle{-0.3}, 1, kParams);
        CHECK(dec.activated);
        CHECK(dec.branch == FilterBranch::CorrectedMinus);
        CHECK(dec.theta.rad() == doctest::Approx(-delta));
    }
    SUBCASE("positive side corrects to beta + delta") {
        const FilterDecision dec = filter_heading(p_i, p_j, Angle{0.3}, 1, kParams);
        CHECK(dec.activated);
        CHECK(dec.branch == FilterBranch::CorrectedPlus);
        CHECK(dec.theta.rad() == doctest::Approx(delta));
    }
    SUBCASE("tie goes to the preferred side") {
        const FilterDecision plus = filter_heading(p_i, p_j, Angle{0.0}, 1, kParams);
        CHECK(plus.branch == FilterBranch::TieBreak);
        CHECK(plus.theta.rad() == doctest::Approx(delta));
        const FilterDecision minus = filter_heading(p_i, p_j, Angle{0.0}, -1, kParams);
        CHECK(minus.theta.rad() == doctest::Approx(-delta));
    }
}

TEST_CASE("tie branch example: beta 0, delta 0.8 arc") {
    // Distance chosen so delta ~= 0.8: solve alpha*h/(4vd) = cos(0.8).
    // 3*(d^2-900) = 20*d*cos(0.8) -> d ~= 32.35; verify numerically.
    const double target_delta = 0.8;
    double lo = 30.0, hi = 33.5;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (half_angle_delta({0, 0}, {mid, 0}, kParams) > target_delta ? lo : hi) = mid;
    }
    const Vec2 p_j{0.5 * (lo + hi), 0};
    const FilterDecision dec = filter_heading({0, 0}, p_j, Angle{0.0}, 1, kParams);
    CHECK(dec.branch == FilterBranch::TieBreak);
    CHECK(dec.theta.rad() == doctest::Approx(0.8).epsilon(1e-8));
}

TEST_CASE("qp_oracle basics") {
    const Vec2 p_i{0, 0};
    SUBCASE("free flight returns phi unchanged") {
        const Vec2 p_j{50, 0};
        const Angle phi{0.4};
        CHECK(qp_oracle(p_i, p_j, phi, kParams).rad() == phi.rad());
    }
    SUBCASE("diametrically opposed cruising is feasible") {
        const Vec2 p_j{30.5, 0};
        const Angle phi{-kPi};
        CHECK(qp_oracle(p_i, p_j, phi, kParams).rad() == phi.rad());
    }
    SUBCASE("grid_n below the floor is rejected") {
        CHECK_THROWS_AS(qp_oracle(p_i, {31, 0}, Angle{0.0}, kParams, 100),
                        std::invalid_argument);
    }
}

TEST_CASE("filter_heading matches the oracle on random safe states") {
    SplitMix64 rng(31);
    int checked = 0;
    for (int i = 0; i < 20000; ++i) {
        const RandomCase c = random_case(rng, 30.0, 40.0);
        const double tie = std::abs(angle_diff(c.phi.rad(), bearing(c.p_i, c.p_j).rad()));
        if (tie < 1e-6) continue;  // both corrections optimal at the tie
        const FilterDecision dec = filter_heading(c.p_i, c.p_j, c.phi, 1, kParams);
        const Angle oracle = qp_oracle(c.p_i, c.p_j, c.phi, kParams);
        CHECK(std::abs(angle_diff(dec.theta.rad(), oracle.rad())) < 1e-3);
        ++checked;
    }
    CHECK(checked > 15000);
}

TEST_CASE("filter output lands exactly on the arc boundary when active") {
    SplitMix64 rng(32);
    for (int i = 0; i < 20000; ++i) {
        const RandomCase c = random_case(rng, 30.0, 40.0);
        const FilterDecision dec = filter_heading(c.p_i, c.p_j, c.phi, 1, kParams);
        if (!dec.activated) continue;
        const double off = std::abs(angle_diff(dec.theta.rad(), bearing(c.p_i, c.p_j).rad()));
        CHECK(std::abs(off - dec.delta) < 1e-9);
    }
}

TEST_CASE("filter output always satisfies the CBF condition") {
    SplitMix64 rng(33);
    for (int i = 0; i < 20000; ++i) {
        const RandomCase c = random_case(rng, 30.0, 45.0);
        const FilterDecision dec = filter_heading(c.p_i, c.p_j, c.phi, rng.pick_sign(), kParams);
        const Vec2 u = kParams.speed * dec.theta.unit();
        CHECK(cbf_condition_holds(c.p_i, c.p_j, u, kParams));
    }
}

TEST_CASE("delta is non-increasing in distance") {
    double prev = kPi;
    for (double d = 30.0; d <= free_flight_threshold(kParams) + 0.5; d += 0.01) {
        const double delta = half_angle_delta({0, 0}, {d, 0}, kParams);
        CHECK(delta <= prev + 1e-15);
        prev = delta;
    }
}

TEST_CASE("decentralized conditions sum to the centralized one") {
    SplitMix64 rng(34);
    for (int i = 0; i < 5000; ++i) {
        const Vec2 p1{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        const Vec2 p2{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        if ((p1 - p2).norm() < 1.0) continue;
        const Vec2 u1 = kParams.speed * Angle{rng.uniform_angle()}.unit();
        const Vec2 u2 = kParams.speed * Angle{rng.uniform_angle()}.unit();
        const double h = cbf_value(p1, p2, kParams);
        const double g1 = 0.5 * kParams.alpha * h + 2.0 * (p1 - p2).dot(u1);
        const double g2 = 0.5 * kParams.alpha * h + 2.0 * (p2 - p1).dot(u2);
        const double central = kParams.alpha * h + 2.0 * (p1 - p2).dot(u1 - u2);
        CHECK(g1 + g2 == doctest::Approx(central).epsilon(1e-12));
    }
}

TEST_CASE("cbf_condition_holds signs") {
    // Heading directly away from the opponent with h >= 0.
    CHECK(cbf_condition_holds({0, 0}, {35, 0}, {-5, 0}, kParams));
    // At h = 0, heading straight at the opponent fails by -2*v*r.
    CHECK_FALSE(cbf_condition_holds({0, 0}, {30, 0}, {5, 0}, kParams));
}
