#include <doctest.h>

#include <cmath>

#include "encsim/geometry.hpp"
#include "encsim/rng.hpp"

using namespace encsim;

TEST_CASE("normalize_angle maps into [-pi, pi)") {
    CHECK(normalize_angle(kPi).rad() == doctest::Approx(-kPi));
    CHECK(normalize_angle(0.0).rad() == 0.0);
    CHECK(normalize_angle(3.0 * kPi / 2.0).rad() == doctest::Approx(-kPi / 2.0));
    CHECK(normalize_angle(-kPi).rad() == doctest::Approx(-kPi));

    SplitMix64 rng(11);
    for (int i = 0; i < 5000; ++i) {
        const double a = rng.uniform(-50.0, 50.0);
        const double w = normalize_angle(a).rad();
        CHECK(w >= -kPi);
        CHECK(w < kPi);
        // Idempotent under re-normalization.
        CHECK(normalize_angle(w).rad() == w);
    }
}

TEST_CASE("normalize_angle is 2*pi periodic on a grid") {
    for (int ai = 0; ai <= 40; ++ai) {
        const double a = -kPi + ai * (kTwoPi / 40.0);
        const double base = normalize_angle(a).rad();
        for (int n = -3; n <= 3; ++n) {
            CHECK(normalize_angle(a + kTwoPi * n).rad() == doctest::Approx(base).epsilon(1e-12));
        }
    }
}

TEST_CASE("normalize_angle rejects non-finite input") {
    CHECK_THROWS_AS(normalize_angle(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(normalize_angle(INFINITY), std::invalid_argument);
}

TEST_CASE("bearing basics") {
    CHECK(bearing({0, 0}, {1, 0}).rad() == 0.0);
    CHECK(bearing({0, 0}, {0, 2}).rad() == doctest::Approx(kPi / 2.0));
    CHECK(bearing({1, 1}, {0, 1}).rad() == doctest::Approx(-kPi));
    CHECK_THROWS_AS(bearing({1, 1}, {1, 1}), std::domain_error);
}

TEST_CASE("bearing antisymmetry: beta_ij = wrap(beta_ji + pi)") {
    SplitMix64 rng(12);
    for (int i = 0; i < 2000; ++i) {
        const Vec2 a{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        const Vec2 b{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        if ((a - b).norm() < 1e-6) continue;
        CHECK(bearing(a, b).rad() ==
              doctest::Approx(normalize_angle(bearing(b, a).rad() + kPi).rad()).epsilon(1e-12));
    }
}

TEST_CASE("bearing_rate") {
    CHECK(bearing_rate({0, 0}, {10, 0}, {3, 1}, {3, 1}) == 0.0);
    // Relative velocity parallel to relative position.
    CHECK(bearing_rate({0, 0}, {10, 0}, {1, 0}, {4, 0}) == 0.0);
    CHECK(bearing_rate({0, 0}, {1, 0}, {1, 0}, {1, 2}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(bearing_rate({0, 0}, {0, 0}, {1, 0}, {0, 1}), std::domain_error);

    // Invariant under negating both arguments of the cross product.
    SplitMix64 rng(13);
    for (int i = 0; i < 2000; ++i) {
        const Vec2 pi_{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        const Vec2 pj{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        if ((pi_ - pj).norm() < 1e-6) continue;
        const Vec2 ui{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const Vec2 uj{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        CHECK(bearing_rate(pi_, pj, ui, uj) ==
              doctest::Approx(bearing_rate(pj, pi_, uj, ui)).epsilon(1e-12));
    }
}

TEST_CASE("cruising_angle") {
    CHECK(cruising_angle({0, 0}, {5, 5})->rad() == doctest::Approx(kPi / 4.0));
    CHECK(cruising_angle({0, 0}, {-1, 0})->rad() == doctest::Approx(-kPi));
    CHECK(cruising_angle({0, -30}, {80, 50})->rad() == doctest::Approx(kPi / 4.0));
    CHECK_FALSE(cruising_angle({2, 3}, {2, 3}).has_value());
}

TEST_CASE("line_intersection") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    auto hit = line_intersection({0, 0}, {1, 0}, {1, 1}, {0, -1});
    REQUIRE(hit.has_value());
    CHECK(hit->point.x == doctest::Approx(1.0));
    CHECK(hit->point.y == doctest::Approx(0.0));
    CHECK(hit->k1 == doctest::Approx(1.0));
    CHECK(hit->k2 == doctest::Approx(1.0));

    CHECK_FALSE(line_intersection({0, 0}, {1, 0}, {0, 2}, {1, 0}).has_value());

    // Solved by hand: from (0,2) along (1,-1)/sqrt(2), y hits 0 after
    // k2 = 2*sqrt(2), at x = 2.
    hit = line_intersection({0, 0}, {1, 0}, {0, 2}, {inv_sqrt2, -inv_sqrt2});
    REQUIRE(hit.has_value());
    CHECK(hit->point.x == doctest::Approx(2.0));
    CHECK(hit->point.y == doctest::Approx(0.0));
    CHECK(hit->k1 == doctest::Approx(2.0));
    CHECK(hit->k2 == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("line_intersection round-trips a random point") {
    SplitMix64 rng(14);
    for (int i = 0; i < 2000; ++i) {
        const Vec2 x{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        const Vec2 p1{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        const Vec2 p2{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        if ((x - p1).norm() < 1.0 || (x - p2).norm() < 1.0) continue;
        const Vec2 d1 = (x - p1).normalized();
        const Vec2 d2 = (x - p2).normalized();
        if (std::abs(d1.cross(d2)) < 1e-3) continue;  // nearly collinear setup
        const auto hit = line_intersection(p1, d1, p2, d2);
        REQUIRE(hit.has_value());
        CHECK((hit->point - x).norm() < 1e-9);
    }
}

TEST_CASE("encounter_point") {
    auto pc = encounter_point({0, -1}, {0, 1}, {-1, 0}, {1, 0});
    REQUIRE(pc.has_value());
    CHECK(pc->x == doctest::Approx(0.0));
    CHECK(pc->y == doctest::Approx(0.0));

    CHECK_FALSE(encounter_point({0, 0}, {1, 0}, {0, 1}, {1, 1}).has_value());
    // Infinite lines cross behind the segments.
    CHECK_FALSE(encounter_point({0, 0}, {1, 0}, {2, 1}, {2, 2}).has_value());
}
