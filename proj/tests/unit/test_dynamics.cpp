#include <doctest.h>

#include <cmath>

#include "encsim/dynamics.hpp"
#include "encsim/rng.hpp"

using namespace encsim;

TEST_CASE("single integrator step") {
    DynamicsParams p{5.0, MotionModel::SingleIntegrator, 0.0, 0.1};
    KinematicState s{{0, 0}, Angle{0.0}};

    const auto s1 = step_single_integrator(s, Angle{0.0}, p);
    CHECK(s1.position.x == doctest::Approx(0.5));
    CHECK(s1.position.y == doctest::Approx(0.0));
    CHECK(s1.heading.rad() == 0.0);

    DynamicsParams p2{1.0, MotionModel::SingleIntegrator, 0.0, 1.0};
    const auto s2 = step_single_integrator(s, Angle{kPi / 2.0}, p2);
    CHECK(s2.position.x == doctest::Approx(0.0));
    CHECK(s2.position.y == doctest::Approx(1.0));
    CHECK(s2.heading.rad() == doctest::Approx(kPi / 2.0));
}

TEST_CASE("two half steps equal one double step on a constant heading") {
    DynamicsParams half{5.0, MotionModel::SingleIntegrator, 0.0, 0.05};
    DynamicsParams full{5.0, MotionModel::SingleIntegrator, 0.0, 0.10};
    KinematicState s{{3, -2}, Angle{0.3}};
    const auto a = step_single_integrator(step_single_integrator(s, Angle{0.0}, half),
                                          Angle{0.0}, half);
    const auto b = step_single_integrator(s, Angle{0.0}, full);
    CHECK(a.position.x == doctest::Approx(b.position.x).epsilon(1e-12));
    CHECK(a.position.y == doctest::Approx(b.position.y).epsilon(1e-12));
}

TEST_CASE("per-step displacement is exactly v*dt") {
    SplitMix64 rng(21);
    DynamicsParams p{5.0, MotionModel::SingleIntegrator, 0.0, 0.05};
    for (int i = 0; i < 1000; ++i) {
        KinematicState s{{rng.uniform(-100, 100), rng.uniform(-100, 100)},
                         Angle{rng.uniform_angle()}};
        const Angle cmd{rng.uniform_angle()};
        const auto s2 = step_single_integrator(s, cmd, p);
        CHECK((s2.position - s.position).norm() ==
              doctest::Approx(p.speed * p.dt).epsilon(1e-12));
    }
}

TEST_CASE("unicycle heading error contracts per Euler step") {
    DynamicsParams p{5.0, MotionModel::Unicycle, 10.0, 0.01};
    KinematicState s{{0, 0}, Angle{0.1}};
    const auto s1 = step_unicycle(s, Angle{0.0}, 0.0, p);
    // err' = err * (1 - k*dt) = 0.1 * 0.9
    CHECK(s1.heading.rad() == doctest::Approx(0.09));
}

TEST_CASE("unicycle with matched heading moves like the integrator") {
    DynamicsParams p{5.0, MotionModel::Unicycle, 10.0, 0.01};
    KinematicState s{{1, 2}, Angle{0.7}};
    const auto u = step_unicycle(s, Angle{0.7}, 0.0, p);
    const auto si = step_single_integrator(s, Angle{0.7}, p);
    CHECK(u.position.x == doctest::Approx(si.position.x).epsilon(1e-12));
    CHECK(u.position.y == doctest::Approx(si.position.y).epsilon(1e-12));
    CHECK(u.heading.rad() == doctest::Approx(0.7));
}

TEST_CASE("unicycle approaches the integrator as the gain grows") {
    // Shared command sequence: a slow sweep of the heading command.
    const double dt = 0.005;
    const int steps = 2000;
    const auto run_gap = [&](double gain) {
        DynamicsParams pu{5.0, MotionModel::Unicycle, gain, dt};
        DynamicsParams ps{5.0, MotionModel::SingleIntegrator, 0.0, dt};
        KinematicState u{{0, 0}, Angle{0.0}};
        KinematicState s{{0, 0}, Angle{0.0}};
        double max_gap = 0.0;
        double prev_cmd = 0.0;
        for (int k = 0; k < steps; ++k) {
            const double cmd = 0.8 * std::sin(0.02 * k);
            const double rate = (cmd - prev_cmd) / dt;
            u = step_unicycle(u, Angle{cmd}, rate, pu);
            s = step_single_integrator(s, Angle{cmd}, ps);
            max_gap = std::max(max_gap, (u.position - s.position).norm());
            prev_cmd = cmd;
        }
        return max_gap;
    };
    const double g20 = run_gap(20.0);
    const double g50 = run_gap(50.0);
    const double g100 = run_gap(100.0);
    CHECK(g50 < g20);
    CHECK(g100 < g50);
}
