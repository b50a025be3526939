#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracle/expected_values.hpp"
#include "slipsim/asymptotics.hpp"

using namespace slip;

namespace {

const ModelParams kRef12 = ModelParams::make(0.4, 1.0, 0.1, 12.0);
const ModelParams kRef400 = ModelParams::make(0.4, 1.0, 0.1, 400.0);

}  // namespace

TEST_CASE("strained frequency") {
    CHECK(strained_frequency(0.0, 0.7).value == 1.0);
    CHECK(strained_frequency(0.3, 0.0).value == 1.0);
    CHECK(strained_frequency(0.1, 1.0).value == doctest::Approx(0.995).epsilon(1e-15));
    CHECK(strained_frequency(kRef12).value ==
          doctest::Approx(oracle::kStrainedFreq12).epsilon(1e-15));
    CHECK(strained_frequency(0.1, 1.0).omega1 == 0.0);
    CHECK(strained_frequency(0.1, 1.0).omega2 == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK_THROWS_AS(strained_frequency(2.0, 1.0), ValidationError);
}

TEST_CASE("fast approximations honor the touchdown data") {
    CHECK(fast_length(0.0, kRef12) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fast_angle(0.0, kRef12) == doctest::Approx(-kRef12.alpha).epsilon(1e-15));
    // d(angle)/d tau+ at 0 equals eps * theta_d
    const double h = 1e-6;
    const double slope =
        (fast_angle(h, kRef12) - fast_angle(-h, kRef12)) / (2.0 * h);
    CHECK(slope == doctest::Approx(kRef12.epsilon * kRef12.theta_d).epsilon(1e-8));
    const double lslope =
        (fast_length(h, kRef12) - fast_length(-h, kRef12)) / (2.0 * h);
    CHECK(lslope == doctest::Approx(-kRef12.epsilon * kRef12.L_d).epsilon(1e-8));
}

TEST_CASE("fast approximations at tau+ = pi match the hand-derived values") {
    CHECK(fast_length(std::numbers::pi, kRef400) ==
          doctest::Approx(oracle::kFastLengthPi400).epsilon(1e-14));
    CHECK(fast_angle(std::numbers::pi, kRef400) ==
          doctest::Approx(oracle::kFastAnglePi400).epsilon(1e-14));
}

TEST_CASE("length approximation closes after a full fast period") {
    CHECK(std::abs(fast_length(2.0 * std::numbers::pi, kRef400) - 1.0) < 1e-14);
    std::mt19937 rng(1123);
    std::uniform_real_distribution<double> tau(0.0, 20.0);
    for (int i = 0; i < 100; ++i) {
        const double t = tau(rng);
        CHECK(std::abs(fast_length(t + 2.0 * std::numbers::pi, kRef400) -
                       fast_length(t, kRef400)) < 1e-13);
    }
}

TEST_CASE("angle approximation is periodic about its polynomial part") {
    const auto polynomial = [&](double tau) {
        const double e = kRef400.epsilon;
        return -kRef400.alpha + e * kRef400.theta_d * tau -
               0.5 * e * e * std::sin(kRef400.alpha) * tau * tau;
    };
    std::mt19937 rng(40129);
    std::uniform_real_distribution<double> tau(0.0, 20.0);
    for (int i = 0; i < 100; ++i) {
        const double t = tau(rng);
        const double lhs = fast_angle(t + 2.0 * std::numbers::pi, kRef400) -
                           polynomial(t + 2.0 * std::numbers::pi);
        const double rhs = fast_angle(t, kRef400) - polynomial(t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("relabeling between time scales") {
    IntegratorConfig cfg;
    cfg.step = 1e-3;
    const Trajectory slow = simulate(kRef12, 0.5, cfg);
    const Trajectory strained = relabel(slow, TimeScale::Strained);
    const double omega = strained_frequency(kRef12).value;

    CHECK(strained.scale == TimeScale::Strained);
    const std::size_t mid = slow.times.size() / 2;
    CHECK(strained.times[mid] ==
          doctest::Approx(omega * slow.times[mid] / kRef12.epsilon).epsilon(1e-14));
    // rates convert with dt/dtau+
    CHECK(strained.states[mid].theta_dot ==
          doctest::Approx(slow.states[mid].theta_dot * kRef12.epsilon / omega)
              .epsilon(1e-13));

    const Trajectory back = relabel(strained, TimeScale::Slow);
    CHECK(back.times[mid] == doctest::Approx(slow.times[mid]).epsilon(1e-14));
    CHECK(back.states[mid].L_dot ==
          doctest::Approx(slow.states[mid].L_dot).epsilon(1e-13));

    Trajectory no_params = slow;
    no_params.params.reset();
    CHECK_THROWS_AS(relabel(no_params, TimeScale::Fast), ValidationError);
}

TEST_CASE("slow angle: fixed point at the vertical") {
    const ModelParams p = ModelParams::make(0.0, 0.0, 0.0, 100.0);
    const std::vector<double> grid{0.0, 0.5, 1.0, 1.5};
    const Trajectory traj = slow_angle(grid, p);
    for (const State& s : traj.states) {
        CHECK(std::abs(s.theta) < 1e-15);
        CHECK(std::abs(s.theta_dot) < 1e-15);
        CHECK(s.L == 1.0);
    }
}

TEST_CASE("slow angle: small-angle closed form against the pendulum solve") {
    // pick U so that theta_d = alpha = 0.01
    const double alpha = 0.01;
    const double U = alpha / std::cos(alpha);
    const ModelParams p = ModelParams::make(alpha, U, 0.0, 1e4);
    const std::vector<double> grid{0.0, 0.5, 1.0};

    const Trajectory closed = slow_angle(grid, p, SlowAngleMethod::SmallAngle);
    CHECK(closed.states.back().theta ==
          doctest::Approx(oracle::kSmallAngleT1).epsilon(1e-12));

    const Trajectory numeric = slow_angle(grid, p, SlowAngleMethod::Rk4, 1e-3);
    const double gap = std::abs(numeric.states.back().theta - closed.states.back().theta);
    CHECK(gap < 5e-6);  // cubic-in-angle difference between sin(theta) and theta
}

TEST_CASE("slow angle conserves its first integral") {
    const std::vector<double> grid{0.0, 0.75, 1.5, 2.25, 3.0};
    const Trajectory traj = slow_angle(grid, kRef12, SlowAngleMethod::Rk4, 1e-3);
    const auto invariant = [](const State& s) {
        return 0.5 * s.theta_dot * s.theta_dot + std::cos(s.theta);
    };
    const double c0 = invariant(traj.states.front());
    for (const State& s : traj.states) {
        CHECK(std::abs(invariant(s) - c0) < 1e-10);
    }
}

TEST_CASE("slow angle matches the linear drift to second order in eps") {
    // theta0(eps*tau) - (-alpha + eps theta_d tau) shrinks like eps^2
    const auto gap = [&](double eps) {
        const std::vector<double> grid{0.0, eps * std::numbers::pi};
        const Trajectory traj = slow_angle(grid, kRef12, SlowAngleMethod::Rk4, 1e-4);
        const double linear = -kRef12.alpha + kRef12.theta_d * grid[1];
        return std::abs(traj.states.back().theta - linear);
    };
    const double ratio = gap(0.02) / gap(0.01);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("slow angle input validation") {
    CHECK_THROWS_AS(slow_angle(std::vector<double>{}, kRef12), ValidationError);
    CHECK_THROWS_AS(slow_angle(std::vector<double>{0.0, 0.0}, kRef12), ValidationError);
    CHECK_THROWS_AS(slow_angle(std::vector<double>{0.5, 1.0}, kRef12), ValidationError);
}

TEST_CASE("consistency check") {
    SUBCASE("large stiffness reference case") {
        const auto report =
            consistency_check(ModelParams::make(0.2, 1.0, 0.1, 1e4), 10.0);
        CHECK(report.core_pass);
        REQUIRE(report.entries.size() == 6);
        CHECK(report.entries[0].ratio == doctest::Approx(32.16).epsilon(1e-3));
        CHECK(report.entries[1].pass);
        CHECK(report.entries[2].pass);
        CHECK(report.entries[3].pass);
        // the small-angle window's lower bound genuinely fails here:
        // 2 U alpha / pi = 0.127 exceeds V = 0.1
        CHECK_FALSE(report.entries[4].pass);
        CHECK(report.entries[4].advisory);
        CHECK(report.entries[4].ratio == doctest::Approx(0.7854).epsilon(1e-3));
        CHECK(report.entries[5].pass);
    }
    SUBCASE("soft spring fails the large-stiffness requirement") {
        const auto report = consistency_check(ModelParams::make(0.2, 1.0, 0.1, 1.0), 10.0);
        CHECK_FALSE(report.entries[2].pass);
        CHECK_FALSE(report.core_pass);
    }
    SUBCASE("zero vertical speed fails the window's lower bound") {
        const auto report = consistency_check(ModelParams::make(0.2, 1.0, 0.0, 1e4), 10.0);
        CHECK_FALSE(report.entries[4].pass);
    }
    SUBCASE("margin must exceed one") {
        CHECK_THROWS_AS(consistency_check(kRef12, 1.0), ValidationError);
    }
}
