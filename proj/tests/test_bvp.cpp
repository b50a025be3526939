#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracle/expected_values.hpp"
#include "slipsim/asymptotics.hpp"
#include "slipsim/bvp.hpp"

using namespace slip;

TEST_CASE("closed-form stiffness estimate") {
    CHECK(approx_stiffness(0.4, 1.0, 0.1) ==
          doctest::Approx(oracle::kStiffnessApprox04).epsilon(1e-14));
    CHECK(approx_stiffness(0.1, 1.0, 0.1) ==
          doctest::Approx(oracle::kStiffnessApprox01).epsilon(1e-14));
    // theta_d = 0 sits outside the validity region; the estimate collapses
    CHECK(approx_stiffness(0.4, 0.1, 0.1 / std::tan(0.4)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(approx_stiffness(0.0, 1.0, 0.1), ValidationError);
    CHECK_THROWS_AS(approx_stiffness(-0.2, 1.0, 0.1), ValidationError);
}

TEST_CASE("attack angle matching a target stiffness") {
    for (double K : {1e2, 1e4, 1e6}) {
        const double a = matching_attack_angle(K, 1.0, 0.1);
        CHECK(approx_stiffness(a, 1.0, 0.1) == doctest::Approx(K).epsilon(1e-10));
    }
    CHECK_THROWS_AS(matching_attack_angle(0.0, 1.0, 0.1), ValidationError);
}

TEST_CASE("refined return phase") {
    SUBCASE("tends to pi as the spring stiffens") {
        const auto r = refined_return_phase(ModelParams::make(0.4, 1.0, 0.1, 1e16));
        CHECK(r.mu == doctest::Approx(std::numbers::pi).epsilon(1e-8));
        CHECK_FALSE(r.degenerate);
    }
    SUBCASE("hand-derived values at K = 12") {
        const auto r = refined_return_phase(ModelParams::make(0.4, 1.0, 0.1, 12.0));
        CHECK(r.mu == doctest::Approx(oracle::kReturnPhase12).epsilon(1e-14));
        CHECK(r.cos_mu == doctest::Approx(oracle::kCosReturnPhase12).epsilon(1e-14));
        CHECK(std::cos(r.mu) == doctest::Approx(r.cos_mu).epsilon(1e-13));
        // cos(alpha) > theta_d^2 here, so the return happens after pi
        CHECK(r.mu > std::numbers::pi);
    }
    SUBCASE("offset from pi is first order in eps") {
        const double d1 =
            std::abs(refined_return_phase(ModelParams::make(0.4, 1.0, 0.1, 1e4)).mu -
                     std::numbers::pi);
        const double d2 =
            std::abs(refined_return_phase(ModelParams::make(0.4, 1.0, 0.1, 4e4)).mu -
                     std::numbers::pi);
        CHECK(d1 / d2 > 1.9);
        CHECK(d1 / d2 < 2.1);
    }
    SUBCASE("predicts the measured first length return to second order") {
        const ModelParams p = ModelParams::make(0.4, 1.0, 0.1, 400.0);
        IntegratorConfig cfg;
        cfg.step = default_step(p.epsilon);
        const EventResult hit = locate_event(polar_rhs(p.K), initial_state(p), 0.0,
                                             20.0 * p.epsilon, EventSpec::length_returns(),
                                             cfg);
        const double measured = strained_frequency(p).value * hit.t / p.epsilon;
        const double predicted = refined_return_phase(p).mu;
        CHECK(measured > std::numbers::pi);  // same side as the prediction
        CHECK(std::abs(measured - predicted) < 2.0 * p.epsilon * p.epsilon);
    }
    SUBCASE("degenerate and invalid inputs") {
        const auto r = refined_return_phase(ModelParams::make(0.0, 1.0, 0.0, 100.0));
        CHECK(r.degenerate);
        CHECK(r.mu == doctest::Approx(std::numbers::pi).epsilon(1e-15));
        CHECK_THROWS_AS(refined_return_phase(ModelParams::make(0.0, 0.5, 0.0, 100.0)),
                        ValidationError);
    }
}

TEST_CASE("solve_stiffness closes the stance cycle at the reference point") {
    const StanceSolution sol = solve_stiffness(0.4, 1.0, 0.1);
    // cross-validated with an independent adaptive integrator
    CHECK(sol.k_star == doctest::Approx(15.6037).epsilon(1e-3));
    CHECK(sol.t_star == doctest::Approx(0.81101).epsilon(1e-3));
    CHECK(sol.residual_length <= sol.config.residual_tol);
    CHECK(sol.residual_angle < 1e-9);
    CHECK(sol.k_approx == doctest::Approx(oracle::kStiffnessApprox04).epsilon(1e-14));
    CHECK(sol.k_star / sol.k_approx > 1.25);
    CHECK(sol.k_star / sol.k_approx < 1.35);
    CHECK(sol.tau_star > 0.9 * std::numbers::pi);
    CHECK(sol.tau_star < 1.1 * std::numbers::pi);
    CHECK(sol.iterations <= sol.config.max_iterations);
    CHECK(sol.trajectory.times.back() == doctest::Approx(sol.t_star).epsilon(1e-15));
    CHECK(std::abs(sol.trajectory.states.back().theta - 0.4) < 1e-9);
}

TEST_CASE("solve_stiffness stays on the first-return branch at a wide angle") {
    const StanceSolution sol = solve_stiffness(0.8, 1.0, 0.1);
    CHECK(sol.k_star > 3.9);
    CHECK(sol.k_star < 4.2);
    CHECK(sol.tau_star > 0.9 * std::numbers::pi);
    CHECK(sol.tau_star < 1.3 * std::numbers::pi);
}

TEST_CASE("solved return time approaches eps * pi for small angles") {
    const StanceSolution sol = solve_stiffness(0.05, 1.0, 0.1);
    const double eps_star = 1.0 / std::sqrt(sol.k_star);
    CHECK(std::abs(sol.t_star / eps_star - std::numbers::pi) < 0.02);
}

TEST_CASE("solve_stiffness rejects invalid setups") {
    CHECK_THROWS_AS(solve_stiffness(0.0, 1.0, 0.1), ValidationError);
    CHECK_THROWS_AS(solve_stiffness(0.95, 1.0, 0.1), ValidationError);
    CHECK_THROWS_AS(solve_stiffness(0.4, 0.0, 0.1), ValidationError);
    // downhill-dominant touchdown: theta_d < 0
    CHECK_THROWS_AS(solve_stiffness(0.4, 0.1, 1.0), ValidationError);
    ShootingConfig cfg;
    cfg.k_seed0 = 12.0;
    cfg.k_seed1 = 12.0;
    CHECK_THROWS_AS(solve_stiffness(0.4, 1.0, 0.1, cfg), ValidationError);
}

TEST_CASE("stance_sweep") {
    SUBCASE("single point equals the direct solve") {
        const std::vector<double> alphas{0.4}, Us{1.0};
        const auto rows = stance_sweep(alphas, Us, 0.1);
        REQUIRE(rows.size() == 1);
        REQUIRE(rows[0].solution.has_value());
        const StanceSolution direct = solve_stiffness(0.4, 1.0, 0.1);
        CHECK(rows[0].solution->k_star == direct.k_star);
        CHECK(rows[0].solution->t_star == direct.t_star);
    }
    SUBCASE("rows follow the grid order, alpha outer") {
        const std::vector<double> alphas{0.3, 0.4}, Us{0.9, 1.1};
        const auto rows = stance_sweep(alphas, Us, 0.1);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].alpha == 0.3);
        CHECK(rows[0].U == 0.9);
        CHECK(rows[1].alpha == 0.3);
        CHECK(rows[1].U == 1.1);
        CHECK(rows[3].alpha == 0.4);
        CHECK(rows[3].U == 1.1);
        for (const auto& row : rows) {
            CHECK(row.solution.has_value());
        }
    }
    SUBCASE("failures are recorded per row without aborting") {
        // middle row has theta_d < 0 and cannot be solved
        const std::vector<double> alphas{0.4}, Us{1.0, 0.02, 1.2};
        ShootingConfig cfg;
        const auto rows = stance_sweep(alphas, Us, 0.1, cfg);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].solution.has_value());
        CHECK_FALSE(rows[1].solution.has_value());
        CHECK_FALSE(rows[1].error.empty());
        CHECK(rows[2].solution.has_value());
    }
    SUBCASE("empty grid is rejected") {
        const std::vector<double> none;
        const std::vector<double> one{0.4};
        CHECK_THROWS_AS(stance_sweep(none, one, 0.1), ValidationError);
        CHECK_THROWS_AS(stance_sweep(one, none, 0.1), ValidationError);
    }
}
