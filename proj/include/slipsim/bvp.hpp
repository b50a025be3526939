#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slipsim/integrator.hpp"
#include "slipsim/model.hpp"

namespace slip {

/// Shooting setup. Zeros are filled with the defaults noted per field.
struct ShootingConfig {
    double k_seed0 = 0.0;       ///< 0: the closed-form stiffness estimate
    double k_seed1 = 0.0;       ///< 0: 1.1 * k_seed0
    double residual_tol = 1e-10;
    int max_iterations = 80;
    double step = 0.0;          ///< 0: min(1e-4, eps(seed)/100)
    double l_min = 1e-6;
    double root_tol = 1e-12;    ///< event location tolerance
    double t_max = 0.0;         ///< 0: generous multiple of the expected crossing time
    double alpha_validity = 0.9;
    std::size_t max_steps = 50'000'000;
};

/// One residual evaluation during shooting, kept for diagnostics.
struct ShotRecord {
    double K;
    double residual;     ///< L(t*) - 1, NaN when the shot was rejected
    double t_cross;      ///< first rising theta = alpha crossing, NaN if none
    std::string note;    ///< empty, or why the iterate was rejected
};

/// Solved stance boundary value problem.
struct StanceSolution {
    double k_star;          ///< stiffness closing the cycle
    double t_star;          ///< first theta = alpha crossing (slow time)
    double tau_star;        ///< strained fast phase omega * t_star / eps
    double residual_length; ///< |L(t*) - 1|
    double residual_angle;  ///< |theta(t*) - alpha|
    int iterations;
    double k_approx;        ///< closed-form estimate used for seeding
    Trajectory trajectory;  ///< solution path on [0, t*]
    std::vector<ShotRecord> shots;
    ShootingConfig config;  ///< with defaults resolved
};

/// Closed-form stiffness estimate (pi theta_d / (2 alpha))^2.
/// alpha <= 0 throws; theta_d <= 0 yields 0 (outside validity).
double approx_stiffness(double alpha, double U, double V);

/// Attack angle whose closed-form stiffness estimate equals K (bisection on
/// the strictly decreasing estimate). Used to pick grid points for solved
/// return-time studies.
double matching_attack_angle(double K, double U, double V, double alpha_max = 0.9);

/// First return phase of the fast length approximation, accurate to O(eps^2):
/// mu = pi + 2 atan(eps (cos(alpha) - theta_d^2) / L_d), which satisfies
/// cos(mu) = -1 + 2 eps^2 W^2 / (L_d^2 + eps^2 W^2). Degenerate when both
/// L_d = 0 and W = 0; then mu = pi with the flag set.
struct ReturnPhase {
    double mu;
    double cos_mu;
    bool degenerate;
};
ReturnPhase refined_return_phase(const ModelParams& p);

/// Solves the stance boundary value problem: find K such that the spring is
/// back at rest length exactly when the leg first swings to theta = alpha.
/// Secant iteration on R(K) = L(t*(K)) - 1 with t*(K) the first rising
/// theta = alpha crossing; iterates are step-limited, failed shots are halved
/// toward the last valid stiffness, and once a sign change is seen the
/// iterates are kept inside the bracket.
StanceSolution solve_stiffness(double alpha, double U, double V,
                               const ShootingConfig& cfg = {});

/// One grid point of a sweep; failures are recorded, not thrown.
struct SweepRow {
    double alpha;
    double U;
    double V;
    double k_approx;
    std::optional<StanceSolution> solution;
    std::string error;  ///< empty on success
};

/// Cartesian product sweep over attack angles and horizontal Froude numbers,
/// rows in grid order (alpha outer, U inner).
std::vector<SweepRow> stance_sweep(std::span<const double> alphas,
                                   std::span<const double> Us, double V,
                                   const ShootingConfig& cfg = {});

}  // namespace slip
