#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slipsim/bvp.hpp"
#include "slipsim/model.hpp"

namespace slip {

/// Least-squares line through (log10 K, log10 error).
struct FitResult {
    double slope;
    double rms_residual;  ///< RMS of log10 residuals about the line
    int used;
    int excluded;         ///< samples below the noise floor, dropped with a note
};

/// OLS fit of log10(error) against log10(K). Zero or negative errors throw;
/// errors below noise_floor are excluded (they sit in rounding noise).
FitResult fit_order(std::span<const std::pair<double, double>> samples,
                    double noise_floor = 1e-13);

struct ErrorSample {
    double K;
    double epsilon;
    double value;
    bool ok;
    std::string note;  ///< why the sample failed or was excluded from the fit
};

/// One convergence experiment: samples over a stiffness grid plus the fitted
/// order and enough metadata to reproduce the run bit-for-bit.
struct ConvergenceReport {
    std::string experiment;
    std::string quantity;      ///< what the error measures
    std::string norm;          ///< "sup-grid" or "abs"
    double alpha, U, V;
    double interval_end;       ///< tau+ end (fast experiments) or t end (slow)
    bool expanding;            ///< interval scaled by 1/eps per sample
    std::string step_policy;
    double noise_floor;
    std::vector<ErrorSample> samples;
    FitResult fit;
};

/// Shared knobs for the error experiments.
struct VerifyConfig {
    double step_divisor = 50.0;  ///< h = min(eps/step_divisor, max_step)
    double max_step = 1e-3;
    double noise_floor = 1e-13;
    double l_min = 1e-6;
};

/// Log-uniform default grid 10^2 .. 10^6, 9 points.
std::vector<double> default_stiffness_grid();

struct FastScaleReports {
    ConvergenceReport length;  ///< sup |L - fast_length| over tau+ in [0, T]
    ConvergenceReport angle;   ///< sup |theta - fast_angle| over the same grid
};

/// Integrates the stance dynamics per stiffness, relabels the grid to the
/// strained fast time, and takes sup-norm errors of the closed-form fast
/// approximations. With expanding = true the window per sample is
/// tau+ <= tau_end / eps.
FastScaleReports fast_scale_error(double alpha, double U, double V,
                                  std::span<const double> k_grid,
                                  double tau_end, bool expanding = false,
                                  const VerifyConfig& cfg = {});

struct SlowScaleReports {
    ConvergenceReport angle;       ///< sup |theta - theta0| on [0, T]
    ConvergenceReport angle_rate;  ///< sup |theta_dot - theta0_dot| (context)
};

/// Compares the full angle against the slow reference (theta'' = sin theta,
/// or its small-angle form) on the integration grid of [0, t_end].
SlowScaleReports slow_scale_error(double alpha, double U, double V,
                                  std::span<const double> k_grid, double t_end,
                                  SlowAngleMethod method = SlowAngleMethod::Rk4,
                                  const VerifyConfig& cfg = {});

/// Return-time study, three series over the stiffness grid:
///  - fixed_vs_pi:      | t*/eps - pi | with t* the first return of L to 1
///                      at fixed (alpha, U, V); O(eps) when cos(alpha) != theta_d^2
///  - fixed_vs_refined: | omega t*/eps - mu | against the refined phase; O(eps^2)
///  - solved_vs_pi:     | t*/eps - pi | at the solved stance problem, with the
///                      attack angle matched to each grid stiffness; O(eps^2)
struct ReturnTimeStudy {
    ConvergenceReport fixed_vs_pi;
    ConvergenceReport fixed_vs_refined;
    ConvergenceReport solved_vs_pi;
};

ReturnTimeStudy return_time_study(double alpha, double U, double V,
                                  std::span<const double> k_grid,
                                  const VerifyConfig& cfg = {},
                                  const ShootingConfig& shooting = {});

/// Solved stiffness against its closed-form estimate per attack angle.
struct RatioRow {
    double alpha;
    double k_star;
    double k_approx;
    double ratio;
    double t_star;
    bool ok;
    std::string note;
};

std::vector<RatioRow> stiffness_ratio_study(std::span<const double> alphas,
                                            double U, double V,
                                            const ShootingConfig& cfg = {});

}  // namespace slip
