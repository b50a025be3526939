#pragma once

#include <span>
#include <string>
#include <vector>

#include "slipsim/integrator.hpp"
#include "slipsim/model.hpp"

namespace slip {

/// Frequency correction that keeps the fast length oscillation free of
/// secular growth: omega(eps) = 1 + eps^2 * omega2, omega1 = 0.
struct StrainedFrequency {
    double value;        ///< omega(eps)
    double omega1 = 0.0;
    double omega2;       ///< -theta_d^2 / 2
};

/// Throws ValidationError if the correction drives the frequency to <= 0.
StrainedFrequency strained_frequency(double epsilon, double theta_d);
StrainedFrequency strained_frequency(const ModelParams& p);

/// Leading fast-scale approximations, evaluated at the strained fast time
/// tau+ = omega(eps) t / eps:
///   L  ~ 1 - eps L_d sin(tau+) - eps^2 (cos(alpha) - theta_d^2)(1 - cos(tau+))
///   th ~ -alpha + eps theta_d tau+ - eps^2 sin(alpha) tau+^2 / 2
///        + 2 eps^2 L_d theta_d (1 - cos(tau+))
double fast_length(double tau_plus, const ModelParams& p);
double fast_angle(double tau_plus, const ModelParams& p);

/// Both fast-scale evaluators bundled with their parameter snapshot.
struct FastApproximation {
    ModelParams params;
    double length(double tau_plus) const { return fast_length(tau_plus, params); }
    double angle(double tau_plus) const { return fast_angle(tau_plus, params); }
};

/// Relabel a trajectory's time axis (and rates) between scales using
/// tau = t / eps and tau+ = omega(eps) tau. Requires an embedded parameter
/// snapshot.
Trajectory relabel(const Trajectory& traj, TimeScale target);

enum class SlowAngleMethod {
    Rk4,        ///< integrate theta'' = sin(theta) at the grid resolution
    SmallAngle  ///< closed form -alpha cosh(t) + theta_d sinh(t)
};

/// Leading-order slow evolution of the angle on the given (increasing) time
/// grid, starting from theta(0) = -alpha, theta_dot(0) = theta_d. States
/// carry L = 1, L_dot = 0. The Rk4 method subdivides each grid interval to
/// steps of at most max_internal_step.
Trajectory slow_angle(std::span<const double> t_grid, const ModelParams& p,
                      SlowAngleMethod method = SlowAngleMethod::Rk4,
                      double max_internal_step = 1e-3);

/// One inequality of the large-stiffness validity check, with "a << b"
/// scored as b/a >= margin.
struct ConsistencyEntry {
    std::string name;
    double ratio;
    bool pass;
    bool advisory;  ///< true for the small-angle V-window entries
};

struct ConsistencyReport {
    double margin;
    std::vector<ConsistencyEntry> entries;
    bool core_pass;  ///< all non-advisory entries pass
};

/// Checks theta_d^2/sqrt(K) << L_d << sqrt(K), K >> 1, U << sqrt(K), and
/// (advisory) the small-angle window 2 U alpha / pi << V << pi U / (2 alpha).
/// Advisory only; never throws on failed inequalities.
ConsistencyReport consistency_check(const ModelParams& p, double margin = 10.0);

}  // namespace slip
