#pragma once

#include <optional>
#include <vector>

#include "slipsim/errors.hpp"

namespace slip {

/// Dimensional description of a stance: point mass on a massless spring leg,
/// pinned at the foot contact.
struct DimensionalInputs {
    double mass;              ///< m [kg]
    double gravity;           ///< g [m/s^2]
    double rest_length;       ///< l0 [m]
    double spring_constant;   ///< k [N/m]
    double horizontal_speed;  ///< u [m/s]
    double vertical_speed;    ///< v [m/s]
    double attack_angle;      ///< alpha [rad], leg angle from vertical at touchdown
};

/// Nondimensional model parameters. U and V are the horizontal/vertical
/// Froude numbers, K the dimensionless spring stiffness. theta_d, L_d and
/// epsilon are derived and always kept consistent with (alpha, U, V, K).
struct ModelParams {
    double alpha;    ///< attack angle [rad]
    double U;        ///< u / sqrt(g l0)
    double V;        ///< v / sqrt(g l0)
    double K;        ///< k l0 / (m g), > 0
    double theta_d;  ///< touchdown angular rate, U cos(alpha) - V sin(alpha)
    double L_d;      ///< touchdown radial rate magnitude, U sin(alpha) + V cos(alpha)
    double epsilon;  ///< 1 / sqrt(K)

    /// Validates and fills in the derived fields.
    static ModelParams make(double alpha, double U, double V, double K);

    /// Same angles and speeds, different stiffness.
    ModelParams with_stiffness(double K_new) const {
        return make(alpha, U, V, K_new);
    }
};

/// Instantaneous polar state. Rates are per unit of the trajectory's active
/// time scale (slow t unless relabeled).
struct State {
    double theta;      ///< angle from vertical [rad], negative at touchdown
    double theta_dot;  ///< d theta / d(scale time)
    double L;          ///< leg length / rest length, > 0
    double L_dot;      ///< d L / d(scale time)
};

/// Time derivative of a State under some dynamics.
struct Deriv {
    double theta_dot;
    double theta_ddot;
    double L_dot;
    double L_ddot;
};

/// Label for the time variable a trajectory is parameterized by.
/// Fast is tau = t / eps; Strained is tau+ = omega(eps) * t / eps.
enum class TimeScale { Slow, Fast, Strained };

/// Time-ordered states with the step used to produce them.
struct Trajectory {
    TimeScale scale = TimeScale::Slow;
    std::vector<double> times;
    std::vector<State> states;
    double step = 0.0;                   ///< nominal step on the active scale
    std::optional<ModelParams> params;   ///< snapshot, when the SLIP system was integrated
};

/// Cartesian state (x, y) of the mass relative to the foot, rest-length units.
/// x = L sin(theta), y = L cos(theta); touchdown has x < 0.
struct CartesianState {
    double x;
    double x_dot;
    double y;
    double y_dot;
};

/// Cartesian accelerations paired with the velocities, mirroring Deriv.
struct CartesianDeriv {
    double x_dot;
    double x_ddot;
    double y_dot;
    double y_ddot;
};

/// Froude scaling of the dimensional inputs.
/// Throws ValidationError for non-finite or non-positive m, g, l0, or k <= 0.
ModelParams nondimensionalize(const DimensionalInputs& d);

/// Touchdown rates (theta_d, L_d) from the attack angle and Froude numbers.
struct TouchdownRates {
    double theta_d;
    double L_d;
};
TouchdownRates touchdown_rates(double alpha, double U, double V);

/// Touchdown state: theta = -alpha, theta_dot = theta_d, L = 1, L_dot = -L_d.
State initial_state(const ModelParams& p);

/// Polar stance dynamics:
///   theta_ddot = (sin(theta) - 2 L_dot theta_dot) / L
///   L_ddot     = theta_dot^2 L + K (1 - L) - cos(theta)
/// Throws SingularityError when s.L <= l_min.
Deriv polar_eom(const State& s, double K, double l_min = 1e-6);

/// Cartesian stance dynamics:
///   x_ddot = K x (1/r - 1),  y_ddot = K y (1/r - 1) - 1,  r = sqrt(x^2+y^2)
/// Throws SingularityError at the origin.
CartesianDeriv cartesian_eom(const CartesianState& s, double K);

CartesianState polar_to_cartesian(const State& s);
State cartesian_to_polar(const CartesianState& c);

/// First integral of the polar dynamics:
///   E = (L_dot^2 + L^2 theta_dot^2)/2 + K (1-L)^2 / 2 + L cos(theta)
double energy(const State& s, double K);

/// Max over interior grid points of |d/dt(L^2 theta_dot) - L sin(theta)|,
/// with the derivative taken by second-order finite differences. Requires a
/// slow-scale trajectory of at least 3 points.
double angular_momentum_residual(const Trajectory& traj);

}  // namespace slip
