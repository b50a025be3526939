#include "slipsim/model.hpp"

#include <cmath>

namespace slip {

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

ModelParams ModelParams::make(double alpha, double U, double V, double K) {
    if (!finite(alpha) || !finite(U) || !finite(V) || !finite(K)) {
        throw ValidationError("model parameters must be finite");
    }
    if (K <= 0.0) {
        throw ValidationError("stiffness K must be positive");
    }
    const auto rates = touchdown_rates(alpha, U, V);
    return ModelParams{alpha, U, V, K, rates.theta_d, rates.L_d, 1.0 / std::sqrt(K)};
}

ModelParams nondimensionalize(const DimensionalInputs& d) {
    if (!finite(d.mass) || d.mass <= 0.0 || !finite(d.gravity) || d.gravity <= 0.0 ||
        !finite(d.rest_length) || d.rest_length <= 0.0) {
        throw ValidationError("mass, gravity and rest length must be finite and positive");
    }
    if (!finite(d.spring_constant) || !finite(d.horizontal_speed) ||
        !finite(d.vertical_speed) || !finite(d.attack_angle)) {
        throw ValidationError("spring constant, speeds and attack angle must be finite");
    }
    const double K = d.spring_constant * d.rest_length / (d.mass * d.gravity);
    const double speed_scale = std::sqrt(d.gravity * d.rest_length);
    return ModelParams::make(d.attack_angle, d.horizontal_speed / speed_scale,
                             d.vertical_speed / speed_scale, K);
}

TouchdownRates touchdown_rates(double alpha, double U, double V) {
    if (!finite(alpha) || !finite(U) || !finite(V)) {
        throw ValidationError("touchdown_rates: inputs must be finite");
    }
    return TouchdownRates{U * std::cos(alpha) - V * std::sin(alpha),
                          U * std::sin(alpha) + V * std::cos(alpha)};
}

State initial_state(const ModelParams& p) {
    return State{-p.alpha, p.theta_d, 1.0, -p.L_d};
}

Deriv polar_eom(const State& s, double K, double l_min) {
    if (!(s.L > l_min)) {
        throw SingularityError("leg length at or below guard threshold", 0.0,
                               s.theta, s.theta_dot, s.L, s.L_dot);
    }
    const double theta_ddot = (std::sin(s.theta) - 2.0 * s.L_dot * s.theta_dot) / s.L;
    const double L_ddot = s.theta_dot * s.theta_dot * s.L + K * (1.0 - s.L) - std::cos(s.theta);
    return Deriv{s.theta_dot, theta_ddot, s.L_dot, L_ddot};
}

CartesianDeriv cartesian_eom(const CartesianState& s, double K) {
    const double r2 = s.x * s.x + s.y * s.y;
    if (!(r2 > 0.0)) {
        throw SingularityError("cartesian state at the contact point", 0.0,
                               0.0, 0.0, 0.0, 0.0);
    }
    const double factor = K * (1.0 / std::sqrt(r2) - 1.0);
    return CartesianDeriv{s.x_dot, s.x * factor, s.y_dot, s.y * factor - 1.0};
}

CartesianState polar_to_cartesian(const State& s) {
    const double sin_t = std::sin(s.theta);
    const double cos_t = std::cos(s.theta);
    return CartesianState{
        s.L * sin_t,
        s.L_dot * sin_t + s.L * s.theta_dot * cos_t,
        s.L * cos_t,
        s.L_dot * cos_t - s.L * s.theta_dot * sin_t,
    };
}

State cartesian_to_polar(const CartesianState& c) {
    const double r2 = c.x * c.x + c.y * c.y;
    if (!(r2 > 0.0)) {
        throw SingularityError("cartesian state at the contact point", 0.0,
                               0.0, 0.0, 0.0, 0.0);
    }
    const double L = std::sqrt(r2);
    return State{
        std::atan2(c.x, c.y),
        (c.x_dot * c.y - c.y_dot * c.x) / r2,
        L,
        (c.x * c.x_dot + c.y * c.y_dot) / L,
    };
}

double energy(const State& s, double K) {
    const double dl = 1.0 - s.L;
    return 0.5 * (s.L_dot * s.L_dot + s.L * s.L * s.theta_dot * s.theta_dot) +
           0.5 * K * dl * dl + s.L * std::cos(s.theta);
}

double angular_momentum_residual(const Trajectory& traj) {
    if (traj.scale != TimeScale::Slow) {
        throw ValidationError("angular_momentum_residual expects a slow-scale trajectory");
    }
    const std::size_t n = traj.times.size();
    if (n < 3 || traj.states.size() != n) {
        throw ValidationError("angular_momentum_residual needs at least 3 points");
    }
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = traj.times[i] - traj.times[i - 1];
        const double hp = traj.times[i + 1] - traj.times[i];
        const auto momentum = [&](std::size_t j) {
            const State& s = traj.states[j];
            return s.L * s.L * s.theta_dot;
        };
        // second-order three-point derivative, valid on nonuniform spacing
        const double dp = (hm / (hp * (hm + hp))) * momentum(i + 1) +
                          ((hp - hm) / (hp * hm)) * momentum(i) -
                          (hp / (hm * (hm + hp))) * momentum(i - 1);
        const State& s = traj.states[i];
        worst = std::max(worst, std::abs(dp - s.L * std::sin(s.theta)));
    }
    return worst;
}

}  // namespace slip
