#include "slipsim/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace slip {

StrainedFrequency strained_frequency(double epsilon, double theta_d) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon) || !std::isfinite(theta_d)) {
        throw ValidationError("strained_frequency: epsilon must be finite and >= 0");
    }
    const double omega2 = -0.5 * theta_d * theta_d;
    const double value = 1.0 + epsilon * epsilon * omega2;
    if (!(value > 0.0)) {
        throw ValidationError("strained frequency would be nonpositive; outside validity");
    }
    return StrainedFrequency{value, 0.0, omega2};
}

StrainedFrequency strained_frequency(const ModelParams& p) {
    return strained_frequency(p.epsilon, p.theta_d);
}

double fast_length(double tau_plus, const ModelParams& p) {
    const double e = p.epsilon;
    const double drift = std::cos(p.alpha) - p.theta_d * p.theta_d;
    return 1.0 - e * p.L_d * std::sin(tau_plus) -
           e * e * drift * (1.0 - std::cos(tau_plus));
}

double fast_angle(double tau_plus, const ModelParams& p) {
    const double e = p.epsilon;
    return -p.alpha + e * p.theta_d * tau_plus -
           0.5 * e * e * std::sin(p.alpha) * tau_plus * tau_plus +
           2.0 * e * e * p.L_d * p.theta_d * (1.0 - std::cos(tau_plus));
}

Trajectory relabel(const Trajectory& traj, TimeScale target) {
    if (!traj.params) {
        throw ValidationError("relabel needs a trajectory with an embedded parameter snapshot");
    }
    if (traj.scale == target) {
        return traj;
    }
    const ModelParams& p = *traj.params;
    const double omega = strained_frequency(p).value;

    // factor converting the source time axis to slow time t
    const auto to_slow = [&](TimeScale s) {
        switch (s) {
            case TimeScale::Slow: return 1.0;
            case TimeScale::Fast: return p.epsilon;
            case TimeScale::Strained: return p.epsilon / omega;
        }
        return 1.0;
    };
    const double factor = to_slow(traj.scale) / to_slow(target);

    Trajectory out = traj;
    out.scale = target;
    out.step = traj.step * factor;
    for (auto& t : out.times) {
        t *= factor;
    }
    // rates are per unit of the active scale: dX/d(new) = dX/d(old) / factor
    for (auto& s : out.states) {
        s.theta_dot /= factor;
        s.L_dot /= factor;
    }
    return out;
}

Trajectory slow_angle(std::span<const double> t_grid, const ModelParams& p,
                      SlowAngleMethod method, double max_internal_step) {
    if (t_grid.empty()) {
        throw ValidationError("slow_angle: empty time grid");
    }
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw ValidationError("slow_angle: time grid must be strictly increasing");
        }
    }
    if (!(max_internal_step > 0.0)) {
        throw ValidationError("slow_angle: internal step must be positive");
    }

    Trajectory traj;
    traj.scale = TimeScale::Slow;
    traj.params = p;
    traj.step = max_internal_step;
    traj.times.assign(t_grid.begin(), t_grid.end());
    traj.states.reserve(t_grid.size());

    if (method == SlowAngleMethod::SmallAngle) {
        for (double t : t_grid) {
            traj.states.push_back(State{
                -p.alpha * std::cosh(t) + p.theta_d * std::sinh(t),
                -p.alpha * std::sinh(t) + p.theta_d * std::cosh(t), 1.0, 0.0});
        }
        return traj;
    }

    // theta'' = sin(theta) embedded in the 4-state form with L frozen
    const Rhs pendulum = [](const State& s) {
        return Deriv{s.theta_dot, std::sin(s.theta), 0.0, 0.0};
    };
    State y{-p.alpha, p.theta_d, 1.0, 0.0};
    double t = t_grid[0];
    if (t != 0.0) {
        throw ValidationError("slow_angle: grid must start at 0 (touchdown data)");
    }
    traj.states.push_back(y);
    IntegratorConfig cfg;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double span = t_grid[i] - t;
        const auto pieces = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(span / max_internal_step - 1e-12)));
        cfg.step = span / static_cast<double>(pieces);
        Trajectory leg = integrate(pendulum, y, t, t_grid[i], cfg);
        y = leg.states.back();
        t = t_grid[i];
        traj.states.push_back(y);
    }
    return traj;
}

namespace {

ConsistencyEntry entry(std::string name, double small, double large, double margin,
                       bool advisory) {
    // "small << large" scored as large/small >= margin; a nonpositive or zero
    // denominator counts as an immediate failure
    double ratio;
    if (small <= 0.0) {
        ratio = large > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    } else {
        ratio = large / small;
    }
    return ConsistencyEntry{std::move(name), ratio, ratio >= margin, advisory};
}

}  // namespace

ConsistencyReport consistency_check(const ModelParams& p, double margin) {
    if (!(margin > 1.0)) {
        throw ValidationError("consistency margin must exceed 1");
    }
    const double sqrt_k = std::sqrt(p.K);
    ConsistencyReport report;
    report.margin = margin;
    report.entries = {
        entry("theta_d^2/sqrt(K) << L_d", p.theta_d * p.theta_d * p.epsilon, p.L_d,
              margin, false),
        entry("L_d << sqrt(K)", p.L_d, sqrt_k, margin, false),
        entry("K >> 1", 1.0, p.K, margin, false),
        entry("U << sqrt(K)", p.U, sqrt_k, margin, false),
        entry("2 U alpha / pi << V", 2.0 * p.U * p.alpha / std::numbers::pi, p.V, margin, true),
        entry("V << pi U / (2 alpha)",
              p.V, p.alpha > 0.0 ? std::numbers::pi * p.U / (2.0 * p.alpha)
                                 : std::numeric_limits<double>::infinity(),
              margin, true),
    };
    report.core_pass = std::all_of(report.entries.begin(), report.entries.end(),
                                   [](const ConsistencyEntry& e) {
                                       return e.advisory || e.pass;
                                   });
    return report;
}

}  // namespace slip
