#include "slipsim/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace slip {

namespace {

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) {
        throw ValidationError("integrator step must be positive and finite");
    }
    if (cfg.max_steps < 1) {
        throw ValidationError("integrator step budget must be at least 1");
    }
    if (!(cfg.l_min > 0.0) || !(cfg.l_min < 1.0)) {
        throw ValidationError("length guard must lie in (0, 1)");
    }
}

State axpy(const State& s, double h, const Deriv& d) {
    return State{s.theta + h * d.theta_dot, s.theta_dot + h * d.theta_ddot,
                 s.L + h * d.L_dot, s.L_dot + h * d.L_ddot};
}

// One classical RK4 step; guards L at every stage evaluation.
State rk4_step(const Rhs& rhs, const State& y, double t, double h, double l_min) {
    const auto guarded = [&](const State& s) -> Deriv {
        if (!(s.L > l_min)) {
            throw SingularityError("leg length below guard during step", t,
                                   y.theta, y.theta_dot, y.L, y.L_dot);
        }
        return rhs(s);
    };
    const Deriv k1 = guarded(y);
    const Deriv k2 = guarded(axpy(y, 0.5 * h, k1));
    const Deriv k3 = guarded(axpy(y, 0.5 * h, k2));
    const Deriv k4 = guarded(axpy(y, h, k3));
    return State{
        y.theta + h / 6.0 * (k1.theta_dot + 2.0 * k2.theta_dot + 2.0 * k3.theta_dot + k4.theta_dot),
        y.theta_dot + h / 6.0 * (k1.theta_ddot + 2.0 * k2.theta_ddot + 2.0 * k3.theta_ddot + k4.theta_ddot),
        y.L + h / 6.0 * (k1.L_dot + 2.0 * k2.L_dot + 2.0 * k3.L_dot + k4.L_dot),
        y.L_dot + h / 6.0 * (k1.L_ddot + 2.0 * k2.L_ddot + 2.0 * k3.L_ddot + k4.L_ddot),
    };
}

}  // namespace

double default_step(double epsilon) {
    return std::min(epsilon / 50.0, 1e-3);
}

Rhs polar_rhs(double K, double l_min) {
    return [K, l_min](const State& s) { return polar_eom(s, K, l_min); };
}

Trajectory integrate(const Rhs& rhs, const State& s0, double t0, double t1,
                     const IntegratorConfig& cfg) {
    validate(cfg);
    if (!(t1 >= t0)) {
        throw ValidationError("integration horizon must not precede the start time");
    }

    Trajectory traj;
    traj.step = cfg.step;
    traj.times.push_back(t0);
    traj.states.push_back(s0);
    if (t1 == t0) {
        return traj;
    }

    const double span = t1 - t0;
    // grid times computed as t0 + i*h (not accumulated) so runs are bit-stable
    auto n_full = static_cast<std::size_t>(std::floor(span / cfg.step + 1e-12));
    double tail = t1 - (t0 + static_cast<double>(n_full) * cfg.step);
    if (tail <= cfg.step * 1e-12) {
        tail = 0.0;
        if (n_full == 0) {
            n_full = 1;  // degenerate spans shorter than h*1e-12: one step
        }
    }
    if (n_full + (tail > 0.0 ? 1 : 0) > cfg.max_steps) {
        throw BudgetError("step budget exhausted before reaching the horizon");
    }

    State y = s0;
    double t = t0;
    for (std::size_t i = 1; i <= n_full; ++i) {
        const double t_next = (i == n_full && tail == 0.0)
                                  ? t1
                                  : t0 + static_cast<double>(i) * cfg.step;
        y = rk4_step(rhs, y, t, t_next - t, cfg.l_min);
        t = t_next;
        traj.times.push_back(t);
        traj.states.push_back(y);
    }
    if (tail > 0.0) {
        y = rk4_step(rhs, y, t, t1 - t, cfg.l_min);
        traj.times.push_back(t1);
        traj.states.push_back(y);
    }
    return traj;
}

Trajectory simulate(const ModelParams& p, double t1, IntegratorConfig cfg) {
    if (cfg.step <= 0.0) {
        cfg.step = default_step(p.epsilon);
    }
    Trajectory traj = integrate(polar_rhs(p.K, cfg.l_min), initial_state(p), 0.0, t1, cfg);
    traj.params = p;
    return traj;
}

EventSpec EventSpec::angle_reaches(double level, CrossingDirection dir) {
    return EventSpec{[level](const State& s) { return s.theta - level; }, dir, 1e-12};
}

EventSpec EventSpec::length_returns(double level, CrossingDirection dir) {
    return EventSpec{[level](const State& s) { return s.L - level; }, dir, 1e-12};
}

EventResult locate_event(const Rhs& rhs, const State& s0, double t0, double t_max,
                         const EventSpec& event, const IntegratorConfig& cfg) {
    validate(cfg);
    if (!event.value) {
        throw ValidationError("event function not set");
    }
    if (!(event.root_tol > 0.0)) {
        throw ValidationError("event root tolerance must be positive");
    }
    if (!(t_max > t0)) {
        throw ValidationError("event search window is empty");
    }

    const auto crossed = [&](double before, double after) {
        switch (event.direction) {
            case CrossingDirection::Rising: return before < 0.0 && after >= 0.0;
            case CrossingDirection::Falling: return before > 0.0 && after <= 0.0;
            case CrossingDirection::Any:
                return (before < 0.0 && after >= 0.0) || (before > 0.0 && after <= 0.0);
        }
        return false;
    };

    State y = s0;
    double t = t0;
    double e_prev = event.value(s0);
    std::size_t steps = 0;
    while (t < t_max) {
        if (++steps > cfg.max_steps) {
            throw BudgetError("step budget exhausted before the event crossing");
        }
        const double t_next = std::min(t0 + static_cast<double>(steps) * cfg.step, t_max);
        const State y_next = rk4_step(rhs, y, t, t_next - t, cfg.l_min);
        const double e_next = event.value(y_next);
        if (crossed(e_prev, e_next)) {
            // bisect inside [t, t_next]; every probe re-integrates from (t, y)
            double lo = t, hi = t_next;
            State at_lo = y;
            while (hi - lo > event.root_tol) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) {
                    break;  // bracket at floating-point resolution
                }
                const State y_mid = rk4_step(rhs, at_lo, lo, mid - lo, cfg.l_min);
                if (crossed(e_prev, event.value(y_mid))) {
                    hi = mid;
                } else {
                    lo = mid;
                    at_lo = y_mid;
                }
            }
            const double t_event = 0.5 * (lo + hi);
            const State y_event = rk4_step(rhs, at_lo, lo, t_event - lo, cfg.l_min);
            return EventResult{t_event, y_event, steps};
        }
        y = y_next;
        t = t_next;
        e_prev = e_next;
    }
    throw EventNotFoundError("no event crossing in the requested direction before t_max");
}

}  // namespace slip
