#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "slipsim/model.hpp"

namespace slip {

/// Fixed-step configuration. step == 0 selects the default policy
/// min(eps/50, 1e-3) when the caller knows eps, else 1e-3.
struct IntegratorConfig {
    double step = 0.0;
    std::size_t max_steps = 50'000'000;
    double l_min = 1e-6;
};

/// Default slow-scale step: resolves the fast oscillation (period ~ 2 pi eps)
/// with >= 100 points per period.
double default_step(double epsilon);

/// Right-hand side over the 4-component polar state.
using Rhs = std::function<Deriv(const State&)>;

/// Stance dynamics with the stiffness bound in; shared by every caller.
Rhs polar_rhs(double K, double l_min = 1e-6);

/// Classical fixed-step RK4 over [t0, t1]; the final step is shortened to
/// land exactly on t1. Trajectory contains both endpoints. Throws
/// SingularityError (with the last good state) if L drops below cfg.l_min at
/// any stage evaluation, BudgetError when cfg.max_steps is exhausted.
Trajectory integrate(const Rhs& rhs, const State& s0, double t0, double t1,
                     const IntegratorConfig& cfg);

/// Convenience: integrate the stance dynamics from touchdown to t1 and embed
/// the parameter snapshot.
Trajectory simulate(const ModelParams& p, double t1, IntegratorConfig cfg = {});

enum class CrossingDirection { Rising, Falling, Any };

/// Scalar event over the state, a crossing direction, and the time tolerance
/// to which the crossing is located.
struct EventSpec {
    std::function<double(const State&)> value;
    CrossingDirection direction = CrossingDirection::Any;
    double root_tol = 1e-12;

    /// theta - level, rising by default (theta starts at -alpha moving up).
    static EventSpec angle_reaches(double level,
                                   CrossingDirection dir = CrossingDirection::Rising);
    /// L - level; with level = 1 and the touchdown state this fires at the
    /// first return of the spring to its rest length.
    static EventSpec length_returns(double level = 1.0,
                                    CrossingDirection dir = CrossingDirection::Rising);
};

struct EventResult {
    double t;
    State state;
    std::size_t steps_used;
};

/// Steps with RK4 until the event value changes sign in the requested
/// direction, then bisects on re-integrated sub-steps from the bracketing
/// step's start until the bracket is narrower than root_tol. A zero event
/// value exactly at t0 does not count as a crossing. Throws
/// EventNotFoundError if no crossing occurs before t_max.
EventResult locate_event(const Rhs& rhs, const State& s0, double t0, double t_max,
                         const EventSpec& event, const IntegratorConfig& cfg);

}  // namespace slip
