#include "slipsim/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "slipsim/asymptotics.hpp"

namespace slip {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Shot {
    bool ok;
    double residual;
    double t_cross;
    State state;
    std::string note;
};

// Residual R(K) = L(t*) - 1 at the first rising theta = alpha crossing.
Shot shoot(double alpha, double U, double V, double K, const ShootingConfig& cfg) {
    Shot shot{false, kNaN, kNaN, State{}, ""};
    if (K <= 0.0) {
        shot.note = "nonpositive stiffness";
        return shot;
    }
    const ModelParams p = ModelParams::make(alpha, U, V, K);
    IntegratorConfig icfg{cfg.step, cfg.max_steps, cfg.l_min};
    EventSpec event = EventSpec::angle_reaches(alpha);
    event.root_tol = cfg.root_tol;
    try {
        const EventResult hit =
            locate_event(polar_rhs(K, cfg.l_min), initial_state(p), 0.0, cfg.t_max, event, icfg);
        shot.ok = true;
        shot.residual = hit.state.L - 1.0;
        shot.t_cross = hit.t;
        shot.state = hit.state;
    } catch (const SingularityError&) {
        shot.note = "leg collapse before the crossing";
    } catch (const EventNotFoundError&) {
        shot.note = "no crossing before t_max";
    } catch (const BudgetError&) {
        shot.note = "step budget exhausted";
    }
    return shot;
}

}  // namespace

double approx_stiffness(double alpha, double U, double V) {
    if (!(alpha > 0.0)) {
        throw ValidationError("approx_stiffness: attack angle must be positive");
    }
    const auto rates = touchdown_rates(alpha, U, V);
    if (rates.theta_d <= 0.0) {
        return 0.0;  // outside validity; consistency_check flags this regime
    }
    const double root = std::numbers::pi * rates.theta_d / (2.0 * alpha);
    return root * root;
}

double matching_attack_angle(double K, double U, double V, double alpha_max) {
    if (!(K > 0.0)) {
        throw ValidationError("matching_attack_angle: stiffness must be positive");
    }
    double lo = 1e-9, hi = alpha_max;
    if (approx_stiffness(hi, U, V) > K) {
        throw ValidationError("matching_attack_angle: stiffness below the range of the estimate");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (approx_stiffness(mid, U, V) > K ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ReturnPhase refined_return_phase(const ModelParams& p) {
    const double W = std::cos(p.alpha) - p.theta_d * p.theta_d;
    if (p.L_d == 0.0 && W == 0.0) {
        return ReturnPhase{std::numbers::pi, -1.0, true};
    }
    if (!(p.L_d > 0.0)) {
        throw ValidationError("refined_return_phase: touchdown radial rate must be positive");
    }
    const double c = p.epsilon * W / p.L_d;
    const double mu = std::numbers::pi + 2.0 * std::atan(c);
    const double cos_mu = -(1.0 - c * c) / (1.0 + c * c);
    return ReturnPhase{mu, cos_mu, false};
}

StanceSolution solve_stiffness(double alpha, double U, double V, const ShootingConfig& cfg_in) {
    if (!(alpha > 0.0)) {
        throw ValidationError("solve_stiffness: attack angle must be positive");
    }
    if (!(alpha < cfg_in.alpha_validity)) {
        throw ValidationError("solve_stiffness: attack angle beyond the validity bound");
    }
    if (!(U > 0.0)) {
        throw ValidationError("solve_stiffness: horizontal Froude number must be positive");
    }
    const auto rates = touchdown_rates(alpha, U, V);
    if (!(rates.theta_d > 0.0)) {
        throw ValidationError("solve_stiffness: touchdown angular rate must be positive");
    }

    ShootingConfig cfg = cfg_in;
    const double k_approx = approx_stiffness(alpha, U, V);
    if (cfg.k_seed0 <= 0.0) {
        cfg.k_seed0 = k_approx;
    }
    if (cfg.k_seed1 <= 0.0) {
        cfg.k_seed1 = 1.1 * cfg.k_seed0;
    }
    if (cfg.k_seed0 == cfg.k_seed1) {
        throw ValidationError("solve_stiffness: secant seeds must differ");
    }
    if (cfg.step <= 0.0) {
        cfg.step = std::min(1e-4, 0.01 / std::sqrt(cfg.k_seed0));
    }
    if (cfg.t_max <= 0.0) {
        const double eps_seed = 1.0 / std::sqrt(cfg.k_seed0);
        cfg.t_max = std::max({6.0 * std::numbers::pi * eps_seed,
                              12.0 * alpha / rates.theta_d, 2.0});
    }

    std::vector<ShotRecord> shots;
    const auto record = [&](double K, const Shot& s) {
        shots.push_back(ShotRecord{K, s.residual, s.t_cross, s.note});
    };

    // sign-change bracket, maintained as soon as one is seen
    double bracket_lo = kNaN, bracket_hi = kNaN;
    double r_lo = kNaN, r_hi = kNaN;
    const auto note_bracket = [&](double Ka, double ra, double Kb, double rb) {
        if (std::isnan(ra) || std::isnan(rb) || ra * rb > 0.0) {
            return;
        }
        bracket_lo = std::min(Ka, Kb);
        bracket_hi = std::max(Ka, Kb);
        r_lo = Ka < Kb ? ra : rb;
        r_hi = Ka < Kb ? rb : ra;
    };
    const auto shrink_bracket = [&](double K, double r) {
        if (std::isnan(bracket_lo) || std::isnan(r) || K <= bracket_lo || K >= bracket_hi) {
            return;
        }
        if (r * r_lo <= 0.0) {
            bracket_hi = K;
            r_hi = r;
        } else {
            bracket_lo = K;
            r_lo = r;
        }
    };

    double k_prev = cfg.k_seed0;
    Shot s_prev = shoot(alpha, U, V, k_prev, cfg);
    record(k_prev, s_prev);
    double k_cur = cfg.k_seed1;
    Shot s_cur = shoot(alpha, U, V, k_cur, cfg);
    record(k_cur, s_cur);

    int iterations = 2;
    // recover usable seeds if either failed outright
    while ((!s_prev.ok || !s_cur.ok) && iterations < cfg.max_iterations) {
        ++iterations;
        if (!s_prev.ok && !s_cur.ok) {
            k_prev *= 1.5;
            k_cur = 1.1 * k_prev;
            s_prev = shoot(alpha, U, V, k_prev, cfg);
            record(k_prev, s_prev);
            s_cur = shoot(alpha, U, V, k_cur, cfg);
            record(k_cur, s_cur);
        } else if (!s_cur.ok) {
            k_cur = 0.5 * (k_cur + k_prev);
            s_cur = shoot(alpha, U, V, k_cur, cfg);
            record(k_cur, s_cur);
        } else {
            k_prev = 0.5 * (k_prev + k_cur);
            s_prev = shoot(alpha, U, V, k_prev, cfg);
            record(k_prev, s_prev);
        }
    }
    if (!s_prev.ok || !s_cur.ok) {
        throw ConvergenceError("solve_stiffness: could not find usable secant seeds (last: " +
                               (s_cur.note.empty() ? s_prev.note : s_cur.note) + ")");
    }
    note_bracket(k_prev, s_prev.residual, k_cur, s_cur.residual);

    while (std::abs(s_cur.residual) > cfg.residual_tol) {
        if (iterations >= cfg.max_iterations) {
            throw BudgetError("solve_stiffness: iteration budget exhausted (|R| = " +
                              std::to_string(std::abs(s_cur.residual)) + ")");
        }
        ++iterations;

        double k_next;
        if (s_cur.residual == s_prev.residual) {
            k_next = 1.05 * k_cur;
        } else {
            k_next = k_cur - s_cur.residual * (k_cur - k_prev) /
                                 (s_cur.residual - s_prev.residual);
        }
        // step limiter: never move by more than a factor of two
        k_next = std::clamp(k_next, 0.5 * k_cur, 2.0 * k_cur);
        if (!std::isnan(bracket_lo) && !(bracket_lo < k_next && k_next < bracket_hi)) {
            k_next = 0.5 * (bracket_lo + bracket_hi);
        }

        Shot s_next = shoot(alpha, U, V, k_next, cfg);
        record(k_next, s_next);
        // rejected iterate: halve toward the last valid stiffness
        while (!s_next.ok && iterations < cfg.max_iterations) {
            ++iterations;
            k_next = 0.5 * (k_next + k_cur);
            s_next = shoot(alpha, U, V, k_next, cfg);
            record(k_next, s_next);
        }
        if (!s_next.ok) {
            throw ConvergenceError("solve_stiffness: every trial stiffness near " +
                                   std::to_string(k_next) + " failed (" + s_next.note + ")");
        }
        note_bracket(k_cur, s_cur.residual, k_next, s_next.residual);
        shrink_bracket(k_next, s_next.residual);

        if (std::abs(k_next - k_cur) < 1e-14 * std::abs(k_next) &&
            std::abs(s_next.residual) > cfg.residual_tol) {
            throw ConvergenceError("solve_stiffness: secant stagnated at K = " +
                                   std::to_string(k_next) + " with |R| = " +
                                   std::to_string(std::abs(s_next.residual)));
        }
        k_prev = k_cur;
        s_prev = s_cur;
        k_cur = k_next;
        s_cur = s_next;
    }

    const ModelParams p = ModelParams::make(alpha, U, V, k_cur);
    IntegratorConfig icfg{cfg.step, cfg.max_steps, cfg.l_min};
    Trajectory traj = integrate(polar_rhs(k_cur, cfg.l_min), initial_state(p), 0.0,
                                s_cur.t_cross, icfg);
    traj.params = p;

    StanceSolution sol;
    sol.k_star = k_cur;
    sol.t_star = s_cur.t_cross;
    sol.tau_star = strained_frequency(p).value * s_cur.t_cross / p.epsilon;
    sol.residual_length = std::abs(s_cur.residual);
    sol.residual_angle = std::abs(s_cur.state.theta - alpha);
    sol.iterations = iterations;
    sol.k_approx = k_approx;
    sol.trajectory = std::move(traj);
    sol.shots = std::move(shots);
    sol.config = cfg;
    return sol;
}

std::vector<SweepRow> stance_sweep(std::span<const double> alphas,
                                   std::span<const double> Us, double V,
                                   const ShootingConfig& cfg) {
    if (alphas.empty() || Us.empty()) {
        throw ValidationError("stance_sweep: empty grid");
    }
    std::vector<SweepRow> rows;
    rows.reserve(alphas.size() * Us.size());
    for (double a : alphas) {
        for (double u : Us) {
            SweepRow row{a, u, V, 0.0, std::nullopt, ""};
            try {
                row.k_approx = approx_stiffness(a, u, V);
                row.solution = solve_stiffness(a, u, V, cfg);
            } catch (const Error& err) {
                row.error = err.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace slip
