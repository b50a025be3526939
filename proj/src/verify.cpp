#include "slipsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "slipsim/asymptotics.hpp"

namespace slip {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double pick_step(double epsilon, const VerifyConfig& cfg) {
    return std::min(epsilon / cfg.step_divisor, cfg.max_step);
}

std::string step_policy_string(const VerifyConfig& cfg) {
    return "min(eps/" + std::to_string(cfg.step_divisor) + ", " +
           std::to_string(cfg.max_step) + ")";
}

ConvergenceReport base_report(const std::string& experiment, const std::string& quantity,
                              const std::string& norm, double alpha, double U, double V,
                              double interval_end, bool expanding, const VerifyConfig& cfg) {
    ConvergenceReport r;
    r.experiment = experiment;
    r.quantity = quantity;
    r.norm = norm;
    r.alpha = alpha;
    r.U = U;
    r.V = V;
    r.interval_end = interval_end;
    r.expanding = expanding;
    r.step_policy = step_policy_string(cfg);
    r.noise_floor = cfg.noise_floor;
    r.fit = FitResult{kNaN, kNaN, 0, 0};
    return r;
}

// Fits the report's successful samples and annotates noise-floor exclusions.
void finish_fit(ConvergenceReport& report) {
    std::vector<std::pair<double, double>> pts;
    for (auto& s : report.samples) {
        if (!s.ok) {
            continue;
        }
        if (s.value < report.noise_floor) {
            s.note = "below noise floor, excluded from fit";
            continue;
        }
        pts.emplace_back(s.K, s.value);
    }
    if (pts.size() >= 2) {
        report.fit = fit_order(pts, report.noise_floor);
        report.fit.excluded = static_cast<int>(
            std::count_if(report.samples.begin(), report.samples.end(), [&](const ErrorSample& s) {
                return s.ok && s.value < report.noise_floor;
            }));
    }
}

}  // namespace

FitResult fit_order(std::span<const std::pair<double, double>> samples, double noise_floor) {
    if (samples.size() < 2) {
        throw ValidationError("fit_order needs at least two samples");
    }
    std::vector<std::pair<double, double>> pts;
    int excluded = 0;
    for (const auto& [k, err] : samples) {
        if (!(k > 0.0)) {
            throw ValidationError("fit_order: stiffness values must be positive");
        }
        if (!(err > 0.0)) {
            throw ValidationError("fit_order: error values must be positive");
        }
        if (err < noise_floor) {
            ++excluded;
            continue;
        }
        pts.emplace_back(std::log10(k), std::log10(err));
    }
    if (pts.size() < 2) {
        throw ValidationError("fit_order: fewer than two samples above the noise floor");
    }
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double n = static_cast<double>(pts.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) {
        throw ValidationError("fit_order: degenerate abscissa");
    }
    const double slope = sxy / sxx;
    double ss = 0.0;
    for (const auto& [x, y] : pts) {
        const double r = y - (my + slope * (x - mx));
        ss += r * r;
    }
    return FitResult{slope, std::sqrt(ss / n), static_cast<int>(pts.size()), excluded};
}

std::vector<double> default_stiffness_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i) {
        grid.push_back(std::pow(10.0, 2.0 + 0.5 * i));
    }
    return grid;
}

FastScaleReports fast_scale_error(double alpha, double U, double V,
                                  std::span<const double> k_grid, double tau_end,
                                  bool expanding, const VerifyConfig& cfg) {
    if (k_grid.empty()) {
        throw ValidationError("fast_scale_error: empty stiffness grid");
    }
    FastScaleReports out{
        base_report("fast-scale", "sup |L - fast_length|", "sup-grid", alpha, U, V,
                    tau_end, expanding, cfg),
        base_report("fast-scale", "sup |theta - fast_angle|", "sup-grid", alpha, U, V,
                    tau_end, expanding, cfg),
    };
    for (double K : k_grid) {
        const ModelParams p = ModelParams::make(alpha, U, V, K);
        const double omega = strained_frequency(p).value;
        const double tau_stop = expanding ? tau_end / p.epsilon : tau_end;
        const double t_stop = tau_stop * p.epsilon / omega;
        ErrorSample length{K, p.epsilon, kNaN, false, ""};
        ErrorSample angle{K, p.epsilon, kNaN, false, ""};
        try {
            IntegratorConfig icfg{pick_step(p.epsilon, cfg), 500'000'000, cfg.l_min};
            const Trajectory traj =
                integrate(polar_rhs(K, cfg.l_min), initial_state(p), 0.0, t_stop, icfg);
            double sup_l = 0.0, sup_t = 0.0;
            for (std::size_t i = 0; i < traj.times.size(); ++i) {
                const double tau = omega * traj.times[i] / p.epsilon;
                sup_l = std::max(sup_l, std::abs(traj.states[i].L - fast_length(tau, p)));
                sup_t = std::max(sup_t, std::abs(traj.states[i].theta - fast_angle(tau, p)));
            }
            length.value = sup_l;
            length.ok = true;
            angle.value = sup_t;
            angle.ok = true;
        } catch (const Error& err) {
            length.note = err.what();
            angle.note = err.what();
        }
        out.length.samples.push_back(std::move(length));
        out.angle.samples.push_back(std::move(angle));
    }
    finish_fit(out.length);
    finish_fit(out.angle);
    return out;
}

SlowScaleReports slow_scale_error(double alpha, double U, double V,
                                  std::span<const double> k_grid, double t_end,
                                  SlowAngleMethod method, const VerifyConfig& cfg) {
    if (k_grid.empty()) {
        throw ValidationError("slow_scale_error: empty stiffness grid");
    }
    const std::string ref = method == SlowAngleMethod::Rk4 ? "theta0" : "theta0-small-angle";
    SlowScaleReports out{
        base_report("slow-scale", "sup |theta - " + ref + "|", "sup-grid", alpha, U, V,
                    t_end, false, cfg),
        base_report("slow-scale", "sup |theta_dot - " + ref + "_dot|", "sup-grid", alpha,
                    U, V, t_end, false, cfg),
    };
    for (double K : k_grid) {
        const ModelParams p = ModelParams::make(alpha, U, V, K);
        ErrorSample angle{K, p.epsilon, kNaN, false, ""};
        ErrorSample rate{K, p.epsilon, kNaN, false, ""};
        try {
            IntegratorConfig icfg{pick_step(p.epsilon, cfg), 500'000'000, cfg.l_min};
            const Trajectory traj =
                integrate(polar_rhs(K, cfg.l_min), initial_state(p), 0.0, t_end, icfg);
            const Trajectory ref_traj = slow_angle(traj.times, p, method, icfg.step);
            double sup_a = 0.0, sup_r = 0.0;
            for (std::size_t i = 0; i < traj.times.size(); ++i) {
                sup_a = std::max(sup_a,
                                 std::abs(traj.states[i].theta - ref_traj.states[i].theta));
                sup_r = std::max(sup_r, std::abs(traj.states[i].theta_dot -
                                                 ref_traj.states[i].theta_dot));
            }
            angle.value = sup_a;
            angle.ok = true;
            rate.value = sup_r;
            rate.ok = true;
        } catch (const Error& err) {
            angle.note = err.what();
            rate.note = err.what();
        }
        out.angle.samples.push_back(std::move(angle));
        out.angle_rate.samples.push_back(std::move(rate));
    }
    finish_fit(out.angle);
    finish_fit(out.angle_rate);
    return out;
}

ReturnTimeStudy return_time_study(double alpha, double U, double V,
                                  std::span<const double> k_grid, const VerifyConfig& cfg,
                                  const ShootingConfig& shooting) {
    if (k_grid.empty()) {
        throw ValidationError("return_time_study: empty stiffness grid");
    }
    ReturnTimeStudy study{
        base_report("return-time", "|t*/eps - pi|, first length return, fixed params",
                    "abs", alpha, U, V, 0.0, false, cfg),
        base_report("return-time", "|omega t*/eps - mu|, first length return vs refined phase",
                    "abs", alpha, U, V, 0.0, false, cfg),
        base_report("return-time", "|t*/eps - pi| at the solved stance problem",
                    "abs", alpha, U, V, 0.0, false, cfg),
    };

    for (double K : k_grid) {
        const ModelParams p = ModelParams::make(alpha, U, V, K);
        ErrorSample vs_pi{K, p.epsilon, kNaN, false, ""};
        ErrorSample vs_mu{K, p.epsilon, kNaN, false, ""};
        try {
            IntegratorConfig icfg{pick_step(p.epsilon, cfg), 500'000'000, cfg.l_min};
            const EventResult hit = locate_event(polar_rhs(K, cfg.l_min), initial_state(p),
                                                 0.0, 20.0 * std::numbers::pi * p.epsilon,
                                                 EventSpec::length_returns(), icfg);
            const double omega = strained_frequency(p).value;
            vs_pi.value = std::abs(hit.t / p.epsilon - std::numbers::pi);
            vs_pi.ok = true;
            vs_mu.value = std::abs(omega * hit.t / p.epsilon - refined_return_phase(p).mu);
            vs_mu.ok = true;
        } catch (const Error& err) {
            vs_pi.note = err.what();
            vs_mu.note = err.what();
        }
        study.fixed_vs_pi.samples.push_back(std::move(vs_pi));
        study.fixed_vs_refined.samples.push_back(std::move(vs_mu));
    }

    // solved study: per grid stiffness, pick the attack angle whose estimate
    // matches, solve the stance problem, and compare t* with eps* pi
    for (double K : k_grid) {
        ErrorSample solved{K, 1.0 / std::sqrt(K), kNaN, false, ""};
        try {
            const double a = matching_attack_angle(K, U, V);
            ShootingConfig scfg = shooting;
            if (scfg.step <= 0.0) {
                scfg.step = std::min(1e-4, 0.01 / std::sqrt(K));
            }
            const StanceSolution sol = solve_stiffness(a, U, V, scfg);
            const double eps_star = 1.0 / std::sqrt(sol.k_star);
            solved.K = sol.k_star;
            solved.epsilon = eps_star;
            solved.value = std::abs(sol.t_star / eps_star - std::numbers::pi);
            solved.ok = true;
        } catch (const Error& err) {
            solved.note = err.what();
        }
        study.solved_vs_pi.samples.push_back(std::move(solved));
    }

    finish_fit(study.fixed_vs_pi);
    finish_fit(study.fixed_vs_refined);
    finish_fit(study.solved_vs_pi);
    return study;
}

std::vector<RatioRow> stiffness_ratio_study(std::span<const double> alphas, double U,
                                            double V, const ShootingConfig& cfg) {
    if (alphas.empty()) {
        throw ValidationError("stiffness_ratio_study: empty attack-angle grid");
    }
    std::vector<RatioRow> rows;
    rows.reserve(alphas.size());
    for (double a : alphas) {
        RatioRow row{a, kNaN, kNaN, kNaN, kNaN, false, ""};
        try {
            row.k_approx = approx_stiffness(a, U, V);
            const StanceSolution sol = solve_stiffness(a, U, V, cfg);
            row.k_star = sol.k_star;
            row.ratio = sol.k_star / row.k_approx;
            row.t_star = sol.t_star;
            row.ok = true;
        } catch (const Error& err) {
            row.note = err.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace slip
