// slipsim command line: stance simulation, stiffness solving, parameter
// sweeps, and convergence-order experiments. Emits self-describing CSV
// (config echoed in '#' comment lines) and JSON; all floating-point output
// uses 17 significant digits so files round-trip exactly.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slipsim/asymptotics.hpp"
#include "slipsim/bvp.hpp"
#include "slipsim/io.hpp"
#include "slipsim/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// "lo:hi:n" -> n values; a bare number -> one value. Verify K grids are
// log10-uniform, everything else linear.
std::vector<double> parse_range(const std::string& text, bool log_spaced) {
    std::vector<double> values;
    const auto fail = [&]() {
        throw slip::ValidationError("bad range '" + text + "', expected value or lo:hi:n");
    };
    if (text.find(':') == std::string::npos) {
        try {
            values.push_back(std::stod(text));
        } catch (const std::exception&) {
            fail();
        }
        return values;
    }
    double lo = 0.0, hi = 0.0;
    long n = 0;
    std::istringstream in(text);
    char c1 = 0, c2 = 0;
    if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1) {
        fail();
    }
    if (n == 1) {
        values.push_back(lo);
        return values;
    }
    for (long i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n - 1);
        if (log_spaced) {
            if (lo <= 0.0 || hi <= 0.0) {
                fail();
            }
            values.push_back(std::pow(10.0, std::log10(lo) + f * (std::log10(hi) - std::log10(lo))));
        } else {
            values.push_back(lo + f * (hi - lo));
        }
    }
    return values;
}

std::string quote_if_needed(const std::string& s) {
    return s.find(' ') == std::string::npos ? s : "'" + s + "'";
}

std::string invocation_line(int argc, char** argv) {
    std::string line = "slipsim";
    for (int i = 1; i < argc; ++i) {
        line += " " + quote_if_needed(argv[i]);
    }
    return line;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
    } else {
        slip::io::write_file(out_path, content);
    }
}

void emit_sidecar(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
    } else {
        slip::io::write_file(out_path + ".json", content);
    }
}

int run(int argc, char** argv) {
    const std::string tool_line = invocation_line(argc, argv);

    CLI::App app{"spring-mass stance model: simulation, stiffness BVP, asymptotics checks"};
    app.require_subcommand(1);

    // ---- simulate ----------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "integrate a stance trajectory");
    double s_alpha = 0.4, s_U = 1.0, s_V = 0.1, s_K = 0.0, s_T = 1.0, s_step = 0.0;
    std::string s_out, s_format = "csv";
    simulate->add_option("--alpha", s_alpha, "attack angle [rad]");
    simulate->add_option("--U", s_U, "horizontal Froude number");
    simulate->add_option("--V", s_V, "vertical Froude number");
    simulate->add_option("--K", s_K, "dimensionless stiffness")->required();
    simulate->add_option("--T", s_T, "horizon in slow time");
    simulate->add_option("--step", s_step, "integrator step (default min(eps/50, 1e-3))");
    simulate->add_option("--out", s_out, "output path ('-' for stdout)");
    simulate->add_option("--format", s_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- solve -------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "solve the stance stiffness problem");
    double b_alpha = 0.4, b_U = 1.0, b_V = 0.1, b_tol = 1e-10, b_step = 0.0;
    double b_k0 = 0.0, b_k1 = 0.0;
    bool b_approx_only = false;
    std::string b_out;
    solve->add_option("--alpha", b_alpha, "attack angle [rad]");
    solve->add_option("--U", b_U, "horizontal Froude number");
    solve->add_option("--V", b_V, "vertical Froude number");
    solve->add_option("--tol", b_tol, "residual tolerance on |L(t*) - 1|");
    solve->add_option("--step", b_step, "integrator step");
    solve->add_option("--K0", b_k0, "first secant seed (default: closed-form estimate)");
    solve->add_option("--K1", b_k1, "second secant seed (default: 1.1 * K0)");
    solve->add_flag("--approx-only", b_approx_only, "emit the closed-form estimate only");
    solve->add_option("--out", b_out, "output path ('-' for stdout)");

    // ---- sweep -------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "solve over an alpha x U grid");
    std::string w_alpha = "0.4", w_U = "1", w_out;
    double w_V = 0.1, w_tol = 1e-10, w_step = 0.0;
    sweep->add_option("--alpha", w_alpha, "attack angle value or lo:hi:n");
    sweep->add_option("--U", w_U, "horizontal Froude value or lo:hi:n");
    sweep->add_option("--V", w_V, "vertical Froude number");
    sweep->add_option("--tol", w_tol, "residual tolerance");
    sweep->add_option("--step", w_step, "integrator step");
    sweep->add_option("--out", w_out, "output path ('-' for stdout)");

    // ---- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand(
        "verify", "convergence-order experiments (fast|slow|tstar|kratio)");
    std::string v_experiment, v_K = "1e2:1e6:9", v_alpha = "0.4", v_out;
    double v_U = 1.0, v_V = 0.1, v_T = 0.0;
    bool v_expanding = false;
    verify->add_option("experiment", v_experiment, "fast|slow|tstar|kratio")
        ->required()
        ->check(CLI::IsMember({"fast", "slow", "tstar", "kratio"}));
    verify->add_option("--alpha", v_alpha,
                       "attack angle (kratio accepts lo:hi:n or comma list)");
    verify->add_option("--U", v_U, "horizontal Froude number");
    verify->add_option("--V", v_V, "vertical Froude number");
    verify->add_option("--K", v_K, "stiffness grid lo:hi:n (log10-uniform)");
    verify->add_option("--T", v_T,
                       "interval end (fast: tau+, default pi; slow: t, default 1)");
    verify->add_flag("--expanding", v_expanding, "fast: use tau+ <= T/eps per sample");
    verify->add_option("--out", v_out, "output path ('-' for stdout); slopes go to <out>.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return kExitValidation;
    }

    if (simulate->parsed()) {
        const auto p = slip::ModelParams::make(s_alpha, s_U, s_V, s_K);
        if (!(s_T >= 0.0)) {
            throw slip::ValidationError("horizon T must be >= 0");
        }
        slip::IntegratorConfig cfg;
        cfg.step = s_step > 0.0 ? s_step : slip::default_step(p.epsilon);
        const slip::Trajectory traj = slip::simulate(p, s_T, cfg);
        if (s_format == "csv") {
            emit(s_out, slip::io::trajectory_csv(traj, tool_line));
        } else {
            nlohmann::json j;
            j["tool"] = tool_line;
            j["params"] = {{"alpha", p.alpha}, {"U", p.U}, {"V", p.V}, {"K", p.K}};
            j["step"] = traj.step;
            j["t"] = traj.times;
            const double omega = slip::strained_frequency(p).value;
            nlohmann::json tau = nlohmann::json::array(), th = nlohmann::json::array(),
                           thd = nlohmann::json::array(), L = nlohmann::json::array(),
                           Ld = nlohmann::json::array(), en = nlohmann::json::array();
            for (std::size_t i = 0; i < traj.times.size(); ++i) {
                tau.push_back(omega * traj.times[i] / p.epsilon);
                th.push_back(traj.states[i].theta);
                thd.push_back(traj.states[i].theta_dot);
                L.push_back(traj.states[i].L);
                Ld.push_back(traj.states[i].L_dot);
                en.push_back(slip::energy(traj.states[i], p.K));
            }
            j["tau_plus"] = tau;
            j["theta"] = th;
            j["theta_dot"] = thd;
            j["L"] = L;
            j["L_dot"] = Ld;
            j["energy"] = en;
            emit(s_out, j.dump(2) + "\n");
        }
        return kExitOk;
    }

    if (solve->parsed()) {
        if (b_approx_only) {
            const double k_approx = slip::approx_stiffness(b_alpha, b_U, b_V);
            emit(b_out, slip::io::approx_json(b_alpha, b_U, b_V, k_approx, tool_line));
            return kExitOk;
        }
        slip::ShootingConfig cfg;
        cfg.residual_tol = b_tol;
        cfg.step = b_step;
        cfg.k_seed0 = b_k0;
        cfg.k_seed1 = b_k1;
        const slip::StanceSolution sol = slip::solve_stiffness(b_alpha, b_U, b_V, cfg);
        emit(b_out, slip::io::solution_json(sol, tool_line));
        return kExitOk;
    }

    if (sweep->parsed()) {
        const auto alphas = parse_range(w_alpha, false);
        const auto Us = parse_range(w_U, false);
        slip::ShootingConfig cfg;
        cfg.residual_tol = w_tol;
        cfg.step = w_step;
        const auto rows = slip::stance_sweep(alphas, Us, w_V, cfg);
        emit(w_out, slip::io::sweep_csv(rows, tool_line));
        const bool all_failed = std::all_of(rows.begin(), rows.end(),
                                            [](const slip::SweepRow& r) { return !r.solution; });
        return all_failed ? kExitNumerical : kExitOk;
    }

    if (verify->parsed()) {
        const auto k_grid = parse_range(v_K, true);
        if (v_experiment == "fast") {
            const double tau_end = v_T > 0.0 ? v_T : std::numbers::pi;
            const auto reports = slip::fast_scale_error(parse_range(v_alpha, false).at(0),
                                                        v_U, v_V, k_grid, tau_end, v_expanding);
            const std::vector<const slip::ConvergenceReport*> list{&reports.length,
                                                                   &reports.angle};
            emit(v_out, slip::io::report_csv(list, tool_line));
            emit_sidecar(v_out, slip::io::report_slopes_json(list, tool_line));
        } else if (v_experiment == "slow") {
            const double t_end = v_T > 0.0 ? v_T : 1.0;
            const auto reports = slip::slow_scale_error(parse_range(v_alpha, false).at(0),
                                                        v_U, v_V, k_grid, t_end);
            const std::vector<const slip::ConvergenceReport*> list{&reports.angle,
                                                                   &reports.angle_rate};
            emit(v_out, slip::io::report_csv(list, tool_line));
            emit_sidecar(v_out, slip::io::report_slopes_json(list, tool_line));
        } else if (v_experiment == "tstar") {
            const auto study = slip::return_time_study(parse_range(v_alpha, false).at(0),
                                                       v_U, v_V, k_grid);
            const std::vector<const slip::ConvergenceReport*> list{
                &study.fixed_vs_pi, &study.fixed_vs_refined, &study.solved_vs_pi};
            emit(v_out, slip::io::report_csv(list, tool_line));
            emit_sidecar(v_out, slip::io::report_slopes_json(list, tool_line));
        } else {  // kratio
            std::vector<double> alphas;
            if (v_alpha.find(',') != std::string::npos) {
                std::istringstream in(v_alpha);
                std::string item;
                while (std::getline(in, item, ',')) {
                    alphas.push_back(std::stod(item));
                }
            } else {
                alphas = parse_range(v_alpha, false);
            }
            const auto rows = slip::stiffness_ratio_study(alphas, v_U, v_V);
            emit(v_out, slip::io::ratio_csv(rows, tool_line));
            const bool all_failed = std::all_of(rows.begin(), rows.end(),
                                                [](const slip::RatioRow& r) { return !r.ok; });
            if (all_failed) {
                return kExitNumerical;
            }
        }
        return kExitOk;
    }

    return kExitValidation;
}

nlohmann::json error_json(const std::string& kind, const std::string& message) {
    nlohmann::json j;
    j["error"] = kind;
    j["message"] = message;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const slip::ValidationError& e) {
        std::cerr << error_json("validation", e.what()).dump() << "\n";
        return kExitValidation;
    } catch (const slip::SingularityError& e) {
        auto j = error_json("singularity", e.what());
        j["t_last"] = e.t_last;
        j["state"] = {{"theta", e.theta}, {"theta_dot", e.theta_dot},
                      {"L", e.length}, {"L_dot", e.length_dot}};
        std::cerr << j.dump() << "\n";
        return kExitNumerical;
    } catch (const slip::Error& e) {
        std::cerr << error_json("numerical", e.what()).dump() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << error_json("internal", e.what()).dump() << "\n";
        return kExitNumerical;
    }
}
