#include "slipsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "slipsim/asymptotics.hpp"

namespace slip::io {

namespace {

using nlohmann::json;

json sample_json(const ErrorSample& s) {
    json j;
    j["K"] = s.K;
    j["epsilon"] = s.epsilon;
    j["error"] = s.ok ? json(s.value) : json(nullptr);
    j["ok"] = s.ok;
    if (!s.note.empty()) {
        j["note"] = s.note;
    }
    return j;
}

json report_json(const ConvergenceReport& r) {
    json j;
    j["experiment"] = r.experiment;
    j["quantity"] = r.quantity;
    j["norm"] = r.norm;
    j["alpha"] = r.alpha;
    j["U"] = r.U;
    j["V"] = r.V;
    j["interval_end"] = r.interval_end;
    j["expanding"] = r.expanding;
    j["step_policy"] = r.step_policy;
    j["noise_floor"] = r.noise_floor;
    j["slope"] = r.fit.slope;
    j["fit_rms_log10"] = r.fit.rms_residual;
    j["samples_used"] = r.fit.used;
    j["samples_excluded"] = r.fit.excluded;
    j["samples"] = json::array();
    for (const auto& s : r.samples) {
        j["samples"].push_back(sample_json(s));
    }
    return j;
}

}  // namespace

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ValidationError("cannot open output file: " + tmp.string());
        }
        out << content;
        if (!out) {
            throw ValidationError("failed writing output file: " + tmp.string());
        }
    }
    fs::rename(tmp, target);
}

std::string csv_header(const std::string& tool_line,
                       const std::vector<std::string>& config_lines,
                       const std::string& columns) {
    std::ostringstream out;
    out << "# " << tool_line << "\n";
    for (const auto& line : config_lines) {
        out << "# " << line << "\n";
    }
    out << columns << "\n";
    return out.str();
}

std::string trajectory_csv(const Trajectory& traj, const std::string& tool_line) {
    std::vector<std::string> config;
    double eps = 0.0, omega = 1.0, stiffness = 0.0;
    if (traj.params) {
        const ModelParams& p = *traj.params;
        config.push_back("alpha=" + fmt(p.alpha) + " U=" + fmt(p.U) + " V=" + fmt(p.V) +
                         " K=" + fmt(p.K));
        eps = p.epsilon;
        omega = strained_frequency(p).value;
        stiffness = p.K;
    }
    config.push_back("step=" + fmt(traj.step) + " deterministic=true");
    std::ostringstream out;
    out << csv_header(tool_line, config, "t,tau_plus,theta,theta_dot,L,L_dot,energy");
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const State& s = traj.states[i];
        const double tau_plus = eps > 0.0 ? omega * traj.times[i] / eps : 0.0;
        out << fmt(traj.times[i]) << ',' << fmt(tau_plus) << ',' << fmt(s.theta) << ','
            << fmt(s.theta_dot) << ',' << fmt(s.L) << ',' << fmt(s.L_dot) << ','
            << fmt(energy(s, stiffness)) << "\n";
    }
    return out.str();
}

std::string solution_json(const StanceSolution& sol, const std::string& tool_line) {
    json j;
    j["tool"] = tool_line;
    j["k_star"] = sol.k_star;
    j["t_star"] = sol.t_star;
    j["tau_star"] = sol.tau_star;
    j["residual_length"] = sol.residual_length;
    j["residual_angle"] = sol.residual_angle;
    j["iterations"] = sol.iterations;
    j["k_approx"] = sol.k_approx;
    j["config"] = {
        {"k_seed0", sol.config.k_seed0},
        {"k_seed1", sol.config.k_seed1},
        {"residual_tol", sol.config.residual_tol},
        {"max_iterations", sol.config.max_iterations},
        {"step", sol.config.step},
        {"l_min", sol.config.l_min},
        {"root_tol", sol.config.root_tol},
        {"t_max", sol.config.t_max},
        {"alpha_validity", sol.config.alpha_validity},
    };
    if (sol.trajectory.params) {
        const ModelParams& p = *sol.trajectory.params;
        j["params"] = {{"alpha", p.alpha}, {"U", p.U}, {"V", p.V}, {"K", p.K},
                       {"theta_d", p.theta_d}, {"L_d", p.L_d}, {"epsilon", p.epsilon}};
    }
    j["shots"] = json::array();
    for (const auto& shot : sol.shots) {
        json s = {{"K", shot.K}};
        s["residual"] = std::isnan(shot.residual) ? json(nullptr) : json(shot.residual);
        s["t_cross"] = std::isnan(shot.t_cross) ? json(nullptr) : json(shot.t_cross);
        if (!shot.note.empty()) {
            s["note"] = shot.note;
        }
        j["shots"].push_back(std::move(s));
    }
    return j.dump(2) + "\n";
}

std::string approx_json(double alpha, double U, double V, double k_approx,
                        const std::string& tool_line) {
    json j;
    j["tool"] = tool_line;
    j["alpha"] = alpha;
    j["U"] = U;
    j["V"] = V;
    j["k_approx"] = k_approx;
    return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& tool_line) {
    std::ostringstream out;
    out << csv_header(tool_line, {},
                      "alpha,U,V,k_star,k_approx,ratio,t_star,tau_star,residual_length,"
                      "residual_angle,iterations,status");
    for (const auto& row : rows) {
        out << fmt(row.alpha) << ',' << fmt(row.U) << ',' << fmt(row.V) << ',';
        if (row.solution) {
            const StanceSolution& s = *row.solution;
            out << fmt(s.k_star) << ',' << fmt(row.k_approx) << ','
                << fmt(s.k_star / row.k_approx) << ',' << fmt(s.t_star) << ','
                << fmt(s.tau_star) << ',' << fmt(s.residual_length) << ','
                << fmt(s.residual_angle) << ',' << s.iterations << ",ok";
        } else {
            out << ",,,,,,,," << "error: " << row.error;
        }
        out << "\n";
    }
    return out.str();
}

std::string report_csv(const std::vector<const ConvergenceReport*>& reports,
                       const std::string& tool_line) {
    std::ostringstream out;
    std::vector<std::string> config;
    for (const auto* r : reports) {
        config.push_back("series '" + r->quantity + "': norm=" + r->norm +
                         " interval_end=" + fmt(r->interval_end) +
                         " expanding=" + (r->expanding ? "true" : "false") +
                         " step_policy=" + r->step_policy +
                         " slope=" + fmt(r->fit.slope) +
                         " fit_rms_log10=" + fmt(r->fit.rms_residual));
    }
    out << csv_header(tool_line, config, "series,K,epsilon,error,ok,note");
    for (const auto* r : reports) {
        for (const auto& s : r->samples) {
            out << r->quantity << ',' << fmt(s.K) << ',' << fmt(s.epsilon) << ','
                << (s.ok ? fmt(s.value) : "") << ',' << (s.ok ? "1" : "0") << ','
                << s.note << "\n";
        }
    }
    return out.str();
}

std::string report_slopes_json(const std::vector<const ConvergenceReport*>& reports,
                               const std::string& tool_line) {
    json j;
    j["tool"] = tool_line;
    j["reports"] = json::array();
    for (const auto* r : reports) {
        j["reports"].push_back(report_json(*r));
    }
    return j.dump(2) + "\n";
}

std::string ratio_csv(const std::vector<RatioRow>& rows, const std::string& tool_line) {
    std::ostringstream out;
    out << csv_header(tool_line, {}, "alpha,k_star,k_approx,ratio,t_star,status");
    for (const auto& row : rows) {
        out << fmt(row.alpha) << ',';
        if (row.ok) {
            out << fmt(row.k_star) << ',' << fmt(row.k_approx) << ',' << fmt(row.ratio)
                << ',' << fmt(row.t_star) << ",ok";
        } else {
            out << ",,,," << "error: " << row.note;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace slip::io
