#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slipsim/asymptotics.hpp"
#include "slipsim/bvp.hpp"
#include "slipsim/integrator.hpp"
#include "slipsim/model.hpp"
#include "slipsim/verify.hpp"

namespace py = pybind11;
using namespace slip;

namespace {

py::dict fit_dict(const FitResult& f) {
    py::dict d;
    d["slope"] = f.slope;
    d["rms_residual"] = f.rms_residual;
    d["used"] = f.used;
    d["excluded"] = f.excluded;
    return d;
}

py::dict report_dict(const ConvergenceReport& r) {
    py::dict d;
    d["experiment"] = r.experiment;
    d["quantity"] = r.quantity;
    d["norm"] = r.norm;
    d["alpha"] = r.alpha;
    d["U"] = r.U;
    d["V"] = r.V;
    d["interval_end"] = r.interval_end;
    d["expanding"] = r.expanding;
    d["step_policy"] = r.step_policy;
    d["fit"] = fit_dict(r.fit);
    py::list samples;
    for (const auto& s : r.samples) {
        py::dict sd;
        sd["K"] = s.K;
        sd["epsilon"] = s.epsilon;
        sd["error"] = s.ok ? py::object(py::float_(s.value)) : py::object(py::none());
        sd["ok"] = s.ok;
        sd["note"] = s.note;
        samples.append(sd);
    }
    d["samples"] = samples;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spring-mass running stance model: simulation, stiffness BVP, "
              "asymptotic approximations, convergence studies";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<SingularityError>(m, "SingularityError", PyExc_RuntimeError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<EventNotFoundError>(m, "EventNotFoundError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<ModelParams>(m, "ModelParams", "nondimensional stance parameters")
        .def(py::init(&ModelParams::make), py::arg("alpha"), py::arg("U"), py::arg("V"),
             py::arg("K"))
        .def_readonly("alpha", &ModelParams::alpha)
        .def_readonly("U", &ModelParams::U)
        .def_readonly("V", &ModelParams::V)
        .def_readonly("K", &ModelParams::K)
        .def_readonly("theta_d", &ModelParams::theta_d)
        .def_readonly("L_d", &ModelParams::L_d)
        .def_readonly("epsilon", &ModelParams::epsilon)
        .def("with_stiffness", &ModelParams::with_stiffness, py::arg("K"))
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(alpha=" + std::to_string(p.alpha) + ", U=" +
                   std::to_string(p.U) + ", V=" + std::to_string(p.V) + ", K=" +
                   std::to_string(p.K) + ")";
        });

    py::class_<State>(m, "State")
        .def(py::init([](double theta, double theta_dot, double L, double L_dot) {
                 return State{theta, theta_dot, L, L_dot};
             }),
             py::arg("theta"), py::arg("theta_dot"), py::arg("L"), py::arg("L_dot"))
        .def_readwrite("theta", &State::theta)
        .def_readwrite("theta_dot", &State::theta_dot)
        .def_readwrite("L", &State::L)
        .def_readwrite("L_dot", &State::L_dot)
        .def("__repr__", [](const State& s) {
            return "State(theta=" + std::to_string(s.theta) + ", theta_dot=" +
                   std::to_string(s.theta_dot) + ", L=" + std::to_string(s.L) +
                   ", L_dot=" + std::to_string(s.L_dot) + ")";
        });

    py::enum_<TimeScale>(m, "TimeScale")
        .value("Slow", TimeScale::Slow)
        .value("Fast", TimeScale::Fast)
        .value("Strained", TimeScale::Strained);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("scale", &Trajectory::scale)
        .def_readonly("times", &Trajectory::times)
        .def_readonly("states", &Trajectory::states)
        .def_readonly("step", &Trajectory::step)
        .def_property_readonly("params",
                               [](const Trajectory& t) -> py::object {
                                   if (t.params) {
                                       return py::cast(*t.params);
                                   }
                                   return py::none();
                               })
        .def("theta", [](const Trajectory& t) {
            std::vector<double> v(t.states.size());
            for (std::size_t i = 0; i < t.states.size(); ++i) v[i] = t.states[i].theta;
            return v;
        })
        .def("L", [](const Trajectory& t) {
            std::vector<double> v(t.states.size());
            for (std::size_t i = 0; i < t.states.size(); ++i) v[i] = t.states[i].L;
            return v;
        })
        .def("__len__", [](const Trajectory& t) { return t.times.size(); });

    m.def("nondimensionalize",
          [](double mass, double gravity, double rest_length, double spring_constant,
             double horizontal_speed, double vertical_speed, double attack_angle) {
              return nondimensionalize({mass, gravity, rest_length, spring_constant,
                                        horizontal_speed, vertical_speed, attack_angle});
          },
          py::arg("mass"), py::arg("gravity"), py::arg("rest_length"),
          py::arg("spring_constant"), py::arg("horizontal_speed"),
          py::arg("vertical_speed"), py::arg("attack_angle"),
          "Froude scaling of dimensional stance inputs");

    m.def("touchdown_rates",
          [](double alpha, double U, double V) {
              const auto r = touchdown_rates(alpha, U, V);
              return py::make_tuple(r.theta_d, r.L_d);
          },
          py::arg("alpha"), py::arg("U"), py::arg("V"),
          "(theta_d, L_d) at touchdown");

    m.def("initial_state", &initial_state, py::arg("params"));
    m.def("energy", &energy, py::arg("state"), py::arg("K"));
    m.def("polar_eom",
          [](const State& s, double K) {
              const Deriv d = polar_eom(s, K);
              return py::make_tuple(d.theta_dot, d.theta_ddot, d.L_dot, d.L_ddot);
          },
          py::arg("state"), py::arg("K"),
          "(theta_dot, theta_ddot, L_dot, L_ddot)");
    m.def("angular_momentum_residual", &angular_momentum_residual, py::arg("trajectory"));

    m.def("simulate",
          [](const ModelParams& p, double T, double step) {
              IntegratorConfig cfg;
              cfg.step = step;
              return simulate(p, T, cfg);
          },
          py::arg("params"), py::arg("T"), py::arg("step") = 0.0,
          "integrate a stance trajectory from touchdown to slow time T");

    m.def("default_step", &default_step, py::arg("epsilon"));

    m.def("strained_frequency",
          [](const ModelParams& p) { return strained_frequency(p).value; },
          py::arg("params"));
    m.def("fast_length", &fast_length, py::arg("tau_plus"), py::arg("params"));
    m.def("fast_angle", &fast_angle, py::arg("tau_plus"), py::arg("params"));
    m.def("relabel", &relabel, py::arg("trajectory"), py::arg("target"));

    py::enum_<SlowAngleMethod>(m, "SlowAngleMethod")
        .value("Rk4", SlowAngleMethod::Rk4)
        .value("SmallAngle", SlowAngleMethod::SmallAngle);

    m.def("slow_angle",
          [](const std::vector<double>& grid, const ModelParams& p, SlowAngleMethod method,
             double max_internal_step) {
              return slow_angle(grid, p, method, max_internal_step);
          },
          py::arg("t_grid"), py::arg("params"),
          py::arg("method") = SlowAngleMethod::Rk4,
          py::arg("max_internal_step") = 1e-3,
          "leading-order slow angle evolution on the grid");

    m.def("consistency_check",
          [](const ModelParams& p, double margin) {
              const auto report = consistency_check(p, margin);
              py::list entries;
              for (const auto& e : report.entries) {
                  py::dict d;
                  d["name"] = e.name;
                  d["ratio"] = e.ratio;
                  d["pass"] = e.pass;
                  d["advisory"] = e.advisory;
                  entries.append(d);
              }
              py::dict out;
              out["margin"] = report.margin;
              out["entries"] = entries;
              out["core_pass"] = report.core_pass;
              return out;
          },
          py::arg("params"), py::arg("margin") = 10.0);

    m.def("approx_stiffness", &approx_stiffness, py::arg("alpha"), py::arg("U"),
          py::arg("V"), "closed-form stiffness estimate (pi theta_d / (2 alpha))^2");
    m.def("matching_attack_angle", &matching_attack_angle, py::arg("K"), py::arg("U"),
          py::arg("V"), py::arg("alpha_max") = 0.9);
    m.def("refined_return_phase",
          [](const ModelParams& p) {
              const auto r = refined_return_phase(p);
              py::dict d;
              d["mu"] = r.mu;
              d["cos_mu"] = r.cos_mu;
              d["degenerate"] = r.degenerate;
              return d;
          },
          py::arg("params"));

    py::class_<ShootingConfig>(m, "ShootingConfig")
        .def(py::init<>())
        .def_readwrite("k_seed0", &ShootingConfig::k_seed0)
        .def_readwrite("k_seed1", &ShootingConfig::k_seed1)
        .def_readwrite("residual_tol", &ShootingConfig::residual_tol)
        .def_readwrite("max_iterations", &ShootingConfig::max_iterations)
        .def_readwrite("step", &ShootingConfig::step)
        .def_readwrite("t_max", &ShootingConfig::t_max)
        .def_readwrite("alpha_validity", &ShootingConfig::alpha_validity);

    py::class_<StanceSolution>(m, "StanceSolution")
        .def_readonly("k_star", &StanceSolution::k_star)
        .def_readonly("t_star", &StanceSolution::t_star)
        .def_readonly("tau_star", &StanceSolution::tau_star)
        .def_readonly("residual_length", &StanceSolution::residual_length)
        .def_readonly("residual_angle", &StanceSolution::residual_angle)
        .def_readonly("iterations", &StanceSolution::iterations)
        .def_readonly("k_approx", &StanceSolution::k_approx)
        .def_readonly("trajectory", &StanceSolution::trajectory)
        .def("__repr__", [](const StanceSolution& s) {
            return "StanceSolution(k_star=" + std::to_string(s.k_star) + ", t_star=" +
                   std::to_string(s.t_star) + ")";
        });

    m.def("solve_stiffness", &solve_stiffness, py::arg("alpha"), py::arg("U"),
          py::arg("V"), py::arg("config") = ShootingConfig{},
          "shooting solution of the stance stiffness problem");

    m.def("stance_sweep",
          [](const std::vector<double>& alphas, const std::vector<double>& Us, double V,
             const ShootingConfig& cfg) {
              py::list rows;
              for (const auto& row : stance_sweep(alphas, Us, V, cfg)) {
                  py::dict d;
                  d["alpha"] = row.alpha;
                  d["U"] = row.U;
                  d["V"] = row.V;
                  d["k_approx"] = row.k_approx;
                  d["ok"] = row.solution.has_value();
                  if (row.solution) {
                      d["k_star"] = row.solution->k_star;
                      d["t_star"] = row.solution->t_star;
                      d["tau_star"] = row.solution->tau_star;
                  } else {
                      d["error"] = row.error;
                  }
                  rows.append(d);
              }
              return rows;
          },
          py::arg("alphas"), py::arg("Us"), py::arg("V"),
          py::arg("config") = ShootingConfig{});

    m.def("default_stiffness_grid", &default_stiffness_grid);

    m.def("fit_order",
          [](const std::vector<std::pair<double, double>>& samples, double noise_floor) {
              return fit_dict(fit_order(samples, noise_floor));
          },
          py::arg("samples"), py::arg("noise_floor") = 1e-13,
          "least-squares slope of log10(error) vs log10(K)");

    m.def("fast_scale_error",
          [](double alpha, double U, double V, const std::vector<double>& k_grid,
             double tau_end, bool expanding) {
              const auto reports = fast_scale_error(alpha, U, V, k_grid, tau_end, expanding);
              return py::make_tuple(report_dict(reports.length), report_dict(reports.angle));
          },
          py::arg("alpha"), py::arg("U"), py::arg("V"), py::arg("k_grid"),
          py::arg("tau_end"), py::arg("expanding") = false);

    m.def("slow_scale_error",
          [](double alpha, double U, double V, const std::vector<double>& k_grid,
             double t_end, SlowAngleMethod method) {
              const auto reports = slow_scale_error(alpha, U, V, k_grid, t_end, method);
              return py::make_tuple(report_dict(reports.angle),
                                    report_dict(reports.angle_rate));
          },
          py::arg("alpha"), py::arg("U"), py::arg("V"), py::arg("k_grid"),
          py::arg("t_end"), py::arg("method") = SlowAngleMethod::Rk4);

    m.def("return_time_study",
          [](double alpha, double U, double V, const std::vector<double>& k_grid) {
              const auto study = return_time_study(alpha, U, V, k_grid);
              py::dict d;
              d["fixed_vs_pi"] = report_dict(study.fixed_vs_pi);
              d["fixed_vs_refined"] = report_dict(study.fixed_vs_refined);
              d["solved_vs_pi"] = report_dict(study.solved_vs_pi);
              return d;
          },
          py::arg("alpha"), py::arg("U"), py::arg("V"), py::arg("k_grid"));

    m.def("stiffness_ratio_study",
          [](const std::vector<double>& alphas, double U, double V,
             const ShootingConfig& cfg) {
              py::list rows;
              for (const auto& row : stiffness_ratio_study(alphas, U, V, cfg)) {
                  py::dict d;
                  d["alpha"] = row.alpha;
                  d["k_star"] = row.k_star;
                  d["k_approx"] = row.k_approx;
                  d["ratio"] = row.ratio;
                  d["t_star"] = row.t_star;
                  d["ok"] = row.ok;
                  d["note"] = row.note;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("alphas"), py::arg("U"), py::arg("V"),
          py::arg("config") = ShootingConfig{});

#ifdef SLIPSIM_VERSION
#define SLIPSIM_STR2(x) #x
#define SLIPSIM_STR(x) SLIPSIM_STR2(x)
    m.attr("__version__") = SLIPSIM_STR(SLIPSIM_VERSION);
#else
    m.attr("__version__") = "dev";
#endif
}
