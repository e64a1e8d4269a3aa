#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "rmopt/bench_fns.hpp"
#include "rmopt/discord.hpp"
#include "rmopt/harness.hpp"
#include "rmopt/hmin.hpp"
#include "rmopt/qstate.hpp"
#include "rmopt/rm_core.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using rmopt::RmConfig;
using rmopt::quantum::CMatrix;
using rmopt::quantum::CVector;

py::dict result_to_dict(const rmopt::OptimizationResult& r) {
  py::list trace;
  for (const auto& e : r.trace) trace.append(py::make_tuple(e.evaluations, e.best_fitness));
  return py::dict("x_best"_a = r.x_best, "f_best"_a = r.f_best, "trace"_a = trace,
                  "generations"_a = r.generations, "evaluations"_a = r.evaluations,
                  "termination_reason"_a = std::string(rmopt::to_string(r.termination_reason)));
}

rmopt::quantum::PureState state_from(const CVector& amplitudes) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < static_cast<std::size_t>(amplitudes.size())) ++n;
  return rmopt::quantum::PureState(n, amplitudes);
}

rmopt::quantum::Subsystem side_from(const std::string& side) {
  if (side == "A") return rmopt::quantum::Subsystem::kA;
  if (side == "B") return rmopt::quantum::Subsystem::kB;
  throw py::value_error("side must be 'A' or 'B'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random-mutations global optimizer with quantum correlation measures";

  py::register_exception<rmopt::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<rmopt::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<rmopt::quantum::InvalidStateError>(m, "InvalidStateError",
                                                            PyExc_ValueError);
  py::register_exception<rmopt::harness::UndefinedMetricError>(m, "UndefinedMetricError",
                                                               PyExc_ArithmeticError);

  py::class_<RmConfig>(m, "RmConfig")
      .def(py::init<>())
      .def_readwrite("n_params", &RmConfig::n_params)
      .def_readwrite("n_pop", &RmConfig::n_pop)
      .def_readwrite("n_des", &RmConfig::n_des)
      .def_readwrite("n_maxmut", &RmConfig::n_maxmut)
      .def_readwrite("p_min", &RmConfig::p_min)
      .def_readwrite("p_max", &RmConfig::p_max)
      .def_readwrite("base", &RmConfig::base)
      .def_readwrite("v_min", &RmConfig::v_min)
      .def_readwrite("v_max", &RmConfig::v_max)
      .def_readwrite("include_parent", &RmConfig::include_parent)
      .def_readwrite("n_stall", &RmConfig::n_stall)
      .def_readwrite("eps", &RmConfig::eps)
      .def_readwrite("max_generations", &RmConfig::max_generations)
      .def_readwrite("max_evaluations", &RmConfig::max_evaluations)
      .def_readwrite("seed", &RmConfig::seed)
      .def("validate", &RmConfig::validate);

  m.def(
      "minimize",
      [](const std::function<double(std::vector<double>)>& f, const RmConfig& config) {
        // Python callables hold the GIL, so evaluation stays on this thread.
        auto fitness = [&f](std::span<const double> x) {
          return f(std::vector<double>(x.begin(), x.end()));
        };
        return result_to_dict(rmopt::minimize(fitness, config, {.workers = 1}));
      },
      "fitness"_a, "config"_a, "Minimize a Python callable taking a list of floats.");

  m.def(
      "minimize_benchmark",
      [](const std::string& name, const RmConfig& config, double scale, unsigned workers) {
        auto problem = rmopt::bench::make_problem(name, config.n_params);
        if (scale != 1.0) problem = rmopt::bench::scaled(problem, scale);
        rmopt::OptimizationResult r;
        {
          py::gil_scoped_release release;
          r = rmopt::minimize(problem.objective(), config, {.workers = workers});
        }
        return result_to_dict(r);
      },
      "name"_a, "config"_a, "scale"_a = 1.0, "workers"_a = 0);

  m.def(
      "benchmark",
      [](const std::string& name, const std::vector<double>& x) {
        return rmopt::bench::make_problem(name, x.size()).eval(x);
      },
      "name"_a, "x"_a, "Evaluate a named test function.");

  m.def(
      "run_experiments",
      [](const std::string& name, const RmConfig& config, std::uint64_t n_exp, double threshold,
         std::optional<double> reference, double scale, unsigned workers) {
        auto problem = rmopt::bench::make_problem(name, config.n_params);
        if (scale != 1.0) problem = rmopt::bench::scaled(problem, scale);
        rmopt::harness::ExperimentStats s;
        {
          py::gil_scoped_release release;
          s = rmopt::harness::run_experiments(problem.objective(), config, n_exp, threshold,
                                              reference.value_or(problem.known_minimum),
                                              {.workers = workers}, false);
        }
        py::list runs;
        for (const auto& r : s.per_run) runs.append(r.f_best);
        return py::dict("n_exp"_a = s.n_exp, "n_evaluations"_a = s.n_evaluations,
                        "n_err"_a = s.n_err, "f_best"_a = s.f_best, "f_avg"_a = s.f_avg,
                        "e_05"_a = s.e_05, "per_run_f_best"_a = runs);
      },
      "name"_a, "config"_a, "n_exp"_a, "threshold"_a, "reference"_a = py::none(),
      "scale"_a = 1.0, "workers"_a = 0);

  m.def("e05", py::overload_cast<std::uint64_t, std::uint64_t, std::uint64_t>(&rmopt::harness::e05),
        "n_evaluations"_a, "n_exp"_a, "n_err"_a);

  // Quantum states travel as complex NumPy arrays.
  m.def(
      "ghz_state",
      [](std::size_t n, std::complex<double> l0, std::complex<double> l1) {
        return CVector(rmopt::quantum::ghz_state(n, l0, l1).amplitudes());
      },
      "n_qubits"_a, "l0"_a, "l1"_a);
  m.def(
      "grover_state",
      [](std::size_t n, std::uint64_t t, std::uint64_t target) {
        return CVector(rmopt::quantum::grover_state(n, t, target).amplitudes());
      },
      "n_qubits"_a, "t"_a, "target"_a = 0);
  m.def(
      "random_pure_state",
      [](std::size_t n, std::uint64_t seed) {
        rmopt::Rng rng(seed);
        return CVector(rmopt::quantum::random_pure_state(n, rng).amplitudes());
      },
      "n_qubits"_a, "seed"_a = 0);
  m.def(
      "measurement_entropy",
      [](const CVector& a) { return rmopt::quantum::measurement_entropy(state_from(a)); },
      "amplitudes"_a);
  m.def(
      "von_neumann_entropy", [](const CMatrix& rho) { return rmopt::quantum::von_neumann_entropy(rho); },
      "rho"_a);
  m.def("default_hmin_config", &rmopt::quantum::default_hmin_config, "n_qubits"_a);
  m.def("default_discord_config", &rmopt::quantum::default_discord_config, "dim_b"_a);

  m.def(
      "e_hmin",
      [](const CVector& amplitudes, std::optional<RmConfig> config, std::size_t restarts,
         unsigned workers) {
        const auto psi = state_from(amplitudes);
        const RmConfig c = config.value_or(rmopt::quantum::default_hmin_config(psi.n_qubits()));
        rmopt::quantum::HminResult r;
        {
          py::gil_scoped_release release;
          r = rmopt::quantum::e_hmin(psi, c, restarts, {.workers = workers});
        }
        py::list params;
        for (const auto& a : r.params.angles) params.append(py::make_tuple(a.delta, a.gamma));
        return py::dict("value"_a = r.value, "params"_a = params,
                        "evaluations"_a = r.total_evaluations, "restarts"_a = r.restarts);
      },
      "amplitudes"_a, "config"_a = py::none(), "restarts"_a = rmopt::quantum::kDefaultHminRestarts,
      "workers"_a = 0);

  m.def(
      "bell_diagonal_state",
      [](double c1, double c2, double c3) {
        return CMatrix(rmopt::quantum::bell_diagonal_state({c1, c2, c3}).matrix());
      },
      "c1"_a, "c2"_a, "c3"_a);
  m.def(
      "luo_discord_analytical",
      [](double c1, double c2, double c3) {
        const auto v = rmopt::quantum::luo_discord_analytical({c1, c2, c3});
        return py::make_tuple(v.mutual_information, v.classical_correlations, v.discord);
      },
      "c1"_a, "c2"_a, "c3"_a, "Closed-form (I, C, D) for a Bell-diagonal state.");
  m.def(
      "mutual_information",
      [](const CMatrix& rho, std::size_t dim_a, std::size_t dim_b) {
        return rmopt::quantum::mutual_information({dim_a, dim_b, rho});
      },
      "rho"_a, "dim_a"_a, "dim_b"_a);
  m.def(
      "discord",
      [](const CMatrix& rho, std::size_t dim_a, std::size_t dim_b, std::size_t restarts,
         const std::string& side, std::optional<RmConfig> config, unsigned workers) {
        const rmopt::quantum::DensityMatrix dm(dim_a, dim_b, rho);
        const auto s = side_from(side);
        const RmConfig c = config.value_or(
            rmopt::quantum::default_discord_config(s == rmopt::quantum::Subsystem::kB ? dim_b : dim_a));
        rmopt::quantum::DiscordResult r;
        {
          py::gil_scoped_release release;
          r = rmopt::quantum::discord(dm, c, restarts, s, {.workers = workers});
        }
        return py::dict("discord"_a = r.discord, "mutual_information"_a = r.mutual_information,
                        "classical_correlations"_a = r.classical_correlations,
                        "optimal_observable_params"_a = r.optimal_observable_params.values,
                        "evaluations"_a = r.total_evaluations);
      },
      "rho"_a, "dim_a"_a, "dim_b"_a, "restarts"_a = rmopt::quantum::kDefaultDiscordRestarts,
      "side"_a = "B", "config"_a = py::none(), "workers"_a = 0);
}
