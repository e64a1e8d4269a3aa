#include "rmopt/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include "rmopt/bench_fns.hpp"
#include "rmopt/discord.hpp"
#include "rmopt/harness.hpp"
#include "rmopt/hmin.hpp"
#include "rmopt/io.hpp"
#include "rmopt/qstate.hpp"

namespace rmopt::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Common {
  unsigned workers = 0;
};

json run_to_json(const harness::RunSummary& r) {
  return {{"seed", r.seed},
          {"f_best", r.f_best},
          {"evaluations", r.evaluations},
          {"generations", r.generations},
          {"termination", std::string(to_string(r.termination_reason))},
          {"error", r.error}};
}

json stats_to_json(const harness::ExperimentStats& s) {
  json runs = json::array();
  for (const auto& r : s.per_run) runs.push_back(run_to_json(r));
  json j = {{"master_seed", s.master_seed},
            {"n_exp", s.n_exp},
            {"n_evaluations", s.n_evaluations},
            {"n_err", s.n_err},
            {"f_best", s.f_best},
            {"f_avg", s.f_avg},
            {"reference", s.reference_value},
            {"threshold", s.success_threshold},
            {"runs", std::move(runs)}};
  j["e_05"] = s.e_05 ? json(*s.e_05) : json(nullptr);
  return j;
}

json params_to_json(const quantum::LocalUnitaryParams& p) {
  json out = json::array();
  for (const auto& a : p.angles) out.push_back({a.delta, a.gamma});
  return out;
}

void emit(const json& j, const std::string& out_path, std::ostream& out) {
  if (!out_path.empty()) io::write_json(j, out_path);
  out << j.dump(2) << '\n';
}

// Problem lookup shared by bench and e05.
struct BenchSetup {
  bench::BenchmarkProblem problem;
  RmConfig config;
};

BenchSetup bench_setup(const std::string& name, std::optional<std::size_t> arity, double scale,
                       const std::string& config_path, std::optional<std::uint64_t> seed) {
  RmConfig base;
  if (!config_path.empty()) base = io::load_config(config_path, base);
  std::size_t n = arity.value_or(name == "plateau" ? 1 : base.n_params);
  bench::BenchmarkProblem problem = bench::make_problem(name, n);
  if (scale != 1.0) problem = bench::scaled(problem, scale);

  // Domain first, then the file again so that explicit v_min/v_max win.
  RmConfig config = problem.with_domain(RmConfig{});
  if (!config_path.empty()) config = io::load_config(config_path, config);
  config.n_params = n;
  if (seed) config.seed = *seed;
  config.validate();
  return {std::move(problem), config};
}

bool is_bench_problem(const std::string& name) {
  for (const auto& p : bench::problem_names())
    if (p == name) return true;
  return false;
}

std::vector<double> parse_triple(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--bell-diagonal expects c1,c2,c3");
    }
  }
  if (out.size() != 3) throw UsageError("--bell-diagonal expects c1,c2,c3");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-mutations global optimizer and quantum correlation measures", "rmopt"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--workers", common.workers, "Worker threads (0 = all cores); never changes results");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Minimize a standard test function");
  std::string b_problem, b_config, b_trace, b_out;
  std::optional<std::size_t> b_n;
  std::optional<std::uint64_t> b_seed;
  double b_scale = 1.0;
  std::uint64_t b_nexp = 1;
  std::optional<double> b_reference;
  double b_threshold = 1e-3;
  bench_cmd->add_option("--problem", b_problem, "rosenbrock|rastrigin|griewank|schwefel|plateau")
      ->required();
  bench_cmd->add_option("--n", b_n, "Dimension (defaults to n_params from the config)");
  bench_cmd->add_option("--scale", b_scale, "Evaluate F(scale * x)");
  bench_cmd->add_option("--config", b_config, "Optimizer key/value file");
  bench_cmd->add_option("--seed", b_seed, "Override the master seed");
  bench_cmd->add_option("--n-exp", b_nexp, "Number of seeded runs");
  bench_cmd->add_option("--reference", b_reference, "Success reference (default: known minimum)");
  bench_cmd->add_option("--threshold", b_threshold, "Success threshold");
  bench_cmd->add_option("--trace", b_trace, "Convergence CSV");
  bench_cmd->add_option("--out", b_out, "Result JSON");

  // hmin
  auto* hmin_cmd = app.add_subcommand("hmin", "Minimal measurement entropy of a pure state");
  std::string h_state, h_config, h_out;
  std::size_t h_restarts = quantum::kDefaultHminRestarts;
  std::optional<std::uint64_t> h_seed;
  hmin_cmd->add_option("--state", h_state, "Pure-state JSON file")->required();
  hmin_cmd->add_option("--restarts", h_restarts, "Independent optimizer runs");
  hmin_cmd->add_option("--config", h_config, "Optimizer key/value file");
  hmin_cmd->add_option("--seed", h_seed, "Override the master seed");
  hmin_cmd->add_option("--out", h_out, "Result JSON");

  // discord
  auto* discord_cmd = app.add_subcommand("discord", "Quantum discord of a bipartite state");
  std::string d_density, d_bell, d_side = "B", d_config, d_out;
  std::size_t d_restarts = quantum::kDefaultDiscordRestarts;
  std::optional<std::uint64_t> d_seed;
  bool d_analytical = false;
  auto* density_opt = discord_cmd->add_option("--density", d_density, "Density-matrix JSON file");
  auto* bell_opt = discord_cmd->add_option("--bell-diagonal", d_bell, "c1,c2,c3");
  density_opt->excludes(bell_opt);
  discord_cmd->add_option("--side", d_side, "Measured subsystem")->check(CLI::IsMember({"A", "B"}));
  discord_cmd->add_option("--restarts", d_restarts, "Independent optimizer runs");
  discord_cmd->add_option("--config", d_config, "Optimizer key/value file");
  discord_cmd->add_option("--seed", d_seed, "Override the master seed");
  discord_cmd->add_flag("--analytical", d_analytical, "Add the closed-form Bell-diagonal values");
  discord_cmd->add_option("--out", d_out, "Result JSON");

  // e05
  auto* e05_cmd = app.add_subcommand("e05", "Error-cost metric over repeated runs");
  std::string e_problem, e_config, e_out;
  std::optional<std::size_t> e_n;
  std::optional<std::uint64_t> e_seed;
  double e_scale = 1.0, e_reference = 0.0, e_threshold = 1e-5;
  std::uint64_t e_nexp = 20;
  e05_cmd->add_option("--problem", e_problem, "Benchmark name or pure-state JSON file")->required();
  e05_cmd->add_option("--config", e_config, "Optimizer key/value file");
  e05_cmd->add_option("--n", e_n, "Benchmark dimension");
  e05_cmd->add_option("--scale", e_scale, "Benchmark scale");
  e05_cmd->add_option("--seed", e_seed, "Override the master seed");
  e05_cmd->add_option("--n-exp", e_nexp, "Number of runs");
  e05_cmd->add_option("--reference", e_reference, "Believed global minimum")->required();
  e05_cmd->add_option("--threshold", e_threshold, "Success threshold")->required();
  e05_cmd->add_option("--out", e_out, "Result JSON");

  // gen-state
  auto* gen_cmd = app.add_subcommand("gen-state", "Write a pure-state fixture");
  std::string g_kind, g_out;
  std::size_t g_n = 2;
  double g_l0 = 1.0, g_l1 = 1.0;
  std::uint64_t g_t = 0, g_target = 0, g_seed = 0;
  gen_cmd->add_option("--kind", g_kind, "ghz|product|grover|random")
      ->required()
      ->check(CLI::IsMember({"ghz", "product", "grover", "random"}));
  gen_cmd->add_option("--n", g_n, "Qubits");
  gen_cmd->add_option("--l0", g_l0, "GHZ weight of |0...0>");
  gen_cmd->add_option("--l1", g_l1, "GHZ weight of |1...1>");
  gen_cmd->add_option("--t", g_t, "Grover iteration");
  gen_cmd->add_option("--target", g_target, "Grover marked item");
  gen_cmd->add_option("--seed", g_seed, "Seed for random kinds");
  gen_cmd->add_option("--out", g_out, "State JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "rmopt: " << e.what() << '\n';
    return kUsageError;
  }

  MinimizeOptions options;
  options.workers = common.workers;

  try {
    if (*bench_cmd) {
      BenchSetup setup = bench_setup(b_problem, b_n, b_scale, b_config, b_seed);
      const double reference = b_reference.value_or(setup.problem.known_minimum);
      harness::ExperimentStats stats = harness::run_experiments(
          setup.problem.objective(), setup.config, b_nexp, b_threshold, reference, options);
      if (!b_trace.empty()) {
        if (b_nexp == 1)
          harness::export_trace(stats.per_run.front().trace, b_trace);
        else
          harness::export_traces(stats, b_trace);
      }
      std::size_t best = 0;
      for (std::size_t k = 1; k < stats.per_run.size(); ++k)
        if (stats.per_run[k].f_best < stats.per_run[best].f_best) best = k;
      json j = stats_to_json(stats);
      j["problem"] = b_problem;
      j["scale"] = b_scale;
      j["config"] = io::config_to_json(setup.config);
      j["x_best"] = stats.per_run[best].x_best;
      emit(j, b_out, out);
      return kOk;
    }

    if (*hmin_cmd) {
      const quantum::PureState psi = io::pure_state_from_json(io::read_json(h_state));
      RmConfig config = quantum::default_hmin_config(psi.n_qubits());
      if (!h_config.empty()) config = io::load_config(h_config, config);
      if (h_seed) config.seed = *h_seed;
      const quantum::HminResult r = quantum::e_hmin(psi, config, h_restarts, options);
      json j = {{"value", r.value},
                {"params", params_to_json(r.params)},
                {"evaluations", r.total_evaluations},
                {"restarts", r.restarts},
                {"n_qubits", psi.n_qubits()},
                {"config", io::config_to_json(config)}};
      emit(j, h_out, out);
      return kOk;
    }

    if (*discord_cmd) {
      if (d_density.empty() && d_bell.empty()) {
        err << "rmopt discord: one of --density or --bell-diagonal is required\n";
        return kUsageError;
      }
      std::optional<quantum::BellDiagonalParams> bell;
      std::optional<quantum::DensityMatrix> rho;
      if (!d_bell.empty()) {
        const auto c = parse_triple(d_bell);
        bell = quantum::BellDiagonalParams{c[0], c[1], c[2]};
        rho = quantum::bell_diagonal_state(*bell);
      } else {
        rho = io::density_matrix_from_json(io::read_json(d_density));
      }
      if (d_analytical && !bell) {
        err << "rmopt discord: --analytical needs --bell-diagonal\n";
        return kUsageError;
      }
      const quantum::Subsystem side = d_side == "A" ? quantum::Subsystem::kA : quantum::Subsystem::kB;
      const std::size_t measured_dim = side == quantum::Subsystem::kB ? rho->dim_b() : rho->dim_a();
      RmConfig config = quantum::default_discord_config(measured_dim);
      if (!d_config.empty()) config = io::load_config(d_config, config);
      if (d_seed) config.seed = *d_seed;
      const quantum::DiscordResult r = quantum::discord(*rho, config, d_restarts, side, options);
      json j = {{"discord", r.discord},
                {"mutual_information", r.mutual_information},
                {"classical_correlations", r.classical_correlations},
                {"optimal_observable_params", r.optimal_observable_params.values},
                {"side", d_side},
                {"evaluations", r.total_evaluations},
                {"restarts", d_restarts},
                {"config", io::config_to_json(config)}};
      if (bell && d_analytical) {
        const quantum::LuoValues a = quantum::luo_discord_analytical(*bell);
        j["analytical"] = {{"I", a.mutual_information},
                           {"C", a.classical_correlations},
                           {"D", a.discord}};
        j["abs_error"] = std::abs(r.discord - a.discord);
      }
      emit(j, d_out, out);
      return kOk;
    }

    if (*e05_cmd) {
      Fitness fitness;
      RmConfig config;
      json j;
      if (is_bench_problem(e_problem)) {
        BenchSetup setup = bench_setup(e_problem, e_n, e_scale, e_config, e_seed);
        fitness = setup.problem.objective();
        config = setup.config;
      } else {
        const quantum::PureState psi = io::pure_state_from_json(io::read_json(e_problem));
        config = quantum::default_hmin_config(psi.n_qubits());
        if (!e_config.empty()) config = io::load_config(e_config, config);
        if (e_seed) config.seed = *e_seed;
        fitness = quantum::hmin_fitness(psi);
      }
      const harness::ExperimentStats stats = harness::run_experiments(
          fitness, config, e_nexp, e_threshold, e_reference, options, false);
      j = stats_to_json(stats);
      j["problem"] = e_problem;
      j["config"] = io::config_to_json(config);
      emit(j, e_out, out);
      if (!stats.e_05) {
        err << "rmopt e05: metric undefined (n_err = " << stats.n_err << " of " << stats.n_exp
            << ")\n";
        return kUndefinedMetric;
      }
      return kOk;
    }

    if (*gen_cmd) {
      Rng rng(g_seed);
      std::optional<quantum::PureState> psi;
      if (g_kind == "ghz")
        psi = quantum::ghz_state(g_n, g_l0, g_l1);
      else if (g_kind == "product")
        psi = quantum::random_product_state(g_n, rng);
      else if (g_kind == "grover")
        psi = quantum::grover_state(g_n, g_t, g_target);
      else
        psi = quantum::random_pure_state(g_n, rng);
      const json j = io::to_json(*psi);
      io::write_json(j, g_out);
      out << json{{"kind", g_kind}, {"n_qubits", g_n}, {"out", g_out}}.dump(2) << '\n';
      return kOk;
    }
  } catch (const quantum::InvalidStateError& e) {
    err << "rmopt: invalid state: " << e.what() << '\n';
    return kComputationError;
  } catch (const harness::UndefinedMetricError& e) {
    err << "rmopt: " << e.what() << '\n';
    return kUndefinedMetric;
  } catch (const std::invalid_argument& e) {
    err << "rmopt: " << e.what() << '\n';
    return kUsageError;
  } catch (const io::FormatError& e) {
    err << "rmopt: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "rmopt: " << e.what() << '\n';
    return kComputationError;
  }
  return kUsageError;
}

}  // namespace rmopt::cli
