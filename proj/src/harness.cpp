#include "rmopt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace rmopt::harness {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::uint64_t run_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + index);
}

ExperimentStats run_experiments(const Fitness& fitness, const RmConfig& config, std::uint64_t n_exp,
                                double success_threshold, double reference_value,
                                const MinimizeOptions& options, bool keep_traces) {
  if (n_exp < 1) throw UsageError("run_experiments: n_exp must be at least 1");
  config.validate();
  ExperimentStats stats;
  stats.master_seed = config.seed;
  stats.n_exp = n_exp;
  stats.reference_value = reference_value;
  stats.success_threshold = success_threshold;
  stats.per_run.reserve(n_exp);

  double sum = 0.0;
  for (std::uint64_t k = 0; k < n_exp; ++k) {
    RmConfig run = config;
    run.seed = run_seed(config.seed, k);
    OptimizationResult res = minimize(fitness, run, options);
    RunSummary s;
    s.seed = run.seed;
    s.f_best = res.f_best;
    s.evaluations = res.evaluations;
    s.generations = res.generations;
    s.termination_reason = res.termination_reason;
    s.error = !(std::abs(res.f_best - reference_value) <= success_threshold);
    s.x_best = std::move(res.x_best);
    if (keep_traces) s.trace = std::move(res.trace);

    stats.n_evaluations += s.evaluations;
    stats.n_err += s.error ? 1 : 0;
    sum += s.f_best;
    stats.f_best = k == 0 ? s.f_best : std::min(stats.f_best, s.f_best);
    stats.per_run.push_back(std::move(s));
  }
  stats.f_avg = sum / static_cast<double>(n_exp);
  if (stats.n_err > 0 && stats.n_err < stats.n_exp) stats.e_05 = e05(stats);
  return stats;
}

double e05(std::uint64_t n_evaluations, std::uint64_t n_exp, std::uint64_t n_err) {
  if (n_exp == 0 || n_err == 0 || n_err >= n_exp)
    throw UndefinedMetricError("e_0.5 is defined only for 0 < n_err < n_exp");
  const double mean_cost = static_cast<double>(n_evaluations) / static_cast<double>(n_exp);
  const double error_rate = static_cast<double>(n_err) / static_cast<double>(n_exp);
  return mean_cost * std::log(0.5) / std::log(error_rate);
}

double e05(const ExperimentStats& stats) { return e05(stats.n_evaluations, stats.n_exp, stats.n_err); }

void export_trace(std::span<const TraceEntry> trace, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "generation,evaluations,best_fitness\n";
  for (std::size_t g = 0; g < trace.size(); ++g)
    out << (g + 1) << ',' << trace[g].evaluations << ',' << format_double(trace[g].best_fitness)
        << '\n';
}

void export_trace(const OptimizationResult& result, const std::filesystem::path& path) {
  export_trace(result.trace, path);
}

std::vector<std::filesystem::path> export_traces(const ExperimentStats& stats,
                                                 const std::filesystem::path& path) {
  std::vector<std::filesystem::path> written;
  std::size_t longest = 0;
  for (std::size_t k = 0; k < stats.per_run.size(); ++k) {
    std::filesystem::path run_path = path;
    run_path.replace_filename(path.stem().string() + ".run" + std::to_string(k) +
                              path.extension().string());
    export_trace(stats.per_run[k].trace, run_path);
    written.push_back(run_path);
    longest = std::max(longest, stats.per_run[k].trace.size());
  }

  std::ofstream out = open_for_write(path);
  out << "generation,evaluations,mean_best_fitness\n";
  for (std::size_t g = 0; g < longest; ++g) {
    double sum = 0.0;
    std::uint64_t evaluations = 0;
    for (const RunSummary& run : stats.per_run) {
      if (run.trace.empty()) continue;
      const TraceEntry& e = run.trace[std::min(g, run.trace.size() - 1)];
      sum += e.best_fitness;
      if (g < run.trace.size()) evaluations = e.evaluations;
    }
    out << (g + 1) << ',' << evaluations << ','
        << format_double(sum / static_cast<double>(stats.per_run.size())) << '\n';
  }
  return written;
}

std::vector<TraceEntry> import_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "generation,evaluations,best_fitness")
    throw std::runtime_error("unexpected trace header in " + path.string());
  std::vector<TraceEntry> trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string generation, evaluations, fitness;
    std::getline(row, generation, ',');
    std::getline(row, evaluations, ',');
    std::getline(row, fitness, ',');
    trace.push_back({std::stoull(evaluations), std::stod(fitness)});
  }
  return trace;
}

}  // namespace rmopt::harness
