#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rmopt/rm_core.hpp"

namespace rmopt::harness {

/// e_0.5 requested for an error count of 0 or n_exp.
class UndefinedMetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct RunSummary {
  std::uint64_t seed = 0;
  double f_best = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t generations = 0;
  TerminationReason termination_reason = TerminationReason::kStall;
  bool error = false;
  std::vector<double> x_best;
  std::vector<TraceEntry> trace;
};

struct ExperimentStats {
  std::uint64_t master_seed = 0;
  std::uint64_t n_exp = 0;
  std::uint64_t n_evaluations = 0;
  std::uint64_t n_err = 0;
  double f_best = 0.0;
  double f_avg = 0.0;
  double reference_value = 0.0;
  double success_threshold = 0.0;
  std::vector<RunSummary> per_run;
  // Set when 0 < n_err < n_exp.
  std::optional<double> e_05;
};

/// Seed of run `index`: splitmix64(master + index).
std::uint64_t run_seed(std::uint64_t master, std::uint64_t index);

/// `n_exp` independent minimizations; run k uses config.seed replaced by
/// run_seed(config.seed, k). A run is an error iff
/// |f_best - reference_value| > success_threshold.
ExperimentStats run_experiments(const Fitness& fitness, const RmConfig& config, std::uint64_t n_exp,
                                double success_threshold, double reference_value,
                                const MinimizeOptions& options = {}, bool keep_traces = true);

/// Mean evaluation cost for the chance of at least one successful run to
/// reach one half: (n_evaluations / n_exp) * ln(0.5) / ln(n_err / n_exp).
double e05(std::uint64_t n_evaluations, std::uint64_t n_exp, std::uint64_t n_err);
double e05(const ExperimentStats& stats);

/// CSV with header `generation,evaluations,best_fitness`, one row per generation.
void export_trace(std::span<const TraceEntry> trace, const std::filesystem::path& path);
void export_trace(const OptimizationResult& result, const std::filesystem::path& path);

/// Writes one per-run CSV next to `path` (`<stem>.run<k><ext>`) and, at
/// `path`, the mean best fitness per generation across runs
/// (`generation,evaluations,mean_best_fitness`). Runs that stopped early
/// contribute their final value to later generations. Returns the per-run paths.
std::vector<std::filesystem::path> export_traces(const ExperimentStats& stats,
                                                 const std::filesystem::path& path);

std::vector<TraceEntry> import_trace(const std::filesystem::path& path);

}  // namespace rmopt::harness
