#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rmopt {

/// Raised when an RmConfig violates one of its invariants.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised on API misuse (empty inputs, mismatched lengths).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hyperparameters of the random-mutations minimizer.
struct RmConfig {
  std::size_t n_params = 1;
  std::size_t n_pop = 10;
  std::size_t n_des = 10;
  std::size_t n_maxmut = 1;
  double p_min = -9.0;
  double p_max = 0.0;
  double base = 10.0;
  double v_min = 0.0;
  double v_max = 1.0;
  bool include_parent = true;
  std::size_t n_stall = 50;
  double eps = 1e-6;
  std::uint64_t max_generations = 100'000;
  std::uint64_t max_evaluations = 100'000'000;
  std::uint64_t seed = 0;

  /// Throws ConfigError describing the first violated invariant.
  void validate() const;

  /// Evaluations spent per generation (parents are cached).
  std::uint64_t evaluations_per_generation() const { return n_pop * n_des; }
};

enum class TerminationReason { kStall, kGenerationBudget, kEvaluationBudget };

std::string_view to_string(TerminationReason reason);

struct TraceEntry {
  std::uint64_t evaluations = 0;
  double best_fitness = std::numeric_limits<double>::infinity();
};

struct OptimizationResult {
  std::vector<double> x_best;
  double f_best = std::numeric_limits<double>::infinity();
  // One entry per generation; the initial population is not an entry.
  std::vector<TraceEntry> trace;
  std::uint64_t generations = 0;
  std::uint64_t evaluations = 0;
  TerminationReason termination_reason = TerminationReason::kStall;
};

using Fitness = std::function<double(std::span<const double>)>;

// Random streams. Every (generation, subpopulation) pair owns an independent
// stream keyed off the master seed, so the order in which subpopulations are
// processed never changes the draws.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);
Rng make_stream(std::uint64_t master, std::uint64_t generation, std::uint64_t subpopulation);

/// Uniform on [0, 1) with 53 random bits.
double uniform01(Rng& rng);
/// Uniform on [lo, hi).
double uniform(Rng& rng, double lo, double hi);
/// Uniform integer on [lo, hi] inclusive.
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);

std::vector<std::vector<double>> init_population(const RmConfig& config, Rng& rng);

/// Magnitude-power mutation: n_mut ~ U{1..n_maxmut} distinct components each
/// receive v += m * base^p with m ~ U[-1,1], p ~ U[p_min,p_max].
std::vector<double> mutate(std::span<const double> x, const RmConfig& config, Rng& rng);

/// Index of the minimal fitness; lowest index wins ties. NaN never wins.
std::size_t select_winner(std::span<const double> fitness_values);

std::optional<TerminationReason> should_terminate(std::span<const TraceEntry> trace,
                                                  const RmConfig& config);

struct MinimizeOptions {
  // 0 means std::thread::hardware_concurrency().
  unsigned workers = 1;
  // Called after each generation with the current fitness of every
  // subpopulation's incumbent.
  std::function<void(std::uint64_t generation, std::span<const double> subpop_fitness)>
      observer;
};

OptimizationResult minimize(const Fitness& fitness, const RmConfig& config,
                            const MinimizeOptions& options = {});

struct MultistartResult {
  OptimizationResult best;
  std::size_t best_restart = 0;
  std::size_t restarts = 0;
  std::uint64_t total_evaluations = 0;
};

/// Runs `n_restarts` minimizations with seeds derived from config.seed and
/// keeps the best one (lowest restart index on ties).
MultistartResult minimize_multistart(const Fitness& fitness, const RmConfig& config,
                                       std::size_t n_restarts,
                                       const MinimizeOptions& options = {});

}  // namespace rmopt
