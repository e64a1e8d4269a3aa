#include "rmopt/rm_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "worker_pool.hpp"

namespace rmopt {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw ConfigError(message);
}

double sanitize(double f) { return std::isnan(f) ? std::numeric_limits<double>::infinity() : f; }

// In-place variant of mutate(); `scratch` holds the index pool.
void mutate_into(std::span<const double> x, std::span<double> out, const RmConfig& config,
                 Rng& rng, std::vector<std::size_t>& scratch) {
  std::copy(x.begin(), x.end(), out.begin());
  const std::size_t n = x.size();
  const std::size_t n_mut = uniform_index(rng, 1, config.n_maxmut);
  scratch.resize(n);
  std::iota(scratch.begin(), scratch.end(), std::size_t{0});
  // Partial Fisher-Yates: the first n_mut slots end up a uniform subset.
  for (std::size_t k = 0; k < n_mut; ++k) {
    const std::size_t j = uniform_index(rng, k, n - 1);
    std::swap(scratch[k], scratch[j]);
    const double m = uniform(rng, -1.0, 1.0);
    const double p = config.p_min == config.p_max ? config.p_min
                                                  : uniform(rng, config.p_min, config.p_max);
    out[scratch[k]] += m * std::pow(config.base, p);
  }
}

}  // namespace

void RmConfig::validate() const {
  require(n_params >= 1, "n_params must be positive");
  require(n_pop >= 1, "n_pop must be positive");
  require(n_des >= 1, "n_des must be positive");
  require(n_maxmut >= 1 && n_maxmut <= n_params, "n_maxmut must lie in [1, n_params]");
  require(std::isfinite(p_min) && std::isfinite(p_max) && p_min <= p_max,
          "p_min must not exceed p_max");
  require(std::isfinite(base) && base > 1.0, "base must exceed 1");
  require(std::isfinite(v_min) && std::isfinite(v_max) && v_min < v_max,
          "v_min must be below v_max");
  require(n_stall >= 1, "n_stall must be positive");
  require(std::isfinite(eps) && eps > 0.0, "eps must be positive");
  require(max_generations >= 1, "max_generations must be positive");
  require(max_evaluations >= n_pop + evaluations_per_generation(),
          "max_evaluations must cover the initial population and one generation");
}

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::kStall:
      return "stall";
    case TerminationReason::kGenerationBudget:
      return "generation_budget";
    case TerminationReason::kEvaluationBudget:
      return "evaluation_budget";
  }
  return "unknown";
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) + b);
}

Rng make_stream(std::uint64_t master, std::uint64_t generation, std::uint64_t subpopulation) {
  return Rng(derive_seed(master, generation, subpopulation));
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  if (lo >= hi) return lo;
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return lo + static_cast<std::size_t>(r % span);
}

std::vector<std::vector<double>> init_population(const RmConfig& config, Rng& rng) {
  config.validate();
  std::vector<std::vector<double>> population(config.n_pop, std::vector<double>(config.n_params));
  for (auto& x : population)
    for (auto& v : x) v = uniform(rng, config.v_min, config.v_max);
  return population;
}

std::vector<double> mutate(std::span<const double> x, const RmConfig& config, Rng& rng) {
  if (x.size() != config.n_params) throw UsageError("mutate: vector length differs from n_params");
  std::vector<double> out(x.size());
  std::vector<std::size_t> scratch;
  mutate_into(x, out, config, rng, scratch);
  return out;
}

std::size_t select_winner(std::span<const double> fitness_values) {
  if (fitness_values.empty()) throw UsageError("select_winner: no candidates");
  std::size_t winner = 0;
  double best = sanitize(fitness_values[0]);
  for (std::size_t i = 1; i < fitness_values.size(); ++i) {
    const double f = sanitize(fitness_values[i]);
    if (f < best) {
      best = f;
      winner = i;
    }
  }
  return winner;
}

std::optional<TerminationReason> should_terminate(std::span<const TraceEntry> trace,
                                                  const RmConfig& config) {
  if (trace.empty()) throw UsageError("should_terminate: empty trace");
  const std::size_t g = trace.size();
  if (g >= config.n_stall + 1) {
    bool stalled = true;
    for (std::size_t k = g - config.n_stall; k < g && stalled; ++k) {
      const double prev = trace[k - 1].best_fitness;
      const double cur = trace[k].best_fitness;
      const double decrease = prev == cur ? 0.0 : prev - cur;
      stalled = decrease < config.eps;
    }
    if (stalled) return TerminationReason::kStall;
  }
  if (g >= config.max_generations) return TerminationReason::kGenerationBudget;
  if (trace.back().evaluations + config.evaluations_per_generation() > config.max_evaluations)
    return TerminationReason::kEvaluationBudget;
  return std::nullopt;
}

OptimizationResult minimize(const Fitness& fitness, const RmConfig& config,
                            const MinimizeOptions& options) {
  config.validate();
  detail::WorkerPool pool(options.workers);

  const std::size_t n_pop = config.n_pop;
  const std::size_t n_des = config.n_des;
  const std::size_t n = config.n_params;

  Rng init_rng = make_stream(config.seed, 0, 0);
  std::vector<std::vector<double>> population = init_population(config, init_rng);
  std::vector<double> pop_fitness(n_pop);
  pool.parallel_for(n_pop, [&](std::size_t i) { pop_fitness[i] = sanitize(fitness(population[i])); });

  OptimizationResult result;
  result.evaluations = n_pop;
  {
    const std::size_t b = select_winner(pop_fitness);
    result.x_best = population[b];
    result.f_best = pop_fitness[b];
  }

  // Per-subpopulation scratch; each slot is touched by one task at a time.
  struct Scratch {
    std::vector<double> candidate, winner;
    std::vector<std::size_t> indices;
  };
  std::vector<Scratch> scratch(n_pop);
  for (auto& s : scratch) {
    s.candidate.resize(n);
    s.winner.resize(n);
  }

  for (std::uint64_t generation = 1;; ++generation) {
    pool.parallel_for(n_pop, [&](std::size_t i) {
      Rng rng = make_stream(config.seed, generation, i);
      Scratch& s = scratch[i];
      double winner_f = std::numeric_limits<double>::infinity();
      bool have_winner = false;
      if (config.include_parent) {
        s.winner = population[i];
        winner_f = pop_fitness[i];
        have_winner = true;
      }
      for (std::size_t d = 0; d < n_des; ++d) {
        mutate_into(population[i], s.candidate, config, rng, s.indices);
        const double f = sanitize(fitness(s.candidate));
        if (!have_winner || f < winner_f) {
          std::swap(s.winner, s.candidate);
          winner_f = f;
          have_winner = true;
        }
      }
      std::swap(population[i], s.winner);
      pop_fitness[i] = winner_f;
    });

    result.evaluations += config.evaluations_per_generation();
    for (std::size_t i = 0; i < n_pop; ++i) {
      if (pop_fitness[i] < result.f_best) {
        result.f_best = pop_fitness[i];
        result.x_best = population[i];
      }
    }
    result.trace.push_back({result.evaluations, result.f_best});
    result.generations = generation;
    if (options.observer) options.observer(generation, pop_fitness);

    if (auto reason = should_terminate(result.trace, config)) {
      result.termination_reason = *reason;
      break;
    }
  }
  return result;
}

MultistartResult minimize_multistart(const Fitness& fitness, const RmConfig& config,
                                     std::size_t n_restarts, const MinimizeOptions& options) {
  if (n_restarts == 0) throw UsageError("minimize_multistart: n_restarts must be positive");
  MultistartResult out;
  out.restarts = n_restarts;
  for (std::size_t r = 0; r < n_restarts; ++r) {
    RmConfig run = config;
    run.seed = derive_seed(config.seed, 0x7265'7374'6172'74ULL, r);
    OptimizationResult res = minimize(fitness, run, options);
    out.total_evaluations += res.evaluations;
    if (r == 0 || res.f_best < out.best.f_best) {
      out.best = std::move(res);
      out.best_restart = r;
    }
  }
  return out;
}

}  // namespace rmopt
