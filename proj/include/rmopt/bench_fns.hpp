#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rmopt/rm_core.hpp"

namespace rmopt::bench {

double rosenbrock(std::span<const double> x);
double rastrigin(std::span<const double> x);
double griewank(std::span<const double> x);
double schwefel(std::span<const double> x);
/// One-dimensional wide-basin / narrow-well fixture on [-10, 10].
double plateau(std::span<const double> x);

inline constexpr double kSchwefelOffset = 418.98288727;
inline constexpr double kSchwefelArgmin = 420.968750;

struct BenchmarkProblem {
  std::string name;
  std::size_t arity = 0;
  Fitness eval;
  // Search-space box; used for initialization and, when enforce_domain is
  // set, as a hard constraint in objective().
  double domain_low = 0.0;
  double domain_high = 0.0;
  double scale = 1.0;
  double known_minimum = 0.0;
  // Location of the minimum in the unscaled function's coordinates.
  std::vector<double> known_argmin;
  bool enforce_domain = false;

  /// Minimum location in this problem's own (scaled) coordinates.
  std::vector<double> argmin() const;

  /// Function handed to the optimizer. Equals eval() inside the box; with
  /// enforce_domain, points outside evaluate to +infinity.
  Fitness objective() const;

  /// Copies the domain box into the initialization bounds of `config`.
  RmConfig with_domain(RmConfig config) const;
};

/// Builds one of rosenbrock, rastrigin, griewank, schwefel, plateau. Throws
/// UsageError for unknown names or an arity the function does not support.
BenchmarkProblem make_problem(const std::string& name, std::size_t arity);

/// F(scale * x) with the domain box divided by scale.
BenchmarkProblem scaled(const BenchmarkProblem& problem, double scale);

const std::vector<std::string>& problem_names();

}  // namespace rmopt::bench
