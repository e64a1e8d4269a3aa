#include "rmopt/bench_fns.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

namespace rmopt::bench {

double rosenbrock(std::span<const double> x) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

double rastrigin(std::span<const double> x) {
  double sum = 10.0 * static_cast<double>(x.size());
  for (double v : x) sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  return sum;
}

double griewank(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i] / 4000.0;
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return 1.0 + sum - prod;
}

double schwefel(std::span<const double> x) {
  double sum = kSchwefelOffset * static_cast<double>(x.size());
  for (double v : x) sum -= v * std::sin(std::sqrt(std::abs(v)));
  return sum;
}

double plateau(std::span<const double> x) {
  const double v = x[0];
  const double well = v - 3.0;
  return -1.05 * std::exp(-well * well / 0.002) - std::exp(-v * v / 8.0);
}

std::vector<double> BenchmarkProblem::argmin() const {
  std::vector<double> out(known_argmin);
  for (auto& v : out) v /= scale;
  return out;
}

Fitness BenchmarkProblem::objective() const {
  if (!enforce_domain) return eval;
  // Candidates outside the box are rejected outright. Clamping them instead
  // turns the corners into wide artificial basins.
  return [f = eval, lo = domain_low, hi = domain_high](std::span<const double> x) {
    for (double v : x)
      if (!(v >= lo && v <= hi)) return std::numeric_limits<double>::infinity();
    return f(x);
  };
}

RmConfig BenchmarkProblem::with_domain(RmConfig config) const {
  config.v_min = domain_low;
  config.v_max = domain_high;
  return config;
}

BenchmarkProblem make_problem(const std::string& name, std::size_t arity) {
  if (arity == 0) throw UsageError("benchmark arity must be positive");
  BenchmarkProblem p;
  p.name = name;
  p.arity = arity;
  if (name == "rosenbrock") {
    if (arity < 2) throw UsageError("rosenbrock needs at least two parameters");
    p.eval = rosenbrock;
    p.domain_low = -2.048;
    p.domain_high = 2.048;
    p.known_argmin.assign(arity, 1.0);
  } else if (name == "rastrigin") {
    p.eval = rastrigin;
    p.domain_low = -5.12;
    p.domain_high = 5.12;
    p.known_argmin.assign(arity, 0.0);
  } else if (name == "griewank") {
    p.eval = griewank;
    p.domain_low = -512.0;
    p.domain_high = 512.0;
    p.known_argmin.assign(arity, 0.0);
  } else if (name == "schwefel") {
    p.eval = schwefel;
    p.domain_low = -512.0;
    p.domain_high = 512.0;
    p.known_argmin.assign(arity, kSchwefelArgmin);
    // Unbounded below outside the box.
    p.enforce_domain = true;
  } else if (name == "plateau") {
    if (arity != 1) throw UsageError("plateau is one-dimensional");
    p.eval = plateau;
    p.domain_low = -10.0;
    p.domain_high = 10.0;
    // Grid-scan location of the narrow well; the wide basin shifts it
    // slightly below 3.
    p.known_argmin = {2.9997680767246284};
    p.known_minimum = plateau(p.known_argmin);
  } else {
    throw UsageError("unknown benchmark problem: " + name);
  }
  return p;
}

BenchmarkProblem scaled(const BenchmarkProblem& problem, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw UsageError("scale must be positive");
  BenchmarkProblem p = problem;
  p.scale = problem.scale * scale;
  p.domain_low = problem.domain_low / scale;
  p.domain_high = problem.domain_high / scale;
  p.eval = [inner = problem.eval, scale](std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    for (auto& v : y) v *= scale;
    return inner(y);
  };
  return p;
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {"rosenbrock", "rastrigin", "griewank",
                                                 "schwefel", "plateau"};
  return names;
}

}  // namespace rmopt::bench
