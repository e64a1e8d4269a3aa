// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "rmopt/bench_fns.hpp"
#include "rmopt/discord.hpp"
#include "rmopt/harness.hpp"
#include "rmopt/hmin.hpp"
#include "rmopt/io.hpp"
#include "rmopt/qstate.hpp"
#include "rmopt/rm_core.hpp"

using namespace rmopt;
using namespace rmopt::quantum;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kMasterSeed = 20240501;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

// Entropy of a density matrix straight from Eigen, independent of the library path.
double oracle_entropy(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double l = es.eigenvalues()(k);
    if (l > 1e-15) h -= l * std::log2(l);
  }
  return h;
}

// ---------------------------------------------------------------------------

Check benchmark_statistics() {
  struct Case {
    const char* name;
    const char* cfg;
    double scale;
    std::function<void(const harness::ExperimentStats&, Check&)> judge;
  };
  const std::vector<Case> cases = {
      {"rastrigin", "rastrigin.cfg", 1.0,
       [](const harness::ExperimentStats& s, Check& c) {
         c.require(s.f_best <= 1e-3, fmt("rastrigin f_best %.3g > 1e-3", s.f_best));
         c.require(s.f_avg <= 1e-2, fmt("rastrigin f_avg %.3g > 1e-2", s.f_avg));
       }},
      {"schwefel", "schwefel100.cfg", 100.0,
       [](const harness::ExperimentStats& s, Check& c) {
         c.require(s.f_avg <= 0.1, fmt("schwefel x100 f_avg %.3g > 0.1", s.f_avg));
       }},
      {"griewank", "griewank400.cfg", 400.0,
       [](const harness::ExperimentStats& s, Check& c) {
         c.require(s.f_best <= 0.1, fmt("griewank x400 f_best %.3g > 0.1", s.f_best));
       }},
      {"rosenbrock", "rosenbrock.cfg", 1.0,
       [](const harness::ExperimentStats& s, Check& c) {
         c.require(s.f_avg <= 60.0, fmt("rosenbrock f_avg %.3g > 60", s.f_avg));
       }},
  };
  const auto dir = std::filesystem::path(RMOPT_SOURCE_DIR) / "configs";
  Check check;
  for (const auto& k : cases) {
    RmConfig config = io::load_config(dir / k.cfg, {});
    config.seed = kMasterSeed;
    auto problem = bench::make_problem(k.name, config.n_params);
    if (k.scale != 1.0) problem = bench::scaled(problem, k.scale);
    const auto stats = harness::run_experiments(problem.objective(), config, 20, 1e-3,
                                                problem.known_minimum, {}, false);
    std::printf("  %-10s x%-4g n=%zu n_des=%zu  f_best %.3g  f_avg %.3g  evaluations %llu\n", k.name,
                k.scale, config.n_params, config.n_des, stats.f_best, stats.f_avg,
                static_cast<unsigned long long>(stats.n_evaluations));
    k.judge(stats, check);
  }
  return check;
}

struct BellRecord {
  double numerical;
  double analytical;
};

std::vector<BellRecord> bell_records;

Check discord_oracle_equivalence() {
  Check check;
  Rng rng(kMasterSeed);
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const BellDiagonalParams p = random_bell_diagonal(rng);
    RmConfig config = default_discord_config(2);
    config.seed = derive_seed(kMasterSeed, 0xd15c, t);
    const DiscordResult r = discord(bell_diagonal_state(p), config, kDefaultDiscordRestarts);
    const double a = luo_discord_analytical(p).discord;
    bell_records.push_back({r.discord, a});
    worst = std::max(worst, std::abs(r.discord - a));
  }
  std::printf("  200 Bell-diagonal states, worst |numerical - analytical| = %.3g\n", worst);
  check.require(worst < 1e-6, fmt("worst error %.3g >= 1e-6", worst));
  return check;
}

Check hmin_validity() {
  Check check;
  Rng rng(kMasterSeed + 3);
  auto run = [](const PureState& psi, std::uint64_t seed) {
    RmConfig c = default_hmin_config(psi.n_qubits());
    c.seed = seed;
    const std::size_t restarts = psi.n_qubits() >= 10 ? 4 : kDefaultHminRestarts;
    return e_hmin(psi, c, restarts).value;
  };

  double worst_product = 0.0, worst_ghz = 0.0;
  for (std::size_t n : {1u, 2u, 3u, 4u, 6u, 8u, 10u, 12u}) {
    const double v = run(random_product_state(n, rng), 100 + n);
    worst_product = std::max(worst_product, std::abs(v));
    const double l0 = uniform(rng, 0.1, 0.9);
    const double expected = binary_entropy(l0 * l0);
    const double g = run(ghz_state(n < 2 ? 2 : n, l0, std::sqrt(1 - l0 * l0)), 200 + n);
    worst_ghz = std::max(worst_ghz, std::abs(g - expected));
  }
  std::printf("  product states through 12 qubits: worst |E| = %.3g\n", worst_product);
  std::printf("  GHZ states through 12 qubits: worst |E - H(l0^2)| = %.3g\n", worst_ghz);
  check.require(worst_product < 1e-5, fmt("product error %.3g", worst_product));
  check.require(worst_ghz < 1e-5, fmt("GHZ error %.3g", worst_ghz));

  double worst_two = 0.0;
  for (int t = 0; t < 20; ++t) {
    const PureState psi = random_pure_state(2, rng);
    const double s = oracle_entropy(reduced_density_matrix(psi, 1));
    worst_two = std::max(worst_two, std::abs(run(psi, 300 + t) - s));
  }
  std::printf("  20 random 2-qubit states: worst |E - S(rho_A)| = %.3g\n", worst_two);
  check.require(worst_two < 1e-4, fmt("2-qubit error %.3g", worst_two));

  struct Pair {
    PureState phi, psi;
  };
  std::vector<Pair> fixtures;
  fixtures.push_back({random_pure_state(2, rng), random_pure_state(2, rng)});
  fixtures.push_back({ghz_state(3, 0.6, 0.8), random_pure_state(2, rng)});
  fixtures.push_back({random_pure_state(2, rng), ghz_state(4, 0.3, std::sqrt(0.91))});
  fixtures.push_back({ghz_state(3, 0.5, std::sqrt(0.75)), ghz_state(5, 0.8, 0.6)});
  fixtures.push_back({random_product_state(3, rng), random_pure_state(2, rng)});
  double worst_add = 0.0;
  std::uint64_t seed = 400;
  for (const Pair& f : fixtures) {
    const double joint = run(tensor_product(f.phi, f.psi), seed++);
    const double parts = run(f.phi, seed++) + run(f.psi, seed++);
    worst_add = std::max(worst_add, std::abs(joint - parts));
  }
  std::printf("  additivity on %zu fixtures up to 8 qubits: worst gap %.3g\n", fixtures.size(),
              worst_add);
  check.require(worst_add < 1e-4, fmt("additivity gap %.3g", worst_add));
  return check;
}

Check property_suites() {
  Check check;

  // Optimizer monotonicity and parallel determinism.
  const auto problem = bench::make_problem("rastrigin", 10);
  RmConfig config = problem.with_domain(RmConfig{});
  config.n_params = 10;
  config.n_pop = 8;
  config.n_maxmut = 3;
  config.p_min = -5;
  config.p_max = 1;
  config.seed = kMasterSeed;
  bool monotone = true;
  const auto serial = minimize(problem.objective(), config, {.workers = 1});
  for (std::size_t g = 1; g < serial.trace.size(); ++g)
    monotone = monotone && serial.trace[g].best_fitness <= serial.trace[g - 1].best_fitness;
  check.require(monotone, "best fitness increased");
  for (unsigned w : {2u, 4u, 0u}) {
    const auto par = minimize(problem.objective(), config, {.workers = w});
    check.require(par.x_best == serial.x_best && par.f_best == serial.f_best &&
                      par.evaluations == serial.evaluations,
                  "result differs with " + std::to_string(w) + " workers");
  }

  // Unitarity, projector completeness, entropy bounds.
  Rng rng(kMasterSeed + 4);
  double unitarity = 0.0, completeness = 0.0;
  for (int t = 0; t < 200; ++t) {
    const CMatrix u = unitary_2x2(uniform(rng, -10, 10), uniform(rng, -10, 10));
    unitarity = std::max(unitarity, (u.adjoint() * u - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff());
    const std::size_t d = uniform_index(rng, 2, 5);
    HermitianParams h{d, std::vector<double>(d * d)};
    for (auto& v : h.values) v = uniform(rng, -1, 1);
    const CMatrix e = unitary_from_hermitian(h);
    unitarity = std::max(unitarity, (e.adjoint() * e - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& p : measurement_projectors(h)) sum += p;
    completeness = std::max(completeness, (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
  }
  check.require(unitarity < 1e-10, fmt("unitarity defect %.3g", unitarity));
  check.require(completeness < 1e-12, fmt("projector completeness defect %.3g", completeness));
  bool bounded = true;
  for (int t = 0; t < 50; ++t) {
    const PureState psi = random_pure_state(5, rng);
    const double h = measurement_entropy(psi);
    bounded = bounded && h >= 0.0 && h <= 5.0 + 1e-12;
    const DensityMatrix rho = random_density_matrix(2, 3, rng);
    const double s = von_neumann_entropy(rho.matrix());
    bounded = bounded && s >= 0.0 && s <= std::log2(6.0) + 1e-12;
  }
  check.require(bounded, "entropy outside [0, log2 d]");

  // Discord sign and one-sided oracle bound.
  double lowest = INFINITY;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const std::size_t db = t % 2 == 0 ? 2 : 3;
    RmConfig c = default_discord_config(db);
    c.seed = derive_seed(kMasterSeed, 0x5167, t);
    lowest = std::min(lowest, discord(random_density_matrix(2, db, rng), c, 2).discord);
  }
  check.require(lowest >= -1e-9, fmt("discord %.3g below -1e-9", lowest));
  double gap = INFINITY;
  for (const auto& r : bell_records) gap = std::min(gap, r.numerical - r.analytical);
  check.require(!bell_records.empty() && gap >= -1e-9,
                fmt("numerical below analytical by %.3g", -gap));
  std::printf("  min discord on random states %.3g; min numerical - analytical %.3g\n", lowest, gap);
  return check;
}

Check e05_metric() {
  Check check;
  check.require(harness::e05(1000, 10, 5) == 100.0, "e05(1000, 10, 5) != 100");
  // The quoted figures carry one decimal; compare at that precision.
  const double e1 = harness::e05(1000, 10, 1);
  const double e9 = harness::e05(1000, 10, 9);
  check.require(e1 == 100 * std::log(0.5) / std::log(0.1) && std::floor(e1 * 10) / 10 == 30.1,
                fmt("e05(1000, 10, 1) = %.6g", e1));
  check.require(e9 == 100 * std::log(0.5) / std::log(0.9) && std::floor(e9 * 10) / 10 == 657.8,
                fmt("e05(1000, 10, 9) = %.6g", e9));
  std::printf("  e05 examples: %.6g %.6g %.6g\n", harness::e05(1000, 10, 5), e1, e9);

  const auto problem = bench::make_problem("plateau", 1);
  RmConfig config =
      io::load_config(std::filesystem::path(RMOPT_SOURCE_DIR) / "configs" / "plateau.cfg", {});
  config.seed = kMasterSeed;
  const auto a = harness::run_experiments(problem.objective(), config, 100, 1e-3,
                                          problem.known_minimum, {.workers = 1}, false);
  const auto b = harness::run_experiments(problem.objective(), config, 100, 1e-3,
                                          problem.known_minimum, {.workers = 0}, false);
  check.require(a.e_05.has_value() && std::isfinite(*a.e_05),
                "plateau e_0.5 undefined (n_err = " + std::to_string(a.n_err) + ")");
  check.require(a.e_05 == b.e_05 && a.n_err == b.n_err && a.n_evaluations == b.n_evaluations,
                "plateau statistics not reproducible");
  if (a.e_05)
    std::printf("  plateau: n_err %llu of 100, e_0.5 = %.6g\n",
                static_cast<unsigned long long>(a.n_err), *a.e_05);
  return check;
}

// min over a (theta, phi) grid of the conditional entropy after measuring B
// along the Bloch direction n, computed on the full post-measurement states.
double grid_min_conditional_entropy(const DensityMatrix& rho) {
  const CMatrix id2 = CMatrix::Identity(2, 2);
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  double best = INFINITY;
  for (int i = 0; i < 200; ++i) {
    const double theta = kPi * i / 199.0;
    for (int j = 0; j < 400; ++j) {
      const double phi = 2 * kPi * j / 400.0;
      const CMatrix ns = std::sin(theta) * std::cos(phi) * sx + std::sin(theta) * std::sin(phi) * sy +
                         std::cos(theta) * sz;
      double s = 0.0;
      for (double sign : {1.0, -1.0}) {
        const CMatrix proj = 0.5 * (id2 + sign * ns);
        CMatrix lift = CMatrix::Zero(4, 4);
        for (int a = 0; a < 2; ++a) lift.block(2 * a, 2 * a, 2, 2) = proj;
        const CMatrix post = lift * rho.matrix() * lift;
        const double p = post.trace().real();
        if (p > 1e-14) s += p * oracle_entropy(post / p);
      }
      best = std::min(best, s);
    }
  }
  return best;
}

Check brute_force_cross_check() {
  Check check;
  Rng rng(kMasterSeed + 6);
  double worst = -INFINITY;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_density_matrix(2, 2, rng);
    RmConfig c = default_discord_config(2);
    c.seed = derive_seed(kMasterSeed, 0x6d1d, t);
    const double rm = classical_correlations(rho, c).min_conditional_entropy;
    const double grid = grid_min_conditional_entropy(rho);
    worst = std::max(worst, rm - grid);
  }
  std::printf("  20 random 2-qubit states: max (RM - grid) = %.3g\n", worst);
  check.require(worst <= 1e-6, fmt("RM exceeds grid by %.3g", worst));
  return check;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Check (*run)();
  };
  const Criterion criteria[] = {
      {"1 benchmark statistics", benchmark_statistics},
      {"2 discord oracle equivalence", discord_oracle_equivalence},
      {"3 E_Hmin validity", hmin_validity},
      {"4 property suites", property_suites},
      {"5 e_0.5 metric", e05_metric},
      {"6 brute-force discord cross-check", brute_force_cross_check},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  [%s] (%.1f s)%s%s\n", result.ok ? "PASS" : "FAIL", c.name, secs,
                result.ok ? "" : "  ", result.detail.c_str());
    std::fflush(stdout);
    failures += result.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
