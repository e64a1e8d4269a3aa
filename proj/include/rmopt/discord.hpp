#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "rmopt/qstate.hpp"
#include "rmopt/rm_core.hpp"

namespace rmopt::quantum {

/// Coefficients of the Bell-diagonal family (I + sum_j c_j sigma_j (x) sigma_j) / 4.
struct BellDiagonalParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  /// Spectrum of the state, in the order
  /// (1-c1-c2-c3, 1-c1+c2+c3, 1+c1-c2+c3, 1+c1+c2-c3) / 4.
  std::array<double, 4> eigenvalues() const;
  bool is_valid() const;
};

DensityMatrix bell_diagonal_state(const BellDiagonalParams& p);

/// Rejection sampling: c_j ~ U[-1, 1] until the state is valid.
BellDiagonalParams random_bell_diagonal(Rng& rng);

struct LuoValues {
  double mutual_information = 0.0;
  double classical_correlations = 0.0;
  double discord = 0.0;
};

/// Closed-form values for a Bell-diagonal state; c = max |c_j|.
LuoValues luo_discord_analytical(const BellDiagonalParams& p);

/// S(rho_A) + S(rho_B) - S(rho), base 2.
double mutual_information(const DensityMatrix& rho);

/// Rank-one projectors onto the eigenvectors of the observable.
std::vector<CMatrix> measurement_projectors(const HermitianParams& h);

inline constexpr double kOutcomeCutoff = 1e-12;

/// sum_i p_i S(rho_i) for the projective measurement on B given by the
/// eigenbasis of `h`. Outcomes with p_i < 1e-12 are dropped.
double conditional_entropy(const DensityMatrix& rho, const HermitianParams& h);

struct ClassicalCorrelationResult {
  double value = 0.0;
  double min_conditional_entropy = 0.0;
  HermitianParams observable;
  OptimizationResult optimizer_result;
  std::uint64_t total_evaluations = 0;
};

/// Measurement settings: dim_b^2 observable parameters on [-1, 1),
/// n_pop = 10, n_des = 10, n_maxmut = 5 (capped at n_params), p_max = 0.
RmConfig default_discord_config(std::size_t dim_b);

inline constexpr std::size_t kDefaultDiscordRestarts = 4;

/// S(rho_A) - min_M S(rho|M), measuring subsystem B.
ClassicalCorrelationResult classical_correlations(const DensityMatrix& rho, const RmConfig& config,
                                                  std::size_t n_restarts = kDefaultDiscordRestarts,
                                                  const MinimizeOptions& options = {});

struct DiscordResult {
  double discord = 0.0;
  double mutual_information = 0.0;
  double classical_correlations = 0.0;
  HermitianParams optimal_observable_params;
  OptimizationResult optimizer_result;
  Subsystem measured = Subsystem::kB;
  std::uint64_t total_evaluations = 0;
};

/// Mutual information minus classical correlations extracted by measuring
/// `measured`. The config's n_params must be (dim of measured side)^2.
DiscordResult discord(const DensityMatrix& rho, const RmConfig& config,
                      std::size_t n_restarts = kDefaultDiscordRestarts,
                      Subsystem measured = Subsystem::kB, const MinimizeOptions& options = {});

}  // namespace rmopt::quantum
