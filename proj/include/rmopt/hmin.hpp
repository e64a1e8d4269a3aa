#pragma once

#include <cstddef>

#include "rmopt/qstate.hpp"
#include "rmopt/rm_core.hpp"

namespace rmopt::quantum {

struct HminResult {
  double value = 0.0;
  LocalUnitaryParams params;
  OptimizationResult optimizer_result;
  std::size_t restarts = 0;
  std::uint64_t total_evaluations = 0;
};

/// (delta_1, gamma_1, ..., delta_n, gamma_n) -> H_meas((U_1 (x) ... (x) U_n) psi).
/// The returned function owns a copy of the state and is reentrant.
Fitness hmin_fitness(const PureState& psi);

/// Search settings for an n-qubit state: 2n angles initialized on [0, 2pi),
/// n_maxmut = max(2, 2n/5), p_max = 0.
RmConfig default_hmin_config(std::size_t n_qubits);

inline constexpr std::size_t kDefaultHminRestarts = 8;

/// Minimal measurement entropy, best of `n_restarts` independent runs.
HminResult e_hmin(const PureState& psi, const RmConfig& config,
                  std::size_t n_restarts = kDefaultHminRestarts,
                  const MinimizeOptions& options = {});

}  // namespace rmopt::quantum
