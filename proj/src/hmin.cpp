#include "rmopt/hmin.hpp"

#include <algorithm>
#include <numbers>

namespace rmopt::quantum {

Fitness hmin_fitness(const PureState& psi) {
  return [amps = psi.amplitudes(), n = psi.n_qubits()](std::span<const double> angles) {
    std::vector<Complex> work(amps.data(), amps.data() + amps.size());
    apply_local_unitaries(work, n, angles);
    return measurement_entropy(work);
  };
}

RmConfig default_hmin_config(std::size_t n_qubits) {
  RmConfig c;
  c.n_params = 2 * n_qubits;
  c.n_pop = 10;
  c.n_des = 10;
  c.n_maxmut = std::max<std::size_t>(2, c.n_params / 5);
  c.n_maxmut = std::min(c.n_maxmut, c.n_params);
  c.p_min = -9.0;
  c.p_max = 0.0;
  c.v_min = 0.0;
  c.v_max = 2.0 * std::numbers::pi;
  return c;
}

HminResult e_hmin(const PureState& psi, const RmConfig& config, std::size_t n_restarts,
                  const MinimizeOptions& options) {
  if (config.n_params != 2 * psi.n_qubits())
    throw ConfigError("hmin: n_params must equal twice the qubit count");
  MultistartResult runs = minimize_multistart(hmin_fitness(psi), config, n_restarts, options);
  HminResult out;
  out.params = LocalUnitaryParams::from_flat(runs.best.x_best);
  out.value = runs.best.f_best;
  out.restarts = runs.restarts;
  out.total_evaluations = runs.total_evaluations;
  out.optimizer_result = std::move(runs.best);
  return out;
}

}  // namespace rmopt::quantum
