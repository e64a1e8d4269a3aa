#include "rmopt/discord.hpp"

#include <algorithm>
#include <cmath>

namespace rmopt::quantum {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

CMatrix pauli(int j) {
  CMatrix s(2, 2);
  switch (j) {
    case 1:
      s << 0.0, 1.0, 1.0, 0.0;
      break;
    case 2:
      s << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
      break;
    default:
      s << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return s;
}

// Eigenvectors of the observable as columns.
CMatrix measurement_basis(const HermitianParams& h) {
  if (h.dim == 2) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(Eigen::Matrix2cd(h.matrix()));
    return solver.eigenvectors();
  }
  return hermitian_eigensystem(h.matrix()).vectors;
}

}  // namespace

std::array<double, 4> BellDiagonalParams::eigenvalues() const {
  return {0.25 * (1.0 - c1 - c2 - c3), 0.25 * (1.0 - c1 + c2 + c3),
          0.25 * (1.0 + c1 - c2 + c3), 0.25 * (1.0 + c1 + c2 - c3)};
}

bool BellDiagonalParams::is_valid() const {
  if (!std::isfinite(c1) || !std::isfinite(c2) || !std::isfinite(c3)) return false;
  for (double l : eigenvalues())
    if (l < -kNormTolerance || l > 1.0 + kNormTolerance) return false;
  return true;
}

DensityMatrix bell_diagonal_state(const BellDiagonalParams& p) {
  if (!p.is_valid()) throw InvalidStateError("Bell-diagonal coefficients give a negative eigenvalue");
  CMatrix rho = CMatrix::Identity(4, 4);
  const double c[3] = {p.c1, p.c2, p.c3};
  for (int j = 1; j <= 3; ++j) rho += c[j - 1] * kron(pauli(j), pauli(j));
  rho *= 0.25;
  return DensityMatrix(2, 2, std::move(rho));
}

BellDiagonalParams random_bell_diagonal(Rng& rng) {
  for (;;) {
    BellDiagonalParams p{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    if (p.is_valid()) return p;
  }
}

LuoValues luo_discord_analytical(const BellDiagonalParams& p) {
  if (!p.is_valid()) throw InvalidStateError("Bell-diagonal coefficients give a negative eigenvalue");
  LuoValues out;
  out.mutual_information = 2.0;
  for (double l : p.eigenvalues()) out.mutual_information += xlog2x(std::max(l, 0.0));
  const double c = std::max({std::abs(p.c1), std::abs(p.c2), std::abs(p.c3)});
  out.classical_correlations = 0.5 * (xlog2x(1.0 - c) + xlog2x(1.0 + c));
  out.discord = out.mutual_information - out.classical_correlations;
  return out;
}

double mutual_information(const DensityMatrix& rho) {
  return von_neumann_entropy(partial_trace(rho, Subsystem::kA)) +
         von_neumann_entropy(partial_trace(rho, Subsystem::kB)) - von_neumann_entropy(rho.matrix());
}

std::vector<CMatrix> measurement_projectors(const HermitianParams& h) {
  const CMatrix basis = measurement_basis(h);
  std::vector<CMatrix> out;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) out.push_back(basis.col(k) * basis.col(k).adjoint());
  return out;
}

double conditional_entropy(const DensityMatrix& rho, const HermitianParams& h) {
  if (h.dim != rho.dim_b()) throw UsageError("observable dimension differs from dim_b");
  const std::size_t da = rho.dim_a();
  const std::size_t db = rho.dim_b();
  const CMatrix& m = rho.matrix();
  const CMatrix basis = measurement_basis(h);
  double total = 0.0;
  CMatrix sigma(da, da);
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    // (I (x) <v|) rho (I (x) |v>): the A-side state conditioned on outcome k.
    // Its entropy equals that of the full post-measurement state, whose B
    // factor is the pure projector |v><v|.
    const auto v = basis.col(k);
    for (std::size_t a = 0; a < da; ++a) {
      for (std::size_t a2 = 0; a2 < da; ++a2) {
        Complex acc = 0.0;
        for (std::size_t b = 0; b < db; ++b)
          for (std::size_t b2 = 0; b2 < db; ++b2)
            acc += std::conj(v(b)) * m(a * db + b, a2 * db + b2) * v(b2);
        sigma(a, a2) = acc;
      }
    }
    const double p = sigma.trace().real();
    if (p < kOutcomeCutoff) continue;
    total += p * von_neumann_entropy(sigma / p);
  }
  return total;
}

RmConfig default_discord_config(std::size_t dim_b) {
  RmConfig c;
  c.n_params = HermitianParams::size_for(dim_b);
  c.n_pop = 10;
  c.n_des = 10;
  c.n_maxmut = std::min<std::size_t>(5, c.n_params);
  c.p_min = -9.0;
  c.p_max = 0.0;
  c.v_min = -1.0;
  c.v_max = 1.0;
  return c;
}

ClassicalCorrelationResult classical_correlations(const DensityMatrix& rho, const RmConfig& config,
                                                  std::size_t n_restarts,
                                                  const MinimizeOptions& options) {
  const std::size_t db = rho.dim_b();
  if (config.n_params != HermitianParams::size_for(db))
    throw ConfigError("discord: n_params must equal dim_b^2");
  auto fitness = [&rho, db](std::span<const double> x) {
    return conditional_entropy(rho, HermitianParams{db, std::vector<double>(x.begin(), x.end())});
  };
  MultistartResult runs = minimize_multistart(fitness, config, n_restarts, options);
  ClassicalCorrelationResult out;
  out.min_conditional_entropy = runs.best.f_best;
  out.value = von_neumann_entropy(partial_trace(rho, Subsystem::kA)) - runs.best.f_best;
  out.observable = HermitianParams{db, runs.best.x_best};
  out.total_evaluations = runs.total_evaluations;
  out.optimizer_result = std::move(runs.best);
  return out;
}

DiscordResult discord(const DensityMatrix& rho, const RmConfig& config, std::size_t n_restarts,
                      Subsystem measured, const MinimizeOptions& options) {
  const DensityMatrix oriented = measured == Subsystem::kB ? rho : rho.swapped();
  ClassicalCorrelationResult cc = classical_correlations(oriented, config, n_restarts, options);
  DiscordResult out;
  out.mutual_information = mutual_information(oriented);
  out.classical_correlations = cc.value;
  out.discord = out.mutual_information - out.classical_correlations;
  out.optimal_observable_params = std::move(cc.observable);
  out.optimizer_result = std::move(cc.optimizer_result);
  out.measured = measured;
  out.total_evaluations = cc.total_evaluations;
  return out;
}

}  // namespace rmopt::quantum
