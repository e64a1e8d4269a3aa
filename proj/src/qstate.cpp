#include "rmopt/qstate.hpp"

#include <cmath>
#include <random>
#include <string>

namespace rmopt::quantum {

namespace {

std::size_t dim_for(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > 30) throw InvalidStateError("qubit count must lie in [1, 30]");
  return std::size_t{1} << n_qubits;
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::VectorXd eigenvalues_of(const CMatrix& h) {
  if (h.rows() == 2) {
    // Closed form; this path dominates the conditional-entropy inner loop.
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
    Eigen::VectorXd out(2);
    out << mean - r, mean + r;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

PureState::PureState(std::size_t n_qubits, CVector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != dim_for(n_qubits))
    throw InvalidStateError("amplitude count must be 2^n_qubits");
  const double norm2 = amplitudes_.squaredNorm();
  if (!(std::abs(norm2 - 1.0) <= kNormTolerance))
    throw InvalidStateError("state is not normalized (squared norm " + std::to_string(norm2) + ")");
}

PureState PureState::normalized(std::size_t n_qubits, CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidStateError("cannot normalize a zero vector");
  amplitudes /= norm;
  return PureState(n_qubits, std::move(amplitudes));
}

DensityMatrix::DensityMatrix(std::size_t dim_a, std::size_t dim_b, CMatrix entries)
    : dim_a_(dim_a), dim_b_(dim_b), entries_(std::move(entries)) {
  if (dim_a == 0 || dim_b == 0) throw InvalidStateError("subsystem dimensions must be positive");
  const auto d = static_cast<Eigen::Index>(dim_a * dim_b);
  if (entries_.rows() != d || entries_.cols() != d)
    throw InvalidStateError("density matrix size must be (dim_a*dim_b)^2");
  if (!entries_.allFinite()) throw InvalidStateError("density matrix has non-finite entries");
  if (max_abs(entries_ - entries_.adjoint()) > kNormTolerance)
    throw InvalidStateError("density matrix is not Hermitian");
  const Complex tr = entries_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kNormTolerance)
    throw InvalidStateError("density matrix trace differs from 1");
  entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
  if (eigenvalues_of(entries_).minCoeff() < -kEigenvalueClamp)
    throw InvalidStateError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::swapped() const {
  const std::size_t d = dim();
  CMatrix out(d, d);
  auto perm = [&](std::size_t i) { return (i % dim_b_) * dim_a_ + i / dim_b_; };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(perm(i), perm(j)) = entries_(i, j);
  return DensityMatrix(dim_b_, dim_a_, std::move(out));
}

LocalUnitaryParams LocalUnitaryParams::from_flat(std::span<const double> flat) {
  if (flat.size() % 2 != 0) throw UsageError("local unitary parameters come in pairs");
  LocalUnitaryParams p;
  for (std::size_t k = 0; k < flat.size(); k += 2) p.angles.push_back({flat[k], flat[k + 1]});
  return p;
}

std::vector<double> LocalUnitaryParams::flat() const {
  std::vector<double> out;
  out.reserve(2 * angles.size());
  for (const auto& a : angles) {
    out.push_back(a.delta);
    out.push_back(a.gamma);
  }
  return out;
}

CMatrix HermitianParams::matrix() const {
  if (values.size() != size_for(dim)) throw UsageError("HermitianParams needs dim^2 values");
  CMatrix h = CMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) h(i, i) = values[i];
  std::size_t k = dim;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      const Complex z(values[k], values[k + 1]);
      k += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

Eigensystem hermitian_eigensystem(const CMatrix& h) {
  if (h.rows() != h.cols()) throw UsageError("hermitian_eigensystem needs a square matrix");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw InvalidStateError("eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix unitary_2x2(double delta, double gamma) {
  const Complex em = std::polar(1.0, -delta);
  const Complex ep = std::polar(1.0, delta);
  const double c = std::cos(gamma);
  const double s = std::sin(gamma);
  CMatrix u(2, 2);
  u << em * c, -ep * s, em * s, ep * c;
  return u;
}

CMatrix unitary_from_hermitian(const HermitianParams& h) {
  const Eigensystem es = hermitian_eigensystem(h.matrix());
  CVector phases(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) phases(k) = std::polar(1.0, es.values(k));
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

void apply_local_unitaries(std::span<Complex> amplitudes, std::size_t n_qubits,
                           std::span<const double> flat) {
  if (flat.size() != 2 * n_qubits) throw UsageError("need one (delta, gamma) pair per qubit");
  if (amplitudes.size() != (std::size_t{1} << n_qubits))
    throw UsageError("amplitude count must be 2^n_qubits");
  const std::size_t dim = amplitudes.size();
  for (std::size_t q = 0; q < n_qubits; ++q) {
    const double delta = flat[2 * q];
    const double gamma = flat[2 * q + 1];
    const double cd = std::cos(delta), sd = std::sin(delta);
    const double c = std::cos(gamma), s = std::sin(gamma);
    // Real arithmetic avoids the NaN-recovery path of std::complex multiplication.
    const double u00r = cd * c, u00i = -sd * c;
    const double u01r = -cd * s, u01i = -sd * s;
    const double u10r = cd * s, u10i = -sd * s;
    const double u11r = cd * c, u11i = sd * c;
    auto* data = reinterpret_cast<double*>(amplitudes.data());
    const std::size_t stride = std::size_t{1} << (n_qubits - 1 - q);
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
      for (std::size_t i = block; i < block + stride; ++i) {
        double* p0 = data + 2 * i;
        double* p1 = data + 2 * (i + stride);
        const double a0r = p0[0], a0i = p0[1], a1r = p1[0], a1i = p1[1];
        p0[0] = u00r * a0r - u00i * a0i + u01r * a1r - u01i * a1i;
        p0[1] = u00r * a0i + u00i * a0r + u01r * a1i + u01i * a1r;
        p1[0] = u10r * a0r - u10i * a0i + u11r * a1r - u11i * a1i;
        p1[1] = u10r * a0i + u10i * a0r + u11r * a1i + u11i * a1r;
      }
    }
  }
}

PureState apply_local_unitaries(const PureState& psi, const LocalUnitaryParams& params) {
  if (params.angles.size() != psi.n_qubits())
    throw UsageError("need one (delta, gamma) pair per qubit");
  CVector out = psi.amplitudes();
  const std::vector<double> flat = params.flat();
  apply_local_unitaries(std::span<Complex>(out.data(), static_cast<std::size_t>(out.size())),
                        psi.n_qubits(), flat);
  return PureState::normalized(psi.n_qubits(), std::move(out));
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

double measurement_entropy(std::span<const Complex> amplitudes) {
  double h = 0.0;
  for (const Complex& a : amplitudes) {
    const double p = std::norm(a);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double measurement_entropy(const PureState& psi) {
  const CVector& a = psi.amplitudes();
  return measurement_entropy(std::span<const Complex>(a.data(), static_cast<std::size_t>(a.size())));
}

double von_neumann_entropy(const CMatrix& rho) {
  if (rho.rows() != rho.cols()) throw UsageError("von_neumann_entropy needs a square matrix");
  const Eigen::VectorXd lambda = eigenvalues_of(rho);
  double h = 0.0;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const double l = lambda(k);
    if (l < -kEigenvalueClamp) throw InvalidStateError("matrix is not positive semidefinite");
    if (l > 0.0) h -= l * std::log2(l);
  }
  return h;
}

CMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  const std::size_t da = rho.dim_a();
  const std::size_t db = rho.dim_b();
  const CMatrix& m = rho.matrix();
  if (keep == Subsystem::kA) {
    CMatrix out = CMatrix::Zero(da, da);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b = 0; b < db; ++b) out(a, a2) += m(a * db + b, a2 * db + b);
    return out;
  }
  CMatrix out = CMatrix::Zero(db, db);
  for (std::size_t b = 0; b < db; ++b)
    for (std::size_t b2 = 0; b2 < db; ++b2)
      for (std::size_t a = 0; a < da; ++a) out(b, b2) += m(a * db + b, a * db + b2);
  return out;
}

CMatrix reduced_density_matrix(const PureState& psi, std::size_t n_keep) {
  if (n_keep == 0 || n_keep > psi.n_qubits()) throw UsageError("n_keep must lie in [1, n_qubits]");
  const std::size_t rows = std::size_t{1} << n_keep;
  const std::size_t cols = psi.dim() / rows;
  // Row-major reshape: the leading qubits index the rows.
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      psi.amplitudes().data(), rows, cols);
  return m * m.adjoint();
}

PureState ghz_state(std::size_t n_qubits, Complex l0, Complex l1) {
  CVector a = CVector::Zero(dim_for(n_qubits));
  a(0) = l0;
  a(a.size() - 1) = l1;
  return PureState::normalized(n_qubits, std::move(a));
}

PureState grover_state(std::size_t n_qubits, std::uint64_t t, std::uint64_t target) {
  const std::size_t dim = dim_for(n_qubits);
  if (target >= dim) throw UsageError("grover target outside the basis");
  const double n = static_cast<double>(dim);
  const double theta = std::asin(1.0 / std::sqrt(n));
  const double angle = (2.0 * static_cast<double>(t) + 1.0) * theta;
  CVector a = CVector::Constant(dim, std::cos(angle) / std::sqrt(n - 1.0));
  a(static_cast<Eigen::Index>(target)) = std::sin(angle);
  return PureState::normalized(n_qubits, std::move(a));
}

PureState random_pure_state(std::size_t n_qubits, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector a(dim_for(n_qubits));
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a(i) = Complex(re, im);
  }
  return PureState::normalized(n_qubits, std::move(a));
}

PureState random_product_state(std::size_t n_qubits, Rng& rng) {
  dim_for(n_qubits);
  PureState out = random_pure_state(1, rng);
  for (std::size_t q = 1; q < n_qubits; ++q) out = tensor_product(out, random_pure_state(1, rng));
  return out;
}

PureState basis_state(std::size_t n_qubits, std::uint64_t index) {
  CVector a = CVector::Zero(dim_for(n_qubits));
  if (index >= static_cast<std::uint64_t>(a.size())) throw UsageError("basis index out of range");
  a(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(n_qubits, std::move(a));
}

PureState tensor_product(const PureState& phi, const PureState& psi) {
  const CVector& x = phi.amplitudes();
  const CVector& y = psi.amplitudes();
  CVector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return PureState::normalized(phi.n_qubits() + psi.n_qubits(), std::move(out));
}

DensityMatrix pure_density(const PureState& psi, std::size_t dim_a, std::size_t dim_b) {
  return DensityMatrix(dim_a, dim_b, psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix random_density_matrix(std::size_t dim_a, std::size_t dim_b, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t d = dim_a * dim_b;
  CMatrix g(d, d);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(dim_a, dim_b, std::move(rho));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace rmopt::quantum
