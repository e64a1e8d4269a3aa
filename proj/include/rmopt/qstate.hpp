#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "rmopt/rm_core.hpp"

namespace rmopt::quantum {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// A state or matrix failed validation (normalization, Hermiticity, ...).
class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kEigenvalueClamp = 1e-10;

/// Normalized n-qubit state. Amplitude index bits are big-endian: qubit 0 is
/// the most significant bit.
class PureState {
 public:
  /// Throws InvalidStateError unless the vector has 2^n_qubits entries of unit norm.
  PureState(std::size_t n_qubits, CVector amplitudes);

  /// Rescales `amplitudes` to unit norm first; a zero vector is rejected.
  static PureState normalized(std::size_t n_qubits, CVector amplitudes);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }

 private:
  std::size_t n_qubits_;
  CVector amplitudes_;
};

enum class Subsystem { kA, kB };

/// Bipartite density matrix on C^dim_a (x) C^dim_b, A being the leading factor.
class DensityMatrix {
 public:
  /// Validates Hermiticity and unit trace to 1e-12 and eigenvalues >= -1e-10.
  DensityMatrix(std::size_t dim_a, std::size_t dim_b, CMatrix entries);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::size_t dim() const { return dim_a_ * dim_b_; }
  const CMatrix& matrix() const { return entries_; }

  /// Same state with the factors exchanged (B becomes the leading factor).
  DensityMatrix swapped() const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  CMatrix entries_;
};

struct LocalAngles {
  double delta = 0.0;
  double gamma = 0.0;
};

/// One (delta, gamma) pair per qubit; flat layout is (delta_1, gamma_1, ...).
struct LocalUnitaryParams {
  std::vector<LocalAngles> angles;

  static LocalUnitaryParams from_flat(std::span<const double> flat);
  std::vector<double> flat() const;
};

/// d real diagonal entries followed by (re, im) pairs of the strict upper
/// triangle in row-major order: d^2 reals in total.
struct HermitianParams {
  std::size_t dim = 0;
  std::vector<double> values;

  static std::size_t size_for(std::size_t dim) { return dim * dim; }
  /// Hermitian by construction.
  CMatrix matrix() const;
};

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;         // orthonormal columns
};

Eigensystem hermitian_eigensystem(const CMatrix& h);

CMatrix unitary_2x2(double delta, double gamma);
/// exp(iH) through the eigendecomposition of H.
CMatrix unitary_from_hermitian(const HermitianParams& h);

/// Applies U(delta_k, gamma_k) to qubit k for every k, in place. `flat` holds
/// 2n angles; one pass over the amplitudes per qubit.
void apply_local_unitaries(std::span<Complex> amplitudes, std::size_t n_qubits,
                           std::span<const double> flat);
PureState apply_local_unitaries(const PureState& psi, const LocalUnitaryParams& params);

/// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);
double measurement_entropy(std::span<const Complex> amplitudes);
double measurement_entropy(const PureState& psi);
/// -Tr rho log2 rho; eigenvalues in [-1e-10, 0] count as zero.
double von_neumann_entropy(const CMatrix& rho);

CMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);
/// Reduced state of the leading `n_keep` qubits of a pure state.
CMatrix reduced_density_matrix(const PureState& psi, std::size_t n_keep);

PureState ghz_state(std::size_t n_qubits, Complex l0, Complex l1);
/// Grover iterate t on N = 2^n items with a single marked `target`.
PureState grover_state(std::size_t n_qubits, std::uint64_t t, std::uint64_t target);
PureState random_pure_state(std::size_t n_qubits, Rng& rng);
/// Tensor product of independent random single-qubit states.
PureState random_product_state(std::size_t n_qubits, Rng& rng);
PureState basis_state(std::size_t n_qubits, std::uint64_t index);
/// |phi> (x) |psi>, phi's qubits leading.
PureState tensor_product(const PureState& phi, const PureState& psi);

DensityMatrix pure_density(const PureState& psi, std::size_t dim_a, std::size_t dim_b);
/// G G^dagger / Tr for a complex Ginibre matrix G.
DensityMatrix random_density_matrix(std::size_t dim_a, std::size_t dim_b, Rng& rng);
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace rmopt::quantum
