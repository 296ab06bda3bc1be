#pragma once

// Dense complex linear algebra for one- and two-qubit states.
//
// Everything here is sized for at most 4x4 operators, so storage is plain
// dense Eigen. Qubit 0 is the leftmost tensor factor: |01> has amplitude 1
// at index 1 of 4.

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <stdexcept>
#include <string>

namespace noisefid {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace tol {
/// Normalisation of freshly built kets.
inline constexpr double kConstruction = 1e-12;
/// Hermiticity, trace and unitarity of channel inputs/outputs.
inline constexpr double kChannel = 1e-10;
/// Engine vs closed-form comparisons.
inline constexpr double kOracle = 1e-9;
/// Smallest eigenvalue accepted as positive semidefinite.
inline constexpr double kPositivity = 1e-9;
/// Fidelities this far outside [0,1] are clamped back in.
inline constexpr double kFidelityClamp = 1e-9;
}  // namespace tol

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Raised for out-of-domain parameters and broken operator invariants
/// (non-unitary "unitaries", unnormalised kets, non-CPTP sets).
class ParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

bool is_power_of_two(Eigen::Index n);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tolerance);
bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::kChannel);
bool is_unitary(const ComplexMatrix& u, double tolerance = tol::kChannel);

class Ket {
 public:
  /// Throws ParameterError unless the amplitudes have unit norm within
  /// tol::kConstruction, DimensionError unless the size is a power of two.
  explicit Ket(ComplexVector amplitudes);

  /// Rescales to unit norm. Throws on the zero vector.
  static Ket normalized(ComplexVector amplitudes);

  Eigen::Index dim() const { return amplitudes_.size(); }
  int n_qubits() const;
  const ComplexVector& amplitudes() const { return amplitudes_; }

  /// U|psi>; U must be unitary and dimension-matched.
  Ket transformed(const ComplexMatrix& u) const;

 private:
  ComplexVector amplitudes_;
};

/// |<a|b>|. Kets that differ only by a global phase give 1.
double overlap_magnitude(const Ket& a, const Ket& b);

namespace states {
Ket zero();
Ket one();
Ket plus();
Ket minus();
/// (|00> + |11>)/sqrt(2)
Ket psi_plus();
/// (|01> - |10>)/sqrt(2), the singlet.
Ket phi_minus();
}  // namespace states

namespace gates {
ComplexMatrix identity(Eigen::Index dim = 2);
ComplexMatrix x();
ComplexMatrix y();
/// i*Y = [[0, 1], [-1, 0]], the form used by the encoding sets.
ComplexMatrix iy();
ComplexMatrix z();
ComplexMatrix hadamard();
}  // namespace gates

class DensityMatrix {
 public:
  /// Validates Hermiticity and unit trace within tol::kChannel.
  explicit DensityMatrix(ComplexMatrix matrix);

  static DensityMatrix from_ket(const Ket& psi);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }
  double min_eigenvalue() const;
  bool is_positive(double tolerance = tol::kPositivity) const;

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix matrix, Unchecked) : matrix_(std::move(matrix)) {}

  friend DensityMatrix apply_kraus(const DensityMatrix&, std::span<const ComplexMatrix>);
  friend DensityMatrix apply_unitary(const DensityMatrix&, const ComplexMatrix&);

  ComplexMatrix matrix_;
};

/// Kronecker product, a is the left (lower-index) factor.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
Ket tensor(const Ket& a, const Ket& b);

/// Lifts a single-qubit operator onto qubit `target` of an n-qubit register
/// (n in {1, 2}); identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, int target, int n_qubits);

/// sum_i E_i rho E_i^dagger. The result is not renormalised; for a CPTP set
/// the trace stays 1 within tol::kChannel.
DensityMatrix apply_kraus(const DensityMatrix& rho, std::span<const ComplexMatrix> kraus);

/// U rho U^dagger. Rejects U that is not unitary within tol::kChannel.
DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u);

/// <psi|rho|psi>. Values within tol::kFidelityClamp outside [0,1] are
/// clamped; anything further out (only possible for unphysical rho) is
/// returned unchanged.
double fidelity_pure(const Ket& psi, const DensityMatrix& rho);

}  // namespace noisefid
