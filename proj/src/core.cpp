#include "noisefid/core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace noisefid {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

ComplexVector basis_vector(Eigen::Index dim, Eigen::Index index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

}  // namespace

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) {
    return 0.0;
  }
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tolerance) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tolerance;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tolerance;
}

bool is_unitary(const ComplexMatrix& u, double tolerance) {
  if (u.rows() != u.cols()) {
    return false;
  }
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(u.rows(), u.cols())) <= tolerance;
}

// ---------------------------------------------------------------------------
// Ket

Ket::Ket(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (!is_power_of_two(amplitudes_.size())) {
    throw DimensionError("Ket: dimension " + std::to_string(amplitudes_.size()) +
                         " is not a power of two");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol::kConstruction) {
    throw ParameterError("Ket: squared norm " + std::to_string(norm2) + " is not 1");
  }
}

Ket Ket::normalized(ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) {
    throw ParameterError("Ket::normalized: zero vector");
  }
  amplitudes /= norm;
  return Ket(std::move(amplitudes));
}

int Ket::n_qubits() const {
  int n = 0;
  for (Eigen::Index d = dim(); d > 1; d >>= 1) {
    ++n;
  }
  return n;
}

Ket Ket::transformed(const ComplexMatrix& u) const {
  if (u.rows() != dim() || u.cols() != dim()) {
    throw DimensionError("Ket::transformed: operator is " + std::to_string(u.rows()) + "x" +
                         std::to_string(u.cols()) + ", ket has dim " + std::to_string(dim()));
  }
  if (!is_unitary(u)) {
    throw ParameterError("Ket::transformed: operator is not unitary");
  }
  // Unitaries keep the norm up to round-off; renormalise so the strict
  // construction check never trips on products of several gates.
  return Ket::normalized(u * amplitudes_);
}

double overlap_magnitude(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("overlap_magnitude: dimension mismatch");
  }
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

namespace states {

Ket zero() { return Ket(basis_vector(2, 0)); }
Ket one() { return Ket(basis_vector(2, 1)); }

Ket plus() {
  ComplexVector v(2);
  v << kInvSqrt2, kInvSqrt2;
  return Ket::normalized(v);
}

Ket minus() {
  ComplexVector v(2);
  v << kInvSqrt2, -kInvSqrt2;
  return Ket::normalized(v);
}

Ket psi_plus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = kInvSqrt2;
  v(3) = kInvSqrt2;
  return Ket::normalized(v);
}

Ket phi_minus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = kInvSqrt2;
  v(2) = -kInvSqrt2;
  return Ket::normalized(v);
}

}  // namespace states

namespace gates {

ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix y() {
  const Complex i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  m << 0.0, -i, i, 0.0;
  return m;
}

ComplexMatrix iy() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, -1.0, 0.0;
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  return m;
}

}  // namespace gates

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  require_square(matrix_, "DensityMatrix");
  if (!is_power_of_two(matrix_.rows())) {
    throw DimensionError("DensityMatrix: dimension is not a power of two");
  }
  if (!is_hermitian(matrix_, tol::kChannel)) {
    throw ParameterError("DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(trace() - 1.0) > tol::kChannel) {
    throw ParameterError("DensityMatrix: trace " + std::to_string(trace()) + " is not 1");
  }
}

DensityMatrix DensityMatrix::from_ket(const Ket& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

double DensityMatrix::min_eigenvalue() const {
  // Symmetrise first so round-off in the anti-Hermitian part cannot leak in.
  const ComplexMatrix h = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_positive(double tolerance) const { return min_eigenvalue() >= -tolerance; }

// ---------------------------------------------------------------------------
// Operations

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Ket tensor(const Ket& a, const Ket& b) {
  return Ket::normalized(tensor(ComplexMatrix(a.amplitudes()), ComplexMatrix(b.amplitudes())));
}

ComplexMatrix embed(const ComplexMatrix& op, int target, int n_qubits) {
  if (op.rows() != 2 || op.cols() != 2) {
    throw DimensionError("embed: expected a 2x2 operator");
  }
  if (n_qubits < 1 || n_qubits > 2) {
    throw IndexError("embed: register size " + std::to_string(n_qubits) + " not in {1, 2}");
  }
  if (target < 0 || target >= n_qubits) {
    throw IndexError("embed: target qubit " + std::to_string(target) +
                     " out of range for " + std::to_string(n_qubits) + " qubit(s)");
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    out = tensor(out, q == target ? op : gates::identity());
  }
  return out;
}

DensityMatrix apply_kraus(const DensityMatrix& rho, std::span<const ComplexMatrix> kraus) {
  const Eigen::Index d = rho.dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& e : kraus) {
    if (e.rows() != d || e.cols() != d) {
      throw DimensionError("apply_kraus: Kraus operator is " + std::to_string(e.rows()) + "x" +
                           std::to_string(e.cols()) + ", state has dim " + std::to_string(d));
    }
    out.noalias() += e * rho.matrix() * e.adjoint();
  }
  return DensityMatrix(std::move(out), DensityMatrix::Unchecked{});
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw DimensionError("apply_unitary: operator/state dimension mismatch");
  }
  if (!is_unitary(u)) {
    throw ParameterError("apply_unitary: operator is not unitary");
  }
  ComplexMatrix out = u * rho.matrix() * u.adjoint();
  return DensityMatrix(std::move(out), DensityMatrix::Unchecked{});
}

double fidelity_pure(const Ket& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim()) {
    throw DimensionError("fidelity_pure: ket dim " + std::to_string(psi.dim()) +
                         " vs density matrix dim " + std::to_string(rho.dim()));
  }
  const ComplexVector& a = psi.amplitudes();
  const double f = a.dot(rho.matrix() * a).real();
  if (f < 0.0 && f > -tol::kFidelityClamp) {
    return 0.0;
  }
  if (f > 1.0 && f < 1.0 + tol::kFidelityClamp) {
    return 1.0;
  }
  return f;
}

}  // namespace noisefid
