#include "noisefid/core.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace noisefid;

TEST_CASE("ket construction") {
  CHECK(states::zero().dim() == 2);
  CHECK(states::psi_plus().n_qubits() == 2);
  CHECK_THROWS_AS(Ket(ComplexVector::Constant(2, 1.0)), ParameterError);
  CHECK_THROWS_AS(Ket(ComplexVector::Constant(3, 1.0 / std::sqrt(3.0))), DimensionError);
  CHECK_THROWS_AS(Ket::normalized(ComplexVector::Zero(2)), ParameterError);

  const Ket k = Ket::normalized(ComplexVector::Constant(4, 2.0));
  CHECK(k.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("bell state amplitudes use the documented qubit order") {
  const double h = 1.0 / std::sqrt(2.0);
  const Ket bell = states::psi_plus();
  const auto& pp = bell.amplitudes();
  CHECK(std::abs(pp(0) - h) < 1e-15);
  CHECK(std::abs(pp(3) - h) < 1e-15);
  const Ket singlet = states::phi_minus();
  const auto& s = singlet.amplitudes();
  CHECK(std::abs(s(1) - h) < 1e-15);  // |01>
  CHECK(std::abs(s(2) + h) < 1e-15);  // -|10>
}

TEST_CASE("global phase is ignored by overlap_magnitude") {
  const Ket a = states::plus();
  const Ket b(a.amplitudes() * std::polar(1.0, 0.8));
  CHECK(overlap_magnitude(a, b) == doctest::Approx(1.0));
  CHECK(overlap_magnitude(states::zero(), states::one()) == doctest::Approx(0.0));
}

TEST_CASE("gates") {
  CHECK(is_unitary(gates::iy()));
  CHECK(approx_equal(gates::iy(), Complex(0, 1) * gates::y(), 1e-15));
  CHECK(approx_equal(gates::x() * gates::x(), gates::identity(), 1e-15));
  CHECK(approx_equal(gates::hadamard() * gates::hadamard(), gates::identity(), 1e-15));
  CHECK_FALSE(is_unitary(2.0 * gates::x()));
}

TEST_CASE("embed and tensor") {
  const ComplexMatrix x0 = embed(gates::x(), 0, 2);
  CHECK(approx_equal(x0, tensor(gates::x(), gates::identity()), 0.0));
  // X on qubit 0 maps |00> to |10> (index 2).
  const Ket k = tensor(states::zero(), states::zero()).transformed(x0);
  CHECK(std::abs(k.amplitudes()(2)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(embed(gates::x(), 2, 2), IndexError);
  CHECK_THROWS_AS(embed(gates::identity(4), 0, 2), DimensionError);
  CHECK(approx_equal(embed(gates::z(), 0, 1), gates::z(), 0.0));
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix::from_ket(states::minus()));
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{bad}, ParameterError);
  ComplexMatrix skew(2, 2);
  skew << 0.5, 0.3, -0.3, 0.5;
  CHECK_THROWS_AS(DensityMatrix{skew}, ParameterError);

  const DensityMatrix rho = DensityMatrix::from_ket(states::psi_plus());
  CHECK(rho.trace() == doctest::Approx(1.0));
  CHECK(rho.is_positive());
  CHECK(rho.min_eigenvalue() > -1e-12);
}

TEST_CASE("apply_kraus is linear and leaves normalisation to the caller") {
  const DensityMatrix rho = DensityMatrix::from_ket(states::plus());
  const std::vector<ComplexMatrix> half{std::sqrt(0.5) * gates::identity()};
  CHECK(apply_kraus(rho, half).trace() == doctest::Approx(0.5));

  const std::vector<ComplexMatrix> wrong{gates::identity(4)};
  CHECK_THROWS_AS(apply_kraus(rho, wrong), DimensionError);
}

TEST_CASE("apply_unitary") {
  const DensityMatrix rho = DensityMatrix::from_ket(states::zero());
  const DensityMatrix out = apply_unitary(rho, gates::x());
  CHECK(fidelity_pure(states::one(), out) == doctest::Approx(1.0));
  CHECK_THROWS_AS(apply_unitary(rho, 2.0 * gates::x()), ParameterError);
}

TEST_CASE("fidelity of orthogonal and identical states") {
  const auto rho = DensityMatrix::from_ket(states::one());
  CHECK(fidelity_pure(states::one(), rho) == 1.0);
  CHECK(fidelity_pure(states::zero(), rho) == 0.0);
  CHECK(fidelity_pure(states::plus(), rho) == doctest::Approx(0.5));
  CHECK_THROWS_AS(fidelity_pure(states::psi_plus(), rho), DimensionError);
}
