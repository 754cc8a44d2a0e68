// Copyright 2026 The noisecool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace noisecool {
namespace {

using testing::max_abs;
using testing::random_state;

TEST(MatrixExponential, ZeroIsIdentity) {
  EXPECT_LT(max_abs(matrix_exponential(Matrix::Zero(2, 2)) - Matrix::Identity(2, 2)), 1e-15);
}

TEST(MatrixExponential, QuarterRotation) {
  const Matrix u = matrix_exponential(-kI * (kPi / 2) * pauli::x());
  EXPECT_LT(max_abs(u - (-kI * pauli::x())), 1e-14);
}

TEST(MatrixExponential, MatchesTaylorSeries) {
  std::mt19937_64 rng(11);
  const Matrix a = -kI * testing::random_hermitian(8, rng) * 0.3;
  Matrix term = Matrix::Identity(8, 8), sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  EXPECT_LT(max_abs(matrix_exponential(a) - sum), 1e-9);
}

TEST(MatrixExponential, InverseProperty) {
  std::mt19937_64 rng(12);
  Matrix a = testing::random_matrix(6, rng);
  a *= 10.0 / spectral_norm(a);
  const Matrix prod = matrix_exponential(a) * matrix_exponential(-a);
  EXPECT_LT(max_abs(prod - Matrix::Identity(6, 6)), 1e-8);
}

TEST(MatrixLogarithm, InvertsExponentialNearIdentity) {
  std::mt19937_64 rng(13);
  const Matrix a = -kI * testing::random_hermitian(4, rng) * 0.2;
  EXPECT_LT(max_abs(matrix_logarithm(matrix_exponential(a)) - a), 1e-10);
}

TEST(UnitarySuperoperator, IdentityAndBitFlip) {
  EXPECT_LT(max_abs(unitary_superoperator(Matrix::Identity(2, 2)).matrix - Matrix::Identity(4, 4)), 1e-15);
  const Matrix s = unitary_superoperator(pauli::x()).matrix;
  const Vector out = s * vec(DensityMatrix::basis_state({0}).matrix());
  EXPECT_LT((out - vec(DensityMatrix::basis_state({1}).matrix())).norm(), 1e-15);
}

TEST(UnitarySuperoperator, CnotMatchesConjugation) {
  std::mt19937_64 rng(14);
  const Matrix cnot = gate_matrix(Gate::cnot(0, 1, 0.0));
  const Superoperator s = unitary_superoperator(cnot);
  for (int k = 0; k < 20; ++k) {
    const auto rho = random_state(2, rng);
    const Matrix direct = cnot * rho.matrix() * cnot.adjoint();
    EXPECT_LT(max_abs(apply(s, rho).matrix() - direct), 1e-10);
  }
}

TEST(LindbladSuperoperator, DampingRelaxesToGround) {
  const auto l = lindblad_superoperator(Matrix::Zero(2, 2), {{pauli::lowering(), 1.0}});
  const Matrix e = matrix_exponential(50.0 * l.matrix);
  const Matrix rho = unvec(e * vec(DensityMatrix::basis_state({1}).matrix()), 2);
  EXPECT_LT(max_abs(rho - DensityMatrix::basis_state({0}).matrix()), 1e-12);
}

TEST(LindbladSuperoperator, PauliNoiseFixesMixedState) {
  const auto l = lindblad_superoperator(Matrix::Zero(2, 2), {{pauli::x(), 0.3}, {pauli::y(), 0.3}, {pauli::z(), 0.3}});
  EXPECT_LT((l.matrix * vec(Matrix::Identity(2, 2) / 2.0)).norm(), 1e-15);
}

TEST(LindbladSuperoperator, MatchesRk4Stepper) {
  const double eps = 1.0, gamma = 0.2, t = 3.0;
  const Matrix h = -0.5 * eps * pauli::z();
  const auto l = lindblad_superoperator(h, {{pauli::lowering(), gamma}});
  Vector psi(2);
  psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const Matrix rho0 = psi * psi.adjoint();
  const Matrix exact = unvec(matrix_exponential(t * l.matrix) * vec(rho0), 2);
  // Independent RK4 on the matrix equation.
  auto rhs = [&](const Matrix& r) {
    const Matrix sm = pauli::lowering();
    return Matrix(-kI * (h * r - r * h) +
                  gamma * (sm * r * sm.adjoint() - 0.5 * (sm.adjoint() * sm * r + r * sm.adjoint() * sm)));
  };
  Matrix r = rho0;
  const int n = 3000;
  const double dt = t / n;
  for (int k = 0; k < n; ++k) {
    const Matrix k1 = rhs(r), k2 = rhs(r + 0.5 * dt * k1), k3 = rhs(r + 0.5 * dt * k2), k4 = rhs(r + dt * k3);
    r += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  EXPECT_LT(max_abs(exact - r), 1e-7);
  EXPECT_NEAR(exact(1, 1).real(), 0.5 * std::exp(-gamma * t), 1e-12);
}

TEST(LindbladSuperoperator, RejectsNegativeRate) {
  EXPECT_THROW(lindblad_superoperator(Matrix::Zero(2, 2), {{pauli::x(), -1.0}}), ValidationError);
}

TEST(Channels, LongRunPreservesTraceAndHermiticity) {
  std::mt19937_64 rng(15);
  const Matrix h = testing::random_hermitian(4, rng);
  const auto l = lindblad_superoperator(
      h, {{embed(pauli::lowering(), std::vector<int>{0}, 2), 0.1}, {embed(pauli::z(), std::vector<int>{1}, 2), 0.05}});
  const Matrix step = matrix_exponential(0.05 * l.matrix);
  Vector v = vec(random_state(2, rng).matrix());
  for (int k = 0; k < 1000; ++k) v = step * v;
  const auto d = DensityMatrix::unchecked(unvec(v, 4)).diagnostics();
  EXPECT_LT(d.trace_error, 1e-8);
  EXPECT_LT(d.hermiticity_error, 1e-8);
  EXPECT_GT(d.min_eigenvalue, -1e-8);
}

TEST(Channels, ChoiAndKrausOfDamping) {
  const auto l = lindblad_superoperator(Matrix::Zero(2, 2), {{pauli::lowering(), 1.0}});
  const Matrix s = matrix_exponential(0.3 * l.matrix);
  EXPECT_TRUE(is_cptp(s));
  const auto kraus = kraus_decomposition(s);
  Matrix sum = Matrix::Zero(2, 2);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  EXPECT_LT(max_abs(sum - Matrix::Identity(2, 2)), 1e-12);
}

TEST(PartialTrace, ProductStateFactors) {
  std::mt19937_64 rng(16);
  const auto a = random_state(1, rng), b = random_state(2, rng);
  const auto ab = tensor(a, b);
  EXPECT_LT(max_abs(partial_trace(ab, {0}).matrix() - a.matrix()), 1e-14);
  EXPECT_LT(max_abs(partial_trace(ab, {1, 2}).matrix() - b.matrix()), 1e-14);
}

TEST(PartialTrace, BellStateMarginals) {
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  const auto bell = DensityMatrix::pure(psi);
  for (int q : {0, 1}) EXPECT_LT(max_abs(partial_trace(bell, {q}).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, MatchesIndexSummation) {
  std::mt19937_64 rng(17);
  const auto rho = random_state(3, rng);
  // Keep qubits 0 and 2 (qubit 0 most significant); sum over qubit 1.
  Matrix expect = Matrix::Zero(4, 4);
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b0 = 0; b0 < 2; ++b0)
        for (int b2 = 0; b2 < 2; ++b2)
          for (int m = 0; m < 2; ++m)
            expect(a0 * 2 + a2, b0 * 2 + b2) += rho.matrix()(a0 * 4 + m * 2 + a2, b0 * 4 + m * 2 + b2);
  EXPECT_LT(max_abs(partial_trace(rho, {0, 2}).matrix() - expect), 1e-12);
}

TEST(Purity, Bounds) {
  EXPECT_NEAR(purity(DensityMatrix::basis_state({0, 1})), 1.0, 1e-15);
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed(2)), 0.25, 1e-15);
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed(3)), 0.125, 1e-15);
}

TEST(Purity, UnitaryInvariance) {
  std::mt19937_64 rng(18);
  const auto rho = random_state(3, rng);
  const Matrix u = testing::random_unitary(8, rng);
  const auto rot = DensityMatrix::from_matrix(u * rho.matrix() * u.adjoint());
  EXPECT_NEAR(purity(rot), purity(rho), 1e-10);
}

TEST(Expectation, Basics) {
  EXPECT_DOUBLE_EQ(expectation(DensityMatrix::basis_state({0}), PauliString::parse("Z")), 1.0);
  EXPECT_NEAR(expectation(DensityMatrix::maximally_mixed(1), PauliString::parse("X")), 0.0, 1e-15);
  EXPECT_NEAR(expectation(DensityMatrix::maximally_mixed(1), PauliString::parse("Y")), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(expectation(DensityMatrix::basis_state({0, 0}), PauliString::parse("ZZ")), 1.0);
  EXPECT_DOUBLE_EQ(expectation(DensityMatrix::basis_state({0, 1}), PauliString::parse("ZZ")), -1.0);
}

TEST(Expectation, MatchesDenseTrace) {
  std::mt19937_64 rng(19);
  const auto rho = random_state(3, rng);
  for (const auto& p : pauli_basis(3))
    EXPECT_NEAR(expectation(rho, p), (rho.matrix() * p.matrix()).trace().real(), 1e-12) << p.to_string();
}

TEST(DensityMatrix, RejectsInvalid) {
  Matrix m = Matrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix::from_matrix(m), ValidationError);  // trace 2
  m(0, 1) = 0.3;
  m /= 2.0;
  EXPECT_THROW(DensityMatrix::from_matrix(m), ValidationError);  // not Hermitian
}

TEST(LocalApplication, MatchesEmbeddedConjugation) {
  std::mt19937_64 rng(20);
  const auto rho = random_state(3, rng);
  const Matrix u = testing::random_unitary(4, rng);
  const std::vector<int> qubits{2, 0};
  Matrix local = rho.matrix();
  apply_unitary_local(local, u, qubits, 3);
  const Matrix full = embed(u, qubits, 3);
  EXPECT_LT(max_abs(local - full * rho.matrix() * full.adjoint()), 1e-12);
}

TEST(LocalApplication, SuperoperatorMatchesEmbedded) {
  std::mt19937_64 rng(21);
  const auto rho = random_state(3, rng);
  const auto l = lindblad_superoperator(Matrix::Zero(2, 2), {{pauli::lowering(), 0.7}});
  const Matrix s = matrix_exponential(l.matrix);
  Matrix local = rho.matrix();
  apply_superop_local(local, s, std::vector<int>{1}, 3);
  const auto lf = lindblad_superoperator(Matrix::Zero(8, 8), {{embed(pauli::lowering(), std::vector<int>{1}, 3), 0.7}});
  const Matrix full = unvec(matrix_exponential(lf.matrix) * vec(rho.matrix()), 8);
  EXPECT_LT(max_abs(local - full), 1e-12);
}

}  // namespace
}  // namespace noisecool
