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

#ifndef NOISECOOL_DENSITY_MATRIX_HPP
#define NOISECOOL_DENSITY_MATRIX_HPP

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "noisecool/common.hpp"
#include "noisecool/linalg.hpp"
#include "noisecool/pauli.hpp"

namespace noisecool {

struct StateDiagnostics {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double trace_error = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;

  // Validated construction (Hermitian 1e-10, trace 1e-9, eigenvalues >= -1e-9).
  static DensityMatrix from_matrix(Matrix m) {
    DensityMatrix rho(std::move(m), Unchecked{});
    rho.validate(tol::kHermitian, tol::kTrace, tol::kPositivity);
    return rho;
  }

  // No validation; used on hot paths that validate at checkpoints.
  static DensityMatrix unchecked(Matrix m) { return DensityMatrix(std::move(m), Unchecked{}); }

  static DensityMatrix pure(const Vector& psi) {
    const double nrm = psi.norm();
    if (nrm == 0.0) throw ValidationError("pure state vector has zero norm");
    const Vector v = psi / nrm;
    return unchecked(v * v.adjoint());
  }

  // Computational basis product state; bits[q] = 0 means |up>.
  static DensityMatrix basis_state(const std::vector<int>& bits) {
    const int n = static_cast<int>(bits.size());
    std::size_t index = 0;
    for (int q = 0; q < n; ++q)
      if (bits[static_cast<std::size_t>(q)]) index |= std::size_t{1} << (n - 1 - q);
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(dim_of(n)));
    psi(static_cast<Eigen::Index>(index)) = 1.0;
    return pure(psi);
  }

  static DensityMatrix maximally_mixed(int n_qubits) {
    const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    return unchecked(Matrix::Identity(d, d) / static_cast<double>(d));
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  Matrix& mutable_matrix() { return matrix_; }

  StateDiagnostics diagnostics() const {
    StateDiagnostics d;
    d.hermiticity_error = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    d.trace_error = std::abs(matrix_.trace() - cplx{1.0});
    const Matrix herm = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    return d;
  }

  void validate(double herm_tol, double trace_tol, double psd_tol) const {
    const auto d = diagnostics();
    if (d.hermiticity_error > herm_tol)
      throw ValidationError("density matrix not Hermitian (error " +
                            std::to_string(d.hermiticity_error) + ")");
    if (d.trace_error > trace_tol)
      throw ValidationError("density matrix trace deviates from 1 by " +
                            std::to_string(d.trace_error));
    if (d.min_eigenvalue < -psd_tol)
      throw ValidationError("density matrix has negative eigenvalue " +
                            std::to_string(d.min_eigenvalue));
  }

 private:
  struct Unchecked {};
  DensityMatrix(Matrix m, Unchecked) : matrix_(std::move(m)) {
    if (!is_square(matrix_)) throw DimensionError("density matrix must be square");
    const auto d = matrix_.rows();
    int n = 0;
    while ((Eigen::Index{1} << n) < d) ++n;
    if ((Eigen::Index{1} << n) != d || d == 0)
      throw DimensionError("density matrix dimension " + std::to_string(d) +
                           " is not a power of two");
    n_qubits_ = n;
  }

  int n_qubits_ = 0;
  Matrix matrix_;
};

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()));
}

// Reduced state on `keep`, in ascending qubit order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  std::set<int> kept(keep.begin(), keep.end());
  if (kept.size() != keep.size()) throw ValidationError("partial_trace: repeated qubit in keep set");
  for (int q : kept)
    if (q < 0 || q >= n)
      throw ValidationError("partial_trace: qubit " + std::to_string(q) + " out of range");
  std::vector<int> k(kept.begin(), kept.end());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!kept.count(q)) traced.push_back(q);
  const auto keep_off = local_offsets(k, n);
  const auto trace_off = local_offsets(traced, n);
  const auto dk = static_cast<Eigen::Index>(keep_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = rho.matrix();
  for (Eigen::Index i = 0; i < dk; ++i)
    for (Eigen::Index j = 0; j < dk; ++j) {
      cplx acc{0.0};
      for (std::size_t t : trace_off)
        acc += m(static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(i)] + t),
                 static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(j)] + t));
      out(i, j) = acc;
    }
  return DensityMatrix::unchecked(std::move(out));
}

// Tr(rho^2) without forming the product.
inline double purity(const DensityMatrix& rho) {
  return rho.matrix().cwiseAbs2().sum();
}

// Tr(rho P). Real part for Hermitian P; the full complex value otherwise.
inline cplx expectation_complex(const DensityMatrix& rho, const PauliString& p) {
  if (p.n_qubits() != rho.n_qubits())
    throw DimensionError("expectation: Pauli string on " + std::to_string(p.n_qubits()) +
                         " qubits, state on " + std::to_string(rho.n_qubits()));
  // Pauli strings are monomial matrices: walk the single nonzero per column.
  const int n = rho.n_qubits();
  const Matrix& m = rho.matrix();
  cplx acc{0.0};
  for (std::size_t col = 0; col < dim_of(n); ++col) {
    std::size_t row = 0;
    cplx amp{1.0};
    for (int q = 0; q < n; ++q) {
      const int bit = static_cast<int>((col >> (n - 1 - q)) & 1U);
      const Matrix pm = pauli::matrix(p[q]);
      int out_bit = -1;
      for (int r = 0; r < 2; ++r)
        if (pm(r, bit) != cplx{0.0}) {
          out_bit = r;
          amp *= pm(r, bit);
        }
      if (out_bit < 0) {
        amp = 0.0;
        break;
      }
      row |= static_cast<std::size_t>(out_bit) << (n - 1 - q);
    }
    if (amp != cplx{0.0}) acc += amp * m(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(row));
  }
  return acc;
}

inline double expectation(const DensityMatrix& rho, const PauliString& p) {
  return expectation_complex(rho, p).real();
}

}  // namespace noisecool

#endif  // NOISECOOL_DENSITY_MATRIX_HPP
