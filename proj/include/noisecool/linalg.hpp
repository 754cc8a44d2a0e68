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

// Dense complex matrix helpers: Kronecker products, exponential and
// logarithm, embedding of few-qubit operators, and in-place application of
// local unitaries and local superoperators to a density matrix.
//
// Qubit ordering: qubit 0 is the most significant bit of a basis index, so
// the operator on qubits (0, 1, ..., n-1) is kron(op_0, op_1, ..., op_{n-1}).

#ifndef NOISECOOL_LINALG_HPP
#define NOISECOOL_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "noisecool/common.hpp"

namespace noisecool {

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline bool is_square(const Matrix& a) { return a.rows() == a.cols(); }

inline bool is_hermitian(const Matrix& a, double tolerance = tol::kHermitian) {
  return is_square(a) && (a - a.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

inline bool is_unitary(const Matrix& u, double tolerance = tol::kUnitary) {
  if (!is_square(u)) return false;
  Matrix id = Matrix::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff() <= tolerance;
}

inline void require_square(const Matrix& a, const char* what) {
  if (!is_square(a))
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
}

// e^A by scaling-and-squaring Pade (Eigen's MatrixFunctions).
inline Matrix matrix_exponential(const Matrix& a) {
  require_square(a, "matrix_exponential");
  if (a.rows() == 0) return a;
  return a.exp();
}

// Principal logarithm. Fails when an eigenvalue is (numerically) zero or sits
// within `branch_margin` radians of the negative real axis.
inline Matrix matrix_logarithm(const Matrix& a, double branch_margin = 1e-3) {
  require_square(a, "matrix_logarithm");
  Eigen::ComplexSchur<Matrix> schur(a);
  const Matrix& t = schur.matrixT();
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const cplx lambda = t(i, i);
    if (std::abs(lambda) < 1e-14)
      throw NumericalError("matrix_logarithm: singular matrix (eigenvalue ~ 0)");
    if (std::abs(std::arg(lambda)) > kPi - branch_margin)
      throw NumericalError("matrix_logarithm: eigenvalue " + std::to_string(lambda.real()) + "+" +
                           std::to_string(lambda.imag()) +
                           "i is on the branch cut; reduce the time step");
  }
  return a.log();
}

// min over phi of ||a - e^{i phi} b||_F.
inline double phase_aligned_distance(const Matrix& a, const Matrix& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0};
  return (a - phase * b).norm();
}

inline double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------
// Local operator placement.

// Offsets of the 2^k local basis states of `qubits` inside an n-qubit index.
// The first listed qubit is the most significant bit of the local index.
inline std::vector<std::size_t> local_offsets(std::span<const int> qubits, int n_qubits) {
  const std::size_t k = qubits.size();
  std::vector<std::size_t> off(std::size_t{1} << k, 0);
  for (std::size_t l = 0; l < off.size(); ++l) {
    std::size_t o = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((l >> (k - 1 - j)) & 1U) o |= std::size_t{1} << (n_qubits - 1 - qubits[j]);
    }
    off[l] = o;
  }
  return off;
}

// Indices whose bits at `qubits` are all zero.
inline std::vector<std::size_t> local_bases(std::span<const int> qubits, int n_qubits) {
  std::size_t mask = 0;
  for (int q : qubits) mask |= std::size_t{1} << (n_qubits - 1 - q);
  std::vector<std::size_t> bases;
  bases.reserve(dim_of(n_qubits) >> qubits.size());
  for (std::size_t i = 0; i < dim_of(n_qubits); ++i)
    if ((i & mask) == 0) bases.push_back(i);
  return bases;
}

inline void check_qubits(std::span<const int> qubits, int n_qubits, const char* what) {
  for (std::size_t a = 0; a < qubits.size(); ++a) {
    if (qubits[a] < 0 || qubits[a] >= n_qubits)
      throw DimensionError(std::string(what) + ": qubit index " + std::to_string(qubits[a]) +
                           " out of range for " + std::to_string(n_qubits) + " qubits");
    for (std::size_t b = 0; b < a; ++b)
      if (qubits[a] == qubits[b])
        throw DimensionError(std::string(what) + ": repeated qubit " + std::to_string(qubits[a]));
  }
}

// Full 2^n matrix of a 2^k operator acting on `qubits`.
inline Matrix embed(const Matrix& op, std::span<const int> qubits, int n_qubits) {
  check_qubits(qubits, n_qubits, "embed");
  if (op.rows() != static_cast<Eigen::Index>(dim_of(static_cast<int>(qubits.size()))) ||
      !is_square(op))
    throw DimensionError("embed: operator size does not match qubit count");
  const auto off = local_offsets(qubits, n_qubits);
  const auto bases = local_bases(qubits, n_qubits);
  const Eigen::Index d = static_cast<Eigen::Index>(dim_of(n_qubits));
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t b : bases)
    for (std::size_t i = 0; i < off.size(); ++i)
      for (std::size_t j = 0; j < off.size(); ++j)
        out(static_cast<Eigen::Index>(b + off[i]), static_cast<Eigen::Index>(b + off[j])) =
            op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

// m <- U m with U acting on `qubits` (rows only).
inline void apply_left_local(Matrix& m, const Matrix& u, std::span<const int> qubits,
                             int n_qubits) {
  const auto off = local_offsets(qubits, n_qubits);
  const auto bases = local_bases(qubits, n_qubits);
  const std::size_t k = off.size();
  const Eigen::Index d = m.rows();
  std::vector<cplx> in(k);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    cplx* col = m.data() + c * d;
    for (std::size_t b : bases) {
      for (std::size_t l = 0; l < k; ++l) in[l] = col[b + off[l]];
      for (std::size_t l = 0; l < k; ++l) {
        cplx acc{0.0};
        for (std::size_t j = 0; j < k; ++j)
          acc += u(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) * in[j];
        col[b + off[l]] = acc;
      }
    }
  }
}

// m <- m U with U acting on `qubits` (columns only).
inline void apply_right_local(Matrix& m, const Matrix& u, std::span<const int> qubits,
                              int n_qubits) {
  const auto off = local_offsets(qubits, n_qubits);
  const auto bases = local_bases(qubits, n_qubits);
  const std::size_t k = off.size();
  std::vector<cplx> in(k);
  for (std::size_t b : bases) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (std::size_t l = 0; l < k; ++l) in[l] = m(r, static_cast<Eigen::Index>(b + off[l]));
      for (std::size_t l = 0; l < k; ++l) {
        cplx acc{0.0};
        for (std::size_t j = 0; j < k; ++j)
          acc += in[j] * u(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
        m(r, static_cast<Eigen::Index>(b + off[l])) = acc;
      }
    }
  }
}

// rho <- U rho U^dagger with U acting on `qubits`.
inline void apply_unitary_local(Matrix& rho, const Matrix& u, std::span<const int> qubits,
                                int n_qubits) {
  const auto off = local_offsets(qubits, n_qubits);
  const auto bases = local_bases(qubits, n_qubits);
  const std::size_t k = off.size();
  const Eigen::Index d = rho.rows();
  std::vector<cplx> in(k), out(k);
  // Left multiplication, column by column.
  for (Eigen::Index c = 0; c < d; ++c) {
    cplx* col = rho.data() + c * d;
    for (std::size_t b : bases) {
      for (std::size_t l = 0; l < k; ++l) in[l] = col[b + off[l]];
      for (std::size_t l = 0; l < k; ++l) {
        cplx acc{0.0};
        for (std::size_t m = 0; m < k; ++m)
          acc += u(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)) * in[m];
        out[l] = acc;
      }
      for (std::size_t l = 0; l < k; ++l) col[b + off[l]] = out[l];
    }
  }
  // Right multiplication by U^dagger, acting on column groups.
  for (std::size_t b : bases) {
    for (Eigen::Index r = 0; r < d; ++r) {
      for (std::size_t l = 0; l < k; ++l) in[l] = rho(r, static_cast<Eigen::Index>(b + off[l]));
      for (std::size_t l = 0; l < k; ++l) {
        cplx acc{0.0};
        for (std::size_t m = 0; m < k; ++m)
          acc += in[m] * std::conj(u(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)));
        out[l] = acc;
      }
      for (std::size_t l = 0; l < k; ++l) rho(r, static_cast<Eigen::Index>(b + off[l])) = out[l];
    }
  }
}

// rho <- S[rho] where S is a 4^k x 4^k column-stacked superoperator acting on
// `qubits`.
inline void apply_superop_local(Matrix& rho, const Matrix& s, std::span<const int> qubits,
                                int n_qubits) {
  const auto off = local_offsets(qubits, n_qubits);
  const auto bases = local_bases(qubits, n_qubits);
  const std::size_t k = off.size();
  const std::size_t kk = k * k;
  std::vector<cplx> in(kk), out(kk);
  for (std::size_t bc : bases) {
    for (std::size_t br : bases) {
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < k; ++r)
          in[r + k * c] = rho(static_cast<Eigen::Index>(br + off[r]),
                              static_cast<Eigen::Index>(bc + off[c]));
      for (std::size_t i = 0; i < kk; ++i) {
        cplx acc{0.0};
        for (std::size_t j = 0; j < kk; ++j)
          acc += s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * in[j];
        out[i] = acc;
      }
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < k; ++r)
          rho(static_cast<Eigen::Index>(br + off[r]), static_cast<Eigen::Index>(bc + off[c])) =
              out[r + k * c];
    }
  }
}

// Column-stacking vectorization: vec(rho)[r + d*c] = rho(r, c).
inline Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, Eigen::Index d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

}  // namespace noisecool

#endif  // NOISECOOL_LINALG_HPP
