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

#ifndef NOISECOOL_PAULI_HPP
#define NOISECOOL_PAULI_HPP

#include <string>
#include <string_view>
#include <vector>

#include "noisecool/common.hpp"
#include "noisecool/linalg.hpp"

namespace noisecool {

// Basis convention: |0> = |up>, sigma_z|0> = +|0>. The lowering operator
// sigma_- = |0><1| drives a qubit towards |0>, which is the ground state of
// -(eps/2) sigma_z for eps > 0. Hardware damping is therefore sigma_-.
enum class PauliLabel { I, X, Y, Z, Plus, Minus };

namespace pauli {

inline Matrix identity() { return Matrix::Identity(2, 2); }

inline Matrix x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

inline Matrix z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// sigma_- = |0><1| = (X + iY)/2
inline Matrix lowering() {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  return m;
}

// sigma_+ = |1><0| = (X - iY)/2
inline Matrix raising() {
  Matrix m(2, 2);
  m << 0, 0, 1, 0;
  return m;
}

inline Matrix matrix(PauliLabel p) {
  switch (p) {
    case PauliLabel::I: return identity();
    case PauliLabel::X: return x();
    case PauliLabel::Y: return y();
    case PauliLabel::Z: return z();
    case PauliLabel::Plus: return raising();
    case PauliLabel::Minus: return lowering();
  }
  return identity();
}

inline char to_char(PauliLabel p) {
  switch (p) {
    case PauliLabel::I: return 'I';
    case PauliLabel::X: return 'X';
    case PauliLabel::Y: return 'Y';
    case PauliLabel::Z: return 'Z';
    case PauliLabel::Plus: return '+';
    case PauliLabel::Minus: return '-';
  }
  return '?';
}

inline PauliLabel from_char(char c) {
  switch (c) {
    case 'I': return PauliLabel::I;
    case 'X': return PauliLabel::X;
    case 'Y': return PauliLabel::Y;
    case 'Z': return PauliLabel::Z;
    case '+': return PauliLabel::Plus;
    case '-': return PauliLabel::Minus;
    default: break;
  }
  throw ValidationError(std::string("unknown Pauli label '") + c + "'");
}

}  // namespace pauli

class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<PauliLabel> factors) : factors_(std::move(factors)) {}

  // "IXZ" style; '+' and '-' denote sigma_+ and sigma_-.
  static PauliString parse(std::string_view text) {
    std::vector<PauliLabel> f;
    f.reserve(text.size());
    for (char c : text) f.push_back(pauli::from_char(c));
    return PauliString(std::move(f));
  }

  // Identity on n qubits with `label` on `qubit`.
  static PauliString single(int n_qubits, int qubit, PauliLabel label) {
    std::vector<PauliLabel> f(static_cast<std::size_t>(n_qubits), PauliLabel::I);
    f.at(static_cast<std::size_t>(qubit)) = label;
    return PauliString(std::move(f));
  }

  int n_qubits() const { return static_cast<int>(factors_.size()); }
  const std::vector<PauliLabel>& factors() const { return factors_; }
  PauliLabel operator[](int q) const { return factors_.at(static_cast<std::size_t>(q)); }
  PauliLabel& operator[](int q) { return factors_.at(static_cast<std::size_t>(q)); }

  bool is_hermitian() const {
    for (auto p : factors_)
      if (p == PauliLabel::Plus || p == PauliLabel::Minus) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (auto p : factors_) s.push_back(pauli::to_char(p));
    return s;
  }

  Matrix matrix() const {
    Matrix m = Matrix::Identity(1, 1);
    for (auto p : factors_) m = kron(m, pauli::matrix(p));
    return m;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<PauliLabel> factors_;
};

// All 4^k Hermitian Pauli strings on k qubits, in IXYZ lexicographic order
// (first qubit slowest).
inline std::vector<PauliString> pauli_basis(int k) {
  static constexpr PauliLabel kLabels[] = {PauliLabel::I, PauliLabel::X, PauliLabel::Y,
                                           PauliLabel::Z};
  std::vector<PauliString> out;
  const std::size_t count = std::size_t{1} << (2 * k);
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<PauliLabel> f(static_cast<std::size_t>(k));
    for (int q = 0; q < k; ++q) f[static_cast<std::size_t>(q)] = kLabels[(idx >> (2 * (k - 1 - q))) & 3U];
    out.emplace_back(std::move(f));
  }
  return out;
}

}  // namespace noisecool

#endif  // NOISECOOL_PAULI_HPP
