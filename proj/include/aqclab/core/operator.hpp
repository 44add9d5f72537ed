// Copyright 2026 The aqclab Authors
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

#pragma once

// State vectors and Hermitian operators.
//
// Basis convention, fixed for the whole library: qubit 0 is the least
// significant bit of the basis index, and |0> is the sigma_z = +1 state
// (spin up, sigma = +1).

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aqclab/core/common.hpp"

namespace aqc {

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw InvalidArgument("state vector must be non-empty");
  }

  static StateVector basis(Index dim, Index index) {
    if (index < 0 || index >= dim) throw InvalidArgument("basis index out of range");
    CVector v = CVector::Zero(dim);
    v[index] = 1.0;
    return StateVector(std::move(v));
  }
  static StateVector qubit_basis(int n_qubits, std::uint64_t bits) {
    return basis(Index{1} << n_qubits, static_cast<Index>(bits));
  }
  /// Equal-amplitude superposition over every basis state.
  static StateVector uniform(Index dim) {
    return StateVector(CVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
  }

  Index dim() const { return amps_.size(); }
  /// Number of qubits; throws if the dimension is not 2^n (e.g. clock spaces).
  int n_qubits() const { return log2_exact(static_cast<std::uint64_t>(dim())); }
  const CVector& amplitudes() const { return amps_; }
  cplx operator[](Index i) const { return amps_[i]; }
  double norm() const { return amps_.norm(); }

  StateVector normalized() const {
    const double nrm = norm();
    if (!(nrm > 0.0)) throw InvalidArgument("cannot normalize the zero vector");
    return StateVector(amps_ / nrm);
  }
  bool is_normalized(double tol = 1e-10) const { return std::abs(norm() - 1.0) <= tol; }

  cplx inner(const StateVector& other) const { return amps_.dot(other.amps_); }
  /// |<this|other>|^2
  double overlap2(const StateVector& other) const { return std::norm(inner(other)); }

  RVector probabilities() const { return amps_.cwiseAbs2(); }

 private:
  CVector amps_;
};

enum class Pauli : std::uint8_t { X, Y, Z };

inline char pauli_char(Pauli p) { return p == Pauli::X ? 'X' : (p == Pauli::Y ? 'Y' : 'Z'); }

/// coefficient * (tensor product of the listed factors), identity elsewhere.
struct PauliTerm {
  double coefficient = 0.0;
  std::map<int, Pauli> factors;

  static PauliTerm identity(double c) { return {c, {}}; }
  static PauliTerm single(double c, int q, Pauli p) { return {c, {{q, p}}}; }
  static PauliTerm pair(double c, int q1, Pauli p1, int q2, Pauli p2) {
    if (q1 == q2) throw InvalidArgument("pair term needs two distinct qubits");
    return {c, {{q1, p1}, {q2, p2}}};
  }

  std::string to_string() const {
    std::string s = std::to_string(coefficient);
    for (const auto& [q, p] : factors) s += std::string(" ") + pauli_char(p) + std::to_string(q);
    return s;
  }
};

/// Immutable Hermitian operator. The sparse realization is always present; a
/// dense copy is produced on demand up to kDenseCutoffQubits. Copies share
/// storage.
class HermitianOperator {
 public:
  HermitianOperator() = default;

  /// Wrap an explicit matrix. Rejects non-Hermitian input.
  static HermitianOperator from_sparse(SparseCMatrix m, std::optional<int> n_qubits = std::nullopt,
                                       double tol = kHermiticityTol) {
    if (m.rows() != m.cols() || m.rows() == 0) throw InvalidArgument("operator must be square and non-empty");
    if (n_qubits && (Index{1} << *n_qubits) != m.rows())
      throw InvalidArgument("dimension does not match qubit count");
    m.makeCompressed();
    HermitianOperator op;
    op.n_qubits_ = n_qubits;
    op.matrix_ = std::make_shared<const SparseCMatrix>(std::move(m));
    const double asym = op.hermiticity_error();
    if (asym > tol) throw InvalidArgument("operator is not Hermitian (asymmetry " + std::to_string(asym) + ")");
    return op;
  }

  static HermitianOperator from_dense(const CMatrix& m, std::optional<int> n_qubits = std::nullopt,
                                      double tol = kHermiticityTol) {
    return from_sparse(m.sparseView(0.0, 0.0), n_qubits, tol);
  }

  static HermitianOperator from_real_dense(const RMatrix& m, std::optional<int> n_qubits = std::nullopt,
                                           double tol = kHermiticityTol) {
    return from_dense(m.cast<cplx>(), n_qubits, tol);
  }

  static HermitianOperator zero(Index dim, std::optional<int> n_qubits = std::nullopt) {
    SparseCMatrix m(dim, dim);
    return from_sparse(std::move(m), n_qubits);
  }

  static HermitianOperator identity(Index dim, std::optional<int> n_qubits = std::nullopt) {
    SparseCMatrix m(dim, dim);
    m.setIdentity();
    return from_sparse(std::move(m), n_qubits);
  }

  static HermitianOperator diagonal(const RVector& d, std::optional<int> n_qubits = std::nullopt) {
    SparseCMatrix m(d.size(), d.size());
    std::vector<Eigen::Triplet<cplx>> t;
    t.reserve(static_cast<std::size_t>(d.size()));
    for (Index i = 0; i < d.size(); ++i)
      if (d[i] != 0.0) t.emplace_back(i, i, d[i]);
    m.setFromTriplets(t.begin(), t.end());
    return from_sparse(std::move(m), n_qubits);
  }

  Index dim() const { return matrix_ ? matrix_->rows() : 0; }
  bool has_qubits() const { return n_qubits_.has_value(); }
  int n_qubits() const {
    if (!n_qubits_) throw InvalidArgument("operator is not defined on a qubit register");
    return *n_qubits_;
  }
  /// Pauli terms the operator was built from; empty for matrix-built operators.
  const std::vector<PauliTerm>& terms() const { return terms_; }
  const SparseCMatrix& sparse() const { return *matrix_; }

  CMatrix dense() const {
    if (dim() > (Index{1} << kDenseCutoffQubits))
      throw BudgetExceeded("dense realization limited to " + std::to_string(kDenseCutoffQubits) + " qubits");
    return CMatrix(*matrix_);
  }

  /// True when every stored entry has zero imaginary part.
  bool is_real() const {
    const auto& m = *matrix_;
    for (Index k = 0; k < m.outerSize(); ++k)
      for (SparseCMatrix::InnerIterator it(m, k); it; ++it)
        if (it.value().imag() != 0.0) return false;
    return true;
  }

  bool is_diagonal() const {
    const auto& m = *matrix_;
    for (Index k = 0; k < m.outerSize(); ++k)
      for (SparseCMatrix::InnerIterator it(m, k); it; ++it)
        if (it.row() != it.col() && it.value() != cplx{0.0}) return false;
    return true;
  }

  RVector diagonal_real() const {
    RVector d = RVector::Zero(dim());
    const auto& m = *matrix_;
    for (Index k = 0; k < m.outerSize(); ++k)
      for (SparseCMatrix::InnerIterator it(m, k); it; ++it)
        if (it.row() == it.col()) d[it.row()] = it.value().real();
    return d;
  }

  cplx entry(Index i, Index j) const { return matrix_->coeff(i, j); }

  /// max |H_ij - conj(H_ji)|
  double hermiticity_error() const {
    const SparseCMatrix diff = *matrix_ - SparseCMatrix(matrix_->adjoint());
    double worst = 0.0;
    for (Index k = 0; k < diff.outerSize(); ++k)
      for (SparseCMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    return worst;
  }

  CVector apply(const CVector& v) const {
    if (v.size() != dim()) throw InvalidArgument("dimension mismatch in operator application");
    return (*matrix_) * v;
  }
  StateVector apply(const StateVector& v) const { return StateVector(apply(v.amplitudes())); }

  double expectation(const CVector& v) const { return v.dot(apply(v)).real(); }
  double expectation(const StateVector& v) const { return expectation(v.amplitudes()); }

  /// a*this + b*other. Pauli term lists are merged when both sides have them.
  HermitianOperator combine(double a, const HermitianOperator& other, double b) const {
    if (dim() != other.dim()) throw InvalidArgument("dimension mismatch in operator combination");
    SparseCMatrix m = cplx(a) * (*matrix_) + cplx(b) * other.sparse();
    m.prune(cplx{0.0});
    HermitianOperator out = from_sparse(std::move(m), n_qubits_ ? n_qubits_ : other.n_qubits_, 1e-10);
    if (!terms_.empty() || !other.terms_.empty()) {
      for (auto t : terms_) {
        t.coefficient *= a;
        out.terms_.push_back(std::move(t));
      }
      for (auto t : other.terms_) {
        t.coefficient *= b;
        out.terms_.push_back(std::move(t));
      }
    }
    return out;
  }

  HermitianOperator scaled(double a) const { return combine(a, zero(dim(), n_qubits_), 0.0); }

  friend HermitianOperator operator+(const HermitianOperator& x, const HermitianOperator& y) {
    return x.combine(1.0, y, 1.0);
  }
  friend HermitianOperator operator-(const HermitianOperator& x, const HermitianOperator& y) {
    return x.combine(1.0, y, -1.0);
  }
  friend HermitianOperator operator*(double a, const HermitianOperator& x) { return x.scaled(a); }

 private:
  friend HermitianOperator build_operator(int, std::vector<PauliTerm>);

  std::optional<int> n_qubits_;
  std::vector<PauliTerm> terms_;
  std::shared_ptr<const SparseCMatrix> matrix_;
};

/// Sum of Pauli terms as a sparse matrix on n_qubits.
inline HermitianOperator build_operator(int n_qubits, std::vector<PauliTerm> terms) {
  if (n_qubits < 1) throw InvalidArgument("n_qubits must be >= 1");
  if (n_qubits > kMaxSparseQubits)
    throw BudgetExceeded("sparse realization limited to " + std::to_string(kMaxSparseQubits) + " qubits");
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  std::vector<Eigen::Triplet<cplx>> triplets;
  for (const auto& term : terms) {
    if (!std::isfinite(term.coefficient)) throw InvalidArgument("non-finite Pauli coefficient");
    std::uint64_t flip = 0, zmask = 0;
    int n_y = 0;
    for (const auto& [q, p] : term.factors) {
      if (q < 0 || q >= n_qubits)
        throw InvalidArgument("qubit index " + std::to_string(q) + " out of range");
      const std::uint64_t bit = std::uint64_t{1} << q;
      if (p == Pauli::X || p == Pauli::Y) flip |= bit;
      if (p == Pauli::Z || p == Pauli::Y) zmask |= bit;
      if (p == Pauli::Y) ++n_y;
    }
    if (term.coefficient == 0.0) continue;
    // Y = i X Z up to ordering: Y|b> = i (-1)^b |1-b>.
    cplx base = term.coefficient;
    for (int k = 0; k < n_y % 4; ++k) base *= kI;
    triplets.reserve(triplets.size() + dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
      const bool odd = std::popcount(b & zmask) & 1;
      triplets.emplace_back(static_cast<Index>(b ^ flip), static_cast<Index>(b), odd ? -base : base);
    }
  }
  SparseCMatrix m(static_cast<Index>(dim), static_cast<Index>(dim));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(cplx{0.0});
  HermitianOperator op = HermitianOperator::from_sparse(std::move(m), n_qubits);
  op.terms_ = std::move(terms);
  return op;
}

}  // namespace aqc
