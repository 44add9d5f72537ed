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

// History states and clock Hamiltonians.
//
// The clock is an explicit (L+1)-level register. The joint basis index is
// clock * 2^n + system, so the system occupies the low bits.
//
//   H_l = I (x) |l><l| - U_l (x) |l+1><l| - U_l^dag (x) |l><l+1| + I (x) |l+1><l+1|
//   H_P = 1/2 sum_{l=0}^{L-1} H_l
//
// Each H_l / 2 is a projector onto (|a>|l> - U_l|a>|l+1>) / sqrt(2), so H_P is
// positive semidefinite and annihilates every history state.

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "aqclab/adiabatic/path.hpp"
#include "aqclab/clock/circuit.hpp"
#include "aqclab/core/random.hpp"

namespace aqc {

struct HistoryState {
  int n_qubits = 0;
  int L = 0;
  /// alpha_0 = input, alpha_{l+1} = U_l alpha_l.
  std::vector<CVector> alphas;
  /// (L+1)^{-1/2} sum_l alpha_l (x) |l>.
  StateVector eta;

  Index system_dim() const { return Index{1} << n_qubits; }
  Index index(int clock, Index sys) const { return static_cast<Index>(clock) * system_dim() + sys; }
};

namespace detail {

inline void check_clock_budget(int n, int L) {
  if (L < 0) throw InvalidArgument("circuit length must be non-negative");
  const double dim = std::ldexp(static_cast<double>(L + 1), n);
  if (dim > std::ldexp(1.0, kMaxSparseQubits))
    throw BudgetExceeded("clock space dimension " + std::to_string(static_cast<long long>(dim)) +
                         " exceeds 2^26");
}

}  // namespace detail

inline HistoryState history_vector(const QuantumCircuit& circ, const StateVector& input) {
  const int n = circ.n_qubits();
  if (input.dim() != (Index{1} << n)) throw InvalidArgument("input dimension does not match the circuit");
  if (!input.is_normalized()) throw InvalidArgument("input state must be normalized");
  detail::check_clock_budget(n, circ.length());
  HistoryState h;
  h.n_qubits = n;
  h.L = circ.length();
  h.alphas.reserve(static_cast<std::size_t>(h.L + 1));
  h.alphas.push_back(input.amplitudes());
  for (int l = 0; l < h.L; ++l) {
    CVector next = h.alphas.back();
    apply_gate(next, circ.gate(l));
    h.alphas.push_back(std::move(next));
  }
  const Index d = h.system_dim();
  CVector eta(d * (h.L + 1));
  const double w = 1.0 / std::sqrt(static_cast<double>(h.L + 1));
  for (int l = 0; l <= h.L; ++l) eta.segment(l * d, d) = w * h.alphas[static_cast<std::size_t>(l)];
  h.eta = StateVector(std::move(eta));
  return h;
}

struct ClockHamiltonian {
  int n_qubits = 0;
  int L = 0;
  /// Clock register encoding; only the explicit (L+1)-level register exists.
  std::string clock_encoding = "explicit";
  HermitianOperator propagation;
  /// sum_i |1><1|_i (x) |0><0|_clock, or zero when disabled.
  HermitianOperator penalty;
  bool with_input_penalty = false;

  Index dim() const { return (Index{1} << n_qubits) * (L + 1); }
  Index index(int clock, Index sys) const { return static_cast<Index>(clock) * (Index{1} << n_qubits) + sys; }
  HermitianOperator total() const { return with_input_penalty ? propagation + penalty : propagation; }
};

namespace detail {

inline HermitianOperator input_penalty(int n, int L) {
  const Index d = Index{1} << n;
  RVector diag = RVector::Zero(d * (L + 1));
  for (Index s = 0; s < d; ++s) diag[s] = std::popcount(static_cast<std::uint64_t>(s));
  return HermitianOperator::diagonal(diag);
}

}  // namespace detail

inline ClockHamiltonian clock_hamiltonian(const QuantumCircuit& circ, bool with_input_penalty = true) {
  const int n = circ.n_qubits(), L = circ.length();
  if (L < 1) throw InvalidArgument("clock Hamiltonian needs at least one gate");
  detail::check_clock_budget(n, L);
  const Index d = Index{1} << n;
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int l = 0; l < L; ++l) {
    const Index a = l * d, b = (l + 1) * d;
    for (Index s = 0; s < d; ++s) {
      trip.emplace_back(a + s, a + s, 0.5);
      trip.emplace_back(b + s, b + s, 0.5);
    }
    const CMatrix U = circ.gate_matrix(l);
    for (Index r = 0; r < d; ++r)
      for (Index c = 0; c < d; ++c) {
        const cplx u = U(r, c);
        if (u == cplx(0.0)) continue;
        trip.emplace_back(b + r, a + c, -0.5 * u);
        trip.emplace_back(a + c, b + r, -0.5 * std::conj(u));
      }
  }
  SparseCMatrix m(d * (L + 1), d * (L + 1));
  m.setFromTriplets(trip.begin(), trip.end());
  ClockHamiltonian ch;
  ch.n_qubits = n;
  ch.L = L;
  ch.propagation = HermitianOperator::from_sparse(std::move(m));
  ch.with_input_penalty = with_input_penalty;
  ch.penalty = with_input_penalty ? detail::input_penalty(n, L) : HermitianOperator::zero(ch.dim());
  return ch;
}

/// 1/2 times the path-graph Laplacian on L+1 sites: diagonal 1/2, 1, ..., 1,
/// 1/2 and off-diagonals -1/2. Its gap is 1 - cos(pi / (L+1)).
inline RMatrix clock_chain_matrix(int L) {
  if (L < 1) throw InvalidArgument("clock chain needs L >= 1");
  RMatrix h = RMatrix::Zero(L + 1, L + 1);
  for (int l = 0; l <= L; ++l) h(l, l) = (l == 0 || l == L) ? 0.5 : 1.0;
  for (int l = 0; l < L; ++l) h(l, l + 1) = h(l + 1, l) = -0.5;
  return h;
}

/// Matrix of H_P in the basis gamma_l = alpha_l (x) |l>, computed by applying
/// the full operator. The structure (tridiagonal Toeplitz) follows from
/// unitarity; nothing here assumes it.
inline RMatrix reduced_toeplitz(const QuantumCircuit& circ, const StateVector& input) {
  const HistoryState h = history_vector(circ, input);
  const ClockHamiltonian ch = clock_hamiltonian(circ, false);
  const Index d = h.system_dim(), m = h.L + 1;
  std::vector<CVector> gamma;
  for (int l = 0; l <= h.L; ++l) {
    CVector g = CVector::Zero(ch.dim());
    g.segment(l * d, d) = h.alphas[static_cast<std::size_t>(l)];
    gamma.push_back(std::move(g));
  }
  for (Index k = 0; k < m; ++k)
    for (Index l = 0; l < m; ++l) {
      const double expect = k == l ? 1.0 : 0.0;
      if (std::abs(gamma[k].dot(gamma[l]) - expect) > 1e-10) throw Error("gamma basis is not orthonormal");
    }
  CMatrix red(m, m);
  for (Index l = 0; l < m; ++l) {
    const CVector hg = ch.propagation.apply(gamma[l]);
    for (Index k = 0; k < m; ++k) red(k, l) = gamma[k].dot(hg);
  }
  // The phases of alpha_l are fixed by the circuit, so the cross terms are real.
  if (red.imag().cwiseAbs().maxCoeff() > 1e-10) throw Error("reduced clock matrix is not real");
  return red.real();
}

/// Start Hamiltonian penalty + (1/2 clock Laplacian) (x) I, whose unique
/// ground state is |0...0> (x) uniform clock superposition at energy 0, and
/// the clock Hamiltonian with input penalty as the end point.
inline InterpolationPath compile_to_path(const QuantumCircuit& circ, double tau = 1.0) {
  const ClockHamiltonian ch = clock_hamiltonian(circ, true);
  const int n = ch.n_qubits, L = ch.L;
  const Index d = Index{1} << n;
  const RMatrix lap = clock_chain_matrix(L);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int k = 0; k <= L; ++k)
    for (int l = 0; l <= L; ++l) {
      if (lap(k, l) == 0.0) continue;
      for (Index s = 0; s < d; ++s) trip.emplace_back(k * d + s, l * d + s, lap(k, l));
    }
  SparseCMatrix kin(ch.dim(), ch.dim());
  kin.setFromTriplets(trip.begin(), trip.end());
  HermitianOperator H0 = HermitianOperator::from_sparse(std::move(kin)) + ch.penalty;
  return InterpolationPath::linear(std::move(H0), ch.total(), tau);
}

/// Appends m single-qubit identity gates on qubit 0.
inline QuantumCircuit pad_identities(const QuantumCircuit& circ, int m) {
  if (m < 0) throw InvalidArgument("padding count must be non-negative");
  QuantumCircuit out = circ;
  for (int k = 0; k < m; ++k) out.id(0);
  return out;
}

struct ClockReading {
  int clock = 0;
  /// Normalized system state conditioned on the clock value.
  StateVector state;
};

/// Projective clock measurement of a joint state on 2^n (L+1) amplitudes.
inline ClockReading measure_history(const StateVector& eta, int n_qubits, Rng& rng) {
  const Index d = Index{1} << n_qubits;
  if (eta.dim() % d != 0) throw InvalidArgument("state dimension is not a multiple of 2^n");
  if (!eta.is_normalized()) throw InvalidArgument("history state must be normalized");
  const Index m = eta.dim() / d;
  const double u = uniform01(rng);
  double acc = 0.0;
  Index pick = m - 1;
  std::vector<double> w(static_cast<std::size_t>(m));
  for (Index l = 0; l < m; ++l) w[static_cast<std::size_t>(l)] = eta.amplitudes().segment(l * d, d).squaredNorm();
  for (Index l = 0; l < m; ++l) {
    acc += w[static_cast<std::size_t>(l)];
    if (u < acc && w[static_cast<std::size_t>(l)] > 0.0) {
      pick = l;
      break;
    }
  }
  while (w[static_cast<std::size_t>(pick)] == 0.0 && pick > 0) --pick;
  ClockReading r;
  r.clock = static_cast<int>(pick);
  r.state = StateVector(CVector(eta.amplitudes().segment(pick * d, d))).normalized();
  return r;
}

inline ClockReading measure_history(const HistoryState& h, Rng& rng) { return measure_history(h.eta, h.n_qubits, rng); }

}  // namespace aqc
