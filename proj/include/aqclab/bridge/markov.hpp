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

// Exact small-state-space Markov chains and their Hamiltonian counterparts.
//
// Orientation: P(i, j) is the probability of moving from j to i, so columns
// sum to one and distributions are column vectors with P pi = pi.

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "aqclab/anneal/simulated.hpp"
#include "aqclab/core/operator.hpp"
#include "aqclab/problem/ising.hpp"

namespace aqc {

class StochasticMatrix {
 public:
  StochasticMatrix() = default;

  /// Validates non-negativity and unit column sums within tol.
  explicit StochasticMatrix(RMatrix p, double tol = 1e-12) : p_(std::move(p)) {
    if (p_.rows() != p_.cols() || p_.rows() == 0) throw InvalidArgument("stochastic matrix must be square and non-empty");
    for (Index j = 0; j < p_.cols(); ++j) {
      double sum = 0.0;
      for (Index i = 0; i < p_.rows(); ++i) {
        if (p_(i, j) < -tol) throw InvalidArgument("stochastic matrix has a negative entry");
        sum += p_(i, j);
      }
      if (std::abs(sum - 1.0) > tol) throw InvalidArgument("column " + std::to_string(j) + " does not sum to 1");
    }
  }

  Index dim() const { return p_.rows(); }
  const RMatrix& matrix() const { return p_; }
  /// Probability of the move from -> to.
  double transition(Index from, Index to) const { return p_(to, from); }

  /// max |P pi - pi|.
  double stationarity_error(const RVector& pi) const { return (p_ * pi - pi).cwiseAbs().maxCoeff(); }

  /// pi by power iteration from the uniform distribution.
  RVector power_limit(double tol = 1e-14, long max_iter = 1000000) const {
    RVector v = RVector::Constant(dim(), 1.0 / static_cast<double>(dim()));
    for (long it = 0; it < max_iter; ++it) {
      RVector w = p_ * v;
      w /= w.sum();
      const double d = (w - v).cwiseAbs().maxCoeff();
      v = std::move(w);
      if (d < tol) return v;
    }
    throw ConvergenceError("power iteration did not converge", 0.0);
  }

  /// Eigenvalues sorted by decreasing real part. Reversible chains are
  /// symmetrized with pi so the result is real to working precision.
  std::vector<double> eigenvalues(const std::optional<RVector>& pi = std::nullopt) const {
    std::vector<double> ev;
    if (pi && (pi->array() > 0.0).all()) {
      const RVector sq = pi->cwiseSqrt();
      RMatrix s = sq.cwiseInverse().asDiagonal() * p_ * sq.asDiagonal();
      if ((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-10) {
        Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (s + s.transpose()), Eigen::EigenvaluesOnly);
        for (Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()[i]);
        std::sort(ev.begin(), ev.end(), std::greater<>());
        return ev;
      }
    }
    Eigen::EigenSolver<RMatrix> es(p_, false);
    for (Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()[i].real());
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
  }

  /// 1 - lambda_2.
  double spectral_gap(const std::optional<RVector>& pi = std::nullopt) const {
    if (dim() < 2) return 1.0;
    return 1.0 - eigenvalues(pi)[1];
  }

 private:
  RMatrix p_;
};

/// Single-spin-flip Metropolis kernel at inverse temperature beta, the same
/// kernel that metropolis_step samples. Exact analysis tool, n <= 12.
inline StochasticMatrix metropolis_matrix(const CostFunction& cost, double beta, bool lazy) {
  if (cost.n < 1) throw InvalidArgument("cost needs n >= 1");
  if (cost.n > kDenseCutoffQubits) throw BudgetExceeded("metropolis_matrix limited to n <= 12");
  if (!(beta >= 0.0)) throw InvalidArgument("beta must be non-negative");
  const RVector e = cost_diagonal(cost);
  const Index m = e.size();
  const double propose = (lazy ? 0.5 : 1.0) / cost.n;
  RMatrix p = RMatrix::Zero(m, m);
  for (Index j = 0; j < m; ++j) {
    double out = 0.0;
    for (int k = 0; k < cost.n; ++k) {
      const Index i = j ^ (Index{1} << k);
      const double dE = e[i] - e[j];
      const double a = dE <= 0.0 ? 1.0 : std::exp(-beta * dE);
      p(i, j) = propose * a;
      out += p(i, j);
    }
    p(j, j) = 1.0 - out;
  }
  return StochasticMatrix(std::move(p));
}

/// pi_beta(sigma) = exp(-beta E) / Z and psi_beta = sqrt(pi_beta).
struct GibbsState {
  double beta = 0.0;
  /// log Z_beta, kept in log form to avoid overflow.
  double log_z = 0.0;
  RVector energies;
  RVector distribution;
  StateVector psi;
};

inline GibbsState gibbs_state(const CostFunction& cost, double beta) {
  GibbsState g;
  g.beta = beta;
  g.energies = cost_diagonal(cost);
  const double emin = g.energies.minCoeff();
  RVector w = (-(beta) * (g.energies.array() - emin)).exp().matrix();
  const double z = w.sum();
  g.log_z = std::log(z) - beta * emin;
  g.distribution = w / z;
  g.psi = StateVector(g.distribution.cwiseSqrt().cast<cplx>());
  return g;
}

/// max over pairs of |S(i, j) pi_j - S(j, i) pi_i|.
inline double detailed_balance_error(const StochasticMatrix& S, const RVector& pi) {
  const RMatrix& p = S.matrix();
  double worst = 0.0;
  for (Index i = 0; i < p.rows(); ++i)
    for (Index j = i + 1; j < p.cols(); ++j) worst = std::max(worst, std::abs(p(i, j) * pi[j] - p(j, i) * pi[i]));
  return worst;
}

/// H(i, j) = delta_ij - sqrt(S(i, j) S(j, i)). Verifies H psi_beta = 0.
inline HermitianOperator quantize(const StochasticMatrix& S, const CostFunction& cost, double beta,
                                  double tol = 1e-10) {
  const RMatrix& p = S.matrix();
  const Index m = p.rows();
  if (m != (Index{1} << cost.n)) throw InvalidArgument("kernel and cost dimensions differ");
  std::vector<Eigen::Triplet<cplx>> trip;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) {
      const double v = (i == j ? 1.0 : 0.0) - std::sqrt(p(i, j) * p(j, i));
      if (v != 0.0) trip.emplace_back(i, j, cplx(v, 0.0));
    }
  SparseCMatrix sp(m, m);
  sp.setFromTriplets(trip.begin(), trip.end());
  HermitianOperator H = HermitianOperator::from_sparse(std::move(sp), cost.n);
  const GibbsState g = gibbs_state(cost, beta);
  const double res = H.apply(g.psi.amplitudes()).norm();
  if (res > tol)
    throw Error("quantized kernel does not annihilate the Gibbs state (residual " + std::to_string(res) +
                "); the kernel is not in detailed balance for this cost and beta");
  return H;
}

struct PerronData {
  double mu = 0.0;
  /// Positive Perron vector with unit Euclidean norm.
  RVector alpha;
  /// alpha_i^2, the limiting distribution of the induced chain.
  RVector limiting;
};

namespace detail {

// Irreducible (connected support graph) and aperiodic (a positive diagonal
// entry or an odd cycle) for a symmetric non-negative matrix.
inline bool symmetric_primitive(const RMatrix& g, double tol) {
  const Index m = g.rows();
  std::vector<int> colour(static_cast<std::size_t>(m), -1);
  std::deque<Index> q{0};
  colour[0] = 0;
  bool bipartite = true;
  Index seen = 1;
  while (!q.empty()) {
    const Index u = q.front();
    q.pop_front();
    for (Index v = 0; v < m; ++v) {
      if (v == u || g(u, v) <= tol) continue;
      auto& cv = colour[static_cast<std::size_t>(v)];
      if (cv < 0) {
        cv = 1 - colour[static_cast<std::size_t>(u)];
        ++seen;
        q.push_back(v);
      } else if (cv == colour[static_cast<std::size_t>(u)]) {
        bipartite = false;
      }
    }
  }
  if (seen != m) return false;
  bool positive_diag = false;
  for (Index i = 0; i < m; ++i) positive_diag |= g(i, i) > tol;
  return positive_diag || !bipartite;
}

}  // namespace detail

/// From a real symmetric H with G = I - H entrywise non-negative and
/// primitive: mu = top eigenvalue of G, alpha its positive eigenvector, and
/// P(i, j) = alpha_i G(i, j) / (mu alpha_j).
inline std::pair<StochasticMatrix, PerronData> perron_stochasticize(const RMatrix& H, double tol = 1e-12) {
  if (H.rows() != H.cols() || H.rows() == 0) throw InvalidArgument("H must be square and non-empty");
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw InvalidArgument("H must be symmetric");
  const Index m = H.rows();
  const RMatrix G = RMatrix::Identity(m, m) - H;
  if (G.minCoeff() < -tol) throw InvalidArgument("kernel I - H has a negative entry");
  if (!detail::symmetric_primitive(G, tol)) throw InvalidArgument("kernel I - H is reducible or periodic");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(G);
  PerronData d;
  d.mu = es.eigenvalues()[m - 1];
  d.alpha = es.eigenvectors().col(m - 1);
  if (d.alpha.sum() < 0.0) d.alpha = -d.alpha;
  if (!(d.mu > 0.0) || d.alpha.minCoeff() <= 0.0) throw InvalidArgument("Perron vector is not strictly positive");
  d.alpha /= d.alpha.norm();
  d.limiting = d.alpha.cwiseAbs2();
  RMatrix p(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) p(i, j) = std::max(0.0, d.alpha[i] * G(i, j) / (d.mu * d.alpha[j]));
  // Column sums are 1 up to eigenvector rounding; renormalize before validation.
  for (Index j = 0; j < m; ++j) p.col(j) /= p.col(j).sum();
  return {StochasticMatrix(std::move(p), 1e-10), d};
}

inline std::pair<StochasticMatrix, PerronData> perron_stochasticize(const HermitianOperator& H, double tol = 1e-12) {
  if (!H.is_real()) throw InvalidArgument("Perron construction needs a real Hamiltonian");
  return perron_stochasticize(RMatrix(H.dense().real()), tol);
}

}  // namespace aqc
