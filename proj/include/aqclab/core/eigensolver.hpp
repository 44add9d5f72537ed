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

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "aqclab/core/operator.hpp"
#include "aqclab/core/random.hpp"

namespace aqc {

/// Lowest eigenpairs in ascending order.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<StateVector> eigenvectors;
  std::vector<double> residuals;

  std::size_t size() const { return eigenvalues.size(); }
  /// E1 - E0; requires at least two pairs.
  double gap() const {
    if (eigenvalues.size() < 2) throw InvalidArgument("gap needs at least two eigenpairs");
    return eigenvalues[1] - eigenvalues[0];
  }
};

enum class EigenMethod { Auto, Dense, Lanczos };

struct EigenOptions {
  EigenMethod method = EigenMethod::Auto;
  int krylov_dim = 80;
  int max_restarts = 400;
  std::uint64_t seed = 0x5EEDULL;
};

namespace detail {

inline Spectrum dense_lowest(const HermitianOperator& H, int k) {
  Spectrum out;
  auto collect = [&](const auto& values, const auto& vectors) {
    for (int i = 0; i < k; ++i) {
      out.eigenvalues.push_back(values[i]);
      out.eigenvectors.emplace_back(CVector(vectors.col(i).template cast<cplx>()));
    }
  };
  if (H.is_real()) {
    const RMatrix m = H.dense().real();
    Eigen::SelfAdjointEigenSolver<RMatrix> es(m);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", -1.0);
    collect(es.eigenvalues(), es.eigenvectors());
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H.dense());
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", -1.0);
    collect(es.eigenvalues(), es.eigenvectors());
  }
  return out;
}

inline void project_out(CVector& w, const std::vector<CVector>& basis) {
  for (const auto& u : basis) w -= u.dot(w) * u;
}

// Lanczos with full reorthogonalization, restarted from the current Ritz
// vector; converged vectors are locked and deflated so degenerate
// eigenspaces come out as orthonormal bases.
inline Spectrum lanczos_lowest(const HermitianOperator& H, int k, double tol, const EigenOptions& opts) {
  const Index dim = H.dim();
  std::vector<CVector> locked;
  std::vector<double> locked_values, locked_residuals;
  Rng rng(opts.seed);

  for (int target = 0; target < k; ++target) {
    CVector x(dim);
    for (Index i = 0; i < dim; ++i) x[i] = cplx(standard_normal(rng), standard_normal(rng));
    project_out(x, locked);
    project_out(x, locked);
    x.normalize();

    double best = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int restart = 0; restart <= opts.max_restarts && !converged; ++restart) {
      const Index free_dim = dim - static_cast<Index>(locked.size());
      const int m = static_cast<int>(std::min<Index>(opts.krylov_dim, free_dim));
      std::vector<CVector> V;
      std::vector<double> alpha, beta;
      CVector v = x;
      for (int j = 0; j < m; ++j) {
        V.push_back(v);
        CVector w = H.apply(v);
        const double a = v.dot(w).real();
        alpha.push_back(a);
        w -= a * v;
        if (j > 0) w -= beta.back() * V[static_cast<std::size_t>(j) - 1];
        for (int pass = 0; pass < 2; ++pass) {
          project_out(w, locked);
          project_out(w, V);
        }
        const double b = w.norm();
        if (j == m - 1 || b < 1e-13 * std::max(1.0, std::abs(a))) break;
        beta.push_back(b);
        v = w / b;
      }
      const Index msz = static_cast<Index>(alpha.size());
      RVector diag = Eigen::Map<RVector>(alpha.data(), msz);
      RVector sub = msz > 1 ? RVector(Eigen::Map<RVector>(beta.data(), msz - 1)) : RVector(0);
      Eigen::SelfAdjointEigenSolver<RMatrix> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const RVector y = tri.eigenvectors().col(0);
      CVector ritz = CVector::Zero(dim);
      for (Index i = 0; i < msz; ++i) ritz += y[i] * V[static_cast<std::size_t>(i)];
      project_out(ritz, locked);
      ritz.normalize();
      const CVector hr = H.apply(ritz);
      const double theta = ritz.dot(hr).real();
      const double res = (hr - theta * ritz).norm();
      best = std::min(best, res);
      x = ritz;
      if (res <= tol) {
        converged = true;
        locked.push_back(ritz);
        locked_values.push_back(theta);
        locked_residuals.push_back(res);
      }
    }
    if (!converged) throw ConvergenceError("Lanczos did not converge for eigenpair " + std::to_string(target), best);
  }

  std::vector<std::size_t> order(locked.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return locked_values[a] < locked_values[b]; });
  Spectrum out;
  for (auto i : order) {
    out.eigenvalues.push_back(locked_values[i]);
    out.eigenvectors.emplace_back(locked[i]);
    out.residuals.push_back(locked_residuals[i]);
  }
  return out;
}

}  // namespace detail

/// The k lowest eigenpairs of H. tol <= 0 selects the default for the path
/// taken (1e-10 dense, 1e-8 iterative). Throws ConvergenceError when a
/// residual cannot be brought under tol.
inline Spectrum lowest_eigenpairs(const HermitianOperator& H, int k, double tol = -1.0,
                                  const EigenOptions& opts = {}) {
  if (k < 1 || k > H.dim()) throw InvalidArgument("k must satisfy 1 <= k <= dim");
  const bool dense = opts.method == EigenMethod::Dense ||
                     (opts.method == EigenMethod::Auto && H.dim() <= (Index{1} << kDenseCutoffQubits));
  if (dense) {
    if (tol <= 0.0) tol = kDenseEigenTol;
    Spectrum s = detail::dense_lowest(H, k);
    for (const auto& v : s.eigenvectors)
      s.residuals.push_back((H.apply(v.amplitudes()) - s.eigenvalues[s.residuals.size()] * v.amplitudes()).norm());
    const double worst = *std::max_element(s.residuals.begin(), s.residuals.end());
    if (worst > tol) throw ConvergenceError("dense eigenpairs exceed residual tolerance", worst);
    return s;
  }
  if (tol <= 0.0) tol = kIterativeEigenTol;
  return detail::lanczos_lowest(H, k, tol, opts);
}

/// Orthonormal basis of the lowest eigenspace (eigenvalues within
/// degeneracy_tol of the minimum), with its energy.
struct GroundSpace {
  double energy = 0.0;
  std::vector<StateVector> basis;

  /// Squared norm of the projection of psi onto the space.
  double overlap(const StateVector& psi) const {
    double p = 0.0;
    for (const auto& g : basis) p += g.overlap2(psi);
    return p;
  }
};

inline GroundSpace ground_space(const HermitianOperator& H, double degeneracy_tol = 1e-9) {
  GroundSpace gs;
  if (H.is_diagonal()) {
    const RVector d = H.diagonal_real();
    gs.energy = d.minCoeff();
    for (Index i = 0; i < d.size(); ++i)
      if (d[i] <= gs.energy + degeneracy_tol) gs.basis.push_back(StateVector::basis(d.size(), i));
    return gs;
  }
  int k = static_cast<int>(std::min<Index>(4, H.dim()));
  for (;;) {
    const Spectrum s = lowest_eigenpairs(H, k);
    gs.energy = s.eigenvalues[0];
    gs.basis.clear();
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s.eigenvalues[i] <= gs.energy + degeneracy_tol) gs.basis.push_back(s.eigenvectors[i]);
    if (static_cast<int>(gs.basis.size()) < k || k == H.dim()) return gs;
    k = static_cast<int>(std::min<Index>(2 * k, H.dim()));
  }
}

}  // namespace aqc
