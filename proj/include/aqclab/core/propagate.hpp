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

// Real- and imaginary-time propagation (hbar = 1).
//
// Time dependence enters through OperatorSchedule: a fixed list of Hermitian
// parts with time-dependent real weights, so H(t) = sum_k c_k(t) H_k is never
// re-assembled during a run. Each step freezes H at the interval midpoint and
// applies the exact exponential of that frozen operator (second order
// globally). Small spaces use a dense eigendecomposition; larger ones a
// Lanczos-Krylov exponential with a posteriori error control.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "aqclab/core/eigensolver.hpp"
#include "aqclab/core/operator.hpp"

namespace aqc {

/// Spaces up to this dimension (6 qubits) use the exact dense exponential.
inline constexpr Index kExactExpMaxDim = 64;

class OperatorSchedule {
 public:
  using CoefficientFn = std::function<std::vector<double>(double)>;

  OperatorSchedule(std::vector<HermitianOperator> parts, CoefficientFn coefficients)
      : parts_(std::move(parts)), coefficients_(std::move(coefficients)) {
    if (parts_.empty()) throw InvalidArgument("schedule needs at least one operator");
    for (const auto& p : parts_)
      if (p.dim() != parts_.front().dim()) throw InvalidArgument("schedule parts differ in dimension");
  }

  static OperatorSchedule constant(HermitianOperator H) {
    return OperatorSchedule({std::move(H)}, [](double) { return std::vector<double>{1.0}; });
  }

  Index dim() const { return parts_.front().dim(); }
  const std::vector<HermitianOperator>& parts() const { return parts_; }

  std::vector<double> coefficients(double t) const {
    auto c = coefficients_(t);
    if (c.size() != parts_.size()) throw InvalidArgument("coefficient count does not match schedule parts");
    return c;
  }

  CVector apply(const std::vector<double>& c, const CVector& v) const {
    CVector out = CVector::Zero(v.size());
    for (std::size_t k = 0; k < parts_.size(); ++k)
      if (c[k] != 0.0) out.noalias() += c[k] * (parts_[k].sparse() * v);
    return out;
  }

  CMatrix dense(const std::vector<double>& c) const {
    CMatrix m = CMatrix::Zero(dim(), dim());
    for (std::size_t k = 0; k < parts_.size(); ++k)
      if (c[k] != 0.0) m += c[k] * parts_[k].dense();
    return m;
  }

  HermitianOperator at(double t) const {
    const auto c = coefficients(t);
    HermitianOperator h = parts_.front().scaled(c[0]);
    for (std::size_t k = 1; k < parts_.size(); ++k) h = h.combine(1.0, parts_[k], c[k]);
    return h;
  }

 private:
  std::vector<HermitianOperator> parts_;
  CoefficientFn coefficients_;
};

namespace detail {

inline CVector dense_expm_apply(const CMatrix& m, const CVector& v, cplx z) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const CVector coeffs = es.eigenvectors().adjoint() * v;
  CVector scaled(coeffs.size());
  for (Index i = 0; i < coeffs.size(); ++i) scaled[i] = std::exp(z * es.eigenvalues()[i]) * coeffs[i];
  return es.eigenvectors() * scaled;
}

// exp(z*H) v on a Krylov space of dimension <= m. Splits the step when the
// a posteriori error estimate exceeds tol relative to the result.
inline CVector krylov_expm_apply(const OperatorSchedule& s, const std::vector<double>& c, const CVector& v,
                                 cplx z, int m, double tol, int depth = 0) {
  const double vnorm = v.norm();
  if (vnorm == 0.0) return v;
  std::vector<CVector> V;
  std::vector<double> alpha, beta;
  CVector q = v / vnorm;
  double next_beta = 0.0;
  const int mm = static_cast<int>(std::min<Index>(m, v.size()));
  for (int j = 0; j < mm; ++j) {
    V.push_back(q);
    CVector w = s.apply(c, q);
    const double a = q.dot(w).real();
    alpha.push_back(a);
    w -= a * q;
    if (j > 0) w -= beta.back() * V[static_cast<std::size_t>(j) - 1];
    for (const auto& u : V) w -= u.dot(w) * u;
    const double b = w.norm();
    next_beta = b;
    if (b < 1e-13 * std::max(1.0, std::abs(a))) {
      next_beta = 0.0;
      break;
    }
    if (j == mm - 1) break;
    beta.push_back(b);
    q = w / b;
  }
  const Index msz = static_cast<Index>(alpha.size());
  RVector diag = Eigen::Map<RVector>(alpha.data(), msz);
  RVector sub = msz > 1 ? RVector(Eigen::Map<RVector>(beta.data(), msz - 1)) : RVector(0);
  Eigen::SelfAdjointEigenSolver<RMatrix> tri;
  tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const RMatrix& Q = tri.eigenvectors();
  CVector f = CVector::Zero(msz);
  for (Index i = 0; i < msz; ++i) {
    const cplx e = std::exp(z * tri.eigenvalues()[i]) * Q(0, i);
    for (Index r = 0; r < msz; ++r) f[r] += Q(r, i) * e;
  }
  const double err = next_beta * std::abs(f[msz - 1]);
  if (err > tol * std::max(1.0, f.norm()) && depth < 30) {
    const CVector half = krylov_expm_apply(s, c, v, 0.5 * z, m, 0.5 * tol, depth + 1);
    return krylov_expm_apply(s, c, half, 0.5 * z, m, 0.5 * tol, depth + 1);
  }
  CVector out = CVector::Zero(v.size());
  for (Index i = 0; i < msz; ++i) out += f[i] * V[static_cast<std::size_t>(i)];
  return vnorm * out;
}

}  // namespace detail

/// exp(z * H(c)) v, where H(c) = sum_k c_k parts_k.
inline CVector expm_apply(const OperatorSchedule& s, const std::vector<double>& c, const CVector& v, cplx z,
                          double krylov_tol = 1e-12) {
  if (s.dim() <= kExactExpMaxDim) return detail::dense_expm_apply(s.dense(c), v, z);
  return detail::krylov_expm_apply(s, c, v, z, 30, krylov_tol);
}

struct RealTimeOptions {
  double t_start = 0.0;
  /// Allowed |1 - norm| per unit of elapsed time.
  double norm_tol_per_time = 1e-8;
  /// Called after every step with (step index, time, state).
  std::function<void(long, double, const CVector&)> observer;
};

/// psi(t_end) under i d/dt psi = H(t) psi, starting from psi0 at opts.t_start
/// and running for a duration t_end.
inline StateVector evolve_real(const OperatorSchedule& H, const StateVector& psi0, double t_end, double dt,
                               const RealTimeOptions& opts = {}) {
  if (psi0.dim() != H.dim()) throw InvalidArgument("state and operator dimensions differ");
  if (!psi0.is_normalized()) throw InvalidArgument("initial state must be normalized");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (t_end < 0.0) throw InvalidArgument("t_end must be non-negative");
  const long steps = t_end == 0.0 ? 0 : std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
  CVector psi = psi0.amplitudes();
  if (steps == 0) return psi0;
  const double h = t_end / static_cast<double>(steps);
  for (long i = 0; i < steps; ++i) {
    const double t_mid = opts.t_start + (static_cast<double>(i) + 0.5) * h;
    psi = expm_apply(H, H.coefficients(t_mid), psi, cplx(0.0, -h));
    const double elapsed = static_cast<double>(i + 1) * h;
    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > opts.norm_tol_per_time * std::max(1.0, elapsed) + 1e-12)
      throw NormDriftError("norm drift " + std::to_string(drift) + " exceeds tolerance; reduce dt", drift);
    if (opts.observer) opts.observer(i + 1, opts.t_start + elapsed, psi);
  }
  return StateVector(std::move(psi));
}

struct ImaginaryTimeOptions {
  /// Measure the overlap of psi0 with the ground space and flag it when it is
  /// numerically zero. Uses the eigensolver, so disable it when the result
  /// serves as an independent oracle.
  bool check_ground_overlap = true;
  double overlap_floor = 1e-14;
};

struct ImaginaryTimeResult {
  StateVector state;
  /// <H> after each step, starting with the value at psi0.
  std::vector<double> rayleigh;
  bool ground_overlap_warning = false;
  std::optional<double> ground_overlap;
};

/// Normalized exp(-H tau) psi0 by repeated steps of length <= dt.
inline ImaginaryTimeResult evolve_imaginary(const HermitianOperator& H, const StateVector& psi0, double tau,
                                            double dt, const ImaginaryTimeOptions& opts = {}) {
  if (psi0.dim() != H.dim()) throw InvalidArgument("state and operator dimensions differ");
  if (!psi0.is_normalized()) throw InvalidArgument("initial state must be normalized");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (tau < 0.0) throw InvalidArgument("tau must be non-negative");
  ImaginaryTimeResult out;
  if (opts.check_ground_overlap) {
    const GroundSpace gs = ground_space(H);
    out.ground_overlap = gs.overlap(psi0);
    out.ground_overlap_warning = *out.ground_overlap <= opts.overlap_floor;
  }
  const auto schedule = OperatorSchedule::constant(H);
  const std::vector<double> one{1.0};
  CVector psi = psi0.amplitudes();
  out.rayleigh.push_back(H.expectation(psi));
  const long steps = tau == 0.0 ? 0 : std::max(1L, static_cast<long>(std::ceil(tau / dt - 1e-9)));
  const double h = steps ? tau / static_cast<double>(steps) : 0.0;
  for (long i = 0; i < steps; ++i) {
    psi = expm_apply(schedule, one, psi, cplx(-h, 0.0));
    const double nrm = psi.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw ConvergenceError("imaginary-time state underflowed", nrm);
    psi /= nrm;
    out.rayleigh.push_back(H.expectation(psi));
  }
  out.state = StateVector(std::move(psi));
  return out;
}

}  // namespace aqc
