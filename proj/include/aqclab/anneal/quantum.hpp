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

// Schroedinger-equation quantum annealing under H(t) = H0 - Gamma(t) sum_i Delta_i sigma_x^i,
// starting from the ground state of the driver term.

#include <chrono>
#include <cmath>
#include <string>

#include "aqclab/anneal/result.hpp"
#include "aqclab/core/eigensolver.hpp"
#include "aqclab/core/propagate.hpp"
#include "aqclab/problem/ising.hpp"

namespace aqc {

enum class GammaSchedule { PaperPower, Linear, Zero };

inline std::string to_string(GammaSchedule g) {
  switch (g) {
    case GammaSchedule::PaperPower: return "paper-power";
    case GammaSchedule::Linear: return "linear";
    case GammaSchedule::Zero: return "zero";
  }
  return "paper-power";
}

inline GammaSchedule gamma_schedule_from_string(const std::string& s) {
  if (s == "paper-power") return GammaSchedule::PaperPower;
  if (s == "linear") return GammaSchedule::Linear;
  if (s == "zero") return GammaSchedule::Zero;
  throw InvalidArgument("unknown transverse-field schedule '" + s + "'");
}

struct QAConfig {
  GammaSchedule schedule = GammaSchedule::PaperPower;
  /// paper-power: Gamma(t) = gamma0 * (1 + t)^(-gamma / n).
  double gamma = 1.0;
  double gamma0 = 1.0;
  double tau = 10.0;
  double dt = 0.05;
  double success_tol = 1e-9;

  /// Gamma at time t; the field is switched off exactly at t >= tau.
  double field(double t, int n) const {
    if (t >= tau) return 0.0;
    switch (schedule) {
      case GammaSchedule::PaperPower: return gamma0 * std::pow(1.0 + t, -gamma / n);
      case GammaSchedule::Linear: return gamma0 * (1.0 - t / tau);
      case GammaSchedule::Zero: return 0.0;
    }
    return 0.0;
  }

  void validate() const {
    if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
    if (gamma0 < 0.0) throw InvalidArgument("gamma0 must be non-negative");
    if (!(tau >= 0.0)) throw InvalidArgument("tau must be non-negative");
    if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  }
};

/// Product ground state of -sum Delta_i sigma_x^i: |+> where Delta_i >= 0, |-> otherwise.
inline StateVector driver_ground_state(const IsingInstance& inst) {
  const Index dim = Index{1} << inst.n;
  CVector v(dim);
  const double a = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Index b = 0; b < dim; ++b) {
    int sign = 1;
    for (int i = 0; i < inst.n; ++i)
      if (inst.transverse[static_cast<std::size_t>(i)] < 0.0 && ((b >> i) & 1)) sign = -sign;
    v[b] = sign * a;
  }
  return StateVector(std::move(v));
}

inline AnnealResult quantum_anneal(const IsingInstance& inst, const QAConfig& cfg) {
  inst.validate();
  cfg.validate();
  if (inst.n > kMaxSparseQubits) throw BudgetExceeded("quantum annealing limited to 26 qubits");
  const auto t0 = std::chrono::steady_clock::now();
  const HermitianOperator H0 = problem_hamiltonian(inst);
  const HermitianOperator H1 = driver_hamiltonian(inst);
  const int n = inst.n;
  const QAConfig c = cfg;
  const OperatorSchedule sched({H0, H1}, [c, n](double t) { return std::vector<double>{1.0, -c.field(t, n)}; });

  AnnealResult r;
  const StateVector psi0 = driver_ground_state(inst);
  StateVector psi = evolve_real(sched, psi0, cfg.tau, cfg.dt);
  r.cost_units = cfg.tau == 0.0 ? 0 : std::max(1L, static_cast<long>(std::ceil(cfg.tau / cfg.dt - 1e-9)));

  const RVector diag = H0.diagonal_real();
  const RVector probs = psi.probabilities();
  Index arg = 0;
  probs.maxCoeff(&arg);
  r.final_config = SpinConfiguration::from_basis_index(n, static_cast<std::uint64_t>(arg));
  r.best_config = r.final_config;
  r.final_energy = energy(inst, r.final_config);
  r.best_energy = r.final_energy;
  r.expected_energy = probs.dot(diag);

  const double emin = diag.minCoeff();
  const double cut = emin + cfg.success_tol * std::max(1.0, std::abs(emin));
  double p = 0.0;
  for (Index b = 0; b < diag.size(); ++b)
    if (diag[b] <= cut) p += probs[b];
  r.success_probability = std::min(1.0, p);
  r.residual = r.best_energy - emin;
  r.success = r.best_energy <= cut;
  r.final_state = std::move(psi);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace aqc
