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

// Zeno-style transport: evolve under H(0), H(1), ..., H(L) in turn, each for
// a random dwell time. Random dwell times dephase the instantaneous eigenbasis
// and so act like repeated projective measurements onto the ground state.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "aqclab/core/eigensolver.hpp"
#include "aqclab/core/propagate.hpp"
#include "aqclab/core/random.hpp"

namespace aqc {

struct DwellDistribution {
  enum class Kind { Exponential, Fixed };
  Kind kind = Kind::Exponential;
  double mean = 1.0;

  static DwellDistribution exponential(double mean) { return {Kind::Exponential, mean}; }
  static DwellDistribution fixed(double value) { return {Kind::Fixed, value}; }

  double sample(Rng& rng) const { return kind == Kind::Fixed ? mean : exponential_draw(rng); }

  /// Phi(w) = E[exp(i w t)].
  cplx characteristic(double w) const {
    if (kind == Kind::Fixed) return std::exp(cplx(0.0, w * mean));
    return 1.0 / cplx(1.0, -w * mean);
  }

 private:
  double exponential_draw(Rng& rng) const { return aqc::exponential(rng, mean); }
};

struct ZenoSchedule {
  /// H(0), ..., H(L); L = size() - 1.
  std::vector<HermitianOperator> hamiltonians;
  DwellDistribution dwell;
  /// Target fidelity used by zeno_cost and reported alongside results.
  double p = 0.9;
  /// Mean dwell must be at least this many multiples of 1/gap; 0 disables.
  double min_dwell_factor = 10.0;

  int L() const { return static_cast<int>(hamiltonians.size()) - 1; }
};

/// L + 1 Hamiltonians evenly spaced along (1 - s) H0 + s HT.
inline std::vector<HermitianOperator> zeno_interpolation(const HermitianOperator& H0, const HermitianOperator& HT,
                                                         int L) {
  if (L < 1) throw InvalidArgument("Zeno path needs L >= 1");
  std::vector<HermitianOperator> hs;
  for (int l = 0; l <= L; ++l) {
    const double s = static_cast<double>(l) / L;
    hs.push_back(H0.combine(1.0 - s, HT, s));
  }
  return hs;
}

struct ZenoResult {
  StateVector state;
  /// |<target|state>|^2, target = ground state of H(L).
  double fidelity = 0.0;
  std::vector<double> dwell_times;
  /// Smallest ground-state gap over the sequence.
  double min_gap = 0.0;
  /// Number of exp(-i H(l) t_l) applications, always L + 1.
  int applications = 0;
};

inline ZenoResult zeno_run(const ZenoSchedule& sched, const StateVector& psi0, Rng& rng,
                           double degeneracy_tol = 1e-9) {
  if (sched.L() < 1) throw InvalidArgument("Zeno schedule needs L >= 1");
  if (!(sched.dwell.mean >= 0.0) || !std::isfinite(sched.dwell.mean))
    throw InvalidArgument("dwell distribution needs a finite non-negative mean");
  if (!psi0.is_normalized()) throw InvalidArgument("initial state must be normalized");

  double min_gap = std::numeric_limits<double>::infinity();
  StateVector target;
  for (int l = 0; l <= sched.L(); ++l) {
    const auto& H = sched.hamiltonians[static_cast<std::size_t>(l)];
    if (H.dim() != psi0.dim()) throw InvalidArgument("Zeno Hamiltonian dimension mismatch");
    const Spectrum sp = lowest_eigenpairs(H, 2);
    if (sp.gap() <= degeneracy_tol)
      throw DegeneracyError("target eigenvector of H(" + std::to_string(l) + ") is degenerate");
    min_gap = std::min(min_gap, sp.gap());
    if (l == sched.L()) target = sp.eigenvectors[0];
  }
  if (sched.min_dwell_factor > 0.0 && sched.dwell.mean < sched.min_dwell_factor / min_gap)
    throw InvalidArgument("mean dwell " + std::to_string(sched.dwell.mean) + " is below " +
                          std::to_string(sched.min_dwell_factor) + "/gap = " +
                          std::to_string(sched.min_dwell_factor / min_gap));

  ZenoResult out;
  out.min_gap = min_gap;
  CVector psi = psi0.amplitudes();
  for (int l = 0; l <= sched.L(); ++l) {
    const double t = sched.dwell.sample(rng);
    out.dwell_times.push_back(t);
    if (t > 0.0)
      psi = expm_apply(OperatorSchedule::constant(sched.hamiltonians[static_cast<std::size_t>(l)]), {1.0}, psi,
                       cplx(0.0, -t));
    ++out.applications;
  }
  out.state = StateVector(std::move(psi));
  out.fidelity = std::min(1.0, target.overlap2(out.state));
  return out;
}

/// L^2 ln(L / (1 - p)) / ((1 - p) gap).
inline double zeno_cost(int L, double p, double gap) {
  if (L < 1) throw InvalidArgument("L must be >= 1");
  if (p >= 1.0) throw InvalidArgument("p >= 1 makes the Zeno cost diverge");
  if (!(p > 0.0)) throw InvalidArgument("p must lie in (0, 1)");
  if (!(gap > 0.0)) throw InvalidArgument("gap must be positive");
  const double Ld = L;
  return Ld * Ld * std::log(Ld / (1.0 - p)) / ((1.0 - p) * gap);
}

}  // namespace aqc
