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
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aqclab/adiabatic/path.hpp"
#include "aqclab/core/eigensolver.hpp"
#include "aqclab/core/propagate.hpp"

namespace aqc {

/// Populations |c_n(t)|^2 in the instantaneous eigenbasis at sample times.
struct EvolutionTrace {
  std::vector<double> times;
  std::vector<double> s;
  std::vector<std::vector<double>> energies;
  std::vector<std::vector<double>> populations;
  /// theta_n(t) = -integral of E_n, trapezoid rule over the samples. Empty
  /// unless phase tracking was requested.
  std::vector<std::vector<double>> phases;

  std::size_t size() const { return times.size(); }

  std::string to_csv() const {
    std::ostringstream os;
    os.precision(17);
    const std::size_t k = populations.empty() ? 0 : populations.front().size();
    os << "t,s";
    for (std::size_t n = 0; n < k; ++n) os << ",E" << n;
    for (std::size_t n = 0; n < k; ++n) os << ",p" << n;
    os << '\n';
    for (std::size_t i = 0; i < times.size(); ++i) {
      os << times[i] << ',' << s[i];
      for (double e : energies[i]) os << ',' << e;
      for (double p : populations[i]) os << ',' << p;
      os << '\n';
    }
    return os.str();
  }
};

struct AdiabaticOptions {
  /// Number of instantaneous eigenstates whose populations are traced.
  int track = 2;
  /// Approximate number of trace samples; 0 disables tracing.
  int samples = 0;
  bool track_phases = false;
  /// Required when the ground space of H0 is degenerate.
  std::optional<StateVector> initial;
  double degeneracy_tol = 1e-9;
  double norm_tol_per_time = 1e-8;
};

struct AdiabaticResult {
  StateVector final_state;
  /// Squared overlap of the final state with the full ground space of HT.
  double success = 0.0;
  EvolutionTrace trace;
  long steps = 0;
};

namespace detail {

inline void record_sample(const InterpolationPath& path, double t, const CVector& psi, int track, bool phases,
                          EvolutionTrace& trace) {
  const double s = path.s_at_time(t);
  const HermitianOperator H = path.at(s);
  const int k = static_cast<int>(std::min<Index>(track, H.dim()));
  const Spectrum sp = lowest_eigenpairs(H, k);
  std::vector<double> pops;
  for (const auto& v : sp.eigenvectors) pops.push_back(std::norm(v.amplitudes().dot(psi)));
  if (phases) {
    std::vector<double> theta(static_cast<std::size_t>(k), 0.0);
    if (!trace.times.empty()) {
      const double h = t - trace.times.back();
      for (int n = 0; n < k; ++n) {
        const auto un = static_cast<std::size_t>(n);
        theta[un] = trace.phases.back()[un] - 0.5 * h * (trace.energies.back()[un] + sp.eigenvalues[un]);
      }
    }
    trace.phases.push_back(std::move(theta));
  }
  trace.times.push_back(t);
  trace.s.push_back(s);
  trace.energies.push_back(sp.eigenvalues);
  trace.populations.push_back(std::move(pops));
}

}  // namespace detail

/// Evolve the ground state of H0 along the path for total time tau.
inline AdiabaticResult run_adiabatic(InterpolationPath path, double tau, double dt, const AdiabaticOptions& opts = {}) {
  path.tau = tau;
  path.validate();
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (opts.track < 1) throw InvalidArgument("track must be >= 1");

  StateVector psi0;
  if (opts.initial) {
    psi0 = *opts.initial;
  } else {
    const GroundSpace g0 = ground_space(path.H0, opts.degeneracy_tol);
    if (g0.basis.size() != 1)
      throw DegeneracyError("ground space of H0 is " + std::to_string(g0.basis.size()) +
                            "-fold degenerate; supply an explicit initial state");
    psi0 = g0.basis.front();
  }

  AdiabaticResult out;
  const long steps = tau == 0.0 ? 0 : std::max(1L, static_cast<long>(std::ceil(tau / dt - 1e-9)));
  out.steps = steps;
  const long stride = opts.samples > 0 ? std::max(1L, steps / opts.samples) : 0;
  if (stride) detail::record_sample(path, 0.0, psi0.amplitudes(), opts.track, opts.track_phases, out.trace);

  RealTimeOptions ropts;
  ropts.norm_tol_per_time = opts.norm_tol_per_time;
  if (stride)
    ropts.observer = [&](long step, double t, const CVector& psi) {
      if (step % stride == 0 || step == steps) detail::record_sample(path, t, psi, opts.track, opts.track_phases, out.trace);
    };
  out.final_state = evolve_real(path.operator_schedule(), psi0, tau, dt, ropts);
  out.success = std::min(1.0, ground_space(path.HT, opts.degeneracy_tol).overlap(out.final_state));
  return out;
}

/// d<sigma_z^i>/ds in the instantaneous ground state, by a central difference
/// with step ds.
inline double susceptibility(const InterpolationPath& path, int qubit, double s, double ds,
                             double degeneracy_tol = 1e-9) {
  path.validate();
  if (!path.H0.has_qubits()) throw InvalidArgument("susceptibility needs a qubit operator");
  const int n = path.H0.n_qubits();
  if (qubit < 0 || qubit >= n) throw InvalidArgument("qubit index out of range");
  if (!(ds > 0.0) || s - ds < 0.0 || s + ds > 1.0) throw InvalidArgument("s +- ds must lie in [0, 1]");
  const HermitianOperator z = build_operator(n, {PauliTerm::single(1.0, qubit, Pauli::Z)});
  auto mz = [&](double sv) {
    const HermitianOperator H = path.at(sv);
    const Spectrum sp = lowest_eigenpairs(H, std::min<int>(2, static_cast<int>(H.dim())));
    if (sp.size() > 1 && sp.gap() <= degeneracy_tol)
      throw DegeneracyError("ground state degenerate at s=" + std::to_string(sv));
    return z.expectation(sp.eigenvectors[0].amplitudes());
  };
  return (mz(s + ds) - mz(s - ds)) / (2.0 * ds);
}

}  // namespace aqc
