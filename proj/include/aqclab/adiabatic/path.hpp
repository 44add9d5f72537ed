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

// H(s) = (1 - s) H0 + s HT with s = schedule(t / tau), plus the spectral
// gap profile along s and the resulting adiabatic time estimate
// max_s m(s) / min_s gap(s)^2, where m(s) = |<1(s)| dH/ds |0(s)>|.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "aqclab/core/eigensolver.hpp"
#include "aqclab/core/propagate.hpp"

namespace aqc {

struct InterpolationPath {
  HermitianOperator H0;
  HermitianOperator HT;
  /// Monotone map of u = t / tau from [0, 1] onto [0, 1].
  std::function<double(double)> schedule = [](double u) { return u; };
  double tau = 1.0;

  static InterpolationPath linear(HermitianOperator H0, HermitianOperator HT, double tau = 1.0) {
    InterpolationPath p;
    p.H0 = std::move(H0);
    p.HT = std::move(HT);
    p.tau = tau;
    p.validate();
    return p;
  }

  void validate() const {
    if (H0.dim() != HT.dim()) throw InvalidArgument("H0 and HT differ in dimension");
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidArgument("tau must be finite and non-negative");
    if (std::abs(schedule(0.0)) > 1e-12 || std::abs(schedule(1.0) - 1.0) > 1e-12)
      throw InvalidArgument("schedule must satisfy s(0) = 0 and s(1) = 1");
    double prev = 0.0;
    for (int k = 1; k <= 256; ++k) {
      const double v = schedule(k / 256.0);
      if (v < prev - 1e-12) throw InvalidArgument("schedule must be non-decreasing");
      prev = v;
    }
  }

  double s_at_time(double t) const {
    if (tau == 0.0) return 1.0;
    return schedule(std::clamp(t / tau, 0.0, 1.0));
  }

  HermitianOperator at(double s) const { return H0.combine(1.0 - s, HT, s); }

  /// dH/ds, independent of s for the linear interpolation in s.
  HermitianOperator derivative() const { return HT.combine(1.0, H0, -1.0); }

  /// Time-dependent operator source for evolve_real over [0, tau].
  OperatorSchedule operator_schedule() const {
    auto self = *this;
    return OperatorSchedule({H0, HT}, [self](double t) {
      const double s = self.s_at_time(t);
      return std::vector<double>{1.0 - s, s};
    });
  }
};

struct GapProfile {
  std::vector<double> s;
  /// energies[i] holds the lowest k eigenvalues at s[i].
  std::vector<std::vector<double>> energies;
  std::vector<double> gap;
  std::vector<double> m;

  std::size_t argmin_gap() const {
    if (gap.empty()) throw InvalidArgument("empty gap profile");
    return static_cast<std::size_t>(std::min_element(gap.begin(), gap.end()) - gap.begin());
  }
  double min_gap() const { return gap[argmin_gap()]; }
  double max_m() const {
    if (m.empty()) throw InvalidArgument("empty gap profile");
    return *std::max_element(m.begin(), m.end());
  }

  /// Columns s,E0,E1,gap,m with a header row.
  std::string to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "s,E0,E1,gap,m\n";
    for (std::size_t i = 0; i < s.size(); ++i)
      os << s[i] << ',' << energies[i][0] << ',' << energies[i][1] << ',' << gap[i] << ',' << m[i] << '\n';
    return os.str();
  }
};

/// Lowest-k eigensolve at s_i = i / (grid - 1); both endpoints are included.
inline GapProfile gap_profile(const InterpolationPath& path, int grid, int k = 2, const EigenOptions& eopts = {}) {
  if (grid < 3) throw InvalidArgument("gap profile needs at least 3 grid points");
  if (k < 2) throw InvalidArgument("gap profile needs k >= 2");
  path.validate();
  const HermitianOperator dH = path.derivative();
  GapProfile prof;
  for (int i = 0; i < grid; ++i) {
    const double s = static_cast<double>(i) / (grid - 1);
    Spectrum sp;
    try {
      sp = lowest_eigenpairs(path.at(s), k, -1.0, eopts);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("eigensolver failed at s=" + std::to_string(s) + ": " + e.what(), e.best_residual());
    }
    prof.s.push_back(s);
    prof.energies.push_back(sp.eigenvalues);
    prof.gap.push_back(std::max(0.0, sp.eigenvalues[1] - sp.eigenvalues[0]));
    const CVector d0 = dH.apply(sp.eigenvectors[0].amplitudes());
    prof.m.push_back(std::abs(sp.eigenvectors[1].amplitudes().dot(d0)));
  }
  return prof;
}

/// max m / (min gap)^2. Callers apply their own safety factor.
inline double adiabatic_time_estimate(const GapProfile& profile, double gap_floor = 1e-10) {
  const double g = profile.min_gap();
  if (!(g > gap_floor))
    throw DegeneracyError("minimum gap " + std::to_string(g) + " at s=" +
                          std::to_string(profile.s[profile.argmin_gap()]) + " is at the numerical floor");
  return profile.max_m() / (g * g);
}

}  // namespace aqc
