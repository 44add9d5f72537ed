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
#include <vector>

#include "aqclab/core/common.hpp"

namespace aqc {

enum class FreezeMode { Quantum, Classical };

/// Freeze-out times for the power-law transverse field and the logarithmic
/// temperature schedule:
///   quantum:   t_f = exp(-n ln(delta) / (2 gamma))
///   classical: t_f = exp(n / (delta k))
inline double freeze_time(FreezeMode mode, int n, double delta, double gamma = 1.0, double k = 1.0) {
  if (!(delta > 0.0) || delta >= 1.0) throw InvalidArgument("delta must lie in (0, 1)");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (mode == FreezeMode::Quantum) {
    if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
    return std::exp(-n * std::log(delta) / (2.0 * gamma));
  }
  if (!(k > 0.0)) throw InvalidArgument("k must be positive");
  return std::exp(n / (delta * k));
}

/// F = sum p E - T S(p), S = -sum p ln p with 0 ln 0 = 0.
inline double free_energy(const std::vector<double>& p, const std::vector<double>& energies, double T) {
  if (p.size() != energies.size()) throw InvalidArgument("distribution and energies differ in length");
  double total = 0.0, mean = 0.0, entropy = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0) throw InvalidArgument("negative probability");
    total += p[i];
    mean += p[i] * energies[i];
    if (p[i] > 0.0) entropy -= p[i] * std::log(p[i]);
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("distribution must sum to 1");
  return mean - T * entropy;
}

/// exp(-E/T) / Z, shifted by the minimum energy for stability. T = 0 puts
/// equal mass on the minimizers.
inline std::vector<double> gibbs_distribution(const std::vector<double>& energies, double T) {
  if (energies.empty()) throw InvalidArgument("empty spectrum");
  double emin = energies.front();
  for (double e : energies) emin = std::min(emin, e);
  std::vector<double> w(energies.size());
  double z = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = T > 0.0 ? std::exp(-(energies[i] - emin) / T) : (energies[i] == emin ? 1.0 : 0.0);
    z += w[i];
  }
  for (double& x : w) x /= z;
  return w;
}

}  // namespace aqc
