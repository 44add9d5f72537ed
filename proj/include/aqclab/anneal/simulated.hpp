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

// Single-spin-flip Metropolis annealing.
//
// One step: (lazy only) stay with probability 1/2; otherwise pick a spin
// uniformly and flip it with probability min(1, exp(-dE / T)). At T = 0 only
// non-increasing moves are taken. A sweep is n steps; the schedule's time
// variable advances by one per sweep.

#include <chrono>
#include <cmath>
#include <optional>
#include <string>

#include "aqclab/anneal/result.hpp"
#include "aqclab/core/random.hpp"
#include "aqclab/problem/ising.hpp"

namespace aqc {

enum class TemperatureSchedule { PaperLog, Linear, Geometric, Constant };

inline std::string to_string(TemperatureSchedule s) {
  switch (s) {
    case TemperatureSchedule::PaperLog: return "paper-log";
    case TemperatureSchedule::Linear: return "linear";
    case TemperatureSchedule::Geometric: return "geometric";
    case TemperatureSchedule::Constant: return "constant";
  }
  return "paper-log";
}

inline TemperatureSchedule temperature_schedule_from_string(const std::string& s) {
  if (s == "paper-log") return TemperatureSchedule::PaperLog;
  if (s == "linear") return TemperatureSchedule::Linear;
  if (s == "geometric") return TemperatureSchedule::Geometric;
  if (s == "constant") return TemperatureSchedule::Constant;
  throw InvalidArgument("unknown temperature schedule '" + s + "'");
}

struct SAConfig {
  TemperatureSchedule schedule = TemperatureSchedule::PaperLog;
  /// paper-log: T(t) = n / (k ln t), t = t_start + sweep.
  double k = 1.0;
  double t_start = 2.0;
  /// linear and geometric run from T_initial to T_final; constant uses T_initial.
  double T_initial = 5.0;
  double T_final = 0.05;
  long sweeps = 1000;
  bool lazy = false;
  /// Random start when empty.
  std::optional<SpinConfiguration> initial;
  /// Enables residual and success in the result.
  std::optional<double> ground_energy;
  double success_tol = 1e-9;

  double temperature(long sweep, int n) const {
    switch (schedule) {
      case TemperatureSchedule::PaperLog:
        return static_cast<double>(n) / (k * std::log(t_start + static_cast<double>(sweep)));
      case TemperatureSchedule::Linear: {
        const double u = sweeps > 1 ? static_cast<double>(sweep) / static_cast<double>(sweeps - 1) : 1.0;
        return T_initial + (T_final - T_initial) * u;
      }
      case TemperatureSchedule::Geometric: {
        const double u = sweeps > 1 ? static_cast<double>(sweep) / static_cast<double>(sweeps - 1) : 1.0;
        return T_initial * std::pow(T_final / T_initial, u);
      }
      case TemperatureSchedule::Constant: return T_initial;
    }
    return T_initial;
  }

  void validate() const {
    if (sweeps < 0) throw InvalidArgument("sweeps must be non-negative");
    if (schedule == TemperatureSchedule::PaperLog) {
      if (!(t_start >= 2.0)) throw InvalidArgument("paper-log schedule needs t_start >= 2");
      if (!(k > 0.0)) throw InvalidArgument("paper-log schedule needs k > 0");
    }
    if (schedule == TemperatureSchedule::Geometric && !(T_initial > 0.0 && T_final > 0.0))
      throw InvalidArgument("geometric schedule needs positive temperatures");
    if (T_initial < 0.0 || T_final < 0.0) throw InvalidArgument("temperatures must be non-negative");
  }
};

/// Metropolis acceptance probability for an energy change dE at temperature T.
inline double metropolis_acceptance(double dE, double T) {
  if (dE <= 0.0) return 1.0;
  if (T <= 0.0) return 0.0;
  return std::exp(-dE / T);
}

/// Energy change of flipping spin i under an arbitrary cost.
inline double cost_flip_delta(const CostFunction& cost, const std::vector<std::vector<std::pair<int, double>>>* nb,
                              SpinConfiguration& c, int i, double current) {
  if (cost.ising && nb) return flip_delta(*cost.ising, *nb, c, i);
  c[i] = -c[i];
  const double e = cost.evaluate(c);
  c[i] = -c[i];
  return e - current;
}

/// One kernel step in place. Returns true when a flip was made.
inline bool metropolis_step(const CostFunction& cost, const std::vector<std::vector<std::pair<int, double>>>* nb,
                            SpinConfiguration& c, double& energy_now, double T, bool lazy, Rng& rng) {
  if (lazy && bernoulli(rng, 0.5)) return false;
  const int i = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(cost.n)));
  const double dE = cost_flip_delta(cost, nb, c, i, energy_now);
  const double a = metropolis_acceptance(dE, T);
  if (a < 1.0 && !(uniform01(rng) < a)) return false;
  c[i] = -c[i];
  energy_now += dE;
  return true;
}

inline AnnealResult simulated_anneal(const CostFunction& cost, const SAConfig& cfg, Rng& rng) {
  if (cost.n < 1) throw InvalidArgument("cost needs n >= 1");
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  SpinConfiguration c;
  if (cfg.initial) {
    if (cfg.initial->size() != cost.n) throw InvalidArgument("initial configuration length mismatch");
    c = *cfg.initial;
  } else {
    c = SpinConfiguration::all_up(cost.n);
    for (int i = 0; i < cost.n; ++i)
      if (bernoulli(rng, 0.5)) c[i] = -1;
  }
  std::optional<std::vector<std::vector<std::pair<int, double>>>> nb;
  if (cost.ising) nb = cost.ising->neighbours();
  double e = cost(c);
  AnnealResult r;
  r.best_config = c;
  r.best_energy = e;
  for (long sweep = 0; sweep < cfg.sweeps; ++sweep) {
    const double T = cfg.temperature(sweep, cost.n);
    for (int s = 0; s < cost.n; ++s) {
      metropolis_step(cost, nb ? &*nb : nullptr, c, e, T, cfg.lazy, rng);
      ++r.cost_units;
      if (e < r.best_energy) {
        r.best_energy = e;
        r.best_config = c;
      }
    }
  }
  // Incremental deltas accumulate rounding; report exact values.
  r.final_config = c;
  r.final_energy = cost(c);
  r.best_energy = cost(r.best_config);
  if (r.final_energy < r.best_energy) {
    r.best_energy = r.final_energy;
    r.best_config = c;
  }
  if (cfg.ground_energy) {
    r.residual = r.best_energy - *cfg.ground_energy;
    r.success = *r.residual <= cfg.success_tol * std::max(1.0, std::abs(*cfg.ground_energy));
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline AnnealResult simulated_anneal(const CostFunction& cost, const SAConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  AnnealResult r = simulated_anneal(cost, cfg, rng);
  r.seed = seed;
  return r;
}

}  // namespace aqc
