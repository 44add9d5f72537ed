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

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "aqclab/core/operator.hpp"
#include "aqclab/problem/ising.hpp"

namespace aqc {

struct AnnealResult {
  SpinConfiguration final_config;
  SpinConfiguration best_config;
  double final_energy = 0.0;
  double best_energy = 0.0;
  /// best_energy - true minimum; empty when no oracle was supplied.
  std::optional<double> residual;
  /// Whether best_energy reached the oracle minimum; empty without oracle.
  std::optional<bool> success;
  /// Quantum runs: final state, ground-space probability and <H0>.
  std::optional<StateVector> final_state;
  std::optional<double> success_probability;
  std::optional<double> expected_energy;
  /// Hardware-independent work: spin-flip proposals or integrator steps.
  long cost_units = 0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
};

/// One line of a JSONL run log.
struct RunRecord {
  std::string instance_hash;
  std::string solver;
  std::uint64_t seed = 0;
  double best_energy = 0.0;
  std::optional<bool> success;
  std::optional<double> success_probability;
  long cost_units = 0;
  /// Written as null unless wall-clock timing was requested, keeping logs
  /// byte-reproducible.
  std::optional<double> wall_seconds;
};

inline nlohmann::ordered_json to_json(const RunRecord& r) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance_hash;
  j["solver"] = r.solver;
  j["seed"] = r.seed;
  j["best_energy"] = r.best_energy;
  j["success"] = r.success ? nlohmann::ordered_json(*r.success) : nlohmann::ordered_json(nullptr);
  j["success_probability"] =
      r.success_probability ? nlohmann::ordered_json(*r.success_probability) : nlohmann::ordered_json(nullptr);
  j["cost_units"] = r.cost_units;
  j["wall_seconds"] = r.wall_seconds ? nlohmann::ordered_json(*r.wall_seconds) : nlohmann::ordered_json(nullptr);
  return j;
}

inline RunRecord make_record(const AnnealResult& res, std::string instance_hash, std::string solver,
                             bool include_wall_time = false) {
  RunRecord r;
  r.instance_hash = std::move(instance_hash);
  r.solver = std::move(solver);
  r.seed = res.seed;
  r.best_energy = res.best_energy;
  r.success = res.success;
  r.success_probability = res.success_probability;
  r.cost_units = res.cost_units;
  if (include_wall_time) r.wall_seconds = res.wall_seconds;
  return r;
}

inline void append_run_log(const std::string& path, const RunRecord& r) {
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw Error("cannot open run log " + path);
  out << to_json(r).dump() << '\n';
}

}  // namespace aqc
