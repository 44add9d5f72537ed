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

// Instance x run grid on a worker pool. Every task owns a generator seeded
// with derive_seed(master, {instance index, run}); results are stored by
// (instance, run) and aggregated in order, so output does not depend on the
// thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "aqclab/anneal/quantum.hpp"
#include "aqclab/anneal/result.hpp"
#include "aqclab/anneal/simulated.hpp"
#include "aqclab/bench/metrics.hpp"

namespace aqc {

/// Runs fn(k) for k in [0, count) on up to `threads` workers; rethrows the
/// first exception after all workers stop.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct BenchInstance {
  std::string id;
  CostFunction cost;
};

enum class SolverKind { SA, QA };
enum class TimeModel { CostUnits, Wall };

struct SolverSpec {
  std::string name = "sa";
  SolverKind kind = SolverKind::SA;
  SAConfig sa;
  QAConfig qa;
};

struct BenchConfig {
  int runs = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  TimeModel time = TimeModel::CostUnits;
  /// Keep the best configuration of every run (for Hamming diagnostics).
  bool keep_configs = false;
};

struct BenchOutput {
  SolverReport report;
  std::vector<RunRecord> records;
  /// configs[i][r] when keep_configs is set.
  std::vector<std::vector<SpinConfiguration>> configs;
  std::vector<GroundTruth> ground;
};

/// SA runs are independent anneals. QA evolves the state once per instance;
/// each run is a seeded computational-basis measurement of the final state.
inline BenchOutput run_benchmark(const std::vector<BenchInstance>& instances, const SolverSpec& solver,
                                 const BenchConfig& cfg) {
  if (instances.empty()) throw InvalidArgument("benchmark needs at least one instance");
  if (cfg.runs < 1) throw InvalidArgument("runs must be >= 1");
  const std::size_t m = instances.size();
  const auto runs = static_cast<std::size_t>(cfg.runs);

  BenchOutput out;
  out.ground.resize(m);
  parallel_for(m, cfg.threads, [&](std::size_t i) {
    if (instances[i].cost.n > 24) throw BudgetExceeded("success oracle limited to n <= 24");
    out.ground[i] = brute_force_ground(instances[i].cost);
  });

  std::vector<AnnealResult> qa(solver.kind == SolverKind::QA ? m : 0);
  if (solver.kind == SolverKind::QA) {
    parallel_for(m, cfg.threads, [&](std::size_t i) {
      if (!instances[i].cost.ising) throw InvalidArgument("quantum annealing needs an Ising instance");
      qa[i] = quantum_anneal(*instances[i].cost.ising, solver.qa);
    });
  }

  std::vector<AnnealResult> results(m * runs);
  parallel_for(m * runs, cfg.threads, [&](std::size_t k) {
    const std::size_t i = k / runs, r = k % runs;
    const auto& cost = instances[i].cost;
    const std::uint64_t seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(r)});
    const double emin = out.ground[i].energy;
    const double cut = emin + 1e-9 * std::max(1.0, std::abs(emin));
    AnnealResult res;
    if (solver.kind == SolverKind::SA) {
      SAConfig c = solver.sa;
      c.ground_energy = emin;
      res = simulated_anneal(cost, c, seed);
    } else {
      const AnnealResult& q = qa[i];
      Rng rng(seed);
      const RVector probs = q.final_state->probabilities();
      const double u = uniform01(rng) * probs.sum();
      double acc = 0.0;
      Index pick = probs.size() - 1;
      for (Index b = 0; b < probs.size(); ++b) {
        acc += probs[b];
        if (u < acc) {
          pick = b;
          break;
        }
      }
      res.final_config = SpinConfiguration::from_basis_index(cost.n, static_cast<std::uint64_t>(pick));
      res.best_config = res.final_config;
      res.final_energy = res.best_energy = cost(res.final_config);
      res.success_probability = q.success_probability;
      res.cost_units = q.cost_units;
      res.wall_seconds = q.wall_seconds;
      res.seed = seed;
    }
    res.residual = res.best_energy - emin;
    res.success = res.best_energy <= cut;
    results[k] = std::move(res);
  });

  out.report.solver = solver.name;
  if (cfg.keep_configs) out.configs.assign(m, {});
  for (std::size_t i = 0; i < m; ++i) {
    InstanceOutcome o;
    o.id = instances[i].id;
    o.runs = cfg.runs;
    double t = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
      const auto& res = results[i * runs + r];
      o.successes += *res.success ? 1 : 0;
      o.seeds.push_back(res.seed);
      t += cfg.time == TimeModel::CostUnits ? static_cast<double>(res.cost_units) : res.wall_seconds;
      out.records.push_back(make_record(res, instances[i].id, solver.name, cfg.time == TimeModel::Wall));
      if (cfg.keep_configs) out.configs[i].push_back(res.best_config);
    }
    // Mean time per run. For QA every run carries the cost of the single
    // evolution. A zero-length anneal is charged one unit so that T stays finite.
    o.t_a = std::max(t / static_cast<double>(runs), cfg.time == TimeModel::CostUnits ? 1.0 : 1e-9);
    out.report.instances.push_back(std::move(o));
  }
  return out;
}

}  // namespace aqc
