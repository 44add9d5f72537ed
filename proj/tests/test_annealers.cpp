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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "aqclab/anneal/quantum.hpp"
#include "aqclab/anneal/result.hpp"
#include "aqclab/anneal/simulated.hpp"
#include "aqclab/anneal/thermo.hpp"
#include "aqclab/bridge/markov.hpp"
#include "aqclab/problem/generators.hpp"

namespace aqc {
namespace {

bool is_local_minimum(const CostFunction& f, const SpinConfiguration& c) {
  const double e = f(c);
  for (int i = 0; i < f.n; ++i) {
    auto d = c;
    d[i] = -d[i];
    if (f(d) < e) return false;
  }
  return true;
}

TEST(SimulatedAnneal, GreedyReachesLocalMinimum) {
  const auto f = ising_cost(ferromagnetic_chain(10));
  SAConfig cfg;
  cfg.schedule = TemperatureSchedule::Constant;
  cfg.T_initial = 0.0;
  cfg.sweeps = 200;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = simulated_anneal(f, cfg, seed);
    EXPECT_TRUE(is_local_minimum(f, r.final_config)) << "seed " << seed;
    EXPECT_LE(r.best_energy, r.final_energy);
  }
}

TEST(SimulatedAnneal, GreedyFromNearlyAlignedStartFindsGround) {
  const auto f = ising_cost(ferromagnetic_chain(8));
  SAConfig cfg;
  cfg.schedule = TemperatureSchedule::Constant;
  cfg.T_initial = 0.0;
  cfg.sweeps = 100;
  cfg.ground_energy = -7.0;
  for (int flipped = 0; flipped < 8; ++flipped) {
    auto start = SpinConfiguration::all_up(8);
    start[flipped] = -1;
    cfg.initial = start;
    const auto r = simulated_anneal(f, cfg, 1);
    EXPECT_EQ(r.final_config, SpinConfiguration::all_up(8)) << "flipped spin " << flipped;
    EXPECT_EQ(*r.success, true);
    EXPECT_EQ(*r.residual, 0.0);
  }
}

TEST(SimulatedAnneal, SingleSpinOccupationMatchesGibbs) {
  // n = 1, h = 1 at beta = 1/2: pi(+1) / pi(-1) = e^{2 beta} = e.
  IsingInstance inst = IsingInstance::empty(1);
  inst.fields[0] = 1.0;
  const auto f = ising_cost(inst);
  Rng rng(2024);
  SpinConfiguration c = SpinConfiguration::all_up(1);
  double e = f(c);
  const long N = 100000;
  long up = 0;
  for (long k = 0; k < N; ++k) {
    metropolis_step(f, nullptr, c, e, 2.0, false, rng);
    up += c[0] == 1;
  }
  const double pi_up = 1.0 / (1.0 + std::exp(-1.0));
  // Two-state chain with flip rates a = e^{-1} (up) and b = 1 (down):
  // lambda = 1 - a - b, and the time average has variance
  // pi_up pi_down (1 + lambda) / ((1 - lambda) N).
  const double lambda = 1.0 - std::exp(-1.0) - 1.0;
  const double sigma = std::sqrt(pi_up * (1 - pi_up) * (1 + lambda) / ((1 - lambda) * N));
  EXPECT_NEAR(static_cast<double>(up) / N, pi_up, 3 * sigma);
}

TEST(SimulatedAnneal, SpikeBarrierLowersSuccess) {
  // Start at weight n; the minimum (weight 0) lies beyond a barrier at n/4.
  const int n = 12;
  std::vector<int> successes;
  for (double height : {0.0, 3.0, 6.0}) {
    HammingParams p;
    p.kind = HammingKind::Spike;
    p.n = n;
    p.width = 1.5;
    p.height = height;
    const auto f = gen_hamming_family(p);
    SAConfig cfg;
    cfg.schedule = TemperatureSchedule::Geometric;
    cfg.T_initial = 1.0;
    cfg.T_final = 0.05;
    cfg.sweeps = 20;
    cfg.initial = SpinConfiguration::all_up(n).flipped();
    cfg.ground_energy = 0.0;
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) ok += *simulated_anneal(f, cfg, seed).success;
    successes.push_back(ok);
  }
  EXPECT_GT(successes[0], successes[1]);
  EXPECT_GT(successes[1], successes[2]);
}

TEST(SimulatedAnneal, SeededDeterminism) {
  const auto inst = gen_spin_glass(10, complete_edges(10), {}, 5);
  const auto f = ising_cost(inst);
  SAConfig cfg;
  cfg.sweeps = 50;
  const auto a = simulated_anneal(f, cfg, 99);
  const auto b = simulated_anneal(f, cfg, 99);
  EXPECT_EQ(a.final_config, b.final_config);
  EXPECT_EQ(a.best_config, b.best_config);
  EXPECT_EQ(a.best_energy, b.best_energy);
  EXPECT_EQ(a.cost_units, 500);
}

TEST(SimulatedAnneal, GenericCostPathMatchesIsingPath) {
  const auto inst = gen_spin_glass(8, complete_edges(8), CouplingDistribution::uniform(-1, 1), 8);
  const auto fast = ising_cost(inst);
  CostFunction slow;
  slow.n = 8;
  slow.evaluate = [&](const SpinConfiguration& c) { return energy(inst, c); };
  SAConfig cfg;
  cfg.sweeps = 40;
  const auto a = simulated_anneal(fast, cfg, 3);
  const auto b = simulated_anneal(slow, cfg, 3);
  EXPECT_EQ(a.final_config, b.final_config);
  EXPECT_NEAR(a.best_energy, b.best_energy, 1e-12);
}

TEST(Schedules, PaperLogTimesLogIsConstant) {
  SAConfig cfg;
  cfg.k = 0.7;
  cfg.t_start = 2.0;
  for (long sweep : {0L, 1L, 10L, 1000L, 123456L}) {
    const double t = cfg.t_start + static_cast<double>(sweep);
    EXPECT_NEAR(cfg.temperature(sweep, 9) * std::log(t), 9 / 0.7, 1e-12);
  }
  cfg.t_start = 1.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Schedules, LinearAndGeometricEndpoints) {
  SAConfig cfg;
  cfg.sweeps = 11;
  cfg.T_initial = 4.0;
  cfg.T_final = 0.25;
  cfg.schedule = TemperatureSchedule::Linear;
  EXPECT_DOUBLE_EQ(cfg.temperature(0, 3), 4.0);
  EXPECT_DOUBLE_EQ(cfg.temperature(10, 3), 0.25);
  cfg.schedule = TemperatureSchedule::Geometric;
  EXPECT_NEAR(cfg.temperature(5, 3), 1.0, 1e-14);
  EXPECT_NEAR(cfg.temperature(10, 3), 0.25, 1e-14);
}

TEST(Schedules, QuantumFieldShapes) {
  QAConfig c;
  c.gamma = 2.0;
  c.tau = 10.0;
  EXPECT_DOUBLE_EQ(c.field(0.0, 4), 1.0);
  EXPECT_NEAR(c.field(3.0, 4), std::pow(4.0, -0.5), 1e-15);
  EXPECT_EQ(c.field(10.0, 4), 0.0);
  double prev = c.field(0.0, 4);
  for (double t = 0.5; t < 10.0; t += 0.5) {
    EXPECT_LE(c.field(t, 4), prev);
    prev = c.field(t, 4);
  }
  c.schedule = GammaSchedule::Linear;
  EXPECT_DOUBLE_EQ(c.field(5.0, 4), 0.5);
}

TEST(MetropolisKernel, DetailedBalanceOnSmallSystems) {
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto inst = gen_spin_glass(n, complete_edges(n), CouplingDistribution::uniform(-1, 1), seed);
      const auto f = ising_cost(inst);
      for (double beta : {0.0, 0.7, 2.0})
        for (bool lazy : {false, true}) {
          const auto S = metropolis_matrix(f, beta, lazy);
          EXPECT_LE(detailed_balance_error(S, gibbs_state(f, beta).distribution), 1e-12);
        }
    }
}

TEST(MetropolisKernel, SampledTransitionsMatchMatrix) {
  // Empirical one-step transition frequencies of metropolis_step agree with
  // the exact kernel built independently.
  const auto inst = gen_spin_glass(2, complete_edges(2), CouplingDistribution::uniform(-1, 1), 4);
  IsingInstance with_field = inst;
  with_field.fields = {0.3, -0.6};
  const auto f = ising_cost(with_field);
  const double beta = 0.8;
  const auto S = metropolis_matrix(f, beta, true);
  Rng rng(17);
  const auto nb = with_field.neighbours();
  const long N = 40000;
  for (std::uint64_t start = 0; start < 4; ++start) {
    std::vector<long> counts(4, 0);
    for (long k = 0; k < N; ++k) {
      auto c = SpinConfiguration::from_basis_index(2, start);
      double e = f(c);
      metropolis_step(f, &nb, c, e, 1.0 / beta, true, rng);
      ++counts[c.basis_index()];
    }
    for (std::uint64_t to = 0; to < 4; ++to) {
      const double p = S.transition(static_cast<Index>(start), static_cast<Index>(to));
      const double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / N);
      EXPECT_NEAR(static_cast<double>(counts[to]) / N, p, 4 * sigma + 1e-12);
    }
  }
}

TEST(QuantumAnneal, NoDriverKeepsUniformOverlap) {
  IsingInstance inst = ferromagnetic_chain(3);
  QAConfig c;
  c.schedule = GammaSchedule::Zero;
  c.tau = 5.0;
  const auto r = quantum_anneal(inst, c);
  EXPECT_NEAR(*r.success_probability, 2.0 / 8.0, 1e-12);
  EXPECT_NEAR(r.final_state->norm(), 1.0, 1e-10);
}

TEST(QuantumAnneal, SlowRampSucceedsAndFastRampDoesWorse) {
  const IsingInstance inst = ferromagnetic_chain(2);
  // The run starts in the driver ground state, not the ground state of
  // H(0) = H0 - gamma0 driver, so gamma0 must dominate J for a clean start.
  QAConfig c;
  c.schedule = GammaSchedule::Linear;
  c.gamma0 = 5.0;
  c.tau = 50.0;
  c.dt = 0.05;
  const auto slow = quantum_anneal(inst, c);
  EXPECT_GE(*slow.success_probability, 0.95);
  EXPECT_TRUE(*slow.success);
  EXPECT_NEAR(slow.final_state->norm(), 1.0, 1e-8 * c.tau);
  c.tau = 0.5;
  c.dt = 0.005;
  const auto fast = quantum_anneal(inst, c);
  EXPECT_LT(*fast.success_probability, *slow.success_probability);
  EXPECT_GE(*fast.success_probability, 0.0);
  EXPECT_LE(*fast.success_probability, 1.0);
}

TEST(QuantumAnneal, PaperPowerScheduleRuns) {
  IsingInstance inst = ferromagnetic_chain(3);
  inst.fields[0] = 0.5;
  QAConfig c;
  c.gamma = 1.0;
  c.tau = 30.0;
  c.dt = 0.05;
  const auto a = quantum_anneal(inst, c);
  const auto b = quantum_anneal(inst, c);
  EXPECT_EQ(a.best_energy, b.best_energy);
  EXPECT_EQ(*a.success_probability, *b.success_probability);
  EXPECT_GE(*a.success_probability, 0.0);
  EXPECT_LE(*a.success_probability, 1.0);
  EXPECT_LE(*a.expected_energy, 3.0);
  EXPECT_EQ(a.cost_units, 600);
}

TEST(QuantumAnneal, DriverGroundStateRespectsSigns) {
  IsingInstance inst = IsingInstance::empty(2);
  inst.transverse = {1.0, -1.0};
  const auto psi = driver_ground_state(inst);
  const auto H = driver_hamiltonian(inst).scaled(-1.0);
  EXPECT_NEAR(H.expectation(psi), -2.0, 1e-12);
}

TEST(FreezeTime, ClosedForms) {
  EXPECT_NEAR(freeze_time(FreezeMode::Quantum, 4, 0.1, 1.0), 100.0, 1e-9);
  EXPECT_NEAR(freeze_time(FreezeMode::Classical, 4, 0.1, 1.0, 1.0) / std::exp(40.0), 1.0, 1e-14);
  EXPECT_NEAR(freeze_time(FreezeMode::Classical, 4, 0.1, 1.0, 1.0), 2.35385e17, 1e12);
  for (double d : {0.3, 0.1, 0.01, 0.001})
    EXPECT_LT(freeze_time(FreezeMode::Quantum, 6, d), freeze_time(FreezeMode::Classical, 6, d));
  EXPECT_THROW(freeze_time(FreezeMode::Quantum, 4, 1.0), InvalidArgument);
}

TEST(FreeEnergy, ArithmeticAndLimits) {
  EXPECT_NEAR(free_energy({0.5, 0.5}, {0.0, 1.0}, 1.0), 0.5 - std::log(2.0), 1e-15);
  EXPECT_NEAR(free_energy({0.5, 0.5}, {0.0, 1.0}, 1.0), -0.19315, 1e-5);
  EXPECT_EQ(free_energy({1.0, 0.0, 0.0}, {-2.0, 1.0, 3.0}, 0.0), -2.0);
  EXPECT_THROW(free_energy({1.2, -0.2}, {0, 1}, 1.0), InvalidArgument);
  EXPECT_THROW(free_energy({0.5, 0.4}, {0, 1}, 1.0), InvalidArgument);
}

TEST(FreeEnergy, GibbsIsTheMinimizer) {
  Rng rng(8);
  std::vector<double> e(8);
  for (auto& x : e) x = uniform_real(rng, -2, 2);
  const double T = 1.0;
  const double fg = free_energy(gibbs_distribution(e, T), e, T);
  // Closed form: F = -T ln Z.
  double z = 0.0;
  for (double x : e) z += std::exp(-x / T);
  EXPECT_NEAR(fg, -T * std::log(z), 1e-12);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> p(8);
    double s = 0.0;
    for (auto& x : p) s += (x = uniform01(rng));
    for (auto& x : p) x /= s;
    EXPECT_LT(fg, free_energy(p, e, T));
  }
}

TEST(RunLog, JsonLinesAreStable) {
  AnnealResult r;
  r.seed = 12;
  r.best_energy = -3.5;
  r.success = true;
  r.cost_units = 100;
  r.wall_seconds = 0.123;
  const auto rec = make_record(r, "00ff", "sa");
  EXPECT_EQ(to_json(rec).dump(),
            R"({"instance":"00ff","solver":"sa","seed":12,"best_energy":-3.5,"success":true,)"
            R"("success_probability":null,"cost_units":100,"wall_seconds":null})");
  const auto path = std::filesystem::temp_directory_path() / "aqclab_runlog_test.jsonl";
  std::filesystem::remove(path);
  append_run_log(path.string(), rec);
  append_run_log(path.string(), make_record(r, "00ff", "sa", true));
  std::ifstream in(path);
  std::string l1, l2;
  std::getline(in, l1);
  std::getline(in, l2);
  EXPECT_EQ(l1, to_json(rec).dump());
  EXPECT_NE(l2.find("\"wall_seconds\":0.123"), std::string::npos);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace aqc
