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

// Acceptance suite: one PASS/FAIL line per criterion, each with its own
// tolerance and wall-clock limit. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "aqclab/adiabatic/engine.hpp"
#include "aqclab/adiabatic/path.hpp"
#include "aqclab/adiabatic/zeno.hpp"
#include "aqclab/anneal/thermo.hpp"
#include "aqclab/bench/metrics.hpp"
#include "aqclab/bridge/conductance.hpp"
#include "aqclab/bridge/markov.hpp"
#include "aqclab/clock/circuit.hpp"
#include "aqclab/clock/history.hpp"
#include "aqclab/core/eigensolver.hpp"
#include "aqclab/core/propagate.hpp"
#include "aqclab/embed/embedding.hpp"
#include "aqclab/embed/graph.hpp"
#include "aqclab/problem/generators.hpp"

using namespace aqc;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << "exception: " << e.what() << "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.ok = false;
    o.detail << "runtime " << secs << " s exceeds " << limit_s << " s; ";
  }
  if (!o.ok) ++failures;
  std::printf("%s criterion %2d: %s [%.3f s / %.0f s] %s\n", o.ok ? "PASS" : "FAIL", id, title, secs, limit_s,
              o.detail.str().c_str());
  std::fflush(stdout);
}

double max_abs(const CVector& a, const CVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

InterpolationPath single_qubit_path() {
  const auto H0 = build_operator(1, {PauliTerm::identity(0.5), PauliTerm::single(-0.5, 0, Pauli::X)});
  const auto HT = build_operator(1, {PauliTerm::identity(0.5), PauliTerm::single(-0.5, 0, Pauli::Z)});
  return InterpolationPath::linear(H0, HT);
}

InterpolationPath three_spin_path() {
  IsingInstance inst = ferromagnetic_chain(3);
  inst.fields[0] = 0.5;
  return InterpolationPath::linear(driver_hamiltonian(inst).scaled(-1.0), problem_hamiltonian(inst));
}

long repeats_by_multiplication(double s, double p) {
  double fail = 1.0;
  for (long R = 1;; ++R) {
    fail *= 1.0 - s;
    if (1.0 - fail >= p) return R;
  }
}

SolverReport synthetic_report(const std::string& name, const std::vector<double>& s, const std::vector<double>& t) {
  SolverReport r;
  r.solver = name;
  for (std::size_t i = 0; i < s.size(); ++i) {
    InstanceOutcome o;
    o.id = "i" + std::to_string(i);
    o.runs = 1000;
    o.successes = static_cast<int>(std::lround(s[i] * 1000));
    o.t_a = t[i];
    r.instances.push_back(o);
  }
  return r;
}

}  // namespace

int main() {
  criterion(1, "Grover circuit exactness", 1.0, [](Outcome& o) {
    const auto circ = grover_circuit(2);
    const auto h = history_vector(circ, StateVector::qubit_basis(2, 0));
    CVector post(4), fin(4);
    post << 0.5, 0.5, -0.5, 0.5;
    fin << 0, 0, 1, 0;
    const double e_post = max_abs(h.alphas[3], post);
    const double e_fin = max_abs(h.alphas[4], fin);
    o.require(e_post <= 1e-12, "post-oracle amplitudes");
    o.require(e_fin <= 1e-12, "final amplitudes");
    const auto ch = clock_hamiltonian(circ, true);
    const double res = ch.total().apply(h.eta.amplitudes()).norm();
    o.require(res <= 1e-12, "compiled Hamiltonian annihilates the history state");
    o.detail << "post err " << e_post << ", final err " << e_fin << ", H eta " << res;
  });

  criterion(2, "history-state spectral suite, 20 random circuits", 30.0, [](Outcome& o) {
    Rng rng(2026);
    double worst_res = 0, worst_min = 0, worst_toep = 0, worst_gap = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + trial % 3;
      const int L = 1 + static_cast<int>(uniform_index(rng, 8));
      const auto circ = random_circuit(n, L, rng);
      const StateVector input = StateVector::qubit_basis(n, uniform_index(rng, std::uint64_t{1} << n));
      const auto h = history_vector(circ, input);
      const auto ch = clock_hamiltonian(circ, false);
      worst_res = std::max(worst_res, ch.propagation.apply(h.eta.amplitudes()).norm());
      Eigen::SelfAdjointEigenSolver<CMatrix> es(ch.propagation.dense(), Eigen::EigenvaluesOnly);
      worst_min = std::min(worst_min, es.eigenvalues().minCoeff());
      const RMatrix T = reduced_toeplitz(circ, input);
      worst_toep = std::max(worst_toep, (T - clock_chain_matrix(L)).cwiseAbs().maxCoeff());
      for (Index i = 0; i < T.rows(); ++i)
        for (Index j = 0; j < T.cols(); ++j)
          if (std::abs(i - j) > 1) o.require(T(i, j) == 0.0, "reduced matrix is tridiagonal");
      for (Index i = 1; i + 1 < T.rows(); ++i) o.require(std::abs(T(i, i) - T(1, 1)) <= 1e-12, "constant diagonal");
      for (Index i = 0; i + 1 < T.rows(); ++i)
        o.require(std::abs(T(i, i + 1) - T(0, 1)) <= 1e-12, "constant off-diagonal");
      Eigen::SelfAdjointEigenSolver<RMatrix> et(T);
      const double gap = et.eigenvalues()[1] - et.eigenvalues()[0];
      worst_gap = std::max(worst_gap, std::abs(gap - (1.0 - std::cos(M_PI / (L + 1)))));
    }
    o.require(worst_res <= 1e-10, "H_P eta residual");
    o.require(worst_min >= -1e-10, "H_P positive semidefinite");
    o.require(worst_toep <= 1e-12, "reduced matrix equals the clock chain");
    o.require(worst_gap <= 1e-9, "gap formula");
    o.detail << "max residual " << worst_res << ", min eigenvalue " << worst_min << ", Toeplitz err " << worst_toep
             << ", gap err " << worst_gap;
  });

  criterion(3, "conductance bounds on clock chains", 10.0, [](Outcome& o) {
    for (int L : {4, 8, 16, 32}) {
      const auto [P, d] = perron_stochasticize(clock_chain_matrix(L));
      const auto r = gap_bounds_check(P, d.limiting, L, 0.0);
      o.require(r.phi_exact, "exact conductance");
      o.require(*r.clock_bound_holds, "phi >= 1/(6L) at L=" + std::to_string(L));
      o.require(r.cheeger_holds, "gap >= phi^2/2 at L=" + std::to_string(L));
      o.detail << "L=" << L << " phi=" << r.phi << " gap=" << r.gap << "; ";
    }
  });

  criterion(4, "Gibbs quantization, 25 costs x 4 temperatures", 30.0, [](Outcome& o) {
    double worst_db = 0, worst_res = 0, min_gap = 1e300, worst_overlap = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const auto f = ising_cost(gen_spin_glass(3, complete_edges(3), CouplingDistribution::uniform(-1, 1), 400 + seed));
      for (double beta : {0.0, 0.5, 1.0, 2.0}) {
        const auto S = metropolis_matrix(f, beta, seed % 2 == 1);
        const auto g = gibbs_state(f, beta);
        worst_db = std::max(worst_db, detailed_balance_error(S, g.distribution));
        const auto H = quantize(S, f, beta);
        worst_res = std::max(worst_res, H.apply(g.psi.amplitudes()).norm());
        const auto sp = lowest_eigenpairs(H, 2, -1.0, {.method = EigenMethod::Dense});
        min_gap = std::min(min_gap, sp.gap());
        o.require(std::abs(sp.eigenvalues[0]) <= 1e-10, "ground energy is 0");
        worst_overlap = std::max(worst_overlap, 1.0 - sp.eigenvectors[0].overlap2(g.psi));
      }
    }
    o.require(worst_db <= 1e-12, "detailed balance");
    o.require(worst_res <= 1e-10, "H psi residual");
    o.require(min_gap > 1e-9, "unique ground state");
    o.require(worst_overlap <= 1e-9, "ground state is psi_beta");
    o.detail << "detailed balance " << worst_db << ", residual " << worst_res << ", min gap " << min_gap;
  });

  criterion(5, "adiabatic mechanism on 1- and 3-spin paths", 120.0, [](Outcome& o) {
    for (const auto& [name, p] : {std::pair{"1-qubit", single_qubit_path()}, std::pair{"3-spin", three_spin_path()}}) {
      const double est = adiabatic_time_estimate(gap_profile(p, 201));
      const double slow = run_adiabatic(p, 100 * est, 0.05).success;
      const double fast = run_adiabatic(p, est / 100, 0.001).success;
      o.require(slow >= 0.99, std::string(name) + " slow success");
      o.require(fast < 0.9, std::string(name) + " fast failure");
      o.detail << name << ": estimate " << est << ", slow " << slow << ", fast " << fast << "; ";
    }
  });

  criterion(6, "freeze-time and Zeno cost formulas", 1.0, [](Outcome& o) {
    auto sig6 = [](double a, double b) { return std::abs(a - b) <= 5e-6 * std::abs(b); };
    const double q = freeze_time(FreezeMode::Quantum, 4, 0.1, 1.0);
    const double c = freeze_time(FreezeMode::Classical, 4, 0.1, 1.0, 1.0);
    const double z = zeno_cost(10, 0.9, 0.1);
    // Independent closed forms: 0.1^-2 = 100, e^40, 100 ln(100) / 0.01.
    o.require(sig6(q, 100.0), "quantum freeze time");
    o.require(sig6(c, 2.35385266837020e17), "classical freeze time");
    o.require(sig6(z, 4.60517018598809e4), "Zeno cost");
    o.require(std::abs(c / 2.35e17 - 1.0) < 5e-3, "classical freeze time rounds to 2.35e17");
    char buf[160];
    std::snprintf(buf, sizeof buf, "quantum %.6g, classical %.6g, zeno %.6g", q, c, z);
    o.detail << buf;
  });

  criterion(7, "Exact Cover generator, 50 instances", 60.0, [](Outcome& o) {
    double ratio = 0.0;
    for (int k = 0; k < 50; ++k) {
      const int n = 6 + k % 11;
      const auto ec = gen_exact_cover(n, 7000 + static_cast<std::uint64_t>(k));
      int sat = 0;
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b)
        sat += exact_cover_cost(ec.clauses, SpinConfiguration::from_basis_index(n, b)) == 0.0;
      o.require(sat == 1, "unique satisfying assignment, n=" + std::to_string(n));
      o.require(exact_cover_cost(ec.clauses, ec.solution) == 0.0, "reported solution satisfies");
      ratio += static_cast<double>(ec.clauses.size()) / n / 50.0;
    }
    o.require(ratio >= 0.8 && ratio <= 1.3, "mean clause/variable ratio in [0.8, 1.3]");
    o.detail << "mean clause/variable ratio " << ratio;
  });

  criterion(8, "Chimera graph and embedding pipeline", 120.0, [](Outcome& o) {
    const auto c8 = build_chimera(8, 8);
    o.require(c8.size() == 512, "8x8 Chimera has 512 vertices");
    const auto hw = build_chimera(4, 4);
    Rng rng(88);
    int embedded = 0, round_trips = 0, max_phys = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 3 + trial % 18;
      const auto g = random_graph(n, 0.3, rng);
      const auto res = find_embedding(g, hw, 800 + static_cast<std::uint64_t>(trial));
      o.require(res.success, "embedding found, n=" + std::to_string(n));
      if (!res.success) continue;
      o.require(validate_embedding(res.embedding, g, hw).ok, "validator, n=" + std::to_string(n));
      ++embedded;
      max_phys = std::max(max_phys, res.used_vertices);
      if (res.used_vertices > 12) continue;
      IsingInstance inst = IsingInstance::empty(n);
      for (const auto& [u, v] : g.edges()) inst.add_coupling(u, v, uniform_real(rng, -1.0, 1.0));
      for (auto& h : inst.fields) h = uniform_real(rng, -0.5, 0.5);
      const auto e = embed_instance(inst, res.embedding, hw);
      const auto gp = brute_force_ground(ising_cost(e.physical));
      const double logical_ground = brute_force_ground(ising_cost(inst)).energy;
      for (const auto& m : gp.minimizers)
        o.require(std::abs(energy(inst, unembed(m, e, inst)) - logical_ground) <= 1e-9,
                  "unembedded physical ground is a logical ground, n=" + std::to_string(n));
      ++round_trips;
    }
    o.require(round_trips > 0, "at least one instance small enough for the round trip");
    o.detail << embedded << "/20 embedded, " << round_trips << " round trips with <= 12 physical spins";
  });

  criterion(9, "benchmark metrics", 30.0, [](Outcome& o) {
    o.require(repeats_needed(0.5, 0.99) == 7, "repeats_needed(0.5, 0.99) = 7");
    Rng rng(99);
    std::vector<double> sa, sb, ta, tb;
    for (int i = 0; i < 100; ++i) {
      sa.push_back(std::round(uniform_real(rng, 0.001, 1.0) * 1000) / 1000);
      sb.push_back(std::round(uniform_real(rng, 0.001, 1.0) * 1000) / 1000);
      ta.push_back(uniform_real(rng, 1.0, 10.0));
      tb.push_back(uniform_real(rng, 1.0, 10.0));
    }
    const auto r = speedup_metrics(synthetic_report("a", sa, ta), synthetic_report("b", sb, tb));
    auto median_rank = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      return v[49];
    };
    const double s0a = median_rank(sa), s0b = median_rank(sb);
    double num = 0, den = 0, quo = 0;
    int na = 0, nb = 0;
    for (int i = 0; i < 100; ++i) {
      const double TA = repeats_by_multiplication(sa[i], 0.99) * ta[i];
      const double TB = repeats_by_multiplication(sb[i], 0.99) * tb[i];
      if (sa[i] <= s0a) num += TA, ++na;
      if (sb[i] <= s0b) den += TB, quo += TA / TB, ++nb;
    }
    const double e1 = std::abs(r.quotient_of_quantiles - (num / na) / (den / nb));
    const double e2 = std::abs(r.quantile_of_quotient - quo / nb);
    o.require(e1 <= 1e-12 && e2 <= 1e-12, "speedup metrics match recomputation");

    std::vector<double> bi, uni;
    for (int i = 0; i < 400; ++i) {
      bi.push_back(std::clamp((i % 2 ? 0.95 : 0.05) + 0.02 * standard_normal(rng), 0.0, 1.0));
      uni.push_back(std::clamp(0.5 + 0.1 * standard_normal(rng), 0.0, 1.0));
    }
    const auto hb = success_histogram(bi), hu = success_histogram(uni);
    o.require(hb.sarle && *hb.sarle > 5.0 / 9.0, "bimodal Sarle > 5/9");
    o.require(hu.sarle && *hu.sarle < 5.0 / 9.0, "unimodal Sarle < 5/9");
    o.detail << "speedup errs " << e1 << ", " << e2 << "; Sarle bimodal " << hb.sarle.value_or(NAN) << ", unimodal "
             << hu.sarle.value_or(NAN);
  });

  criterion(10, "imaginary time, dense eigensolver and enumeration agree", 60.0, [](Outcome& o) {
    double worst_e = 0, worst_state = 0;
    for (int k = 0; k < 20; ++k) {
      const int n = 2 + k % 7;
      Rng rng(1000 + static_cast<std::uint64_t>(k));
      IsingInstance inst = gen_spin_glass(n, random_edges(n, 0.6, rng), CouplingDistribution::uniform(-1, 1),
                                          2000 + static_cast<std::uint64_t>(k));
      for (auto& h : inst.fields) h = uniform_real(rng, -0.3, 0.3);
      const auto cost = ising_cost(inst);
      const auto bf = brute_force_ground(cost);
      if (bf.minimizers.size() != 1) {
        o.require(false, "random fields give a unique minimizer");
        continue;
      }
      const auto H = problem_hamiltonian(inst);
      const auto dense = lowest_eigenpairs(H, 2, -1.0, {.method = EigenMethod::Dense});
      // Relax long enough that the excited weight exp(-gap tau) is negligible.
      const double tau = 40.0 / dense.gap();
      const auto it = evolve_imaginary(H, StateVector::uniform(H.dim()), tau, tau / 50.0);
      const double e_it = H.expectation(it.state);
      const StateVector exact = StateVector::basis(H.dim(), static_cast<Index>(bf.minimizers[0].basis_index()));
      worst_e = std::max({worst_e, std::abs(dense.eigenvalues[0] - bf.energy), std::abs(e_it - bf.energy)});
      worst_state = std::max({worst_state, 1.0 - dense.eigenvectors[0].overlap2(exact), 1.0 - it.state.overlap2(exact)});

      // With a transverse field enumeration no longer applies; relaxation and
      // the dense solver must still agree.
      const auto Hq = problem_hamiltonian(inst).combine(1.0, driver_hamiltonian(inst), -0.5);
      const auto dq = lowest_eigenpairs(Hq, 2, -1.0, {.method = EigenMethod::Dense});
      const double tq = 40.0 / dq.gap();
      const auto iq = evolve_imaginary(Hq, StateVector::uniform(Hq.dim()), tq, std::min(0.5, tq / 50.0));
      worst_e = std::max(worst_e, std::abs(Hq.expectation(iq.state) - dq.eigenvalues[0]));
      worst_state = std::max(worst_state, 1.0 - iq.state.overlap2(dq.eigenvectors[0]));
    }
    o.require(worst_e <= 1e-6, "ground energies agree");
    o.require(worst_state <= 1e-6, "ground states agree");
    o.detail << "max energy diff " << worst_e << ", max infidelity " << worst_state;
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
