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

// Seeded instance generators: spin glasses on a given edge set, random
// one-in-three Exact Cover with a unique solution, and the Hamming-weight
// cost families (van Dam's narrow-basin function and a barrier "spike").

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "aqclab/core/random.hpp"
#include "aqclab/problem/ising.hpp"

namespace aqc {

using EdgeList = std::vector<std::pair<int, int>>;

inline EdgeList chain_edges(int n) {
  EdgeList e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

inline EdgeList complete_edges(int n) {
  EdgeList e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

/// Erdos-Renyi G(n, p) edge set.
inline EdgeList random_edges(int n, double p, Rng& rng) {
  EdgeList e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (bernoulli(rng, p)) e.emplace_back(i, j);
  return e;
}

/// Ferromagnetic chain -J sum s_i s_{i+1} - h sum s_i.
inline IsingInstance ferromagnetic_chain(int n, double J = 1.0, double h = 0.0) {
  IsingInstance inst = IsingInstance::empty(n);
  for (auto [i, j] : chain_edges(n)) inst.add_coupling(i, j, J);
  for (auto& f : inst.fields) f = h;
  return inst;
}

/// Coupling distribution: a finite value set drawn uniformly (default {-1, +1})
/// or a continuous uniform interval.
struct CouplingDistribution {
  std::vector<double> values{-1.0, 1.0};
  std::optional<std::pair<double, double>> interval;

  static CouplingDistribution plus_minus_one() { return {}; }
  static CouplingDistribution uniform(double lo, double hi) { return {{}, std::make_pair(lo, hi)}; }

  double draw(Rng& rng) const {
    if (interval) return uniform_real(rng, interval->first, interval->second);
    if (values.empty()) throw InvalidArgument("empty coupling value set");
    return values[uniform_index(rng, values.size())];
  }
};

inline IsingInstance gen_spin_glass(int n, const EdgeList& edges, const CouplingDistribution& dist,
                                    std::uint64_t seed) {
  IsingInstance inst = IsingInstance::empty(n);
  Rng rng(seed);
  for (auto [i, j] : edges) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw InvalidArgument("invalid edge in spin-glass edge set");
    inst.add_coupling(i, j, dist.draw(rng));
  }
  return inst;
}

struct ExactCoverInstance {
  int n = 0;
  std::vector<std::array<int, 3>> clauses;
  CostFunction cost;
  /// The same cost expanded into Ising form (quadratic penalty plus offset).
  IsingInstance ising;
  SpinConfiguration solution;
  double clause_ratio = 0.0;
  /// Number of regenerations with a perturbed seed before success.
  int regenerations = 0;
  std::uint64_t seed_used = 0;
};

struct ExactCoverOptions {
  int max_regenerations = 10000;
};

/// x_i = 1 exactly when spin i is -1 (basis bit set).
inline double exact_cover_cost(const std::vector<std::array<int, 3>>& clauses, const SpinConfiguration& c) {
  double e = 0.0;
  for (const auto& cl : clauses) {
    const int s = (c[cl[0]] == -1) + (c[cl[1]] == -1) + (c[cl[2]] == -1);
    e += static_cast<double>((s - 1) * (s - 1));
  }
  return e;
}

/// (x_i + x_j + x_k - 1)^2 with x = (1 - s)/2 expands to
/// 1 - (s_i + s_j + s_k)/2 + (s_i s_j + s_i s_k + s_j s_k)/2.
inline IsingInstance exact_cover_to_ising(int n, const std::vector<std::array<int, 3>>& clauses) {
  IsingInstance inst = IsingInstance::empty(n);
  for (const auto& cl : clauses) {
    inst.offset += 1.0;
    for (int a = 0; a < 3; ++a) {
      inst.fields[static_cast<std::size_t>(cl[static_cast<std::size_t>(a)])] += 0.5;
      for (int b = a + 1; b < 3; ++b)
        inst.add_coupling(cl[static_cast<std::size_t>(a)], cl[static_cast<std::size_t>(b)], -0.5);
    }
  }
  return inst;
}

/// Random one-in-three Exact Cover: clauses over random variable triples are
/// added until exactly one assignment satisfies all of them. A clause that
/// would leave no solution ends the attempt and the generator restarts with
/// a perturbed seed.
inline ExactCoverInstance gen_exact_cover(int n, std::uint64_t seed, const ExactCoverOptions& opts = {}) {
  if (n < 3) throw InvalidArgument("exact cover needs n >= 3");
  if (n > 24) throw BudgetExceeded("exact cover generation enumerates assignments; n <= 24");
  const std::uint32_t dim = std::uint32_t{1} << n;
  for (int attempt = 0; attempt <= opts.max_regenerations; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : mix_seed(seed + static_cast<std::uint64_t>(attempt));
    Rng rng(s);
    std::vector<std::uint32_t> sat(dim);
    for (std::uint32_t b = 0; b < dim; ++b) sat[b] = b;
    std::vector<std::array<int, 3>> clauses;
    while (sat.size() > 1) {
      std::array<int, 3> cl{};
      cl[0] = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
      do cl[1] = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
      while (cl[1] == cl[0]);
      do cl[2] = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
      while (cl[2] == cl[0] || cl[2] == cl[1]);
      std::sort(cl.begin(), cl.end());
      const std::uint32_t mask = (1u << cl[0]) | (1u << cl[1]) | (1u << cl[2]);
      std::vector<std::uint32_t> next;
      next.reserve(sat.size());
      for (auto b : sat)
        if (std::popcount(b & mask) == 1) next.push_back(b);
      if (next.empty()) break;
      sat = std::move(next);
      clauses.push_back(cl);
    }
    if (sat.size() != 1) continue;
    ExactCoverInstance out;
    out.n = n;
    out.clauses = clauses;
    out.solution = SpinConfiguration::from_basis_index(n, sat.front());
    out.clause_ratio = static_cast<double>(clauses.size()) / n;
    out.regenerations = attempt;
    out.seed_used = s;
    out.ising = exact_cover_to_ising(n, clauses);
    out.cost.n = n;
    out.cost.family = CostFamily::ExactCover;
    out.cost.evaluate = [clauses](const SpinConfiguration& c) { return exact_cover_cost(clauses, c); };
    return out;
  }
  throw ConvergenceError("exact cover generation exhausted its regeneration budget", 0.0);
}

enum class HammingKind { Spike, VanDam };

struct HammingParams {
  HammingKind kind = HammingKind::VanDam;
  int n = 0;
  /// van Dam: weights below (1 + epsilon) n / 2 cost their weight, others -1.
  double epsilon = 0.0;
  /// Spike: barrier of this height for |weight - position| < width.
  double width = 1.0;
  double height = 0.0;
  /// Spike centre; defaults to n / 4.
  std::optional<double> position;
};

inline double hamming_cost_value(const HammingParams& p, int weight) {
  if (p.kind == HammingKind::VanDam) {
    const double threshold = (1.0 + p.epsilon) * p.n / 2.0;
    return weight < threshold ? static_cast<double>(weight) : -1.0;
  }
  const double centre = p.position.value_or(p.n / 4.0);
  const double barrier = std::abs(weight - centre) < p.width ? p.height : 0.0;
  return weight + barrier;
}

inline CostFunction gen_hamming_family(const HammingParams& p) {
  if (p.n < 1) throw InvalidArgument("hamming family needs n >= 1");
  CostFunction f;
  f.n = p.n;
  f.family = p.kind == HammingKind::VanDam ? CostFamily::VanDam : CostFamily::HammingSpike;
  f.evaluate = [p](const SpinConfiguration& c) { return hamming_cost_value(p, c.hamming_weight()); };
  return f;
}

}  // namespace aqc
