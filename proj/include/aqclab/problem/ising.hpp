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
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aqclab/core/operator.hpp"

namespace aqc {

/// Spins sigma_i in {-1, +1}. Basis bit 0 maps to +1, bit 1 to -1.
struct SpinConfiguration {
  std::vector<int> spins;

  SpinConfiguration() = default;
  explicit SpinConfiguration(std::vector<int> s) : spins(std::move(s)) {
    for (int v : spins)
      if (v != 1 && v != -1) throw InvalidArgument("spin values must be +1 or -1");
  }

  static SpinConfiguration all_up(int n) { return SpinConfiguration(std::vector<int>(static_cast<std::size_t>(n), 1)); }

  static SpinConfiguration from_basis_index(int n, std::uint64_t b) {
    SpinConfiguration c;
    c.spins.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c.spins[static_cast<std::size_t>(i)] = ((b >> i) & 1) ? -1 : 1;
    return c;
  }

  std::uint64_t basis_index() const {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < spins.size(); ++i)
      if (spins[i] == -1) b |= std::uint64_t{1} << i;
    return b;
  }

  int size() const { return static_cast<int>(spins.size()); }
  int operator[](int i) const { return spins[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return spins[static_cast<std::size_t>(i)]; }
  /// Number of spins equal to -1, i.e. the Hamming weight of the bit string.
  int hamming_weight() const {
    int w = 0;
    for (int s : spins) w += s == -1;
    return w;
  }
  SpinConfiguration flipped() const {
    SpinConfiguration c = *this;
    for (int& s : c.spins) s = -s;
    return c;
  }
  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;
};

inline int hamming_distance(const SpinConfiguration& a, const SpinConfiguration& b) {
  if (a.size() != b.size()) throw InvalidArgument("configurations differ in length");
  int d = 0;
  for (int i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

/// Transverse-field Ising problem: E = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i + offset,
/// with driver strengths Delta_i.
struct IsingInstance {
  int n = 0;
  std::map<std::pair<int, int>, double> couplings;  // keys always (i, j) with i < j
  std::vector<double> fields;
  std::vector<double> transverse;
  /// Constant energy shift; zero except for penalty expansions such as Exact Cover.
  double offset = 0.0;

  static IsingInstance empty(int n) {
    if (n < 1) throw InvalidArgument("instance needs n >= 1");
    IsingInstance inst;
    inst.n = n;
    inst.fields.assign(static_cast<std::size_t>(n), 0.0);
    inst.transverse.assign(static_cast<std::size_t>(n), 1.0);
    return inst;
  }

  /// Adds J to the (i, j) coupling, in either index order.
  void add_coupling(int i, int j, double J) {
    if (i == j) throw InvalidArgument("self-coupling is not allowed");
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n) throw InvalidArgument("coupling index out of range");
    couplings[{i, j}] += J;
  }

  double coupling(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = couplings.find({i, j});
    return it == couplings.end() ? 0.0 : it->second;
  }

  void validate() const {
    if (n < 1) throw InvalidArgument("instance needs n >= 1");
    if (fields.size() != static_cast<std::size_t>(n) || transverse.size() != static_cast<std::size_t>(n))
      throw InvalidArgument("field arrays must have length n");
    for (const auto& [key, J] : couplings) {
      const auto [i, j] = key;
      if (!(i < j) || i < 0 || j >= n) throw InvalidArgument("invalid coupling index pair");
      if (!std::isfinite(J)) throw InvalidArgument("non-finite coupling");
    }
    for (double h : fields)
      if (!std::isfinite(h)) throw InvalidArgument("non-finite field");
    for (double d : transverse)
      if (!std::isfinite(d)) throw InvalidArgument("non-finite transverse strength");
    if (!std::isfinite(offset)) throw InvalidArgument("non-finite offset");
  }

  /// Undirected edge list of nonzero couplings.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    for (const auto& [key, J] : couplings)
      if (J != 0.0) e.push_back(key);
    return e;
  }

  std::vector<std::vector<std::pair<int, double>>> neighbours() const {
    std::vector<std::vector<std::pair<int, double>>> nb(static_cast<std::size_t>(n));
    for (const auto& [key, J] : couplings) {
      nb[static_cast<std::size_t>(key.first)].emplace_back(key.second, J);
      nb[static_cast<std::size_t>(key.second)].emplace_back(key.first, J);
    }
    return nb;
  }

  double max_abs_coupling() const {
    double m = 0.0;
    for (const auto& [key, J] : couplings) m = std::max(m, std::abs(J));
    return m;
  }
};

inline double energy(const IsingInstance& inst, const SpinConfiguration& config) {
  if (config.size() != inst.n) throw InvalidArgument("configuration length does not match instance");
  double e = inst.offset;
  for (const auto& [key, J] : inst.couplings) e -= J * config[key.first] * config[key.second];
  for (int i = 0; i < inst.n; ++i) e -= inst.fields[static_cast<std::size_t>(i)] * config[i];
  return e;
}

/// Energy change from flipping spin i.
inline double flip_delta(const IsingInstance& inst, const std::vector<std::vector<std::pair<int, double>>>& nb,
                         const SpinConfiguration& config, int i) {
  double local = inst.fields[static_cast<std::size_t>(i)];
  for (const auto& [j, J] : nb[static_cast<std::size_t>(i)]) local += J * config[j];
  return 2.0 * config[i] * local;
}

/// Diagonal operator whose entry for basis state b is energy(spin_map(b)).
inline HermitianOperator problem_hamiltonian(const IsingInstance& inst) {
  inst.validate();
  std::vector<PauliTerm> terms;
  if (inst.offset != 0.0) terms.push_back(PauliTerm::identity(inst.offset));
  for (const auto& [key, J] : inst.couplings)
    if (J != 0.0) terms.push_back(PauliTerm::pair(-J, key.first, Pauli::Z, key.second, Pauli::Z));
  for (int i = 0; i < inst.n; ++i)
    if (inst.fields[static_cast<std::size_t>(i)] != 0.0)
      terms.push_back(PauliTerm::single(-inst.fields[static_cast<std::size_t>(i)], i, Pauli::Z));
  return build_operator(inst.n, std::move(terms));
}

/// sum_i Delta_i sigma_x^i. Its negative has the uniform superposition as ground state.
inline HermitianOperator driver_hamiltonian(const IsingInstance& inst) {
  inst.validate();
  std::vector<PauliTerm> terms;
  for (int i = 0; i < inst.n; ++i)
    if (inst.transverse[static_cast<std::size_t>(i)] != 0.0)
      terms.push_back(PauliTerm::single(inst.transverse[static_cast<std::size_t>(i)], i, Pauli::X));
  return build_operator(inst.n, std::move(terms));
}

enum class CostFamily { Ising, HammingSpike, VanDam, ExactCover, Custom };

inline std::string to_string(CostFamily f) {
  switch (f) {
    case CostFamily::Ising: return "ising";
    case CostFamily::HammingSpike: return "hamming-spike";
    case CostFamily::VanDam: return "van-dam";
    case CostFamily::ExactCover: return "exact-cover";
    case CostFamily::Custom: return "custom";
  }
  return "custom";
}

/// A total, deterministic cost over all 2^n spin configurations.
struct CostFunction {
  int n = 0;
  std::function<double(const SpinConfiguration&)> evaluate;
  CostFamily family = CostFamily::Custom;
  /// Present when the cost is an Ising energy; enables O(degree) flip deltas.
  std::optional<IsingInstance> ising;

  double operator()(const SpinConfiguration& c) const {
    if (c.size() != n) throw InvalidArgument("configuration length does not match cost");
    return evaluate(c);
  }
};

inline CostFunction ising_cost(IsingInstance inst, CostFamily family = CostFamily::Ising) {
  inst.validate();
  CostFunction f;
  f.n = inst.n;
  f.family = family;
  f.ising = inst;
  f.evaluate = [inst = std::move(inst)](const SpinConfiguration& c) { return energy(inst, c); };
  return f;
}

/// Cost values for every basis state (enumeration limited to 24 spins).
inline RVector cost_diagonal(const CostFunction& cost) {
  if (cost.n > 24) throw BudgetExceeded("cost enumeration limited to n <= 24");
  const std::uint64_t dim = std::uint64_t{1} << cost.n;
  RVector d(static_cast<Index>(dim));
  for (std::uint64_t b = 0; b < dim; ++b) d[static_cast<Index>(b)] = cost(SpinConfiguration::from_basis_index(cost.n, b));
  return d;
}

inline HermitianOperator cost_hamiltonian(const CostFunction& cost) {
  if (cost.ising) return problem_hamiltonian(*cost.ising);
  return HermitianOperator::diagonal(cost_diagonal(cost), cost.n);
}

struct GroundTruth {
  double energy = 0.0;
  std::vector<SpinConfiguration> minimizers;
};

/// Exact minimum and all minimizers by exhaustive enumeration (n <= 24).
/// Energies within tie_tol of the minimum count as minimizers.
inline GroundTruth brute_force_ground(const CostFunction& cost, double tie_tol = 1e-9) {
  if (cost.n < 1) throw InvalidArgument("cost needs n >= 1");
  if (cost.n > 24) throw BudgetExceeded("brute-force enumeration limited to n <= 24");
  const std::uint64_t dim = std::uint64_t{1} << cost.n;
  std::vector<double> values(dim);
  if (cost.ising) {
    // Gray-code walk with O(degree) updates.
    const auto& inst = *cost.ising;
    const auto nb = inst.neighbours();
    SpinConfiguration c = SpinConfiguration::all_up(cost.n);
    double e = energy(inst, c);
    values[0] = e;
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < dim; ++k) {
      const int bit = std::countr_zero(k);
      e += flip_delta(inst, nb, c, bit);
      c[bit] = -c[bit];
      gray ^= std::uint64_t{1} << bit;
      values[gray] = e;
    }
  } else {
    for (std::uint64_t b = 0; b < dim; ++b) values[b] = cost(SpinConfiguration::from_basis_index(cost.n, b));
  }
  // Incremental sums drift slightly, so candidates are re-evaluated exactly.
  const double approx_min = *std::min_element(values.begin(), values.end());
  const double loose = approx_min + 1e-6 * std::max(1.0, std::abs(approx_min));
  std::vector<std::pair<double, std::uint64_t>> candidates;
  for (std::uint64_t b = 0; b < dim; ++b)
    if (values[b] <= loose) candidates.emplace_back(cost(SpinConfiguration::from_basis_index(cost.n, b)), b);
  GroundTruth g;
  g.energy = std::min_element(candidates.begin(), candidates.end())->first;
  const double cut = g.energy + tie_tol * std::max(1.0, std::abs(g.energy));
  for (const auto& [e, b] : candidates)
    if (e <= cut) g.minimizers.push_back(SpinConfiguration::from_basis_index(cost.n, b));
  return g;
}

}  // namespace aqc
