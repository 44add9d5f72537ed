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

// Minor embedding: each logical vertex becomes a connected chain of hardware
// vertices, chains are disjoint, and every logical edge is realised by at
// least one hardware edge between the two chains.
//
// The heuristic is chain growth with negotiated congestion. Chains are placed
// one at a time by multi-source Dijkstra from the chains of already placed
// neighbours, with vertex costs (1 + history) * base^usage. Overlaps are
// tolerated at first and priced up on every rip-up pass until they vanish.

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aqclab/embed/graph.hpp"
#include "aqclab/problem/ising.hpp"

namespace aqc {

struct MinorEmbedding {
  /// chains[v] lists the hardware vertices of logical vertex v, sorted.
  std::vector<std::vector<int>> chains;

  int logical_size() const { return static_cast<int>(chains.size()); }
  int physical_size() const {
    int k = 0;
    for (const auto& c : chains) k += static_cast<int>(c.size());
    return k;
  }
  int max_chain_length() const {
    int k = 0;
    for (const auto& c : chains) k = std::max(k, static_cast<int>(c.size()));
    return k;
  }
};

struct EmbeddingValidation {
  bool ok = true;
  std::vector<std::string> problems;

  std::string to_text() const {
    if (ok) return "valid";
    std::string s;
    for (const auto& p : problems) s += p + "\n";
    return s;
  }
};

/// Independent check of the three embedding invariants.
inline EmbeddingValidation validate_embedding(const MinorEmbedding& emb, const Graph& logical, const Graph& hw) {
  EmbeddingValidation r;
  auto fail = [&](std::string s) {
    r.ok = false;
    r.problems.push_back(std::move(s));
  };
  if (emb.logical_size() != logical.size()) {
    fail("embedding has " + std::to_string(emb.logical_size()) + " chains for " + std::to_string(logical.size()) +
         " logical vertices");
    return r;
  }
  std::vector<int> owner(static_cast<std::size_t>(hw.size()), -1);
  for (int v = 0; v < logical.size(); ++v) {
    const auto& chain = emb.chains[static_cast<std::size_t>(v)];
    if (chain.empty()) {
      fail("chain " + std::to_string(v) + " is empty");
      continue;
    }
    for (int q : chain) {
      if (q < 0 || q >= hw.size()) {
        fail("chain " + std::to_string(v) + " uses hardware vertex " + std::to_string(q) + " out of range");
        continue;
      }
      int& o = owner[static_cast<std::size_t>(q)];
      if (o >= 0)
        fail("hardware vertex " + std::to_string(q) + " is shared by chains " + std::to_string(o) + " and " +
             std::to_string(v));
      else
        o = v;
    }
  }
  if (!r.ok) return r;
  for (int v = 0; v < logical.size(); ++v) {
    const auto& chain = emb.chains[static_cast<std::size_t>(v)];
    std::vector<char> seen(static_cast<std::size_t>(hw.size()), 0);
    std::deque<int> q{chain.front()};
    seen[static_cast<std::size_t>(chain.front())] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int w : hw.neighbours(u))
        if (owner[static_cast<std::size_t>(w)] == v && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          ++reached;
          q.push_back(w);
        }
    }
    if (reached != chain.size()) fail("chain " + std::to_string(v) + " is not connected");
  }
  for (const auto& [a, b] : logical.edges()) {
    bool covered = false;
    for (int q : emb.chains[static_cast<std::size_t>(a)]) {
      for (int w : hw.neighbours(q))
        if (owner[static_cast<std::size_t>(w)] == b) {
          covered = true;
          break;
        }
      if (covered) break;
    }
    if (!covered) fail("logical edge (" + std::to_string(a) + ", " + std::to_string(b) + ") has no hardware edge");
  }
  return r;
}

struct EmbedOptions {
  int max_restarts = 16;
  int max_passes = 64;
  /// Restarts run in parallel batches of this size; the lowest-numbered
  /// successful restart wins, so results do not depend on the thread count.
  int threads = 1;
  /// Logical vertex limit.
  int max_logical = 256;
};

struct EmbeddingResult {
  bool success = false;
  MinorEmbedding embedding;
  int restart = -1;
  int passes = 0;
  /// Physical vertex count and the |G|^2 size guidance for comparison.
  int used_vertices = 0;
  int size_guidance = 0;
  /// On failure: the least-congested attempt and its overlap count.
  int best_overlaps = 0;
  std::string diagnostics;
};

namespace detail {

class ChainRouter {
 public:
  ChainRouter(const Graph& g, const Graph& hw, std::uint64_t seed)
      : g_(g), hw_(hw), rng_(seed),
        chains_(static_cast<std::size_t>(g.size())),
        usage_(static_cast<std::size_t>(hw.size()), 0),
        history_(static_cast<std::size_t>(hw.size()), 0.0) {}

  // Returns the number of passes used, or -1 with chains_ holding the best attempt.
  int run(int max_passes) {
    std::vector<int> order = bfs_order();
    for (int v : order) place(v, 2.0);
    for (int pass = 1; pass <= max_passes; ++pass) {
      if (overlaps() == 0) {
        prune();
        return pass;
      }
      for (int q = 0; q < hw_.size(); ++q)
        if (usage_[static_cast<std::size_t>(q)] > 1) history_[static_cast<std::size_t>(q)] += 1.0;
      const double base = std::min(2.0 + pass, static_cast<double>(hw_.size()));
      std::shuffle(order.begin(), order.end(), rng_);
      for (int v : order) {
        remove(v);
        place(v, base);
      }
    }
    if (overlaps() == 0) {
      prune();
      return max_passes;
    }
    return -1;
  }

  int overlaps() const {
    int k = 0;
    for (int u : usage_) k += std::max(0, u - 1);
    return k;
  }

  MinorEmbedding embedding() const {
    MinorEmbedding e;
    for (const auto& c : chains_) {
      std::vector<int> s(c.begin(), c.end());
      std::sort(s.begin(), s.end());
      e.chains.push_back(std::move(s));
    }
    return e;
  }

 private:
  std::vector<int> bfs_order() {
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(g_.size()), 0);
    std::vector<int> starts(static_cast<std::size_t>(g_.size()));
    std::iota(starts.begin(), starts.end(), 0);
    std::shuffle(starts.begin(), starts.end(), rng_);
    for (int s : starts) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      std::deque<int> q{s};
      seen[static_cast<std::size_t>(s)] = 1;
      while (!q.empty()) {
        const int u = q.front();
        q.pop_front();
        order.push_back(u);
        std::vector<int> nb = g_.neighbours(u);
        std::shuffle(nb.begin(), nb.end(), rng_);
        for (int w : nb)
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            q.push_back(w);
          }
      }
    }
    return order;
  }

  double weight(int q, double base) const {
    return (1.0 + history_[static_cast<std::size_t>(q)]) * std::pow(base, usage_[static_cast<std::size_t>(q)]);
  }

  void remove(int v) {
    for (int q : chains_[static_cast<std::size_t>(v)]) --usage_[static_cast<std::size_t>(q)];
    chains_[static_cast<std::size_t>(v)].clear();
  }

  void place(int v, double base) {
    std::vector<int> placed;
    for (int u : g_.neighbours(v))
      if (!chains_[static_cast<std::size_t>(u)].empty()) placed.push_back(u);
    const int N = hw_.size();
    std::vector<double> w(static_cast<std::size_t>(N));
    for (int q = 0; q < N; ++q) w[static_cast<std::size_t>(q)] = weight(q, base) * (1.0 + 1e-3 * uniform01(rng_));

    std::vector<int> chain;
    if (placed.empty()) {
      int best = 0;
      for (int q = 1; q < N; ++q)
        if (w[static_cast<std::size_t>(q)] < w[static_cast<std::size_t>(best)]) best = q;
      chain.push_back(best);
    } else {
      const double inf = std::numeric_limits<double>::infinity();
      std::vector<std::vector<double>> dist(placed.size(), std::vector<double>(static_cast<std::size_t>(N), inf));
      std::vector<std::vector<int>> pred(placed.size(), std::vector<int>(static_cast<std::size_t>(N), -1));
      std::vector<std::vector<char>> in_src(placed.size(), std::vector<char>(static_cast<std::size_t>(N), 0));
      for (std::size_t i = 0; i < placed.size(); ++i) {
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (int q : chains_[static_cast<std::size_t>(placed[i])]) {
          in_src[i][static_cast<std::size_t>(q)] = 1;
          dist[i][static_cast<std::size_t>(q)] = 0.0;
          pq.emplace(0.0, q);
        }
        while (!pq.empty()) {
          const auto [d, u] = pq.top();
          pq.pop();
          if (d > dist[i][static_cast<std::size_t>(u)]) continue;
          for (int x : hw_.neighbours(u)) {
            if (in_src[i][static_cast<std::size_t>(x)]) continue;
            const double nd = d + w[static_cast<std::size_t>(x)];
            if (nd < dist[i][static_cast<std::size_t>(x)]) {
              dist[i][static_cast<std::size_t>(x)] = nd;
              pred[i][static_cast<std::size_t>(x)] = u;
              pq.emplace(nd, x);
            }
          }
        }
      }
      int root = -1;
      double best = inf;
      for (int q = 0; q < N; ++q) {
        double total = 0.0;
        for (std::size_t i = 0; i < placed.size() && total < inf; ++i)
          total += in_src[i][static_cast<std::size_t>(q)] ? inf : dist[i][static_cast<std::size_t>(q)];
        if (total == inf) continue;
        total -= static_cast<double>(placed.size() - 1) * w[static_cast<std::size_t>(q)];
        if (total < best) {
          best = total;
          root = q;
        }
      }
      if (root < 0) {
        // Disconnected hardware region; fall back to the cheapest vertex.
        root = static_cast<int>(std::min_element(w.begin(), w.end()) - w.begin());
      }
      std::vector<char> inchain(static_cast<std::size_t>(N), 0);
      chain.push_back(root);
      inchain[static_cast<std::size_t>(root)] = 1;
      for (std::size_t i = 0; i < placed.size(); ++i) {
        int q = root;
        while (q >= 0 && !in_src[i][static_cast<std::size_t>(q)]) {
          if (!inchain[static_cast<std::size_t>(q)]) {
            inchain[static_cast<std::size_t>(q)] = 1;
            chain.push_back(q);
          }
          q = pred[i][static_cast<std::size_t>(q)];
        }
      }
    }
    for (int q : chain) ++usage_[static_cast<std::size_t>(q)];
    chains_[static_cast<std::size_t>(v)] = std::move(chain);
  }

  bool chain_connected(const std::vector<int>& chain) const {
    if (chain.empty()) return false;
    std::vector<int> s = chain;
    std::sort(s.begin(), s.end());
    std::vector<char> seen(s.size(), 0);
    std::deque<std::size_t> q{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
      const int u = s[q.front()];
      q.pop_front();
      for (int w : hw_.neighbours(u)) {
        const auto it = std::lower_bound(s.begin(), s.end(), w);
        if (it == s.end() || *it != w) continue;
        const auto k = static_cast<std::size_t>(it - s.begin());
        if (!seen[k]) {
          seen[k] = 1;
          ++reached;
          q.push_back(k);
        }
      }
    }
    return reached == s.size();
  }

  bool covers(const std::vector<int>& a, const std::vector<int>& b) const {
    for (int q : a)
      for (int w : hw_.neighbours(q))
        if (std::find(b.begin(), b.end(), w) != b.end()) return true;
    return false;
  }

  // Drops chain vertices that are needed neither for connectivity nor coverage.
  void prune() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < g_.size(); ++v) {
        auto& chain = chains_[static_cast<std::size_t>(v)];
        for (std::size_t k = 0; k < chain.size() && chain.size() > 1;) {
          std::vector<int> trial = chain;
          trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
          bool ok = chain_connected(trial);
          for (int u : g_.neighbours(v)) {
            if (!ok) break;
            ok = covers(trial, chains_[static_cast<std::size_t>(u)]);
          }
          if (ok) {
            --usage_[static_cast<std::size_t>(chain[k])];
            chain = std::move(trial);
            changed = true;
          } else {
            ++k;
          }
        }
      }
    }
  }

  const Graph& g_;
  const Graph& hw_;
  Rng rng_;
  std::vector<std::vector<int>> chains_;
  std::vector<int> usage_;
  std::vector<double> history_;
};

}  // namespace detail

inline EmbeddingResult find_embedding(const Graph& logical, const Graph& hw, std::uint64_t seed,
                                      const EmbedOptions& opts = {}) {
  if (logical.size() < 1) throw InvalidArgument("logical graph is empty");
  if (logical.size() > opts.max_logical)
    throw BudgetExceeded("logical graph exceeds " + std::to_string(opts.max_logical) + " vertices");
  if (opts.max_restarts < 1 || opts.max_passes < 1) throw InvalidArgument("restart and pass limits must be positive");
  EmbeddingResult out;
  out.size_guidance = logical.size() * logical.size();
  if (logical.size() > hw.size()) {
    out.diagnostics = "logical graph has more vertices than the hardware graph";
    return out;
  }

  struct Attempt {
    int passes = -1;
    int overlaps = std::numeric_limits<int>::max();
    MinorEmbedding emb;
  };
  const int threads = std::max(1, opts.threads);
  Attempt best_fail;
  for (int batch = 0; batch < opts.max_restarts; batch += threads) {
    const int count = std::min(threads, opts.max_restarts - batch);
    std::vector<Attempt> attempts(static_cast<std::size_t>(count));
    auto work = [&](int k) {
      detail::ChainRouter router(logical, hw, derive_seed(seed, {static_cast<std::uint64_t>(batch + k)}));
      auto& a = attempts[static_cast<std::size_t>(k)];
      a.passes = router.run(opts.max_passes);
      a.overlaps = router.overlaps();
      a.emb = router.embedding();
    };
    if (count == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int k = 0; k < count; ++k) pool.emplace_back(work, k);
      for (auto& t : pool) t.join();
    }
    for (int k = 0; k < count; ++k) {
      auto& a = attempts[static_cast<std::size_t>(k)];
      if (a.passes >= 0 && validate_embedding(a.emb, logical, hw).ok) {
        out.success = true;
        out.embedding = std::move(a.emb);
        out.restart = batch + k;
        out.passes = a.passes;
        out.used_vertices = out.embedding.physical_size();
        out.diagnostics = "embedded after " + std::to_string(out.restart + 1) + " restart(s); " +
                          std::to_string(out.used_vertices) + " physical vertices vs |G|^2 = " +
                          std::to_string(out.size_guidance);
        return out;
      }
      if (a.overlaps < best_fail.overlaps) best_fail = std::move(a);
    }
  }
  out.embedding = std::move(best_fail.emb);
  out.best_overlaps = best_fail.overlaps;
  out.used_vertices = out.embedding.physical_size();
  out.diagnostics = "no valid embedding after " + std::to_string(opts.max_restarts) + " restarts of " +
                    std::to_string(opts.max_passes) + " passes; best attempt has " +
                    std::to_string(out.best_overlaps) + " overlapping hardware vertices";
  return out;
}

// ---------------------------------------------------------------------------
// Instance embedding

enum class CouplingPlacement { FirstEdge, SplitEvenly };

struct EmbeddedInstance {
  /// Physical problem over the used hardware vertices, relabelled 0..m-1.
  IsingInstance physical;
  /// physical index -> hardware vertex.
  std::vector<int> hardware_vertex;
  /// Chains in physical indices.
  std::vector<std::vector<int>> chains;
  double chain_strength = 0.0;
  /// Number of intra-chain couplings (all hardware edges inside chains).
  int intra_chain_edges = 0;
};

/// Logical fields are split equally over the chain; each logical coupling is
/// placed on one inter-chain hardware edge (the lexicographically first) or
/// split evenly over all of them; hardware edges inside a chain get the
/// ferromagnetic coupling chain_strength. Default strength 2 max|J|.
inline EmbeddedInstance embed_instance(const IsingInstance& inst, MinorEmbedding emb, const Graph& hw,
                                       std::optional<double> chain_strength = std::nullopt,
                                       CouplingPlacement placement = CouplingPlacement::FirstEdge) {
  inst.validate();
  for (auto& chain : emb.chains) std::sort(chain.begin(), chain.end());
  const Graph logical = Graph::from_instance(inst);
  const auto check = validate_embedding(emb, logical, hw);
  if (!check.ok) throw InvalidArgument("embedding is invalid for this instance: " + check.to_text());
  EmbeddedInstance e;
  e.chain_strength = chain_strength ? *chain_strength : 2.0 * inst.max_abs_coupling();
  if (e.chain_strength < 0.0) throw InvalidArgument("chain strength must be non-negative");

  std::vector<int> index(static_cast<std::size_t>(hw.size()), -1);
  for (const auto& chain : emb.chains) {
    std::vector<int> pc;
    for (int q : chain) {
      index[static_cast<std::size_t>(q)] = static_cast<int>(e.hardware_vertex.size());
      pc.push_back(static_cast<int>(e.hardware_vertex.size()));
      e.hardware_vertex.push_back(q);
    }
    e.chains.push_back(std::move(pc));
  }
  const int m = static_cast<int>(e.hardware_vertex.size());
  e.physical = IsingInstance::empty(m);
  e.physical.offset = inst.offset;
  for (int v = 0; v < inst.n; ++v) {
    const auto& chain = emb.chains[static_cast<std::size_t>(v)];
    const double share = inst.fields[static_cast<std::size_t>(v)] / static_cast<double>(chain.size());
    for (int q : chain) {
      const int p = index[static_cast<std::size_t>(q)];
      e.physical.fields[static_cast<std::size_t>(p)] = share;
      e.physical.transverse[static_cast<std::size_t>(p)] = inst.transverse[static_cast<std::size_t>(v)];
    }
    for (int q : chain)
      for (int w : hw.neighbours(q))
        if (q < w && std::binary_search(chain.begin(), chain.end(), w)) {
          e.physical.add_coupling(index[static_cast<std::size_t>(q)], index[static_cast<std::size_t>(w)],
                                  e.chain_strength);
          ++e.intra_chain_edges;
        }
  }
  for (const auto& [key, J] : inst.couplings) {
    if (J == 0.0) continue;
    const auto& ca = emb.chains[static_cast<std::size_t>(key.first)];
    const auto& cb = emb.chains[static_cast<std::size_t>(key.second)];
    std::vector<std::pair<int, int>> links;
    for (int q : ca)
      for (int w : hw.neighbours(q))
        if (std::binary_search(cb.begin(), cb.end(), w)) links.emplace_back(q, w);
    std::sort(links.begin(), links.end());
    const std::size_t used = placement == CouplingPlacement::FirstEdge ? 1 : links.size();
    for (std::size_t k = 0; k < used; ++k)
      e.physical.add_coupling(index[static_cast<std::size_t>(links[k].first)],
                              index[static_cast<std::size_t>(links[k].second)], J / static_cast<double>(used));
  }
  return e;
}

/// Majority vote per chain. Tied chains are resolved in logical index order,
/// each taking the value with the lower logical energy given the rest.
inline SpinConfiguration unembed(const SpinConfiguration& physical, const EmbeddedInstance& e,
                                 const IsingInstance& logical) {
  if (physical.size() != e.physical.n) throw InvalidArgument("physical configuration has the wrong length");
  SpinConfiguration out = SpinConfiguration::all_up(logical.n);
  std::vector<int> tied;
  for (int v = 0; v < logical.n; ++v) {
    int sum = 0;
    for (int p : e.chains[static_cast<std::size_t>(v)]) sum += physical[p];
    if (sum == 0) tied.push_back(v);
    else out[v] = sum > 0 ? 1 : -1;
  }
  for (int v : tied) {
    SpinConfiguration up = out, down = out;
    up[v] = 1;
    down[v] = -1;
    out[v] = energy(logical, down) < energy(logical, up) ? -1 : 1;
  }
  return out;
}

/// Number of chains whose spins disagree.
inline int broken_chains(const SpinConfiguration& physical, const EmbeddedInstance& e) {
  int k = 0;
  for (const auto& chain : e.chains) {
    bool broken = false;
    for (int p : chain) broken |= physical[p] != physical[chain.front()];
    k += broken;
  }
  return k;
}

// Chain-list text: one line per logical vertex, "v: q1 q2 ...".

inline std::string write_chain_list(const MinorEmbedding& emb) {
  std::ostringstream os;
  for (int v = 0; v < emb.logical_size(); ++v) {
    os << v << ':';
    for (int q : emb.chains[static_cast<std::size_t>(v)]) os << ' ' << q;
    os << '\n';
  }
  return os.str();
}

inline MinorEmbedding parse_chain_list(std::istream& in) {
  std::string raw;
  int line = 0;
  std::vector<std::pair<int, std::vector<int>>> rows;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = raw.find(':');
    if (colon == std::string::npos) throw InvalidArgument("chain list line " + std::to_string(line) + ": missing ':'");
    std::istringstream head(raw.substr(0, colon));
    int v = -1;
    if (!(head >> v) || v < 0) throw InvalidArgument("chain list line " + std::to_string(line) + ": bad vertex");
    std::istringstream body(raw.substr(colon + 1));
    std::vector<int> chain;
    std::string tok;
    while (body >> tok) {
      try {
        std::size_t used = 0;
        chain.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw InvalidArgument("chain list line " + std::to_string(line) + ": bad hardware vertex '" + tok + "'");
      }
    }
    std::sort(chain.begin(), chain.end());
    rows.emplace_back(v, std::move(chain));
  }
  MinorEmbedding emb;
  emb.chains.resize(rows.size());
  std::vector<char> seen(rows.size(), 0);
  for (auto& [v, chain] : rows) {
    if (v >= static_cast<int>(rows.size()) || seen[static_cast<std::size_t>(v)])
      throw InvalidArgument("chain list vertices must be 0..n-1, each once");
    seen[static_cast<std::size_t>(v)] = 1;
    emb.chains[static_cast<std::size_t>(v)] = std::move(chain);
  }
  return emb;
}

inline MinorEmbedding parse_chain_list(const std::string& text) {
  std::istringstream in(text);
  return parse_chain_list(in);
}

inline MinorEmbedding read_chain_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open chain list " + path);
  return parse_chain_list(in);
}

}  // namespace aqc
