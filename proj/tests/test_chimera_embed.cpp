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

#include <gtest/gtest.h>

#include "aqclab/embed/embedding.hpp"
#include "aqclab/embed/graph.hpp"
#include "aqclab/problem/generators.hpp"

namespace aqc {
namespace {

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

IsingInstance random_instance_on(const Graph& g, Rng& rng) {
  IsingInstance inst = IsingInstance::empty(g.size());
  for (const auto& [u, v] : g.edges()) inst.add_coupling(u, v, uniform_real(rng, -1.0, 1.0));
  for (int v = 0; v < g.size(); ++v) inst.fields[static_cast<std::size_t>(v)] = uniform_real(rng, -0.5, 0.5);
  return inst;
}

TEST(Chimera, Sizes) {
  const auto c8 = build_chimera(8, 8);
  EXPECT_EQ(c8.size(), 512);
  EXPECT_EQ(c8.edge_count(), ChimeraGraph::expected_edge_count(8, 8));
  const auto c1 = build_chimera(1, 1);
  EXPECT_EQ(c1.size(), 8);
  EXPECT_EQ(c1.edge_count(), 16u);
  EXPECT_THROW(build_chimera(0, 3), InvalidArgument);
}

TEST(Chimera, DegreesAndCellStructure) {
  const auto g = build_chimera(3, 4);
  for (int v = 0; v < g.size(); ++v) EXPECT_LE(g.degree(v), 6);
  // Cell (1, 1) is interior in both directions.
  for (int k = 0; k < 8; ++k) EXPECT_EQ(g.degree(g.vertex(1, 1, k)), 6);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) {
      int intra = 0;
      for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) intra += g.has_edge(g.vertex(r, c, a), g.vertex(r, c, b));
      EXPECT_EQ(intra, 16);
      for (int a = 0; a < 4; ++a)
        for (int b = 4; b < 8; ++b) EXPECT_TRUE(g.has_edge(g.vertex(r, c, a), g.vertex(r, c, b)));
    }
  EXPECT_TRUE(g.has_edge(g.vertex(0, 2, 1), g.vertex(1, 2, 1)));
  EXPECT_FALSE(g.has_edge(g.vertex(0, 2, 1), g.vertex(0, 3, 1)));
  EXPECT_TRUE(g.has_edge(g.vertex(0, 2, 5), g.vertex(0, 3, 5)));
  EXPECT_FALSE(g.has_edge(g.vertex(0, 2, 5), g.vertex(1, 2, 5)));
  const auto co = g.coordinate(g.vertex(2, 3, 6));
  EXPECT_EQ(co.row, 2);
  EXPECT_EQ(co.col, 3);
  EXPECT_EQ(co.k, 6);
}

TEST(Validator, DetectsEachViolation) {
  const auto hw = build_chimera(1, 1);
  const auto g = Graph::from_edges(2, {{0, 1}});
  EXPECT_TRUE(validate_embedding({{{0}, {4}}}, g, hw).ok);
  EXPECT_FALSE(validate_embedding({{{0}}}, g, hw).ok);             // wrong chain count
  EXPECT_FALSE(validate_embedding({{{0}, {}}}, g, hw).ok);         // empty chain
  EXPECT_FALSE(validate_embedding({{{0, 4}, {4}}}, g, hw).ok);     // shared vertex
  EXPECT_FALSE(validate_embedding({{{0, 1}, {4}}}, g, hw).ok);     // 0 and 1 are not adjacent
  EXPECT_FALSE(validate_embedding({{{0}, {1}}}, g, hw).ok);        // edge not covered
  EXPECT_FALSE(validate_embedding({{{0}, {99}}}, g, hw).ok);       // out of range
}

TEST(FindEmbedding, SingleEdgeInOneCell) {
  const auto hw = build_chimera(1, 1);
  const auto res = find_embedding(Graph::from_edges(2, {{0, 1}}), hw, 1);
  ASSERT_TRUE(res.success) << res.diagnostics;
  EXPECT_EQ(res.embedding.max_chain_length(), 1);
  EXPECT_TRUE(hw.has_edge(res.embedding.chains[0][0], res.embedding.chains[1][0]));
}

TEST(FindEmbedding, TriangleNeedsAChainOfTwo) {
  const auto hw = build_chimera(1, 1);
  const auto k3 = complete_graph(3);
  // Exhaustive oracle: no injective map of K3 onto single vertices works.
  int direct = 0;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c)
        if (a != b && b != c && a != c && validate_embedding({{{a}, {b}, {c}}}, k3, hw).ok) ++direct;
  EXPECT_EQ(direct, 0);
  const auto res = find_embedding(k3, hw, 2);
  ASSERT_TRUE(res.success) << res.diagnostics;
  EXPECT_EQ(res.embedding.max_chain_length(), 2);
  EXPECT_EQ(res.used_vertices, 4);
}

TEST(FindEmbedding, K5IntoTwoByTwo) {
  const auto hw = build_chimera(2, 2);
  const auto k5 = complete_graph(5);
  const auto res = find_embedding(k5, hw, 3);
  ASSERT_TRUE(res.success) << res.diagnostics;
  EXPECT_TRUE(validate_embedding(res.embedding, k5, hw).ok);
  EXPECT_EQ(res.size_guidance, 25);
}

TEST(FindEmbedding, RandomGraphsIntoFourByFour) {
  const auto hw = build_chimera(4, 4);
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + 2 * trial;
    const auto g = random_graph(n, 0.3, rng);
    const auto res = find_embedding(g, hw, 100 + trial);
    ASSERT_TRUE(res.success) << "n=" << n << ": " << res.diagnostics;
    EXPECT_TRUE(validate_embedding(res.embedding, g, hw).ok);
  }
}

TEST(FindEmbedding, DeterministicAcrossThreadCounts) {
  const auto hw = build_chimera(3, 3);
  const auto g = complete_graph(8);
  EmbedOptions one, four;
  four.threads = 4;
  const auto a = find_embedding(g, hw, 5, one);
  const auto b = find_embedding(g, hw, 5, four);
  ASSERT_TRUE(a.success && b.success);
  EXPECT_EQ(a.embedding.chains, b.embedding.chains);
  EXPECT_EQ(a.restart, b.restart);
}

TEST(FindEmbedding, ReportsFailure) {
  const auto hw = build_chimera(1, 1);
  EmbedOptions opts;
  opts.max_restarts = 2;
  opts.max_passes = 8;
  const auto res = find_embedding(complete_graph(6), hw, 1, opts);
  EXPECT_FALSE(res.success);
  EXPECT_GT(res.best_overlaps, 0);
  EXPECT_FALSE(res.diagnostics.empty());
  EXPECT_FALSE(find_embedding(complete_graph(9), hw, 1).success);
}

TEST(EmbedInstance, IdentityEmbeddingLeavesInstanceUnchanged) {
  const auto hw = build_chimera(1, 1);
  Rng rng(3);
  // Logical graph: a 4-cycle 0-4-1-5 realised directly on hardware labels.
  Graph g(8);
  g.add_edge(0, 4);
  g.add_edge(4, 1);
  g.add_edge(1, 5);
  g.add_edge(5, 0);
  const auto inst = random_instance_on(g, rng);
  MinorEmbedding id;
  for (int v = 0; v < 8; ++v) id.chains.push_back({v});
  const auto e = embed_instance(inst, id, hw);
  EXPECT_EQ(e.intra_chain_edges, 0);
  EXPECT_EQ(e.physical.couplings, inst.couplings);
  EXPECT_EQ(e.physical.fields, inst.fields);
  const auto c = SpinConfiguration::from_basis_index(8, 0x5a);
  EXPECT_EQ(unembed(c, e, inst), c);
}

TEST(EmbedInstance, SplitVertexGroundStatesAreAligned) {
  const auto hw = build_chimera(1, 1);
  Rng rng(4);
  const auto k3 = complete_graph(3);
  const auto res = find_embedding(k3, hw, 2);
  ASSERT_TRUE(res.success);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_instance_on(k3, rng);
    const auto e = embed_instance(inst, res.embedding, hw);
    const auto g = brute_force_ground(ising_cost(e.physical));
    for (const auto& m : g.minimizers) EXPECT_EQ(broken_chains(m, e), 0);
  }
}

TEST(EmbedInstance, EnergyBookkeepingForAlignedChains) {
  const auto hw = build_chimera(2, 2);
  Rng rng(5);
  int checked = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = complete_graph(4 + trial % 2);
    const auto res = find_embedding(g, hw, 50 + trial);
    ASSERT_TRUE(res.success);
    if (res.used_vertices > 12) continue;
    ++checked;
    const auto inst = random_instance_on(g, rng);
    const double cs = 0.7 + trial;
    const auto e = embed_instance(inst, res.embedding, hw, cs);
    // Lift every logical configuration to aligned chains.
    double best_aligned = std::numeric_limits<double>::infinity();
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << inst.n); ++b) {
      const auto lc = SpinConfiguration::from_basis_index(inst.n, b);
      SpinConfiguration pc = SpinConfiguration::all_up(e.physical.n);
      for (int v = 0; v < inst.n; ++v)
        for (int p : e.chains[static_cast<std::size_t>(v)]) pc[p] = lc[v];
      const double ep = energy(e.physical, pc);
      EXPECT_NEAR(ep, energy(inst, lc) - cs * e.intra_chain_edges, 1e-12);
      best_aligned = std::min(best_aligned, ep);
    }
    const double logical_ground = brute_force_ground(ising_cost(inst)).energy;
    EXPECT_NEAR(best_aligned, logical_ground - cs * e.intra_chain_edges, 1e-12);
  }
  EXPECT_GT(checked, 0);
}

TEST(EmbedInstance, StrongChainsAreNeverBroken) {
  const auto hw = build_chimera(2, 2);
  Rng rng(6);
  int checked = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const auto g = random_graph(5, 0.7, rng);
    if (g.edge_count() == 0) continue;
    const auto res = find_embedding(g, hw, 70 + trial);
    ASSERT_TRUE(res.success);
    if (res.used_vertices > 12) continue;
    ++checked;
    const auto inst = random_instance_on(g, rng);
    double sum = 0.0;
    for (const auto& [k, J] : inst.couplings) sum += std::abs(J);
    const auto e = embed_instance(inst, res.embedding, hw, 2.0 * sum);
    const auto gp = brute_force_ground(ising_cost(e.physical));
    const auto gl = brute_force_ground(ising_cost(inst));
    for (const auto& m : gp.minimizers) {
      EXPECT_EQ(broken_chains(m, e), 0);
      EXPECT_NEAR(energy(inst, unembed(m, e, inst)), gl.energy, 1e-9);
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(EmbedInstance, CouplingPlacement) {
  const auto hw = build_chimera(1, 1);
  auto inst = IsingInstance::empty(2);
  inst.add_coupling(0, 1, 1.0);
  // Chains {0, 4} and {1, 5}. Inter-chain hardware edges are 0-5 and 4-1;
  // physical labels are 0->0, 4->1, 1->2, 5->3.
  const MinorEmbedding emb{{{0, 4}, {1, 5}}};
  const auto first = embed_instance(inst, emb, hw, 3.0, CouplingPlacement::FirstEdge);
  const std::map<std::pair<int, int>, double> expect_first{{{0, 1}, 3.0}, {{0, 3}, 1.0}, {{2, 3}, 3.0}};
  EXPECT_EQ(first.physical.couplings, expect_first);
  EXPECT_EQ(first.intra_chain_edges, 2);
  const auto split = embed_instance(inst, emb, hw, 3.0, CouplingPlacement::SplitEvenly);
  const std::map<std::pair<int, int>, double> expect_split{
      {{0, 1}, 3.0}, {{0, 3}, 0.5}, {{1, 2}, 0.5}, {{2, 3}, 3.0}};
  EXPECT_EQ(split.physical.couplings, expect_split);
}

TEST(EmbedInstance, FieldsSplitAndInvalidEmbeddingRejected) {
  const auto hw = build_chimera(1, 1);
  auto inst = IsingInstance::empty(2);
  inst.add_coupling(0, 1, -1.0);
  inst.fields = {0.6, -0.3};
  MinorEmbedding emb{{{0, 4}, {5}}};
  const auto e = embed_instance(inst, emb, hw);
  EXPECT_DOUBLE_EQ(e.chain_strength, 2.0);
  EXPECT_DOUBLE_EQ(e.physical.fields[0], 0.3);
  EXPECT_DOUBLE_EQ(e.physical.fields[1], 0.3);
  EXPECT_DOUBLE_EQ(e.physical.fields[2], -0.3);
  EXPECT_THROW(embed_instance(inst, MinorEmbedding{{{0}, {1}}}, hw), InvalidArgument);
}

TEST(Unembed, MajorityAndTieBreak) {
  const auto hw = build_chimera(1, 1);
  auto inst = IsingInstance::empty(2);
  inst.add_coupling(0, 1, 1.0);  // ferromagnetic
  inst.fields = {0.0, -0.5};     // prefers spin 1 down
  MinorEmbedding emb{{{0, 4}, {5}}};
  const auto e = embed_instance(inst, emb, hw);
  // Physical order: chain 0 -> {0, 1}, chain 1 -> {2}.
  SpinConfiguration tie(std::vector<int>{1, -1, -1});
  // Candidates: (+1, -1) has E = 1 - 0.5 = 0.5; (-1, -1) has E = -1 - 0.5 = -1.5.
  EXPECT_EQ(unembed(tie, e, inst), SpinConfiguration(std::vector<int>{-1, -1}));
  SpinConfiguration aligned(std::vector<int>{1, 1, -1});
  EXPECT_EQ(unembed(aligned, e, inst), SpinConfiguration(std::vector<int>{1, -1}));
  EXPECT_EQ(broken_chains(tie, e), 1);
}

TEST(RoundTrip, HardwareSubgraphInstances) {
  const auto hw = build_chimera(2, 2);
  Rng rng(8);
  int checked = 0;
  for (int trial = 0; trial < 8; ++trial) {
    // Random subgraph of one or two cells, so the embedding can be trivial.
    Graph g(10);
    for (const auto& [u, v] : hw.edges())
      if (u < 10 && v < 10 && bernoulli(rng, 0.6)) g.add_edge(u, v);
    const auto inst = random_instance_on(g, rng);
    const auto res = find_embedding(g, hw, 200 + trial);
    ASSERT_TRUE(res.success);
    if (res.used_vertices > 14) continue;
    ++checked;
    const auto e = embed_instance(inst, res.embedding, hw);
    const auto gp = brute_force_ground(ising_cost(e.physical));
    const double el = brute_force_ground(ising_cost(inst)).energy;
    EXPECT_NEAR(energy(inst, unembed(gp.minimizers.front(), e, inst)), el, 1e-9);
  }
  EXPECT_GT(checked, 0);
}

TEST(TextFormats, EdgeListRoundTripAndErrors) {
  Rng rng(9);
  const auto g = random_graph(12, 0.4, rng);
  const auto back = parse_edge_list(write_edge_list(g));
  EXPECT_EQ(back.edges(), g.edges());
  EXPECT_EQ(back.size(), 12);
  EXPECT_EQ(parse_edge_list("# c\nvertices 3\n0 1 # x\n\n1 2\n").edge_count(), 2u);
  EXPECT_THROW(parse_edge_list("0 1\n"), InvalidArgument);
  EXPECT_THROW(parse_edge_list("vertices 2\n0 2\n"), InvalidArgument);
  EXPECT_THROW(parse_edge_list("vertices 2\n0 0\n"), InvalidArgument);
  EXPECT_THROW(parse_edge_list("vertices 2\n0 1 1\n"), InvalidArgument);
  EXPECT_THROW(parse_edge_list("vertices 2\na 1\n"), InvalidArgument);
}

TEST(TextFormats, ChainListRoundTripAndErrors) {
  const MinorEmbedding emb{{{0, 4}, {5}, {1, 6, 9}}};
  EXPECT_EQ(parse_chain_list(write_chain_list(emb)).chains, emb.chains);
  EXPECT_EQ(parse_chain_list("1: 7\n0: 4 3\n").chains, (std::vector<std::vector<int>>{{3, 4}, {7}}));
  EXPECT_THROW(parse_chain_list("0 4\n"), InvalidArgument);
  EXPECT_THROW(parse_chain_list("0: 4\n0: 5\n"), InvalidArgument);
  EXPECT_THROW(parse_chain_list("0: x\n"), InvalidArgument);
}

}  // namespace
}  // namespace aqc
