#include <gtest/gtest.h>

#include <random>

#include "matchlab/envy.hpp"
#include "matchlab/instances.hpp"
#include "matchlab/mechanisms.hpp"
#include "matchlab/oracle.hpp"
#include "test_support.hpp"

using namespace matchlab;

namespace {

std::set<std::vector<int>> as_sets(const std::vector<TradingCycle>& cycles) {
  std::set<std::vector<int>> out;
  for (const auto& c : cycles) {
    std::vector<int> v;
    for (auto i : c.nodes) v.push_back(i.value);
    out.insert(v);
  }
  return out;
}

ref::Graph adjacency(const EnvyDigraph& g) {
  ref::Graph out(static_cast<std::size_t>(g.num_nodes()));
  for (int u = 0; u < g.num_nodes(); ++u)
    for (auto v : g.successors(StudentId{u})) out[u].push_back(v.value);
  return out;
}

EnvyDigraph random_graph(int n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && static_cast<double>(rng() % 1000) < density * 1000) edges.emplace_back(u, v);
  return EnvyDigraph(n, edges);
}

}  // namespace

TEST(EnvyDigraph, EdgesMatchReference) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto P = random_problem(5, 5, 1, seed);
    const auto mu = da(P);
    const auto g = build_envy_digraph(P, mu);
    EXPECT_EQ(adjacency(g), ref::envy_graph(P, ref::assignment(mu))) << "seed " << seed;
    EXPECT_EQ(g.baseline(), mu);
  }
}

TEST(EnvyDigraph, ExampleOneEdgeList) {
  const auto P = example1(7);
  const auto text = export_edge_list(P, build_envy_digraph(P, da(P)));
  EXPECT_EQ(text,
            "i1 -> i2\ni1 -> i6\ni2 -> i1\ni2 -> i3\ni3 -> i1\ni3 -> i4\ni4 -> i1\ni4 -> i5\n"
            "i5 -> i1\ni5 -> i2\ni6 -> i1\ni6 -> i2\ni7 -> i1\n");
}

TEST(TradingCycles, CanonicalRotationAndOrder) {
  const auto c = TradingCycle::canonical({StudentId{3}, StudentId{1}, StudentId{2}});
  EXPECT_EQ(c.nodes, (std::vector<StudentId>{StudentId{1}, StudentId{2}, StudentId{3}}));
  EXPECT_TRUE(c.contains(StudentId{3}));
  EXPECT_FALSE(c.contains(StudentId{0}));
  const auto d = TradingCycle::canonical({StudentId{0}, StudentId{5}});
  EXPECT_TRUE(cycle_order(d, c));
  EXPECT_FALSE(cycle_order(c, d));
}

TEST(TradingCycles, MatchBruteForceOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto g = random_graph(2 + static_cast<int>(seed % 6), 0.35, seed);
    const auto cycles = enumerate_trading_cycles(g);
    EXPECT_TRUE(std::is_sorted(cycles.begin(), cycles.end(), cycle_order));
    EXPECT_EQ(as_sets(cycles), ref::all_cycles(adjacency(g))) << "seed " << seed;
    EXPECT_EQ(as_sets(cycles).size(), cycles.size());
  }
}

TEST(TradingCycles, CompleteGraphCount) {
  // Simple cycles of K5: sum over k of C(5,k)(k-1)!.
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v)
      if (u != v) edges.emplace_back(u, v);
  EXPECT_EQ(enumerate_trading_cycles(EnvyDigraph(5, edges)).size(), 10u + 20u + 30u + 24u);
}

TEST(TradingCycles, CapThrows) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v)
      if (u != v) edges.emplace_back(u, v);
  EXPECT_THROW(enumerate_trading_cycles(EnvyDigraph(6, edges), 50), ResourceError);
}

TEST(TradingCycles, ExampleOneHasTwoNMinusFour) {
  for (int n = 5; n <= 10; ++n) {
    const auto P = example1(n);
    const auto cycles = enumerate_trading_cycles(build_envy_digraph(P, da(P)));
    EXPECT_EQ(static_cast<int>(cycles.size()), 2 * n - 4) << "n=" << n;
  }
}

TEST(FeedbackSets, LeaveAcyclicRemainderAndAreDisjoint) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto g = random_graph(2 + static_cast<int>(seed % 6), 0.4, seed + 1000);
    const auto adj = adjacency(g);
    const auto sets = enumerate_feedback_sets(g);
    ASSERT_FALSE(sets.empty());
    for (const auto& f : sets) {
      std::vector<bool> removed(static_cast<std::size_t>(g.num_nodes()), false);
      std::size_t total = 0;
      for (const auto& c : f.cycles) {
        total += c.size();
        for (auto v : c.nodes) removed[v.value] = true;
      }
      EXPECT_EQ(total, f.covered().size()) << "cycles overlap";
      EXPECT_TRUE(ref::acyclic(adj, removed)) << "seed " << seed;
    }
  }
}

TEST(FeedbackSets, CountMatchesBruteForceOverPackings) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = random_graph(2 + static_cast<int>(seed % 5), 0.4, seed + 2000);
    const auto adj = adjacency(g);
    const auto cycles = ref::all_cycles(adj);
    const std::vector<std::vector<int>> list(cycles.begin(), cycles.end());
    // Brute force: every subset of cycles that is pairwise disjoint and
    // leaves an acyclic remainder.
    std::size_t expected = 0;
    const std::size_t k = list.size();
    if (k > 18) continue;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      std::vector<bool> removed(adj.size(), false);
      bool disjoint = true;
      for (std::size_t c = 0; c < k && disjoint; ++c)
        if (mask >> c & 1U)
          for (int v : list[c]) {
            if (removed[v]) disjoint = false;
            removed[v] = true;
          }
      if (disjoint && ref::acyclic(adj, removed)) ++expected;
    }
    EXPECT_EQ(enumerate_feedback_sets(g).size(), expected) << "seed " << seed;
  }
}

TEST(FeedbackSets, AcyclicGraphHasOnlyTheEmptySet) {
  const EnvyDigraph g(4, {{0, 1}, {1, 2}, {0, 3}});
  const auto sets = enumerate_feedback_sets(g);
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_TRUE(sets[0].cycles.empty());
}

TEST(ApplyCycles, ImprovesExactlyTheMembers) {
  const auto P = example1(7);
  const auto base = da(P);
  for (const auto& c : enumerate_trading_cycles(build_envy_digraph(P, base))) {
    const auto mu = apply_cycles(P, base, {c});
    auto members = c.nodes;
    std::sort(members.begin(), members.end());
    EXPECT_EQ(improved_set(P, mu), members);
  }
}

TEST(ApplyCycles, RejectsBadCycles) {
  const auto P = example1(7);
  const auto base = da(P);
  const auto a = TradingCycle::canonical({StudentId{0}, StudentId{1}});
  const auto b = TradingCycle::canonical({StudentId{0}, StudentId{5}});
  EXPECT_THROW(apply_cycles(P, base, {a, b}), ArgumentError);
  EXPECT_THROW(apply_cycles(P, base, {TradingCycle::canonical({StudentId{2}, StudentId{3}})}), ArgumentError);
  EXPECT_THROW(apply_cycles(P, base, {TradingCycle::canonical({StudentId{2}})}), ArgumentError);
}

TEST(CycleBlockingReport, FirstCycleOfExampleOne) {
  const auto P = example1(7);
  const auto b = cycle_blocking_report(P, {TradingCycle::canonical({StudentId{0}, StudentId{1}})});
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].student, P.student("i7"));
  EXPECT_EQ(b[0].school, P.school("s1"));
}

TEST(Decompose, RebuildsEveryDominatingMatchingWithQuotas) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto P = random_problem(5, 3, 2, seed);
    const auto base = da(P);
    const auto g = build_envy_digraph(P, base);
    for (const auto& e : enumerate_dominating_matchings(P).members) {
      const auto cycles = decompose_improvement(P, base, e.matching);
      for (const auto& c : cycles)
        for (std::size_t k = 0; k < c.size(); ++k) ASSERT_TRUE(g.has_edge(c.nodes[k], c.nodes[(k + 1) % c.size()]));
      ASSERT_EQ(apply_cycles(P, base, cycles), e.matching);
    }
  }
}
