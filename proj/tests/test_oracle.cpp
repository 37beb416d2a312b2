#include <gtest/gtest.h>

#include "matchlab/envy.hpp"
#include "matchlab/instances.hpp"
#include "matchlab/mechanisms.hpp"
#include "matchlab/oracle.hpp"
#include "test_support.hpp"

using namespace matchlab;

namespace {

std::set<ref::Assignment> reference_dominating(const SchoolChoiceProblem& P) {
  const auto base = ref::gale_shapley(P);
  std::set<ref::Assignment> out;
  for (const auto& a : ref::feasible_assignments(P))
    if (ref::weakly_dominates(P, a, base)) out.insert(a);
  return out;
}

}  // namespace

TEST(Dominating, MatchesReferenceEnumeration) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto P = seed % 2 ? random_problem(5, 5, 1, seed) : random_problem(5, 3, 2, seed);
    const auto set = enumerate_dominating_matchings(P);
    std::set<ref::Assignment> got;
    for (const auto& e : set.members) got.insert(ref::assignment(e.matching));
    EXPECT_EQ(got, reference_dominating(P)) << "seed " << seed;
    EXPECT_NE(set.find(set.baseline), nullptr);
    for (const auto& e : set.members) {
      EXPECT_EQ(e.pareto_efficient, ref::pareto_efficient(P, ref::assignment(e.matching)));
      EXPECT_EQ(e.improved, improved_over(P, e.matching, set.baseline));
      EXPECT_EQ(e.blocking, blocking_pairs(P, e.matching));
    }
  }
}

TEST(Dominating, ExampleOneCountEqualsDisjointCyclePackings) {
  const auto P = example1(7);
  const auto set = enumerate_dominating_matchings(P);
  const auto g = ref::envy_graph(P, ref::assignment(da(P)));
  const auto cycles = ref::all_cycles(g);
  const long long packings = ref::count_disjoint_packings({cycles.begin(), cycles.end()});
  EXPECT_EQ(static_cast<long long>(set.members.size()), packings);
  EXPECT_EQ(packings, 12);
}

TEST(Dominating, EfficientMembersAreFeedbackSetApplications) {
  const auto P = example1(7);
  const auto base = da(P);
  std::set<Matching> from_feedback;
  for (const auto& f : enumerate_feedback_sets(build_envy_digraph(P, base)))
    from_feedback.insert(apply_cycles(P, base, f.cycles));
  std::set<Matching> efficient;
  for (const auto& e : pareto_frontier_over_da(P).efficient) efficient.insert(e.matching);
  EXPECT_EQ(efficient, from_feedback);
}

TEST(Guard, ThrowsBeforeSearching) {
  const auto P = random_problem(10, 10, 1, 3);
  EXPECT_THROW(enumerate_feasible_matchings(P, 1e3), ResourceError);
  EXPECT_THROW(enumerate_dominating_matchings(example1(10), 10), ResourceError);
  try {
    enumerate_feasible_matchings(P, 1e3);
  } catch (const ResourceError& e) {
    EXPECT_GT(e.bound(), e.limit());
    EXPECT_EQ(e.limit(), 1e3);
  }
}

TEST(Feasible, MatchesReferenceCount) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto P = random_problem(4, 3, 2, seed);
    EXPECT_EQ(enumerate_feasible_matchings(P).size(), ref::feasible_assignments(P).size());
  }
}

TEST(Stable, MatchesReference) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto P = random_problem(4, 4, 1, seed);
    std::size_t expected = 0;
    for (const auto& a : ref::feasible_assignments(P)) {
      std::vector<SchoolId> v;
      for (int s : a) v.push_back(SchoolId{s});
      expected += is_stable(P, Matching(v)) ? 1 : 0;
    }
    const auto stable = enumerate_stable_matchings(P);
    EXPECT_EQ(stable.size(), expected);
    EXPECT_NE(std::find(stable.begin(), stable.end(), da(P)), stable.end());
  }
}

TEST(Efficiency, DaIsUsuallyNotEfficientButEadaIs) {
  const auto P = example1(7);
  EXPECT_FALSE(is_pareto_efficient(P, da(P)));
  EXPECT_TRUE(is_pareto_efficient(P, eada(P, ConsentStructure::everyone(P))));
}

TEST(MaxImprovement, ExampleValues) {
  EXPECT_EQ(max_improvement(example1(7)).value, 6);
  EXPECT_EQ(max_improvement(example2()).value, 6);
  EXPECT_EQ(max_improvement(example3()).value, 4);
  // The two disjoint cycles and the single six-cycle through i6.
  EXPECT_EQ(max_improvement(example1(7)).witnesses.size(), 2u);
}

TEST(Frontier, ExampleThreeMinimalSet) {
  const auto P = example3();
  const auto f = pareto_frontier_over_da(P);
  ASSERT_EQ(f.minimal_blocking_sets.size(), 1u);
  ASSERT_EQ(f.minimal_blocking_sets[0].size(), 1u);
  EXPECT_EQ(f.minimal_blocking_sets[0][0].student, P.student("i5"));
  for (std::size_t a = 0; a < f.minimal_blocking_sets.size(); ++a)
    for (std::size_t b = 0; b < f.minimal_blocking_sets.size(); ++b)
      if (a != b) EXPECT_FALSE(is_subset(f.minimal_blocking_sets[a], f.minimal_blocking_sets[b]));
}

TEST(DoubleDomination, RequiresDominatingMatchings) {
  const auto P = example3();
  const auto worst = deferred_acceptance(P, ProposingSide::schools).matching;
  const auto base = da(P);
  if (worst != base) EXPECT_THROW(doubly_dominates(P, base, worst), DominationError);
  EXPECT_FALSE(doubly_dominates(P, base, base));
  EXPECT_FALSE(doubly_dominates(P, da_ttc(P), eada(P, ConsentStructure::everyone(P))));
}

TEST(Ratio, UndefinedWithoutImprovement) {
  const auto P = example1(6);
  EXPECT_FALSE(improvement_ratio(P, da(P)).has_value());
  EXPECT_EQ(improvement_ratio(P, da_ttc(P)), 2.5);
}

TEST(Ensemble, FractionOfInefficientDaOutcomes) {
  // Unit-capacity markets with n = m = 6, seeds 0..999. Frozen regression value,
  // cross-checked against the envy-digraph cycle test.
  int inefficient = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto P = random_problem(6, 6, 1, seed);
    const auto mu = da(P);
    const bool oracle = !is_pareto_efficient(P, mu);
    const auto g = ref::envy_graph(P, ref::assignment(mu));
    const bool has_cycle = !ref::acyclic(g, std::vector<bool>(g.size(), false));
    ASSERT_EQ(oracle, has_cycle) << "seed " << seed;
    inefficient += oracle ? 1 : 0;
  }
  EXPECT_EQ(inefficient, 189);
}
