#pragma once

// Exhaustive ground truth for small instances: the matchings that weakly
// dominate DA, the maximum number of students any of them improves, Pareto
// efficiency, stable matchings and set-inclusion-minimal blocking sets.
//
// Every enumeration is guarded: the size of the search space (the product of
// per-student option counts) is computed up front and a ResourceError is
// thrown before any work if it exceeds the limit.

#include <optional>
#include <vector>

#include "matchlab/core.hpp"

namespace matchlab {

inline constexpr double kDefaultSearchLimit = 1e7;

struct DominatingEntry {
  Matching matching;
  std::vector<StudentId> improved;
  BlockingSet blocking;
  bool pareto_efficient = false;
};

struct DominatingSet {
  Matching baseline;                     // da(P)
  std::vector<DominatingEntry> members;  // includes the baseline

  const DominatingEntry* find(const Matching& mu) const;
};

DominatingSet enumerate_dominating_matchings(const SchoolChoiceProblem& P,
                                             double limit = kDefaultSearchLimit);

struct MaxImprovement {
  int value = 0;
  std::vector<Matching> witnesses;
};

MaxImprovement max_improvement(const SchoolChoiceProblem& P, double limit = kDefaultSearchLimit);
MaxImprovement max_improvement(const DominatingSet& set);

struct FrontierReport {
  std::vector<DominatingEntry> efficient;
  std::vector<BlockingSet> minimal_blocking_sets;  // pairwise inclusion-incomparable
  MaxImprovement max_improvement;
};

FrontierReport pareto_frontier_over_da(const SchoolChoiceProblem& P,
                                       double limit = kDefaultSearchLimit);
FrontierReport pareto_frontier_over_da(const DominatingSet& set);

// Searches every individually rational matching that could dominate mu, i.e.
// every feasible matching in which no student is worse off.
bool is_pareto_efficient(const SchoolChoiceProblem& P, const Matching& mu,
                         double limit = kDefaultSearchLimit);

// All individually rational matchings: each student gets an acceptable school
// or the outside option.
std::vector<Matching> enumerate_feasible_matchings(const SchoolChoiceProblem& P,
                                                   double limit = kDefaultSearchLimit);

std::vector<Matching> enumerate_stable_matchings(const SchoolChoiceProblem& P,
                                                 double limit = kDefaultSearchLimit);

// mu improves strictly more students than nu and has strictly fewer blocking
// pairs. Both must weakly dominate da(P).
bool doubly_dominates(const SchoolChoiceProblem& P, const Matching& mu, const Matching& nu);

// I*(P) / |I(mu, P)|, or nothing when mu improves nobody.
std::optional<double> improvement_ratio(const SchoolChoiceProblem& P, const Matching& mu,
                                        double limit = kDefaultSearchLimit);

}  // namespace matchlab
