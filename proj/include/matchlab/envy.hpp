#pragma once

// Envy digraphs over a baseline matching, their trading cycles, feedback sets
// (maximal packings of disjoint trading cycles) and cycle trades.

#include <cstddef>
#include <string>
#include <vector>

#include "matchlab/core.hpp"

namespace matchlab {

class EnvyDigraph {
 public:
  EnvyDigraph(const SchoolChoiceProblem& P, Matching baseline);
  // Edge list given directly; used for graph-only tests.
  EnvyDigraph(int num_nodes, const std::vector<std::pair<int, int>>& edges);

  int num_nodes() const { return static_cast<int>(out_.size()); }
  const std::vector<StudentId>& successors(StudentId i) const {
    return out_[static_cast<std::size_t>(i.value)];
  }
  bool has_edge(StudentId i, StudentId j) const;
  std::size_t num_edges() const;
  const Matching& baseline() const { return baseline_; }

 private:
  std::vector<std::vector<StudentId>> out_;  // sorted
  Matching baseline_;
};

EnvyDigraph build_envy_digraph(const SchoolChoiceProblem& P, const Matching& mu);

// One "i -> j" line per edge, tails in declaration order, heads sorted.
std::string export_edge_list(const SchoolChoiceProblem& P, const EnvyDigraph& g);

// Node-simple directed cycle, stored once around starting at its smallest
// node: (nodes[0] -> nodes[1] -> ... -> nodes[0]).
struct TradingCycle {
  std::vector<StudentId> nodes;

  std::size_t size() const { return nodes.size(); }
  bool contains(StudentId i) const;
  // Rotates so the smallest node comes first.
  static TradingCycle canonical(std::vector<StudentId> nodes);

  friend bool operator==(const TradingCycle&, const TradingCycle&) = default;
};

// Length first, then lexicographic on the canonical node sequence.
bool cycle_order(const TradingCycle& a, const TradingCycle& b);

struct FeedbackSet {
  std::vector<TradingCycle> cycles;  // pairwise node-disjoint
  std::vector<StudentId> covered() const;  // sorted V(F)
};

inline constexpr std::size_t kDefaultCycleCap = 1'000'000;

// All trading cycles of g, in cycle_order. Throws ResourceError once more
// than `cap` cycles have been found.
std::vector<TradingCycle> enumerate_trading_cycles(const EnvyDigraph& g,
                                                   std::size_t cap = kDefaultCycleCap);

// All collections of pairwise-disjoint trading cycles whose removal leaves g
// acyclic. The cap bounds both the cycle count and the number of sets.
std::vector<FeedbackSet> enumerate_feedback_sets(const EnvyDigraph& g,
                                                 std::size_t cap = kDefaultCycleCap);

// Each student on a cycle takes over the seat of their successor. Throws
// ArgumentError if the cycles overlap or use an edge that is not an envy edge
// at mu.
Matching apply_cycles(const SchoolChoiceProblem& P, const Matching& mu,
                      const std::vector<TradingCycle>& cycles);

// blocking_pairs(apply_cycles(P, da(P), cycles))
BlockingSet cycle_blocking_report(const SchoolChoiceProblem& P,
                                  const std::vector<TradingCycle>& cycles);

// Splits the move from `baseline` to `mu` (which must weakly dominate it)
// into disjoint cycles of students taking each other's seats. Students who
// leave a school are paired with students who enter it in index order.
std::vector<TradingCycle> decompose_improvement(const SchoolChoiceProblem& P,
                                                const Matching& baseline, const Matching& mu);

}  // namespace matchlab
