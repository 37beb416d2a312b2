#include "matchlab/envy.hpp"

#include <algorithm>

#include "matchlab/mechanisms.hpp"

namespace matchlab {

namespace {

std::size_t idx(StudentId i) { return static_cast<std::size_t>(i.value); }

class CycleSearch {
 public:
  CycleSearch(const EnvyDigraph& g, std::size_t cap) : g_(g), cap_(cap), on_path_(static_cast<std::size_t>(g.num_nodes()), false) {}

  std::vector<TradingCycle> run() {
    for (int s = 0; s < g_.num_nodes(); ++s) {
      start_ = StudentId{s};
      path_.assign(1, start_);
      on_path_[idx(start_)] = true;
      extend(start_);
      on_path_[idx(start_)] = false;
    }
    std::sort(found_.begin(), found_.end(), cycle_order);
    return std::move(found_);
  }

 private:
  // Only nodes larger than the start are visited, so each cycle is produced
  // exactly once, already in canonical rotation.
  void extend(StudentId v) {
    for (StudentId w : g_.successors(v)) {
      if (w == start_) {
        if (found_.size() >= cap_)
          throw ResourceError("trading cycle count exceeds cap", static_cast<double>(found_.size() + 1),
                              static_cast<double>(cap_));
        found_.push_back(TradingCycle{path_});
      } else if (w > start_ && !on_path_[idx(w)]) {
        on_path_[idx(w)] = true;
        path_.push_back(w);
        extend(w);
        path_.pop_back();
        on_path_[idx(w)] = false;
      }
    }
  }

  const EnvyDigraph& g_;
  std::size_t cap_;
  StudentId start_;
  std::vector<StudentId> path_;
  std::vector<bool> on_path_;
  std::vector<TradingCycle> found_;
};

class PackingSearch {
 public:
  PackingSearch(const std::vector<TradingCycle>& cycles, int num_nodes, std::size_t cap)
      : cycles_(cycles), cap_(cap), used_(static_cast<std::size_t>(num_nodes), false) {}

  std::vector<FeedbackSet> run() {
    extend(0);
    return std::move(found_);
  }

 private:
  bool disjoint(const TradingCycle& c) const {
    return std::none_of(c.nodes.begin(), c.nodes.end(), [&](StudentId i) { return used_[idx(i)]; });
  }

  void mark(const TradingCycle& c, bool value) {
    for (StudentId i : c.nodes) used_[idx(i)] = value;
  }

  // A packing leaves the graph acyclic exactly when no cycle avoids it.
  void extend(std::size_t from) {
    bool acyclic = true;
    for (std::size_t k = 0; k < cycles_.size(); ++k) {
      if (!disjoint(cycles_[k])) continue;
      acyclic = false;
      if (k < from) continue;
      chosen_.push_back(k);
      mark(cycles_[k], true);
      extend(k + 1);
      mark(cycles_[k], false);
      chosen_.pop_back();
    }
    if (!acyclic) return;
    if (found_.size() >= cap_)
      throw ResourceError("feedback set count exceeds cap", static_cast<double>(found_.size() + 1),
                          static_cast<double>(cap_));
    FeedbackSet f;
    for (std::size_t k : chosen_) f.cycles.push_back(cycles_[k]);
    found_.push_back(std::move(f));
  }

  const std::vector<TradingCycle>& cycles_;
  std::size_t cap_;
  std::vector<bool> used_;
  std::vector<std::size_t> chosen_;
  std::vector<FeedbackSet> found_;
};

}  // namespace

EnvyDigraph::EnvyDigraph(const SchoolChoiceProblem& P, Matching baseline)
    : out_(static_cast<std::size_t>(P.num_students())), baseline_(std::move(baseline)) {
  validate_matching(P, baseline_);
  for (int i = 0; i < P.num_students(); ++i)
    for (int j = 0; j < P.num_students(); ++j)
      if (i != j && envies(P, baseline_, StudentId{i}, StudentId{j}))
        out_[static_cast<std::size_t>(i)].push_back(StudentId{j});
}

EnvyDigraph::EnvyDigraph(int num_nodes, const std::vector<std::pair<int, int>>& edges)
    : out_(static_cast<std::size_t>(num_nodes)) {
  for (auto [i, j] : edges) {
    if (i == j) throw ArgumentError("envy digraphs have no self-loops");
    if (i < 0 || j < 0 || i >= num_nodes || j >= num_nodes) throw ArgumentError("edge endpoint out of range");
    out_[static_cast<std::size_t>(i)].push_back(StudentId{j});
  }
  for (auto& list : out_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

bool EnvyDigraph::has_edge(StudentId i, StudentId j) const {
  if (i.value < 0 || i.value >= num_nodes()) return false;
  const auto& list = successors(i);
  return std::binary_search(list.begin(), list.end(), j);
}

std::size_t EnvyDigraph::num_edges() const {
  std::size_t total = 0;
  for (const auto& list : out_) total += list.size();
  return total;
}

EnvyDigraph build_envy_digraph(const SchoolChoiceProblem& P, const Matching& mu) {
  return EnvyDigraph(P, mu);
}

std::string export_edge_list(const SchoolChoiceProblem& P, const EnvyDigraph& g) {
  std::string out;
  for (int i = 0; i < g.num_nodes(); ++i)
    for (StudentId j : g.successors(StudentId{i}))
      out += P.student_name(StudentId{i}) + " -> " + P.student_name(j) + "\n";
  return out;
}

bool TradingCycle::contains(StudentId i) const {
  return std::find(nodes.begin(), nodes.end(), i) != nodes.end();
}

TradingCycle TradingCycle::canonical(std::vector<StudentId> nodes) {
  auto smallest = std::min_element(nodes.begin(), nodes.end());
  std::rotate(nodes.begin(), smallest, nodes.end());
  return TradingCycle{std::move(nodes)};
}

bool cycle_order(const TradingCycle& a, const TradingCycle& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.nodes < b.nodes;
}

std::vector<StudentId> FeedbackSet::covered() const {
  std::vector<StudentId> all;
  for (const auto& c : cycles) all.insert(all.end(), c.nodes.begin(), c.nodes.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<TradingCycle> enumerate_trading_cycles(const EnvyDigraph& g, std::size_t cap) {
  return CycleSearch(g, cap).run();
}

std::vector<FeedbackSet> enumerate_feedback_sets(const EnvyDigraph& g, std::size_t cap) {
  const auto cycles = enumerate_trading_cycles(g, cap);
  return PackingSearch(cycles, g.num_nodes(), cap).run();
}

Matching apply_cycles(const SchoolChoiceProblem& P, const Matching& mu,
                      const std::vector<TradingCycle>& cycles) {
  validate_matching(P, mu);
  std::vector<bool> seen(static_cast<std::size_t>(P.num_students()), false);
  std::vector<SchoolId> result(mu.assignment().begin(), mu.assignment().end());
  for (const TradingCycle& c : cycles) {
    if (c.size() < 2) throw ArgumentError("a trading cycle needs at least two students");
    for (std::size_t k = 0; k < c.size(); ++k) {
      const StudentId from = c.nodes[k];
      const StudentId to = c.nodes[(k + 1) % c.size()];
      P.check(from);
      if (seen[idx(from)]) throw ArgumentError("cycles overlap at student '" + P.student_name(from) + "'");
      seen[idx(from)] = true;
      if (from == to || !envies(P, mu, from, to))
        throw ArgumentError("'" + P.student_name(from) + " -> " + P.student_name(to) +
                            "' is not an envy edge");
      result[idx(from)] = mu[to];
    }
  }
  return Matching(std::move(result));
}

BlockingSet cycle_blocking_report(const SchoolChoiceProblem& P,
                                  const std::vector<TradingCycle>& cycles) {
  return blocking_pairs(P, apply_cycles(P, da(P), cycles));
}

std::vector<TradingCycle> decompose_improvement(const SchoolChoiceProblem& P,
                                                const Matching& baseline, const Matching& mu) {
  validate_matching(P, baseline);
  validate_matching(P, mu);
  if (!weakly_dominates(P, mu, baseline))
    throw DominationError("matching does not weakly dominate the baseline");

  const auto n = static_cast<std::size_t>(P.num_students());
  std::vector<std::vector<StudentId>> entrants(static_cast<std::size_t>(P.num_schools()));
  std::vector<std::vector<StudentId>> leavers(static_cast<std::size_t>(P.num_schools()));
  for (std::size_t i = 0; i < n; ++i) {
    const StudentId student{static_cast<int>(i)};
    const SchoolId from = baseline[student];
    const SchoolId to = mu[student];
    if (from == to) continue;
    if (from.is_outside() || to.is_outside())
      throw ArgumentError("student '" + P.student_name(student) + "' moves to or from the outside option");
    entrants[static_cast<std::size_t>(to.value)].push_back(student);
    leavers[static_cast<std::size_t>(from.value)].push_back(student);
  }

  std::vector<int> successor(n, -1);
  for (std::size_t s = 0; s < entrants.size(); ++s) {
    if (entrants[s].size() != leavers[s].size())
      throw ArgumentError("seat flow at school '" + P.school_name(SchoolId{static_cast<int>(s)}) +
                          "' does not balance");
    for (std::size_t k = 0; k < entrants[s].size(); ++k)
      successor[idx(entrants[s][k])] = leavers[s][k].value;
  }

  std::vector<TradingCycle> cycles;
  std::vector<bool> visited(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (successor[i] < 0 || visited[i]) continue;
    std::vector<StudentId> nodes;
    for (std::size_t v = i; !visited[v]; v = static_cast<std::size_t>(successor[v])) {
      visited[v] = true;
      nodes.push_back(StudentId{static_cast<int>(v)});
    }
    cycles.push_back(TradingCycle::canonical(std::move(nodes)));
  }
  std::sort(cycles.begin(), cycles.end(), cycle_order);
  return cycles;
}

}  // namespace matchlab
