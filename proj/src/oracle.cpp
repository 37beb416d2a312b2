#include "matchlab/oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "matchlab/mechanisms.hpp"

namespace matchlab {

namespace {

using Options = std::vector<std::vector<SchoolId>>;

double search_size(const Options& options) {
  double product = 1;
  for (const auto& o : options) product *= static_cast<double>(o.size());
  return product;
}

void guard(const Options& options, double limit, const char* what) {
  const double size = search_size(options);
  if (size > limit)
    throw ResourceError(std::string(what) + ": search space of " + std::to_string(size) +
                            " assignments exceeds limit " + std::to_string(limit),
                        size, limit);
}

// Depth-first over students in index order; `visit` returns false to stop.
class AssignmentSearch {
 public:
  AssignmentSearch(const SchoolChoiceProblem& P, const Options& options,
                   std::function<bool(const Matching&)> visit)
      : P_(P),
        options_(options),
        visit_(std::move(visit)),
        load_(static_cast<std::size_t>(P.num_schools()), 0),
        current_(static_cast<std::size_t>(P.num_students()), SchoolId::outside()) {}

  void run() { extend(0); }

 private:
  bool extend(std::size_t i) {
    if (i == current_.size()) return visit_(Matching(current_));
    for (SchoolId s : options_[i]) {
      if (!s.is_outside()) {
        auto& load = load_[static_cast<std::size_t>(s.value)];
        if (load >= P_.quota(s)) continue;
        ++load;
      }
      current_[i] = s;
      const bool go_on = extend(i + 1);
      if (!s.is_outside()) --load_[static_cast<std::size_t>(s.value)];
      if (!go_on) return false;
    }
    return true;
  }

  const SchoolChoiceProblem& P_;
  const Options& options_;
  std::function<bool(const Matching&)> visit_;
  std::vector<int> load_;
  std::vector<SchoolId> current_;
};

// Individually rational seats no worse than `bound[i]` for each student, best first.
Options weakly_better_options(const SchoolChoiceProblem& P, const Matching& bound) {
  Options options;
  for (int i = 0; i < P.num_students(); ++i) {
    const StudentId student{i};
    const Rank limit = P.school_rank(student, bound[student]);
    auto& list = options.emplace_back();
    for (SchoolId s : P.preferences(student))
      if (P.school_rank(student, s) <= limit) list.push_back(s);
    if (P.school_rank(student, SchoolId::outside()) <= limit) list.push_back(SchoolId::outside());
  }
  return options;
}

std::vector<BlockingSet> inclusion_minimal(std::vector<BlockingSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<BlockingSet> minimal;
  for (const auto& candidate : sets) {
    bool has_smaller = std::any_of(sets.begin(), sets.end(), [&](const BlockingSet& other) {
      return other.size() < candidate.size() && is_subset(other, candidate);
    });
    if (!has_smaller) minimal.push_back(candidate);
  }
  return minimal;
}

DominatingSet dominating_members(const SchoolChoiceProblem& P, double limit, bool with_efficiency) {
  DominatingSet set{da(P), {}};
  const Options options = weakly_better_options(P, set.baseline);
  guard(options, limit, "dominating-matching enumeration");
  AssignmentSearch(P, options, [&](const Matching& mu) {
    set.members.push_back({mu, improved_over(P, mu, set.baseline), blocking_pairs(P, mu), false});
    return true;
  }).run();
  if (with_efficiency)
    for (auto& entry : set.members) entry.pareto_efficient = is_pareto_efficient(P, entry.matching, limit);
  return set;
}

}  // namespace

const DominatingEntry* DominatingSet::find(const Matching& mu) const {
  for (const auto& e : members)
    if (e.matching == mu) return &e;
  return nullptr;
}

DominatingSet enumerate_dominating_matchings(const SchoolChoiceProblem& P, double limit) {
  return dominating_members(P, limit, true);
}

MaxImprovement max_improvement(const DominatingSet& set) {
  MaxImprovement best;
  for (const auto& e : set.members) {
    const int count = static_cast<int>(e.improved.size());
    if (count > best.value) {
      best.value = count;
      best.witnesses.clear();
    }
    if (count == best.value) best.witnesses.push_back(e.matching);
  }
  return best;
}

MaxImprovement max_improvement(const SchoolChoiceProblem& P, double limit) {
  return max_improvement(dominating_members(P, limit, false));
}

FrontierReport pareto_frontier_over_da(const DominatingSet& set) {
  FrontierReport report;
  std::vector<BlockingSet> blocking;
  for (const auto& e : set.members) {
    if (!e.pareto_efficient) continue;
    report.efficient.push_back(e);
    blocking.push_back(e.blocking);
  }
  report.minimal_blocking_sets = inclusion_minimal(std::move(blocking));
  report.max_improvement = max_improvement(set);
  return report;
}

FrontierReport pareto_frontier_over_da(const SchoolChoiceProblem& P, double limit) {
  return pareto_frontier_over_da(enumerate_dominating_matchings(P, limit));
}

bool is_pareto_efficient(const SchoolChoiceProblem& P, const Matching& mu, double limit) {
  validate_matching(P, mu);
  const Options options = weakly_better_options(P, mu);
  guard(options, limit, "efficiency check");
  bool dominated = false;
  AssignmentSearch(P, options, [&](const Matching& nu) {
    dominated = dominates(P, nu, mu);
    return !dominated;
  }).run();
  return !dominated;
}

std::vector<Matching> enumerate_feasible_matchings(const SchoolChoiceProblem& P, double limit) {
  Options options;
  for (int i = 0; i < P.num_students(); ++i) {
    auto prefs = P.preferences(StudentId{i});
    auto& list = options.emplace_back(prefs.begin(), prefs.end());
    list.push_back(SchoolId::outside());
  }
  guard(options, limit, "feasible-matching enumeration");
  std::vector<Matching> all;
  AssignmentSearch(P, options, [&](const Matching& mu) {
    all.push_back(mu);
    return true;
  }).run();
  return all;
}

std::vector<Matching> enumerate_stable_matchings(const SchoolChoiceProblem& P, double limit) {
  auto all = enumerate_feasible_matchings(P, limit);
  std::erase_if(all, [&](const Matching& mu) { return !is_stable(P, mu); });
  return all;
}

bool doubly_dominates(const SchoolChoiceProblem& P, const Matching& mu, const Matching& nu) {
  const Matching baseline = da(P);
  const auto improved_mu = improved_over(P, mu, baseline).size();
  const auto improved_nu = improved_over(P, nu, baseline).size();
  return improved_mu > improved_nu && blocking_pairs(P, mu).size() < blocking_pairs(P, nu).size();
}

std::optional<double> improvement_ratio(const SchoolChoiceProblem& P, const Matching& mu,
                                        double limit) {
  const auto improved = improved_set(P, mu).size();
  if (improved == 0) return std::nullopt;
  return static_cast<double>(max_improvement(P, limit).value) / static_cast<double>(improved);
}

}  // namespace matchlab
