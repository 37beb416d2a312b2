#pragma once

// Text rendering of matchings, cycles and blocking pairs, the per-command
// reports and the mechanism comparison report.

#include <optional>
#include <string>
#include <vector>

#include "matchlab/core.hpp"
#include "matchlab/envy.hpp"
#include "matchlab/oracle.hpp"

namespace matchlab {

enum class Mechanism { da, da_school, eada, eada_underdemanded, da_ttc };

Mechanism parse_mechanism(std::string_view name);
std::string mechanism_name(Mechanism m);

// The outcome of mechanism m; consent is only used by eada.
Matching run_mechanism(const SchoolChoiceProblem& P, Mechanism m, const ConsentStructure& consent);

std::string format_students(const SchoolChoiceProblem& P, const std::vector<StudentId>& students);
std::string format_pair(const SchoolChoiceProblem& P, const BlockingPair& pair);
std::string format_blocking(const SchoolChoiceProblem& P, const BlockingSet& pairs);
std::string format_cycle(const SchoolChoiceProblem& P, const TradingCycle& cycle);
std::string format_matching(const SchoolChoiceProblem& P, const Matching& mu);  // "i1:s2 i2:s1 ..."
std::string format_ratio(std::optional<double> ratio);

std::string solve_report(const SchoolChoiceProblem& P, Mechanism m, const ConsentStructure& consent,
                         bool consent_is_everyone);
// Cycle inventory of the DA envy digraph with the blocking pairs created by
// implementing each cycle on its own.
std::string cycles_report(const SchoolChoiceProblem& P);
std::string feedback_sets_report(const SchoolChoiceProblem& P);
std::string max_improvement_report(const SchoolChoiceProblem& P);
std::string frontier_report(const SchoolChoiceProblem& P);

struct MechanismOutcome {
  std::string name;
  Matching matching;
  std::vector<StudentId> improved;
  BlockingSet blocking;
  bool pareto_efficient = false;
  // No efficient matching dominating DA has a strictly smaller blocking set.
  bool setwise_minimal = false;
  std::optional<double> ratio;  // I* / |improved|
};

struct ComparisonReport {
  std::vector<MechanismOutcome> outcomes;
  int max_improvement = 0;
  std::size_t frontier_size = 0;
  std::vector<BlockingSet> minimal_blocking_sets;
  // doubly_dominates[a][b]: outcome a doubly dominates outcome b.
  std::vector<std::vector<bool>> doubly_dominates;
};

// DA, EADA with full consent, EADA with `consent` (when given and not
// everyone) and DA+TTC.
ComparisonReport compare_mechanisms(const SchoolChoiceProblem& P,
                                    const std::optional<ConsentStructure>& consent);
std::string render_comparison(const SchoolChoiceProblem& P, const ComparisonReport& report);

// I*(P) / |I(M(P), P)| for eada (full consent) or da-ttc on a family member.
std::optional<double> family_ratio(const SchoolChoiceProblem& P, Mechanism m);

}  // namespace matchlab
