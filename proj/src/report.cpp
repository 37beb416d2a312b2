#include "matchlab/report.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "matchlab/mechanisms.hpp"

namespace matchlab {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Left-aligned columns sized to their widest cell.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c + 1 == row.size()) {
        line += row[c];
      } else {
        line += fmt::format("{:<{}}  ", row[c], width[c]);
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string pair_list(const SchoolChoiceProblem& P, const BlockingSet& pairs) {
  if (pairs.empty()) return "none";
  std::string out;
  for (const auto& p : pairs) out += (out.empty() ? "" : ", ") + format_pair(P, p);
  return out;
}

std::optional<std::vector<StudentId>> improved_if_dominating(const SchoolChoiceProblem& P,
                                                             const Matching& mu,
                                                             const Matching& baseline) {
  if (!weakly_dominates(P, mu, baseline)) return std::nullopt;
  return improved_over(P, mu, baseline);
}

}  // namespace

Mechanism parse_mechanism(std::string_view name) {
  if (name == "da") return Mechanism::da;
  if (name == "da-school") return Mechanism::da_school;
  if (name == "eada") return Mechanism::eada;
  if (name == "eada-underdemanded") return Mechanism::eada_underdemanded;
  if (name == "da-ttc") return Mechanism::da_ttc;
  throw ArgumentError("unknown mechanism '" + std::string(name) + "'");
}

std::string mechanism_name(Mechanism m) {
  switch (m) {
    case Mechanism::da: return "da";
    case Mechanism::da_school: return "da-school";
    case Mechanism::eada: return "eada";
    case Mechanism::eada_underdemanded: return "eada-underdemanded";
    case Mechanism::da_ttc: return "da-ttc";
  }
  throw InvariantViolation("unhandled mechanism");
}

Matching run_mechanism(const SchoolChoiceProblem& P, Mechanism m, const ConsentStructure& consent) {
  switch (m) {
    case Mechanism::da: return da(P);
    case Mechanism::da_school: return deferred_acceptance(P, ProposingSide::schools).matching;
    case Mechanism::eada: return eada(P, consent);
    case Mechanism::eada_underdemanded: return eada_full_consent_underdemanded(P);
    case Mechanism::da_ttc: return da_ttc(P);
  }
  throw InvariantViolation("unhandled mechanism");
}

std::string format_students(const SchoolChoiceProblem& P, const std::vector<StudentId>& students) {
  std::string out = "{";
  for (std::size_t k = 0; k < students.size(); ++k)
    out += (k ? ", " : "") + P.student_name(students[k]);
  return out + "}";
}

std::string format_pair(const SchoolChoiceProblem& P, const BlockingPair& pair) {
  return "(" + P.student_name(pair.student) + ", " + P.school_name(pair.school) + ")";
}

std::string format_blocking(const SchoolChoiceProblem& P, const BlockingSet& pairs) {
  std::string out = "{";
  for (std::size_t k = 0; k < pairs.size(); ++k) out += (k ? ", " : "") + format_pair(P, pairs[k]);
  return out + "}";
}

std::string format_cycle(const SchoolChoiceProblem& P, const TradingCycle& cycle) {
  std::string out = "(";
  for (StudentId i : cycle.nodes) out += P.student_name(i) + " -> ";
  return out + (cycle.nodes.empty() ? "" : P.student_name(cycle.nodes.front())) + ")";
}

std::string format_matching(const SchoolChoiceProblem& P, const Matching& mu) {
  std::string out;
  for (int i = 0; i < mu.size(); ++i)
    out += (i ? " " : "") + P.student_name(StudentId{i}) + ":" + P.school_name(mu[StudentId{i}]);
  return out;
}

std::string format_ratio(std::optional<double> ratio) {
  if (!ratio) return "undefined";
  std::string s = fmt::format("{:.6f}", *ratio);
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

std::string solve_report(const SchoolChoiceProblem& P, Mechanism m, const ConsentStructure& consent,
                         bool consent_is_everyone) {
  const Matching baseline = da(P);
  const Matching mu = run_mechanism(P, m, consent);
  const auto improved = improved_if_dominating(P, mu, baseline);
  const BlockingSet blocking = blocking_pairs(P, mu);

  std::string out = "mechanism: " + mechanism_name(m) + "\n";
  if (m == Mechanism::eada) {
    out += "consent: ";
    if (consent_is_everyone) {
      out += "all\n";
    } else {
      out += format_students(P, {consent.members().begin(), consent.members().end()}) + "\n";
    }
  }
  std::vector<std::vector<std::string>> rows{{"student", "school", "rank", "da", "da rank", ""}};
  for (int i = 0; i < P.num_students(); ++i) {
    const StudentId s{i};
    const bool better = P.school_rank(s, mu[s]) < P.school_rank(s, baseline[s]);
    auto rank = [&](SchoolId school) {
      const Rank r = P.school_rank(s, school);
      return r.is_acceptable() ? std::to_string(r.value()) : std::string("-");
    };
    rows.push_back({P.student_name(s), P.school_name(mu[s]), rank(mu[s]), P.school_name(baseline[s]),
                    rank(baseline[s]), better ? "improved" : ""});
  }
  out += render_table(rows);
  if (improved) {
    out += fmt::format("improved ({}): {}\n", improved->size(), format_students(P, *improved));
  } else {
    out += "improved: n/a (does not weakly dominate DA)\n";
  }
  out += fmt::format("blocking pairs ({}): {}\n", blocking.size(), format_blocking(P, blocking));
  out += "stable: " + yes_no(is_stable(P, mu)) + "\n";
  out += "\n[summary]\n";
  out += "matching = " + format_matching(P, mu) + "\n";
  if (improved) {
    std::string names;
    for (StudentId i : *improved) names += (names.empty() ? "" : " ") + P.student_name(i);
    out += "improved = " + names + "\n";
    out += fmt::format("improved_count = {}\n", improved->size());
  }
  out += fmt::format("blocking_count = {}\n", blocking.size());
  return out;
}

std::string cycles_report(const SchoolChoiceProblem& P) {
  const Matching baseline = da(P);
  const EnvyDigraph g(P, baseline);
  const auto cycles = enumerate_trading_cycles(g);
  std::string out = fmt::format("envy digraph over DA: {} students, {} edges, {} trading cycles\n",
                                g.num_nodes(), g.num_edges(), cycles.size());
  std::vector<std::vector<std::string>> rows{{"cycle", "members", "blocking pairs"}};
  for (std::size_t k = 0; k < cycles.size(); ++k)
    rows.push_back({fmt::format("C{}", k + 1), format_cycle(P, cycles[k]),
                    pair_list(P, blocking_pairs(P, apply_cycles(P, baseline, {cycles[k]})))});
  return out + render_table(rows);
}

std::string feedback_sets_report(const SchoolChoiceProblem& P) {
  const Matching baseline = da(P);
  const EnvyDigraph g(P, baseline);
  const auto sets = enumerate_feedback_sets(g);
  std::string out = fmt::format("feedback sets: {}\n", sets.size());
  std::vector<std::vector<std::string>> rows{{"set", "covered", "blocking", "cycles"}};
  for (std::size_t k = 0; k < sets.size(); ++k) {
    std::string cycles;
    for (const auto& c : sets[k].cycles) cycles += (cycles.empty() ? "" : " + ") + format_cycle(P, c);
    const Matching mu = apply_cycles(P, baseline, sets[k].cycles);
    rows.push_back({fmt::format("F{}", k + 1), std::to_string(sets[k].covered().size()),
                    std::to_string(blocking_pairs(P, mu).size()), cycles.empty() ? "(none)" : cycles});
  }
  return out + render_table(rows);
}

std::string max_improvement_report(const SchoolChoiceProblem& P) {
  const DominatingSet set = enumerate_dominating_matchings(P);
  const MaxImprovement best = max_improvement(set);
  std::string out = fmt::format("dominating matchings: {}\nmaximum improvement: {}\n", set.members.size(),
                                best.value);
  for (std::size_t k = 0; k < best.witnesses.size(); ++k) {
    const auto* e = set.find(best.witnesses[k]);
    out += fmt::format("witness {}: {}\n  improved: {}\n  blocking pairs ({}): {}\n", k + 1,
                       format_matching(P, e->matching), format_students(P, e->improved),
                       e->blocking.size(), format_blocking(P, e->blocking));
  }
  return out;
}

std::string frontier_report(const SchoolChoiceProblem& P) {
  const DominatingSet set = enumerate_dominating_matchings(P);
  const FrontierReport frontier = pareto_frontier_over_da(set);
  std::string out = fmt::format("dominating matchings: {}\nefficient: {}\nmaximum improvement: {}\n",
                                set.members.size(), frontier.efficient.size(),
                                frontier.max_improvement.value);
  std::vector<std::vector<std::string>> rows{{"#", "improved", "blocking pairs", "matching"}};
  for (std::size_t k = 0; k < frontier.efficient.size(); ++k) {
    const auto& e = frontier.efficient[k];
    rows.push_back({fmt::format("E{}", k + 1), std::to_string(e.improved.size()),
                    format_blocking(P, e.blocking), format_matching(P, e.matching)});
  }
  out += render_table(rows);
  out += "inclusion-minimal blocking sets:\n";
  for (const auto& b : frontier.minimal_blocking_sets) out += "  " + format_blocking(P, b) + "\n";
  return out;
}

ComparisonReport compare_mechanisms(const SchoolChoiceProblem& P,
                                    const std::optional<ConsentStructure>& consent) {
  const DominatingSet set = enumerate_dominating_matchings(P);
  const FrontierReport frontier = pareto_frontier_over_da(set);
  ComparisonReport report;
  report.max_improvement = frontier.max_improvement.value;
  report.frontier_size = frontier.efficient.size();
  report.minimal_blocking_sets = frontier.minimal_blocking_sets;

  const auto everyone = ConsentStructure::everyone(P);
  std::vector<std::pair<std::string, Matching>> runs{{"da", da(P)}, {"eada", eada(P, everyone)}};
  if (consent && *consent != everyone) runs.emplace_back("eada[W]", eada(P, *consent));
  runs.emplace_back("da-ttc", da_ttc(P));

  for (auto& [name, mu] : runs) {
    MechanismOutcome o;
    o.name = name;
    o.matching = mu;
    o.improved = improved_over(P, mu, set.baseline);
    o.blocking = blocking_pairs(P, mu);
    const auto* entry = set.find(mu);
    if (!entry) throw InvariantViolation(name + " outcome missing from the dominating set");
    o.pareto_efficient = entry->pareto_efficient;
    o.setwise_minimal = std::none_of(frontier.efficient.begin(), frontier.efficient.end(),
                                     [&](const DominatingEntry& e) {
                                       return e.blocking.size() < o.blocking.size() &&
                                              is_subset(e.blocking, o.blocking);
                                     });
    if (!o.improved.empty())
      o.ratio = static_cast<double>(report.max_improvement) / static_cast<double>(o.improved.size());
    report.outcomes.push_back(std::move(o));
  }
  const auto k = report.outcomes.size();
  report.doubly_dominates.assign(k, std::vector<bool>(k, false));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      report.doubly_dominates[a][b] =
          doubly_dominates(P, report.outcomes[a].matching, report.outcomes[b].matching);
  return report;
}

std::string render_comparison(const SchoolChoiceProblem& P, const ComparisonReport& report) {
  std::vector<std::vector<std::string>> rows{
      {"mechanism", "improved", "blocking", "efficient", "setwise-minimal", "ratio"}};
  for (const auto& o : report.outcomes)
    rows.push_back({o.name, std::to_string(o.improved.size()), std::to_string(o.blocking.size()),
                    yes_no(o.pareto_efficient), yes_no(o.setwise_minimal), format_ratio(o.ratio)});
  std::string out = render_table(rows) + "\n";
  for (const auto& o : report.outcomes) {
    out += o.name + "\n";
    out += "  matching: " + format_matching(P, o.matching) + "\n";
    out += "  improved: " + format_students(P, o.improved) + "\n";
    out += "  blocking: " + format_blocking(P, o.blocking) + "\n";
  }
  out += fmt::format("\nmaximum improvement: {}\nefficient dominating matchings: {}\n",
                     report.max_improvement, report.frontier_size);
  out += "inclusion-minimal blocking sets:\n";
  for (const auto& b : report.minimal_blocking_sets) out += "  " + format_blocking(P, b) + "\n";

  out += "\ndoubly dominates (row over column):\n";
  std::vector<std::vector<std::string>> matrix{{""}};
  for (const auto& o : report.outcomes) matrix[0].push_back(o.name);
  for (std::size_t a = 0; a < report.outcomes.size(); ++a) {
    auto& row = matrix.emplace_back(std::vector<std::string>{report.outcomes[a].name});
    for (std::size_t b = 0; b < report.outcomes.size(); ++b)
      row.push_back(a == b ? "-" : yes_no(report.doubly_dominates[a][b]));
  }
  return out + render_table(matrix);
}

std::optional<double> family_ratio(const SchoolChoiceProblem& P, Mechanism m) {
  if (m != Mechanism::eada && m != Mechanism::da_ttc && m != Mechanism::eada_underdemanded)
    throw ArgumentError("ratios are defined for mechanisms that dominate DA");
  return improvement_ratio(P, run_mechanism(P, m, ConsentStructure::everyone(P)));
}

}  // namespace matchlab
