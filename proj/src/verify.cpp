#include "matchlab/verify.hpp"

#include <algorithm>
#include <random>

#include <fmt/format.h>

#include "matchlab/envy.hpp"
#include "matchlab/instances.hpp"
#include "matchlab/mechanisms.hpp"
#include "matchlab/oracle.hpp"
#include "matchlab/report.hpp"

namespace matchlab {

namespace {

const std::vector<int> kFamilySizes{5, 6, 7, 8, 9, 10};

// Collects the failing sub-checks of one criterion.
class Check {
 public:
  Check(int criterion, std::string description) {
    result_.criterion = criterion;
    result_.description = std::move(description);
    result_.passed = true;
  }

  template <class T>
  void equal(const std::string& label, const T& expected, const T& actual,
             const std::function<std::string(const T&)>& show) {
    if (expected == actual) return;
    fail(label, show(expected), show(actual));
  }

  void that(bool ok, const std::string& label, const std::string& expected, const std::string& actual) {
    if (!ok) fail(label, expected, actual);
  }

  // Exceptions thrown by a sub-check count as failures.
  template <class F>
  void guarded(const std::string& label, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      fail(label, "no exception", e.what());
    }
  }

  CheckResult done() && { return std::move(result_); }

 private:
  void fail(const std::string& label, const std::string& expected, const std::string& actual) {
    result_.passed = false;
    result_.expected += (result_.expected.empty() ? "" : "\n") + label + ": " + expected;
    result_.actual += (result_.actual.empty() ? "" : "\n") + label + ": " + actual;
  }

  CheckResult result_;
};

std::vector<StudentId> students(const SchoolChoiceProblem& P, const std::vector<std::string>& names) {
  std::vector<StudentId> out;
  for (const auto& n : names) out.push_back(P.student(n));
  std::sort(out.begin(), out.end());
  return out;
}

BlockingSet pairs(const SchoolChoiceProblem& P,
                  const std::vector<std::pair<std::string, std::string>>& names) {
  BlockingSet out;
  for (const auto& [i, s] : names) out.push_back({P.student(i), P.school(s), {}});
  std::sort(out.begin(), out.end());
  return out;
}

TradingCycle cycle(const SchoolChoiceProblem& P, const std::vector<std::string>& names) {
  std::vector<StudentId> nodes;
  for (const auto& n : names) nodes.push_back(P.student(n));
  return TradingCycle::canonical(std::move(nodes));
}

Matching identity(const SchoolChoiceProblem& P) {
  std::vector<SchoolId> a;
  for (int k = 0; k < P.num_students(); ++k) a.push_back(SchoolId{k});
  return Matching(std::move(a));
}

std::string name(int prefix_index, char prefix) { return std::string(1, prefix) + std::to_string(prefix_index); }

auto show_students(const SchoolChoiceProblem& P) {
  return std::function<std::string(const std::vector<StudentId>&)>(
      [&P](const std::vector<StudentId>& v) { return format_students(P, v); });
}
auto show_blocking(const SchoolChoiceProblem& P) {
  return std::function<std::string(const BlockingSet&)>(
      [&P](const BlockingSet& b) { return format_blocking(P, b); });
}
auto show_matching(const SchoolChoiceProblem& P) {
  return std::function<std::string(const Matching&)>(
      [&P](const Matching& m) { return format_matching(P, m); });
}

CheckResult check_da_identity(const VerificationInputs& in) {
  Check c(1, "DA assigns i_k to s_k on example1(n), n = 5..10; unique stable matching for n <= 8");
  for (int n : kFamilySizes) {
    c.guarded(fmt::format("n={}", n), [&] {
      const auto P = in.example1(n);
      const auto id = identity(P);
      c.equal(fmt::format("n={} student-proposing DA", n), id, da(P), show_matching(P));
      c.equal(fmt::format("n={} school-proposing DA", n), id,
              deferred_acceptance(P, ProposingSide::schools).matching, show_matching(P));
      if (n <= 8) {
        const auto stable = enumerate_stable_matchings(P);
        c.that(stable.size() == 1 && stable.front() == id, fmt::format("n={} stable matchings", n),
               "exactly the identity", fmt::format("{} stable matchings", stable.size()));
      }
    });
  }
  return std::move(c).done();
}

CheckResult check_minimal_improvement(const VerificationInputs& in) {
  Check c(2, "full-consent EADA and DA+TTC on example1(n) swap i1 and i2, blocked only by (i_n, s1)");
  for (int n : kFamilySizes) {
    c.guarded(fmt::format("n={}", n), [&] {
      const auto P = in.example1(n);
      const Matching expected = da(P).with(P.student("i1"), P.school("s2")).with(P.student("i2"), P.school("s1"));
      const auto blocking = pairs(P, {{name(n, 'i'), "s1"}});
      const std::vector<std::pair<std::string, Matching>> runs{
          {"eada", eada(P, ConsentStructure::everyone(P))}, {"da-ttc", da_ttc(P)}};
      for (const auto& [mech, mu] : runs) {
        const auto label = fmt::format("n={} {}", n, mech);
        c.equal(label + " matching", expected, mu, show_matching(P));
        c.equal(label + " improved", students(P, {"i1", "i2"}), improved_set(P, mu), show_students(P));
        c.equal(label + " blocking", blocking, blocking_pairs(P, mu), show_blocking(P));
      }
    });
  }
  return std::move(c).done();
}

CheckResult check_max_improvement(const VerificationInputs& in) {
  Check c(3, "I* = n - 1 on example1(n), witnessed by the two disjoint long cycles");
  for (int n : kFamilySizes) {
    c.guarded(fmt::format("n={}", n), [&] {
      const auto P = in.example1(n);
      const auto best = max_improvement(P);
      c.that(best.value == n - 1, fmt::format("n={} I*", n), std::to_string(n - 1), std::to_string(best.value));
      std::vector<std::string> long_cycle;
      for (int k = 2; k <= n - 2; ++k) long_cycle.push_back(name(k, 'i'));
      const Matching witness =
          apply_cycles(P, da(P), {cycle(P, {"i1", name(n - 1, 'i')}), cycle(P, long_cycle)});
      const bool found = std::find(best.witnesses.begin(), best.witnesses.end(), witness) != best.witnesses.end();
      c.that(found, fmt::format("n={} witness", n), format_matching(P, witness),
             fmt::format("{} other witnesses", best.witnesses.size()));
      if (n == 7) {
        const auto expected = pairs(P, {{"i1", "s2"}, {"i2", "s1"}, {"i7", "s1"}});
        const auto actual = blocking_pairs(P, witness);
        c.that(is_subset(expected, actual), "n=7 witness blocking pairs", "superset of " + format_blocking(P, expected),
               format_blocking(P, actual));
      }
    });
  }
  return std::move(c).done();
}

CheckResult check_ratio(const VerificationInputs& in) {
  Check c(4, "improvement ratio of full-consent EADA and DA+TTC on example1(n) is (n - 1) / 2");
  for (int n : kFamilySizes) {
    c.guarded(fmt::format("n={}", n), [&] {
      const auto P = in.example1(n);
      const double expected = (n - 1) / 2.0;
      for (Mechanism m : {Mechanism::eada, Mechanism::da_ttc}) {
        const auto r = family_ratio(P, m);
        c.that(r && *r == expected, fmt::format("n={} {}", n, mechanism_name(m)), format_ratio(expected),
               format_ratio(r));
      }
    });
  }
  return std::move(c).done();
}

struct CycleRow {
  std::vector<std::string> cycle;
  std::vector<std::pair<std::string, std::string>> blocking;
};

// Expected cycle inventory of example1(7): cycle, members, blocking pairs.
const std::vector<CycleRow>& expected_cycle_rows() {
  static const std::vector<CycleRow> rows{
      {{"i1", "i2"}, {{"i7", "s1"}}},
      {{"i1", "i2", "i3"}, {{"i7", "s1"}, {"i6", "s1"}, {"i2", "s1"}}},
      {{"i1", "i2", "i3", "i4"}, {{"i7", "s1"}, {"i6", "s1"}, {"i2", "s1"}}},
      {{"i1", "i2", "i3", "i4", "i5"}, {{"i7", "s1"}, {"i6", "s1"}, {"i2", "s1"}}},
      {{"i2", "i3", "i4", "i5"}, {{"i1", "s2"}}},
      {{"i1", "i6"}, {{"i7", "s1"}, {"i2", "s1"}, {"i5", "s6"}}},
      {{"i1", "i6", "i2"}, {{"i7", "s1"}, {"i1", "s2"}, {"i5", "s6"}}},
  };
  return rows;
}

CheckResult check_cycle_table(const VerificationInputs& in) {
  Check c(5, "example1(7) has exactly the 7 listed trading cycles with the listed blocking pairs");
  c.guarded("example1(7)", [&] {
    const auto P = in.example1(7);
    const auto cycles = enumerate_trading_cycles(EnvyDigraph(P, da(P)));
    const auto& rows = expected_cycle_rows();
    c.that(cycles.size() == rows.size(), "cycle count", std::to_string(rows.size()), std::to_string(cycles.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto expected_cycle = cycle(P, rows[k].cycle);
      const auto label = fmt::format("C{} {}", k + 1, format_cycle(P, expected_cycle));
      if (std::find(cycles.begin(), cycles.end(), expected_cycle) == cycles.end()) {
        c.that(false, label, "present", "not a trading cycle");
        continue;
      }
      c.equal(label, pairs(P, rows[k].blocking), cycle_blocking_report(P, {expected_cycle}), show_blocking(P));
    }
    for (const auto& found : cycles) {
      const bool listed = std::any_of(rows.begin(), rows.end(),
                                      [&](const CycleRow& r) { return cycle(P, r.cycle) == found; });
      c.that(listed, "unlisted cycle " + format_cycle(P, found), "absent",
             format_blocking(P, cycle_blocking_report(P, {found})));
    }
  });
  return std::move(c).done();
}

CheckResult check_setwise_minimal(const VerificationInputs& in) {
  Check c(6, "on example1(7) {(i7, s1)} is the unique minimal blocking set among efficient dominating matchings");
  c.guarded("example1(7)", [&] {
    const auto P = in.example1(7);
    const auto set = enumerate_dominating_matchings(P);
    const auto frontier = pareto_frontier_over_da(set);
    const auto target = pairs(P, {{"i7", "s1"}});
    c.equal("minimal blocking sets", std::vector<BlockingSet>{target}, frontier.minimal_blocking_sets,
            std::function<std::string(const std::vector<BlockingSet>&)>([&P](const std::vector<BlockingSet>& v) {
              std::string out;
              for (const auto& b : v) out += (out.empty() ? "" : " ") + format_blocking(P, b);
              return out.empty() ? std::string("none") : out;
            }));
    for (const auto& e : frontier.efficient)
      if (e.blocking == target)
        c.that(e.improved.size() == 2, "improvement at " + format_matching(P, e.matching), "2",
               std::to_string(e.improved.size()));
    for (const auto& w : frontier.max_improvement.witnesses) {
      const auto b = blocking_pairs(P, w);
      c.that(is_subset(target, b) && b.size() > target.size(), "I* witness " + format_matching(P, w),
             "strict superset of " + format_blocking(P, target), format_blocking(P, b));
    }
  });
  return std::move(c).done();
}

CheckResult check_example2(const VerificationInputs& in) {
  Check c(7, "example2: DA+TTC doubly dominates full-consent EADA");
  c.guarded("example2", [&] {
    const auto P = in.example2();
    const Matching eada_mu = eada(P, ConsentStructure::everyone(P));
    c.equal("eada improved", students(P, {"i1", "i4", "i5", "i6"}), improved_set(P, eada_mu), show_students(P));
    c.equal("eada blocking", pairs(P, {{"i3", "s6"}, {"i5", "s6"}, {"i7", "s4"}}), blocking_pairs(P, eada_mu),
            show_blocking(P));
    const Matching six = apply_cycles(P, da(P), {cycle(P, {"i1", "i2"}), cycle(P, {"i3", "i6", "i4", "i5"})});
    c.equal("six-student improved", students(P, {"i1", "i2", "i3", "i4", "i5", "i6"}), improved_set(P, six),
            show_students(P));
    c.equal("six-student blocking", pairs(P, {{"i1", "s4"}, {"i7", "s4"}}), blocking_pairs(P, six),
            show_blocking(P));
    c.that(doubly_dominates(P, six, eada_mu), "double domination", "true", "false");
    c.equal("da-ttc", six, da_ttc(P), show_matching(P));
    const auto set = enumerate_dominating_matchings(P);
    const auto best = max_improvement(set);
    c.that(best.value == 6, "I*", "6", std::to_string(best.value));
    const StudentId i7 = P.student("i7");
    const bool i7_improves = std::any_of(set.members.begin(), set.members.end(), [&](const DominatingEntry& e) {
      return std::find(e.improved.begin(), e.improved.end(), i7) != e.improved.end();
    });
    c.that(!i7_improves, "i7 improvable", "never", "in some dominating matching");
  });
  return std::move(c).done();
}

CheckResult check_example3(const VerificationInputs& in) {
  Check c(8, "example3: full-consent EADA doubly dominates DA+TTC");
  c.guarded("example3", [&] {
    const auto P = in.example3();
    const Matching ttc = da_ttc(P);
    c.equal("da-ttc improved", students(P, {"i1", "i2"}), improved_set(P, ttc), show_students(P));
    c.equal("da-ttc blocking", pairs(P, {{"i4", "s1"}, {"i5", "s1"}, {"i3", "s2"}, {"i4", "s2"}}),
            blocking_pairs(P, ttc), show_blocking(P));
    const Matching four = apply_cycles(P, da(P), {cycle(P, {"i1", "i4"}), cycle(P, {"i2", "i3"})});
    c.equal("four-student improved", students(P, {"i1", "i2", "i3", "i4"}), improved_set(P, four),
            show_students(P));
    c.equal("four-student blocking", pairs(P, {{"i5", "s1"}}), blocking_pairs(P, four), show_blocking(P));
    c.equal("eada", four, eada(P, ConsentStructure::everyone(P)), show_matching(P));
    c.that(doubly_dominates(P, four, ttc), "double domination", "true", "false");
  });
  return std::move(c).done();
}

CheckResult check_properties(const VerificationInputs& in) {
  Check c(9, fmt::format("property suite over {} random markets", in.property_instances));
  const auto violations = run_property_suite(in.property_instances, in.property_seed);
  for (std::size_t k = 0; k < violations.size() && k < 10; ++k)
    c.that(false, fmt::format("seed {} {}", violations[k].seed, violations[k].property), "holds",
           violations[k].detail);
  c.that(violations.size() <= 10, "further violations", "0", std::to_string(violations.size() - std::min<std::size_t>(10, violations.size())));
  return std::move(c).done();
}

ConsentStructure random_consent(std::mt19937_64& rng, int n, std::optional<StudentId> excluded) {
  std::vector<StudentId> members;
  for (int k = 0; k < n; ++k)
    if ((rng() & 1U) && (!excluded || excluded->value != k)) members.push_back(StudentId{k});
  return ConsentStructure(std::move(members));
}

void check_market(const SchoolChoiceProblem& P, std::uint64_t seed, std::vector<PropertyViolation>& out) {
  const int n = P.num_students();
  auto violation = [&](std::string property, std::string detail) {
    out.push_back({seed, std::move(property), std::move(detail)});
  };
  std::mt19937_64 rng(seed);
  const Matching baseline = da(P);
  if (!is_stable(P, baseline)) violation("DA stable", format_blocking(P, blocking_pairs(P, baseline)));

  const auto W = random_consent(rng, n, std::nullopt);
  const Matching partial = eada(P, W);
  if (!weakly_dominates(P, partial, baseline)) violation("EADA(W) weakly dominates DA", format_matching(P, partial));

  const auto everyone = ConsentStructure::everyone(P);
  const Matching full = eada(P, everyone);
  const Matching underdemanded = eada_full_consent_underdemanded(P);
  if (full != underdemanded)
    violation("EADA equals the under-demanded procedure",
              format_matching(P, full) + " vs " + format_matching(P, underdemanded));

  const StudentId i{static_cast<int>(rng() % static_cast<std::uint64_t>(n))};
  const auto without = random_consent(rng, n, i);
  const auto before = P.school_rank(i, eada(P, without)[i]);
  const auto after = P.school_rank(i, eada(P, without.with(i))[i]);
  if (after > before) violation("consent monotonicity", P.student_name(i) + " worse off after consenting");

  if (n > 5) return;
  if (!is_pareto_efficient(P, full)) violation("EADA efficient", format_matching(P, full));
  const Matching ttc = da_ttc(P);
  if (!is_pareto_efficient(P, ttc)) violation("DA+TTC efficient", format_matching(P, ttc));

  const EnvyDigraph g(P, baseline);
  for (const auto& e : enumerate_dominating_matchings(P).members) {
    const auto cycles = decompose_improvement(P, baseline, e.matching);
    bool ok = true;
    for (const auto& cyc : cycles)
      for (std::size_t k = 0; k < cyc.size(); ++k)
        ok = ok && cyc.size() >= 2 && g.has_edge(cyc.nodes[k], cyc.nodes[(k + 1) % cyc.size()]);
    if (!ok || apply_cycles(P, baseline, cycles) != e.matching)
      violation("cycle decomposition", format_matching(P, e.matching));
  }
}

}  // namespace

VerificationInputs VerificationInputs::defaults() {
  VerificationInputs in;
  in.example1 = matchlab::example1;
  in.example2 = matchlab::example2;
  in.example3 = matchlab::example3;
  return in;
}

std::vector<PropertyViolation> run_property_suite(int instances, std::uint64_t first_seed) {
  std::vector<PropertyViolation> out;
  for (int k = 0; k < instances; ++k) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(k);
    const int n = 3 + k % 4;
    try {
      check_market(random_problem(n, n, 1, seed), seed, out);
    } catch (const std::exception& e) {
      out.push_back({seed, "no exception", e.what()});
    }
  }
  return out;
}

std::vector<CheckResult> verify_reference_results(const VerificationInputs& inputs) {
  return {check_da_identity(inputs),     check_minimal_improvement(inputs), check_max_improvement(inputs),
          check_ratio(inputs),           check_cycle_table(inputs),         check_setwise_minimal(inputs),
          check_example2(inputs),        check_example3(inputs),            check_properties(inputs)};
}

std::string render_checks(const std::vector<CheckResult>& checks) {
  std::string out;
  auto indent = [](const std::string& text) {
    std::string r = "      ";
    for (char ch : text) r += ch == '\n' ? std::string("\n      ") : std::string(1, ch);
    return r;
  };
  for (const auto& c : checks) {
    out += fmt::format("{} [{}] {}\n", c.passed ? "PASS" : "FAIL", c.criterion, c.description);
    if (!c.passed) out += "    expected:\n" + indent(c.expected) + "\n    actual:\n" + indent(c.actual) + "\n";
  }
  const auto passed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  out += fmt::format("{}/{} checks passed\n", passed, checks.size());
  return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string cycle_table_reproduction() { return cycles_report(example1(7)); }

}  // namespace matchlab
