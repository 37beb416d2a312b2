// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "matchlab/cli.hpp"
#include "matchlab/envy.hpp"
#include "matchlab/instances.hpp"
#include "matchlab/mechanisms.hpp"
#include "matchlab/oracle.hpp"
#include "test_support.hpp"

using namespace matchlab;
using ref::Assignment;
using PairSet = std::set<std::pair<int, int>>;

namespace {

const std::vector<int> kSizes{5, 6, 7, 8, 9, 10};

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string show(const Assignment& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) out += fmt::format("{}i{}:{}", i ? " " : "", i + 1, a[i] < 0 ? "-" : "s" + std::to_string(a[i] + 1));
  return out;
}

std::string show(const PairSet& b) {
  std::string out = "{";
  for (const auto& [i, s] : b) out += fmt::format("{}(i{}, s{})", out.size() > 1 ? ", " : "", i + 1, s + 1);
  return out + "}";
}

// Students and schools are named i1.., s1.. in every instance used here, so
// 1-based labels translate directly to indices.
PairSet pairs(std::initializer_list<std::pair<int, int>> one_based) {
  PairSet out;
  for (auto [i, s] : one_based) out.insert({i - 1, s - 1});
  return out;
}

std::vector<int> improved(const SchoolChoiceProblem& P, const Assignment& mu, const Assignment& base) {
  std::vector<int> out;
  for (int i = 0; i < P.num_students(); ++i)
    if (ref::prefers(P, i, mu[i], base[i])) out.push_back(i);
  return out;
}

std::vector<int> one_based(std::initializer_list<int> ids) {
  std::vector<int> out;
  for (int k : ids) out.push_back(k - 1);
  return out;
}

Assignment identity(int n) {
  Assignment a;
  for (int k = 0; k < n; ++k) a.push_back(k);
  return a;
}

// Each listed student (1-based) takes the seat of the next one at base.
Assignment rotate(Assignment base, const std::vector<std::vector<int>>& cycles) {
  const Assignment original = base;
  for (const auto& c : cycles)
    for (std::size_t k = 0; k < c.size(); ++k) base[c[k] - 1] = original[c[(k + 1) % c.size()] - 1];
  return base;
}

bool stable(const SchoolChoiceProblem& P, const Assignment& mu) {
  if (!ref::blocking_pairs(P, mu).empty()) return false;
  for (int i = 0; i < P.num_students(); ++i)
    if (ref::preference_position(P, i, mu[i]) < 0) return false;
  for (int s = 0; s < P.num_schools(); ++s) {
    const int load = static_cast<int>(std::count(mu.begin(), mu.end(), s));
    if (load >= P.quota(SchoolId{s})) continue;
    for (int i = 0; i < P.num_students(); ++i)
      if (ref::prefers(P, i, s, mu[i])) return false;
  }
  return true;
}

std::vector<Assignment> dominating(const SchoolChoiceProblem& P, const Assignment& base) {
  std::vector<Assignment> out;
  for (auto& a : ref::feasible_assignments(P))
    if (ref::weakly_dominates(P, a, base)) out.push_back(std::move(a));
  return out;
}

void c1(Criterion& c) {
  for (int n : kSizes) {
    const auto P = example1(n);
    const auto id = identity(n);
    c.expect(ref::assignment(da(P)) == id, fmt::format("n={} DA is not the identity", n));
    c.expect(ref::gale_shapley(P) == id, fmt::format("n={} reference DA is not the identity", n));
    c.expect(ref::assignment(deferred_acceptance(P, ProposingSide::schools).matching) == id,
             fmt::format("n={} school-proposing DA is not the identity", n));
    if (n <= 8) {
      int count = 0;
      bool only_identity = true;
      for (const auto& a : ref::feasible_assignments(P))
        if (stable(P, a)) {
          ++count;
          only_identity = only_identity && a == id;
        }
      c.expect(count == 1 && only_identity, fmt::format("n={} has {} stable matchings", n, count));
      const auto lib = enumerate_stable_matchings(P);
      c.expect(lib.size() == 1, fmt::format("n={} library finds {} stable matchings", n, lib.size()));
    }
  }
}

void c2(Criterion& c) {
  for (int n : kSizes) {
    const auto P = example1(n);
    auto expected = identity(n);
    std::swap(expected[0], expected[1]);
    for (const auto& [name, mu] : {std::pair{"eada", eada(P, ConsentStructure::everyone(P))},
                                   std::pair{"da-ttc", da_ttc(P)}}) {
      const auto a = ref::assignment(mu);
      c.expect(a == expected, fmt::format("n={} {} gives {}", n, name, show(a)));
      c.expect(improved(P, a, identity(n)) == one_based({1, 2}), fmt::format("n={} {} improved set", n, name));
      const auto b = ref::blocking_pairs(P, a);
      c.expect(b == pairs({{n, 1}}), fmt::format("n={} {} blocking {}", n, name, show(b)));
    }
  }
}

void c3(Criterion& c) {
  for (int n : kSizes) {
    const auto P = example1(n);
    const auto base = identity(n);
    std::size_t best = 0;
    for (const auto& a : dominating(P, base)) best = std::max(best, improved(P, a, base).size());
    c.expect(static_cast<int>(best) == n - 1, fmt::format("n={} reference I* = {}", n, best));
    const auto lib = max_improvement(P);
    c.expect(lib.value == n - 1, fmt::format("n={} library I* = {}", n, lib.value));

    std::vector<int> longer;
    for (int k = 2; k <= n - 2; ++k) longer.push_back(k);
    const auto witness = rotate(base, {{1, n - 1}, longer});
    c.expect(static_cast<int>(improved(P, witness, base).size()) == n - 1,
             fmt::format("n={} witness improves {}", n, improved(P, witness, base).size()));
    const bool listed = std::any_of(lib.witnesses.begin(), lib.witnesses.end(),
                                    [&](const Matching& m) { return ref::assignment(m) == witness; });
    c.expect(listed, fmt::format("n={} witness {} missing from the library witnesses", n, show(witness)));
    if (n == 7) {
      const auto b = ref::blocking_pairs(P, witness);
      const auto need = pairs({{1, 2}, {2, 1}, {7, 1}});
      c.expect(std::includes(b.begin(), b.end(), need.begin(), need.end()),
               "n=7 witness blocking " + show(b));
    }
  }
}

void c4(Criterion& c) {
  for (int n : kSizes)
    for (const char* mech : {"eada", "da-ttc"}) {
      std::ostringstream out, err;
      const int code = run_cli({"ratio", "--family", "example1", "--n", std::to_string(n), "--mechanism", mech}, out, err);
      const std::string expected = fmt::format("{:.1f}\n", (n - 1) / 2.0);
      c.expect(code == 0 && out.str() == expected,
               fmt::format("n={} {} printed '{}' (exit {})", n, mech, out.str(), code));
    }
}

void c5(Criterion& c) {
  const auto P = example1(7);
  const auto base = identity(7);
  const auto cycles = ref::all_cycles(ref::envy_graph(P, base));
  c.expect(cycles.size() == 7, fmt::format("{} trading cycles instead of 7", cycles.size()));
  const std::vector<std::pair<std::vector<int>, PairSet>> rows{
      {{1, 2}, pairs({{7, 1}})},
      {{1, 2, 3}, pairs({{7, 1}, {6, 1}, {2, 1}})},
      {{1, 2, 3, 4}, pairs({{7, 1}, {6, 1}, {2, 1}})},
      {{1, 2, 3, 4, 5}, pairs({{7, 1}, {6, 1}, {2, 1}})},
      {{2, 3, 4, 5}, pairs({{1, 2}})},
      {{1, 6}, pairs({{7, 1}, {2, 1}, {5, 6}})},
      {{1, 6, 2}, pairs({{7, 1}, {1, 2}, {5, 6}})},
  };
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::vector<int> zero;
    for (int v : rows[k].first) zero.push_back(v - 1);
    if (!cycles.count(zero)) {
      c.expect(false, fmt::format("C{} is not a trading cycle", k + 1));
      continue;
    }
    const auto b = ref::blocking_pairs(P, rotate(base, {rows[k].first}));
    c.expect(b == rows[k].second, fmt::format("C{} blocking {} instead of {}", k + 1, show(b), show(rows[k].second)));
  }
}

void c6(Criterion& c) {
  const auto P = example1(7);
  const auto base = identity(7);
  const auto dom = dominating(P, base);
  std::vector<Assignment> efficient;
  for (const auto& a : dom)
    if (std::none_of(dom.begin(), dom.end(), [&](const Assignment& b) { return ref::strictly_dominates(P, b, a); }))
      efficient.push_back(a);
  std::set<PairSet> minimal;
  for (const auto& a : efficient) {
    const auto b = ref::blocking_pairs(P, a);
    const bool smaller_exists = std::any_of(efficient.begin(), efficient.end(), [&](const Assignment& x) {
      const auto bx = ref::blocking_pairs(P, x);
      return bx.size() < b.size() && std::includes(b.begin(), b.end(), bx.begin(), bx.end());
    });
    if (!smaller_exists) minimal.insert(b);
  }
  const auto target = pairs({{7, 1}});
  c.expect(minimal == std::set<PairSet>{target}, fmt::format("{} minimal blocking sets", minimal.size()));
  for (const auto& a : efficient)
    if (ref::blocking_pairs(P, a) == target)
      c.expect(improved(P, a, base).size() == 2, "matching " + show(a) + " at the minimal set");
  const auto witness = rotate(base, {{1, 6}, {2, 3, 4, 5}});
  const auto wb = ref::blocking_pairs(P, witness);
  c.expect(wb.size() > 1 && wb.count({6, 0}), "witness blocking " + show(wb));
  c.expect(pareto_frontier_over_da(P).minimal_blocking_sets.size() == 1, "library frontier disagrees");
}

void c7(Criterion& c) {
  const auto P = example2();
  const auto base = ref::assignment(da(P));
  c.expect(base == identity(7), "DA is not the identity");
  const auto e = ref::assignment(eada(P, ConsentStructure::everyone(P)));
  c.expect(improved(P, e, base) == one_based({1, 4, 5, 6}), "eada outcome " + show(e));
  c.expect(ref::blocking_pairs(P, e) == pairs({{3, 6}, {5, 6}, {7, 4}}), "eada blocking " + show(ref::blocking_pairs(P, e)));
  const auto six = rotate(base, {{1, 2}, {3, 6, 4, 5}});
  c.expect(improved(P, six, base) == one_based({1, 2, 3, 4, 5, 6}), "six-student matching " + show(six));
  c.expect(ref::blocking_pairs(P, six) == pairs({{1, 4}, {7, 4}}), "six-student blocking " + show(ref::blocking_pairs(P, six)));
  c.expect(doubly_dominates(P, Matching(std::vector<SchoolId>(six.begin(), six.end())),
                           eada(P, ConsentStructure::everyone(P))),
           "doubly_dominates is false");
  c.expect(ref::assignment(da_ttc(P)) == six, "da-ttc " + show(ref::assignment(da_ttc(P))));
  std::size_t best = 0;
  bool i7 = false;
  for (const auto& a : dominating(P, base)) {
    const auto imp = improved(P, a, base);
    best = std::max(best, imp.size());
    i7 = i7 || std::count(imp.begin(), imp.end(), 6);
  }
  c.expect(best == 6, fmt::format("I* = {}", best));
  c.expect(!i7, "i7 improves in some dominating matching");
}

void c8(Criterion& c) {
  const auto P = example3();
  const auto base = ref::assignment(da(P));
  c.expect(base == identity(5), "DA is not the identity");
  const auto t = ref::assignment(da_ttc(P));
  c.expect(improved(P, t, base) == one_based({1, 2}), "da-ttc outcome " + show(t));
  c.expect(ref::blocking_pairs(P, t) == pairs({{4, 1}, {5, 1}, {3, 2}, {4, 2}}), "da-ttc blocking " + show(ref::blocking_pairs(P, t)));
  const auto four = rotate(base, {{1, 4}, {2, 3}});
  c.expect(improved(P, four, base) == one_based({1, 2, 3, 4}), "four-student matching " + show(four));
  c.expect(ref::blocking_pairs(P, four) == pairs({{5, 1}}), "four-student blocking " + show(ref::blocking_pairs(P, four)));
  c.expect(ref::assignment(eada(P, ConsentStructure::everyone(P))) == four, "eada differs from the four-student matching");
  c.expect(doubly_dominates(P, Matching(std::vector<SchoolId>(four.begin(), four.end())), da_ttc(P)),
           "doubly_dominates is false");
}

ConsentStructure random_subset(std::mt19937_64& rng, int n, int excluded) {
  std::vector<StudentId> m;
  for (int k = 0; k < n; ++k)
    if ((rng() >> 7) & 1U && k != excluded) m.push_back(StudentId{k});
  return ConsentStructure(std::move(m));
}

void c9(Criterion& c) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 3 + static_cast<int>(seed % 4);
    const auto P = random_problem(n, n, 1, 1'000'000 + seed);
    std::mt19937_64 rng(seed * 7919 + 13);
    auto fail = [&](const std::string& what) { c.expect(false, fmt::format("seed {}: {}", seed, what)); };
    try {
      const auto base = ref::assignment(da(P));
      if (base != ref::gale_shapley(P) || !stable(P, base)) fail("DA");
      const auto W = random_subset(rng, n, -1);
      if (!ref::weakly_dominates(P, ref::assignment(eada(P, W)), base)) fail("EADA(W) below DA");
      const auto full = ref::assignment(eada(P, ConsentStructure::everyone(P)));
      if (full != ref::assignment(eada_full_consent_underdemanded(P))) fail("under-demanded procedure differs");
      const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      const auto without = random_subset(rng, n, i);
      const int before = ref::assignment(eada(P, without))[i];
      const int after = ref::assignment(eada(P, without.with(StudentId{i})))[i];
      if (ref::prefers(P, i, before, after)) fail("consent monotonicity");
      if (n <= 5) {
        if (!ref::pareto_efficient(P, full)) fail("EADA inefficient");
        if (!ref::pareto_efficient(P, ref::assignment(da_ttc(P)))) fail("DA+TTC inefficient");
        const auto g = ref::envy_graph(P, base);
        const Matching dam = da(P);
        for (const auto& a : dominating(P, base)) {
          const Matching mu(std::vector<SchoolId>(a.begin(), a.end()));
          const auto cycles = decompose_improvement(P, dam, mu);
          for (const auto& cyc : cycles)
            for (std::size_t k = 0; k < cyc.size(); ++k) {
              const int u = cyc.nodes[k].value, v = cyc.nodes[(k + 1) % cyc.size()].value;
              if (cyc.size() < 2 || std::find(g[u].begin(), g[u].end(), v) == g[u].end())
                fail("decomposition uses a non-envy edge");
            }
          if (ref::assignment(apply_cycles(P, dam, cycles)) != a) fail("decomposition does not rebuild " + show(a));
        }
      }
      ++checked;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  c.expect(checked == 1000, fmt::format("{} of 1000 markets completed", checked));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> all{
      {"DA identity on example1", c1},
      {"EADA and DA+TTC improve only i1 and i2 on example1", c2},
      {"maximum improvement n - 1 on example1", c3},
      {"improvement ratio (n - 1) / 2", c4},
      {"trading-cycle table of example1(7)", c5},
      {"setwise-minimal blocking set on example1(7)", c6},
      {"example2 double domination", c7},
      {"example3 reverse double domination", c8},
      {"property suite on 1000 random markets", c9},
  };
  int failed = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    Criterion c{static_cast<int>(k + 1), all[k].first, {}};
    try {
      all[k].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s\n", c.failures.empty() ? "PASS" : "FAIL", c.id, c.title.c_str());
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    failed += !c.failures.empty();
  }
  return failed == 0 ? 0 : 1;
}
