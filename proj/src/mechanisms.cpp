#include "matchlab/mechanisms.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>

namespace matchlab {

namespace {

std::size_t idx(StudentId i) { return static_cast<std::size_t>(i.value); }
std::size_t idx(SchoolId s) { return static_cast<std::size_t>(s.value); }

void sort_by_priority(const SchoolChoiceProblem& P, SchoolId s, std::vector<StudentId>& pool) {
  std::sort(pool.begin(), pool.end(), [&](StudentId a, StudentId b) {
    return P.student_rank(s, a) < P.student_rank(s, b);
  });
}

DaResult student_proposing(const SchoolChoiceProblem& P) {
  const auto n = static_cast<std::size_t>(P.num_students());
  const auto m = static_cast<std::size_t>(P.num_schools());
  std::vector<std::size_t> next(n, 0);
  std::vector<std::vector<StudentId>> held(m);
  std::vector<StudentId> free;
  for (int i = 0; i < P.num_students(); ++i) free.push_back(StudentId{i});

  DaResult result{Matching::all_unassigned(P.num_students()), {ProposingSide::students, {}}};
  bool rejected_any = true;
  while (rejected_any) {
    auto& round = result.trace.rounds.emplace_back(m);
    for (StudentId i : free) {
      auto prefs = P.preferences(i);
      if (next[idx(i)] < prefs.size()) round[idx(prefs[next[idx(i)]])].applicants.push_back(i);
    }
    std::vector<StudentId> rejected_now;
    for (std::size_t s = 0; s < m; ++s) {
      const SchoolId school{static_cast<int>(s)};
      auto& record = round[s];
      if (!record.applicants.empty()) {
        std::vector<StudentId> pool = held[s];
        pool.insert(pool.end(), record.applicants.begin(), record.applicants.end());
        sort_by_priority(P, school, pool);
        const auto keep = std::min(pool.size(), static_cast<std::size_t>(P.quota(school)));
        held[s].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(keep));
        record.rejected.assign(pool.begin() + static_cast<std::ptrdiff_t>(keep), pool.end());
        rejected_now.insert(rejected_now.end(), record.rejected.begin(), record.rejected.end());
      }
      record.held = held[s];
    }
    for (StudentId i : rejected_now) ++next[idx(i)];
    std::sort(rejected_now.begin(), rejected_now.end());
    free = std::move(rejected_now);
    rejected_any = !free.empty();
  }
  for (std::size_t s = 0; s < m; ++s)
    for (StudentId i : held[s]) result.matching = result.matching.with(i, SchoolId{static_cast<int>(s)});
  return result;
}

DaResult school_proposing(const SchoolChoiceProblem& P) {
  const auto n = static_cast<std::size_t>(P.num_students());
  const auto m = static_cast<std::size_t>(P.num_schools());
  std::vector<std::size_t> next(m, 0);            // position in the completed priority order
  std::vector<std::vector<StudentId>> holding(m);  // students currently holding s's offer
  std::vector<SchoolId> offer(n, SchoolId::outside());

  DaResult result{Matching::all_unassigned(P.num_students()), {ProposingSide::schools, {}}};
  bool rejected_any = true;
  while (rejected_any) {
    auto& round = result.trace.rounds.emplace_back(m);
    std::vector<std::vector<SchoolId>> received(n);
    for (std::size_t s = 0; s < m; ++s) {
      const SchoolId school{static_cast<int>(s)};
      auto order = P.priority_order(school);
      auto open = static_cast<std::size_t>(P.quota(school)) - holding[s].size();
      while (open > 0 && next[s] < order.size()) {
        StudentId i = order[next[s]++];
        round[s].applicants.push_back(i);
        received[idx(i)].push_back(school);
        --open;
      }
    }
    rejected_any = false;
    for (std::size_t i = 0; i < n; ++i) {
      const StudentId student{static_cast<int>(i)};
      if (received[i].empty()) continue;
      SchoolId best = offer[i];
      for (SchoolId s : received[i])
        if (P.school_rank(student, s) < P.school_rank(student, best)) best = s;
      auto decline = [&](SchoolId s) {
        round[idx(s)].rejected.push_back(student);
        rejected_any = true;
      };
      if (best != offer[i] && !offer[i].is_outside()) {
        auto& h = holding[idx(offer[i])];
        h.erase(std::find(h.begin(), h.end(), student));
        decline(offer[i]);
      }
      for (SchoolId s : received[i])
        if (s != best) decline(s);
      if (best != offer[i]) {
        offer[i] = best;
        holding[idx(best)].push_back(student);
      }
    }
    for (std::size_t s = 0; s < m; ++s) {
      std::sort(holding[s].begin(), holding[s].end());
      round[s].held = holding[s];
    }
  }
  result.matching = Matching(offer);
  return result;
}

// One continuous period during which a student held a seat at a school.
struct Stint {
  int accepted = 0;
  int rejected = 0;  // 0 while still held
};

}  // namespace

const SchoolRound& DaTrace::at(int round, SchoolId s) const {
  return rounds.at(static_cast<std::size_t>(round - 1)).at(idx(s));
}

DaResult deferred_acceptance(const SchoolChoiceProblem& P, ProposingSide side) {
  return side == ProposingSide::students ? student_proposing(P) : school_proposing(P);
}

Matching da(const SchoolChoiceProblem& P) { return student_proposing(P).matching; }

std::vector<StudentId> improved_set(const SchoolChoiceProblem& P, const Matching& mu) {
  return improved_over(P, mu, da(P));
}

std::vector<Interrupter> find_interrupters(const SchoolChoiceProblem& P, const DaTrace& trace) {
  if (trace.side != ProposingSide::students)
    throw ArgumentError("interrupters are defined on student-proposing traces");
  const auto n = static_cast<std::size_t>(P.num_students());
  const auto m = static_cast<std::size_t>(P.num_schools());

  std::vector<Interrupter> found;
  for (std::size_t s = 0; s < m; ++s) {
    const SchoolId school{static_cast<int>(s)};
    std::vector<std::vector<int>> rejection_rounds(n);  // rounds in which each student was rejected here
    std::vector<std::vector<Stint>> stints(n);
    std::vector<bool> holding(n, false);
    for (int r = 1; r <= trace.num_rounds(); ++r) {
      const SchoolRound& rec = trace.at(r, school);
      for (StudentId i : rec.rejected) {
        rejection_rounds[idx(i)].push_back(r);
        if (holding[idx(i)]) {
          stints[idx(i)].back().rejected = r;
          holding[idx(i)] = false;
        }
      }
      for (StudentId i : rec.held) {
        if (!holding[idx(i)]) {
          stints[idx(i)].push_back({r, 0});
          holding[idx(i)] = true;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<Interrupter> best;
      for (const Stint& stint : stints[i]) {
        if (stint.rejected == 0) continue;
        if (best && best->own_rejection_round >= stint.rejected) continue;
        int witness = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          for (int r : rejection_rounds[j])
            if (r >= stint.accepted && r <= stint.rejected && (witness == 0 || r < witness)) witness = r;
        }
        if (witness > 0)
          best = Interrupter{StudentId{static_cast<int>(i)}, school, stint.accepted, witness,
                             stint.rejected};
      }
      if (best) found.push_back(*best);
    }
  }
  std::sort(found.begin(), found.end(), [](const Interrupter& a, const Interrupter& b) {
    return std::tie(a.student, a.school) < std::tie(b.student, b.school);
  });
  return found;
}

EadaRun eada_run(const SchoolChoiceProblem& P, const ConsentStructure& consent) {
  consent.validate(P);
  EadaRun run;
  SchoolChoiceProblem current = P;
  for (;;) {
    DaResult res = student_proposing(current);
    std::vector<Interrupter> consenting;
    for (const Interrupter& it : find_interrupters(current, res.trace))
      if (consent.contains(it.student)) consenting.push_back(it);
    if (consenting.empty()) {
      run.matching = std::move(res.matching);
      return run;
    }
    int last = 0;
    for (const Interrupter& it : consenting) last = std::max(last, it.own_rejection_round);

    EadaIteration& step = run.iterations.emplace_back();
    step.round = last;
    for (const Interrupter& it : consenting) {
      if (it.own_rejection_round != last) continue;
      step.removed.push_back(it);
      std::vector<SchoolId> list(current.preferences(it.student).begin(),
                                 current.preferences(it.student).end());
      list.erase(std::find(list.begin(), list.end(), it.school));
      current = current.with_preferences(it.student, std::move(list));
    }
  }
}

Matching eada(const SchoolChoiceProblem& P, const ConsentStructure& consent) {
  return eada_run(P, consent).matching;
}

UnderdemandedRun eada_full_consent_underdemanded_run(const SchoolChoiceProblem& P) {
  UnderdemandedRun run{Matching::all_unassigned(P.num_students()), {}};
  std::vector<StudentId> students;
  for (int i = 0; i < P.num_students(); ++i) students.push_back(StudentId{i});
  std::vector<SchoolId> schools;
  for (int s = 0; s < P.num_schools(); ++s) schools.push_back(SchoolId{s});

  while (!students.empty()) {
    // Subproblem over the remaining agents, keeping the completed priorities.
    std::vector<int> local_school(static_cast<std::size_t>(P.num_schools()), -1);
    std::vector<int> local_student(static_cast<std::size_t>(P.num_students()), -1);
    std::vector<std::string> student_names, school_names;
    std::vector<int> quotas;
    for (std::size_t k = 0; k < students.size(); ++k) {
      local_student[idx(students[k])] = static_cast<int>(k);
      student_names.push_back(P.student_name(students[k]));
    }
    for (std::size_t k = 0; k < schools.size(); ++k) {
      local_school[idx(schools[k])] = static_cast<int>(k);
      school_names.push_back(P.school_name(schools[k]));
      quotas.push_back(P.quota(schools[k]));
    }
    std::vector<std::vector<SchoolId>> prefs;
    for (StudentId i : students) {
      auto& list = prefs.emplace_back();
      for (SchoolId s : P.preferences(i))
        if (local_school[idx(s)] >= 0) list.push_back(SchoolId{local_school[idx(s)]});
    }
    std::vector<std::vector<StudentId>> prios;
    for (SchoolId s : schools) {
      auto& list = prios.emplace_back();
      for (StudentId i : P.priority_order(s))
        if (local_student[idx(i)] >= 0) list.push_back(StudentId{local_student[idx(i)]});
    }
    SchoolChoiceProblem sub(std::move(student_names), std::move(school_names), std::move(quotas),
                            std::move(prefs), std::move(prios));
    DaResult res = student_proposing(sub);

    std::vector<bool> rejected(schools.size(), false);
    for (const auto& round : res.trace.rounds)
      for (std::size_t k = 0; k < schools.size(); ++k)
        if (!round[k].rejected.empty()) rejected[k] = true;

    UnderdemandedIteration& step = run.iterations.emplace_back();
    std::vector<bool> fixed_school(schools.size(), false);
    for (std::size_t k = 0; k < schools.size(); ++k) {
      if (rejected[k]) continue;
      fixed_school[k] = true;
      step.fixed_schools.push_back(schools[k]);
    }
    std::vector<StudentId> rest;
    for (std::size_t k = 0; k < students.size(); ++k) {
      SchoolId local = res.matching[StudentId{static_cast<int>(k)}];
      if (local.is_outside() || fixed_school[idx(local)]) {
        SchoolId global = local.is_outside() ? local : schools[idx(local)];
        run.matching = run.matching.with(students[k], global);
        step.fixed_students.push_back(students[k]);
      } else {
        rest.push_back(students[k]);
      }
    }
    if (step.fixed_schools.empty() && step.fixed_students.empty())
      throw InvariantViolation("under-demanded removal made no progress");
    std::vector<SchoolId> remaining_schools;
    for (std::size_t k = 0; k < schools.size(); ++k)
      if (!fixed_school[k]) remaining_schools.push_back(schools[k]);
    students = std::move(rest);
    schools = std::move(remaining_schools);
  }
  return run;
}

Matching eada_full_consent_underdemanded(const SchoolChoiceProblem& P) {
  return eada_full_consent_underdemanded_run(P).matching;
}

Matching ttc_from_endowment(const SchoolChoiceProblem& P, const Matching& endowment) {
  validate_matching(P, endowment);
  const auto n = static_cast<std::size_t>(P.num_students());
  std::vector<bool> active(n, false);
  std::size_t remaining = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!endowment[StudentId{static_cast<int>(i)}].is_outside()) {
      active[i] = true;
      ++remaining;
    }
  }

  std::vector<SchoolId> result(endowment.assignment().begin(), endowment.assignment().end());
  std::vector<std::size_t> points_to(n);
  while (remaining > 0) {
    // Highest-priority active owner of each school.
    std::vector<int> top_owner(static_cast<std::size_t>(P.num_schools()), -1);
    for (std::size_t j = 0; j < n; ++j) {
      if (!active[j]) continue;
      const SchoolId s = endowment[StudentId{static_cast<int>(j)}];
      int& owner = top_owner[idx(s)];
      if (owner < 0 || P.student_rank(s, StudentId{static_cast<int>(j)}) <
                           P.student_rank(s, StudentId{owner}))
        owner = static_cast<int>(j);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      const StudentId student{static_cast<int>(i)};
      SchoolId best = endowment[student];
      for (int s = 0; s < P.num_schools(); ++s) {
        if (top_owner[static_cast<std::size_t>(s)] < 0) continue;
        if (P.school_rank(student, SchoolId{s}) < P.school_rank(student, best)) best = SchoolId{s};
      }
      points_to[i] = best == endowment[student] ? i : static_cast<std::size_t>(top_owner[idx(best)]);
    }
    // Every active node has out-degree one, so at least one cycle exists.
    std::vector<int> color(n, 0);  // 0 unvisited, 1 on current path, 2 done
    for (std::size_t start = 0; start < n; ++start) {
      if (!active[start] || color[start] != 0) continue;
      std::vector<std::size_t> path;
      std::size_t v = start;
      while (color[v] == 0) {
        color[v] = 1;
        path.push_back(v);
        v = points_to[v];
      }
      if (color[v] == 1) {
        auto first = std::find(path.begin(), path.end(), v);
        std::vector<std::size_t> cycle(first, path.end());
        for (std::size_t k : cycle) result[k] = endowment[StudentId{static_cast<int>(points_to[k])}];
        for (std::size_t k : cycle) {
          active[k] = false;
          --remaining;
        }
      }
      for (std::size_t k : path) color[k] = 2;
    }
  }
  return Matching(std::move(result));
}

Matching da_ttc(const SchoolChoiceProblem& P) { return ttc_from_endowment(P, da(P)); }

}  // namespace matchlab
