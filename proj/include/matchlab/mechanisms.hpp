#pragma once

// Deferred acceptance, efficiency-adjusted deferred acceptance (consent based)
// and top trading cycles seeded with an endowment.

#include <vector>

#include "matchlab/core.hpp"

namespace matchlab {

enum class ProposingSide { students, schools };

// What one school saw in one round. For student proposals `applicants` are
// the students who applied this round; for school proposals they are the
// students the school proposed to. `held` is the tentative assignment at the
// end of the round and `rejected` everyone turned away this round.
struct SchoolRound {
  std::vector<StudentId> applicants;
  std::vector<StudentId> held;
  std::vector<StudentId> rejected;
};

struct DaTrace {
  ProposingSide side = ProposingSide::students;
  // rounds[r - 1][s] describes school s in round r.
  std::vector<std::vector<SchoolRound>> rounds;

  int num_rounds() const { return static_cast<int>(rounds.size()); }
  const SchoolRound& at(int round, SchoolId s) const;
};

struct DaResult {
  Matching matching;
  DaTrace trace;
};

// Round-synchronous DA. The last recorded round has no rejections and its
// holds equal the returned matching. Students who exhaust their list get the
// outside option.
DaResult deferred_acceptance(const SchoolChoiceProblem& P,
                             ProposingSide side = ProposingSide::students);

// Student-proposing DA outcome.
Matching da(const SchoolChoiceProblem& P);

// Students strictly better off under mu than under da(P).
std::vector<StudentId> improved_set(const SchoolChoiceProblem& P, const Matching& mu);

// (i, s) such that i is tentatively accepted at s in round t, another student
// is rejected at s in some round t' >= t, and i is rejected from s in round
// t'' >= t'. Rounds are 1-based.
struct Interrupter {
  StudentId student;
  SchoolId school;
  int accepted_round = 0;
  int caused_rejection_round = 0;
  int own_rejection_round = 0;

  friend bool operator==(const Interrupter&, const Interrupter&) = default;
};

// Every interrupting pair of a student-proposing trace, once per pair, with
// the latest own-rejection round among its witnesses. Sorted by (student,
// school).
std::vector<Interrupter> find_interrupters(const SchoolChoiceProblem& P, const DaTrace& trace);

struct EadaIteration {
  int round = 0;                         // latest consenting rejection round
  std::vector<Interrupter> removed;      // pairs whose school was dropped
};

struct EadaRun {
  Matching matching;
  std::vector<EadaIteration> iterations;
};

// Repeatedly runs DA, takes the latest round in which a consenting
// interrupter was rejected, drops the interrupting school from every
// consenting interrupter's list for that round, and reruns from scratch.
EadaRun eada_run(const SchoolChoiceProblem& P, const ConsentStructure& consent);
Matching eada(const SchoolChoiceProblem& P, const ConsentStructure& consent);

struct UnderdemandedIteration {
  std::vector<SchoolId> fixed_schools;   // real schools that rejected nobody
  std::vector<StudentId> fixed_students;  // their assignees plus the unassigned
};

struct UnderdemandedRun {
  Matching matching;
  std::vector<UnderdemandedIteration> iterations;
};

// Full-consent EADA via repeated removal of schools that rejected no student.
UnderdemandedRun eada_full_consent_underdemanded_run(const SchoolChoiceProblem& P);
Matching eada_full_consent_underdemanded(const SchoolChoiceProblem& P);

// Gale's TTC where each student starts out owning the seat given by
// `endowment`. Students endowed with the outside option keep it.
Matching ttc_from_endowment(const SchoolChoiceProblem& P, const Matching& endowment);

Matching da_ttc(const SchoolChoiceProblem& P);

}  // namespace matchlab
