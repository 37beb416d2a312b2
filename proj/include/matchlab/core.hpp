#pragma once

// School choice problems, matchings and the stability vocabulary built on
// them: ranks, desire, envy, blocking pairs and Pareto dominance.
//
// Students and schools are addressed by dense indices wrapped in StudentId and
// SchoolId. The outside option (being unassigned) is the special SchoolId
// returned by SchoolId::outside(); it has unbounded capacity and never appears
// in a preference or priority list.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "matchlab/errors.hpp"

namespace matchlab {

struct StudentId {
  int value = 0;
  friend auto operator<=>(const StudentId&, const StudentId&) = default;
};

struct SchoolId {
  int value = 0;
  static constexpr SchoolId outside() { return SchoolId{-1}; }
  constexpr bool is_outside() const { return value < 0; }
  friend auto operator<=>(const SchoolId&, const SchoolId&) = default;
};

// Position in a strict order, 1 = best. Unacceptable compares after every
// finite rank.
class Rank {
 public:
  constexpr explicit Rank(int value) : value_(value) {}
  static constexpr Rank unacceptable() { return Rank(kUnacceptable); }

  constexpr bool is_acceptable() const { return value_ != kUnacceptable; }
  constexpr int value() const { return value_; }

  friend constexpr auto operator<=>(const Rank&, const Rank&) = default;

 private:
  static constexpr int kUnacceptable = std::numeric_limits<int>::max();
  int value_;
};

class SchoolChoiceProblem {
 public:
  static constexpr std::string_view kOutsideName = "unassigned";

  // preferences[i] lists acceptable schools of student i, best first.
  // priorities[s] lists students in descending priority at school s; it may
  // omit students, who are then ranked after the listed ones in declaration
  // order. Throws InvalidInstance on any violated invariant.
  SchoolChoiceProblem(std::vector<std::string> students, std::vector<std::string> schools,
                      std::vector<int> quotas, std::vector<std::vector<SchoolId>> preferences,
                      std::vector<std::vector<StudentId>> priorities);

  int num_students() const { return static_cast<int>(student_names_.size()); }
  int num_schools() const { return static_cast<int>(school_names_.size()); }

  const std::string& student_name(StudentId i) const;
  std::string school_name(SchoolId s) const;

  std::optional<StudentId> find_student(std::string_view name) const;
  // Resolves kOutsideName to SchoolId::outside().
  std::optional<SchoolId> find_school(std::string_view name) const;
  StudentId student(std::string_view name) const;
  SchoolId school(std::string_view name) const;

  // Quota of a real school; the outside option reports INT_MAX.
  int quota(SchoolId s) const;

  std::span<const SchoolId> preferences(StudentId i) const;
  std::span<const StudentId> listed_priorities(SchoolId s) const;
  // Total priority order after completion.
  std::span<const StudentId> priority_order(SchoolId s) const;

  Rank school_rank(StudentId i, SchoolId s) const;
  int student_rank(SchoolId s, StudentId i) const;

  // Same problem with student i's preference list replaced.
  SchoolChoiceProblem with_preferences(StudentId i, std::vector<SchoolId> list) const;

  void check(StudentId i) const;
  void check(SchoolId s) const;

  friend bool operator==(const SchoolChoiceProblem& a, const SchoolChoiceProblem& b);

 private:
  void validate_and_complete();

  std::vector<std::string> student_names_;
  std::vector<std::string> school_names_;
  std::vector<int> quotas_;
  std::vector<std::vector<SchoolId>> preferences_;
  std::vector<std::vector<StudentId>> listed_priorities_;

  std::unordered_map<std::string, int> student_index_;
  std::unordered_map<std::string, int> school_index_;
  std::vector<std::vector<int>> preference_rank_;  // [student][school], 0 = unacceptable
  std::vector<std::vector<StudentId>> priority_order_;
  std::vector<std::vector<int>> priority_rank_;  // [school][student], 1-based
};

// Name-based construction, used by the instance constructors and the parser.
class ProblemBuilder {
 public:
  ProblemBuilder& student(std::string name);
  ProblemBuilder& school(std::string name, int quota = 1);
  ProblemBuilder& preferences(std::string_view student, const std::vector<std::string>& schools);
  ProblemBuilder& priorities(std::string_view school, const std::vector<std::string>& students);
  SchoolChoiceProblem build() const;

 private:
  int student_index(std::string_view name) const;
  int school_index(std::string_view name) const;

  std::vector<std::string> students_;
  std::vector<std::string> schools_;
  std::vector<int> quotas_;
  std::vector<std::vector<std::string>> preferences_;
  std::vector<std::vector<std::string>> priorities_;
};

class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<SchoolId> assignment) : assignment_(std::move(assignment)) {}
  static Matching all_unassigned(int num_students);

  int size() const { return static_cast<int>(assignment_.size()); }
  SchoolId operator[](StudentId i) const { return assignment_[static_cast<std::size_t>(i.value)]; }
  std::span<const SchoolId> assignment() const { return assignment_; }

  Matching with(StudentId i, SchoolId s) const;

  friend auto operator<=>(const Matching&, const Matching&) = default;

 private:
  std::vector<SchoolId> assignment_;
};

// Throws ArgumentError unless mu assigns every student of P to a declared
// school without exceeding any quota.
void validate_matching(const SchoolChoiceProblem& P, const Matching& mu);

// Students who agree to have their priorities waived.
class ConsentStructure {
 public:
  ConsentStructure() = default;
  explicit ConsentStructure(std::vector<StudentId> members);
  static ConsentStructure everyone(const SchoolChoiceProblem& P);

  bool contains(StudentId i) const;
  bool empty() const { return members_.empty(); }
  std::span<const StudentId> members() const { return members_; }
  ConsentStructure with(StudentId i) const;
  void validate(const SchoolChoiceProblem& P) const;

  friend bool operator==(const ConsentStructure&, const ConsentStructure&) = default;

 private:
  std::vector<StudentId> members_;  // sorted, unique
};

// (student, school) with the students currently at `school` whose lower
// priority makes the pair blocking. Ordered and compared by (student, school);
// the violators are a function of the matching.
struct BlockingPair {
  StudentId student;
  SchoolId school;
  std::vector<StudentId> violators;

  friend bool operator==(const BlockingPair& a, const BlockingPair& b) {
    return a.student == b.student && a.school == b.school;
  }
  friend auto operator<=>(const BlockingPair& a, const BlockingPair& b) {
    if (auto c = a.student <=> b.student; c != 0) return c;
    return a.school <=> b.school;
  }
};

using BlockingSet = std::vector<BlockingPair>;  // sorted

Rank rank_of_school(const SchoolChoiceProblem& P, StudentId i, SchoolId s);
Rank rank_of_student(const SchoolChoiceProblem& P, SchoolId s, StudentId i);

bool desires(const SchoolChoiceProblem& P, const Matching& mu, StudentId i, SchoolId s);
bool envies(const SchoolChoiceProblem& P, const Matching& mu, StudentId i, StudentId j);

BlockingSet blocking_pairs(const SchoolChoiceProblem& P, const Matching& mu);
bool is_nonwasteful(const SchoolChoiceProblem& P, const Matching& mu);
bool is_stable(const SchoolChoiceProblem& P, const Matching& mu);

bool weakly_dominates(const SchoolChoiceProblem& P, const Matching& mu, const Matching& nu);
bool dominates(const SchoolChoiceProblem& P, const Matching& mu, const Matching& nu);

// Students strictly better off under mu than under baseline. Throws
// DominationError unless mu weakly dominates baseline.
std::vector<StudentId> improved_over(const SchoolChoiceProblem& P, const Matching& mu,
                                     const Matching& baseline);

// True when every pair of a is also in b.
bool is_subset(const BlockingSet& a, const BlockingSet& b);

}  // namespace matchlab
