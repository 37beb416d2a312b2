#include "matchlab/core.hpp"

#include <algorithm>

namespace matchlab {

namespace {

std::size_t idx(StudentId i) { return static_cast<std::size_t>(i.value); }
std::size_t idx(SchoolId s) { return static_cast<std::size_t>(s.value); }

}  // namespace

SchoolChoiceProblem::SchoolChoiceProblem(std::vector<std::string> students,
                                         std::vector<std::string> schools, std::vector<int> quotas,
                                         std::vector<std::vector<SchoolId>> preferences,
                                         std::vector<std::vector<StudentId>> priorities)
    : student_names_(std::move(students)),
      school_names_(std::move(schools)),
      quotas_(std::move(quotas)),
      preferences_(std::move(preferences)),
      listed_priorities_(std::move(priorities)) {
  validate_and_complete();
}

void SchoolChoiceProblem::validate_and_complete() {
  const auto n = student_names_.size();
  const auto m = school_names_.size();
  if (quotas_.size() != m) throw InvalidInstance("quota count does not match school count");
  if (preferences_.size() != n) throw InvalidInstance("preference table does not match student count");
  if (listed_priorities_.size() != m) throw InvalidInstance("priority table does not match school count");

  for (std::size_t i = 0; i < n; ++i) {
    const auto& name = student_names_[i];
    if (name.empty()) throw InvalidInstance("empty student identifier");
    if (!student_index_.emplace(name, static_cast<int>(i)).second)
      throw InvalidInstance("duplicate student '" + name + "'");
  }
  for (std::size_t s = 0; s < m; ++s) {
    const auto& name = school_names_[s];
    if (name.empty()) throw InvalidInstance("empty school identifier");
    if (name == kOutsideName) throw InvalidInstance("'" + name + "' is reserved for the outside option");
    if (!school_index_.emplace(name, static_cast<int>(s)).second)
      throw InvalidInstance("duplicate school '" + name + "'");
    if (quotas_[s] < 1) throw InvalidInstance("school '" + name + "' has quota < 1");
  }

  preference_rank_.assign(n, std::vector<int>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    int position = 0;
    for (SchoolId s : preferences_[i]) {
      if (s.is_outside())
        throw InvalidInstance("student '" + student_names_[i] + "' lists the outside option");
      if (idx(s) >= m) throw InvalidInstance("student '" + student_names_[i] + "' lists an unknown school");
      int& slot = preference_rank_[i][idx(s)];
      if (slot != 0)
        throw InvalidInstance("student '" + student_names_[i] + "' lists school '" +
                              school_names_[idx(s)] + "' twice");
      slot = ++position;
    }
  }

  priority_order_.assign(m, {});
  priority_rank_.assign(m, std::vector<int>(n, 0));
  for (std::size_t s = 0; s < m; ++s) {
    auto& order = priority_order_[s];
    auto& rank = priority_rank_[s];
    for (StudentId i : listed_priorities_[s]) {
      if (i.value < 0 || idx(i) >= n)
        throw InvalidInstance("school '" + school_names_[s] + "' lists an unknown student");
      if (rank[idx(i)] != 0)
        throw InvalidInstance("school '" + school_names_[s] + "' lists student '" +
                              student_names_[idx(i)] + "' twice");
      order.push_back(i);
      rank[idx(i)] = static_cast<int>(order.size());
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (rank[i] == 0) {
        order.push_back(StudentId{static_cast<int>(i)});
        rank[i] = static_cast<int>(order.size());
      }
    }
  }
}

const std::string& SchoolChoiceProblem::student_name(StudentId i) const {
  check(i);
  return student_names_[idx(i)];
}

std::string SchoolChoiceProblem::school_name(SchoolId s) const {
  if (s.is_outside()) return std::string(kOutsideName);
  check(s);
  return school_names_[idx(s)];
}

std::optional<StudentId> SchoolChoiceProblem::find_student(std::string_view name) const {
  auto it = student_index_.find(std::string(name));
  if (it == student_index_.end()) return std::nullopt;
  return StudentId{it->second};
}

std::optional<SchoolId> SchoolChoiceProblem::find_school(std::string_view name) const {
  if (name == kOutsideName) return SchoolId::outside();
  auto it = school_index_.find(std::string(name));
  if (it == school_index_.end()) return std::nullopt;
  return SchoolId{it->second};
}

StudentId SchoolChoiceProblem::student(std::string_view name) const {
  if (auto i = find_student(name)) return *i;
  throw InvalidInstance("unknown student '" + std::string(name) + "'");
}

SchoolId SchoolChoiceProblem::school(std::string_view name) const {
  if (auto s = find_school(name)) return *s;
  throw InvalidInstance("unknown school '" + std::string(name) + "'");
}

int SchoolChoiceProblem::quota(SchoolId s) const {
  if (s.is_outside()) return std::numeric_limits<int>::max();
  check(s);
  return quotas_[idx(s)];
}

std::span<const SchoolId> SchoolChoiceProblem::preferences(StudentId i) const {
  check(i);
  return preferences_[idx(i)];
}

std::span<const StudentId> SchoolChoiceProblem::listed_priorities(SchoolId s) const {
  check(s);
  return listed_priorities_[idx(s)];
}

std::span<const StudentId> SchoolChoiceProblem::priority_order(SchoolId s) const {
  check(s);
  return priority_order_[idx(s)];
}

Rank SchoolChoiceProblem::school_rank(StudentId i, SchoolId s) const {
  check(i);
  if (s.is_outside()) return Rank(static_cast<int>(preferences_[idx(i)].size()) + 1);
  check(s);
  int r = preference_rank_[idx(i)][idx(s)];
  return r == 0 ? Rank::unacceptable() : Rank(r);
}

int SchoolChoiceProblem::student_rank(SchoolId s, StudentId i) const {
  check(s);
  check(i);
  return priority_rank_[idx(s)][idx(i)];
}

SchoolChoiceProblem SchoolChoiceProblem::with_preferences(StudentId i,
                                                          std::vector<SchoolId> list) const {
  check(i);
  auto prefs = preferences_;
  prefs[idx(i)] = std::move(list);
  return SchoolChoiceProblem(student_names_, school_names_, quotas_, std::move(prefs),
                             listed_priorities_);
}

void SchoolChoiceProblem::check(StudentId i) const {
  if (i.value < 0 || idx(i) >= student_names_.size())
    throw InvalidInstance("student index " + std::to_string(i.value) + " out of range");
}

void SchoolChoiceProblem::check(SchoolId s) const {
  if (s.is_outside()) throw InvalidInstance("the outside option has no preference or priority data");
  if (idx(s) >= school_names_.size())
    throw InvalidInstance("school index " + std::to_string(s.value) + " out of range");
}

bool operator==(const SchoolChoiceProblem& a, const SchoolChoiceProblem& b) {
  return a.student_names_ == b.student_names_ && a.school_names_ == b.school_names_ &&
         a.quotas_ == b.quotas_ && a.preferences_ == b.preferences_ &&
         a.listed_priorities_ == b.listed_priorities_;
}

// ---------------------------------------------------------------------------

ProblemBuilder& ProblemBuilder::student(std::string name) {
  students_.push_back(std::move(name));
  preferences_.emplace_back();
  return *this;
}

ProblemBuilder& ProblemBuilder::school(std::string name, int quota) {
  schools_.push_back(std::move(name));
  quotas_.push_back(quota);
  priorities_.emplace_back();
  return *this;
}

ProblemBuilder& ProblemBuilder::preferences(std::string_view student,
                                            const std::vector<std::string>& schools) {
  for (const auto& s : schools) school_index(s);
  preferences_[static_cast<std::size_t>(student_index(student))] = schools;
  return *this;
}

ProblemBuilder& ProblemBuilder::priorities(std::string_view school,
                                           const std::vector<std::string>& students) {
  for (const auto& i : students) student_index(i);
  priorities_[static_cast<std::size_t>(school_index(school))] = students;
  return *this;
}

int ProblemBuilder::student_index(std::string_view name) const {
  auto it = std::find(students_.begin(), students_.end(), name);
  if (it == students_.end()) throw InvalidInstance("unknown student '" + std::string(name) + "'");
  return static_cast<int>(it - students_.begin());
}

int ProblemBuilder::school_index(std::string_view name) const {
  auto it = std::find(schools_.begin(), schools_.end(), name);
  if (it == schools_.end()) throw InvalidInstance("unknown school '" + std::string(name) + "'");
  return static_cast<int>(it - schools_.begin());
}

SchoolChoiceProblem ProblemBuilder::build() const {
  std::vector<std::vector<SchoolId>> prefs;
  for (const auto& list : preferences_) {
    auto& out = prefs.emplace_back();
    for (const auto& s : list) out.push_back(SchoolId{school_index(s)});
  }
  std::vector<std::vector<StudentId>> prios;
  for (const auto& list : priorities_) {
    auto& out = prios.emplace_back();
    for (const auto& i : list) out.push_back(StudentId{student_index(i)});
  }
  return SchoolChoiceProblem(students_, schools_, quotas_, std::move(prefs), std::move(prios));
}

// ---------------------------------------------------------------------------

Matching Matching::all_unassigned(int num_students) {
  return Matching(std::vector<SchoolId>(static_cast<std::size_t>(num_students), SchoolId::outside()));
}

Matching Matching::with(StudentId i, SchoolId s) const {
  Matching copy = *this;
  copy.assignment_.at(idx(i)) = s;
  return copy;
}

void validate_matching(const SchoolChoiceProblem& P, const Matching& mu) {
  if (mu.size() != P.num_students())
    throw ArgumentError("matching covers " + std::to_string(mu.size()) + " students, problem has " +
                        std::to_string(P.num_students()));
  std::vector<int> load(static_cast<std::size_t>(P.num_schools()), 0);
  for (SchoolId s : mu.assignment()) {
    if (s.is_outside()) continue;
    if (s.value >= P.num_schools()) throw ArgumentError("matching uses an undeclared school");
    if (++load[idx(s)] > P.quota(s))
      throw ArgumentError("matching exceeds the quota of school '" + P.school_name(s) + "'");
  }
}

// ---------------------------------------------------------------------------

ConsentStructure::ConsentStructure(std::vector<StudentId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

ConsentStructure ConsentStructure::everyone(const SchoolChoiceProblem& P) {
  std::vector<StudentId> all;
  for (int i = 0; i < P.num_students(); ++i) all.push_back(StudentId{i});
  return ConsentStructure(std::move(all));
}

bool ConsentStructure::contains(StudentId i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

ConsentStructure ConsentStructure::with(StudentId i) const {
  auto copy = members_;
  copy.push_back(i);
  return ConsentStructure(std::move(copy));
}

void ConsentStructure::validate(const SchoolChoiceProblem& P) const {
  for (StudentId i : members_) P.check(i);
}

// ---------------------------------------------------------------------------

Rank rank_of_school(const SchoolChoiceProblem& P, StudentId i, SchoolId s) {
  return P.school_rank(i, s);
}

Rank rank_of_student(const SchoolChoiceProblem& P, SchoolId s, StudentId i) {
  return Rank(P.student_rank(s, i));
}

bool desires(const SchoolChoiceProblem& P, const Matching& mu, StudentId i, SchoolId s) {
  const Rank target = P.school_rank(i, s);
  return target.is_acceptable() && target < P.school_rank(i, mu[i]);
}

bool envies(const SchoolChoiceProblem& P, const Matching& mu, StudentId i, StudentId j) {
  if (i == j) throw ArgumentError("envies() needs two distinct students");
  P.check(j);
  return desires(P, mu, i, mu[j]);
}

BlockingSet blocking_pairs(const SchoolChoiceProblem& P, const Matching& mu) {
  std::vector<std::vector<StudentId>> holders(static_cast<std::size_t>(P.num_schools()));
  for (int j = 0; j < mu.size(); ++j) {
    SchoolId s = mu[StudentId{j}];
    if (!s.is_outside()) holders[idx(s)].push_back(StudentId{j});
  }
  BlockingSet pairs;
  for (int i = 0; i < P.num_students(); ++i) {
    const StudentId student{i};
    for (int s = 0; s < P.num_schools(); ++s) {
      const SchoolId school{s};
      if (!desires(P, mu, student, school)) continue;
      std::vector<StudentId> violators;
      for (StudentId j : holders[idx(school)])
        if (P.student_rank(school, student) < P.student_rank(school, j)) violators.push_back(j);
      if (!violators.empty()) pairs.push_back({student, school, std::move(violators)});
    }
  }
  return pairs;
}

bool is_nonwasteful(const SchoolChoiceProblem& P, const Matching& mu) {
  std::vector<int> load(static_cast<std::size_t>(P.num_schools()), 0);
  for (SchoolId s : mu.assignment())
    if (!s.is_outside()) ++load[idx(s)];
  for (int i = 0; i < P.num_students(); ++i) {
    const StudentId student{i};
    // Desiring the outside option means holding an unacceptable seat.
    if (desires(P, mu, student, SchoolId::outside())) return false;
    for (int s = 0; s < P.num_schools(); ++s) {
      const SchoolId school{s};
      if (load[idx(school)] < P.quota(school) && desires(P, mu, student, school)) return false;
    }
  }
  return true;
}

bool is_stable(const SchoolChoiceProblem& P, const Matching& mu) {
  return is_nonwasteful(P, mu) && blocking_pairs(P, mu).empty();
}

bool weakly_dominates(const SchoolChoiceProblem& P, const Matching& mu, const Matching& nu) {
  for (int i = 0; i < P.num_students(); ++i) {
    const StudentId s{i};
    if (P.school_rank(s, mu[s]) > P.school_rank(s, nu[s])) return false;
  }
  return true;
}

bool dominates(const SchoolChoiceProblem& P, const Matching& mu, const Matching& nu) {
  if (!weakly_dominates(P, mu, nu)) return false;
  for (int i = 0; i < P.num_students(); ++i) {
    const StudentId s{i};
    if (P.school_rank(s, mu[s]) < P.school_rank(s, nu[s])) return true;
  }
  return false;
}

std::vector<StudentId> improved_over(const SchoolChoiceProblem& P, const Matching& mu,
                                     const Matching& baseline) {
  if (!weakly_dominates(P, mu, baseline))
    throw DominationError("matching does not weakly dominate the baseline");
  std::vector<StudentId> improved;
  for (int i = 0; i < P.num_students(); ++i) {
    const StudentId s{i};
    if (P.school_rank(s, mu[s]) < P.school_rank(s, baseline[s])) improved.push_back(s);
  }
  return improved;
}

bool is_subset(const BlockingSet& a, const BlockingSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace matchlab
