#include "matchlab/instances.hpp"

#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace matchlab {

namespace {

std::string student(int k) { return "i" + std::to_string(k); }
std::string school(int k) { return "s" + std::to_string(k); }

ProblemBuilder unit_market(int n) {
  ProblemBuilder b;
  for (int k = 1; k <= n; ++k) b.student(student(k));
  for (int k = 1; k <= n; ++k) b.school(school(k), 1);
  return b;
}

// Unbiased draw from [0, bound) using only the raw engine output, whose
// sequence is fixed by the standard.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<int> random_order(std::mt19937_64& rng, int size) {
  std::vector<int> order(static_cast<std::size_t>(size));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t k = order.size(); k > 1; --k)
    std::swap(order[k - 1], order[draw_below(rng, k)]);
  return order;
}

}  // namespace

SchoolChoiceProblem example1(int n) {
  if (n <= 4) throw ArgumentError("example1 needs n > 4, got " + std::to_string(n));
  ProblemBuilder b = unit_market(n);

  b.priorities(school(1), {student(1), student(n), student(2), student(n - 1)});
  for (int k = 2; k <= n; ++k) b.priorities(school(k), {student(k), student(k - 1)});

  for (int k = 2; k <= n - 3; ++k) b.preferences(student(k), {school(1), school(k + 1), school(k)});
  b.preferences(student(1), {school(2), school(n - 1), school(1)});
  b.preferences(student(n - 2), {school(1), school(2), school(n - 2)});
  b.preferences(student(n - 1), {school(1), school(2), school(n - 1)});
  b.preferences(student(n), {school(1), school(n)});
  return b.build();
}

SchoolChoiceProblem example2() {
  ProblemBuilder b = unit_market(7);
  b.preferences("i1", {"s6", "s4", "s2", "s3", "s5", "s1"})
      .preferences("i2", {"s1", "s2"})
      .preferences("i3", {"s6", "s3"})
      .preferences("i4", {"s5", "s4"})
      .preferences("i5", {"s3", "s6", "s4", "s1", "s5"})
      .preferences("i6", {"s4", "s6"})
      .preferences("i7", {"s4", "s7"});
  b.priorities("s1", {"i1", "i5", "i2"})
      .priorities("s2", {"i2", "i1"})
      .priorities("s3", {"i3", "i5", "i1"})
      .priorities("s4", {"i4", "i7", "i1", "i6", "i5"})
      .priorities("s5", {"i5", "i4", "i1"})
      .priorities("s6", {"i6", "i3", "i5", "i1"});
  return b.build();
}

SchoolChoiceProblem example3() {
  ProblemBuilder b = unit_market(5);
  b.preferences("i1", {"s2", "s4", "s1"})
      .preferences("i2", {"s1", "s3", "s2"})
      .preferences("i3", {"s1", "s2", "s3"})
      .preferences("i4", {"s1", "s2", "s4"})
      .preferences("i5", {"s1", "s5"});
  b.priorities("s1", {"i1", "i5", "i4", "i2"})
      .priorities("s2", {"i2", "i4", "i3", "i1"})
      .priorities("s3", {"i3", "i4", "i2"})
      .priorities("s4", {"i4", "i5", "i1"})
      .priorities("s5", {"i5"});
  return b.build();
}

SchoolChoiceProblem random_problem(int num_students, int num_schools, int max_quota,
                                   std::uint64_t seed) {
  if (num_students < 1 || num_schools < 1) throw ArgumentError("random_problem needs n, m >= 1");
  if (max_quota < 1) throw ArgumentError("random_problem needs max_quota >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::string> students, schools;
  for (int k = 1; k <= num_students; ++k) students.push_back(student(k));
  for (int k = 1; k <= num_schools; ++k) schools.push_back(school(k));
  std::vector<int> quotas;
  for (int s = 0; s < num_schools; ++s)
    quotas.push_back(1 + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(max_quota))));
  std::vector<std::vector<SchoolId>> prefs;
  for (int i = 0; i < num_students; ++i) {
    auto& list = prefs.emplace_back();
    for (int s : random_order(rng, num_schools)) list.push_back(SchoolId{s});
  }
  std::vector<std::vector<StudentId>> prios;
  for (int s = 0; s < num_schools; ++s) {
    auto& list = prios.emplace_back();
    for (int i : random_order(rng, num_students)) list.push_back(StudentId{i});
  }
  return SchoolChoiceProblem(std::move(students), std::move(schools), std::move(quotas),
                             std::move(prefs), std::move(prios));
}

SchoolChoiceProblem make_problem(const FamilySpec& spec) {
  if (spec.family == "example1") return example1(spec.n);
  if (spec.family == "example2") return example2();
  if (spec.family == "example3") return example3();
  if (spec.family == "random")
    return random_problem(spec.n, spec.num_schools > 0 ? spec.num_schools : spec.n, spec.max_quota,
                          spec.seed);
  throw ArgumentError("unknown family '" + spec.family + "'");
}

}  // namespace matchlab
