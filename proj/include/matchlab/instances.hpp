#pragma once

// Reference instances: the n-student family on which full-consent EADA and
// DA+TTC improve two students while n - 1 could improve, the two seven- and
// five-student double-domination examples, and seeded random markets.

#include <cstdint>
#include <string>

#include "matchlab/core.hpp"

namespace matchlab {

// Students i1..in and unit-capacity schools s1..sn. Requires n > 4.
SchoolChoiceProblem example1(int n);

// Seven students, seven unit-capacity schools; EADA with full consent is
// doubly dominated by DA+TTC.
SchoolChoiceProblem example2();

// Five students, five unit-capacity schools; DA+TTC is doubly dominated by
// EADA with full consent.
SchoolChoiceProblem example3();

// Uniformly random complete preference and priority orders, quotas drawn
// uniformly from [1, max_quota]. Identical seeds give identical problems on
// every platform.
SchoolChoiceProblem random_problem(int num_students, int num_schools, int max_quota,
                                   std::uint64_t seed);

struct FamilySpec {
  std::string family;  // example1 | example2 | example3 | random
  int n = 0;           // example1, random
  int num_schools = 0;  // random; 0 means n
  int max_quota = 1;    // random
  std::uint64_t seed = 0;
};

SchoolChoiceProblem make_problem(const FamilySpec& spec);

}  // namespace matchlab
