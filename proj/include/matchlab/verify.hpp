#pragma once

// End-to-end checks of the reference instances and the random-market property
// suite, as run by `matchlab verify-paper`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "matchlab/core.hpp"

namespace matchlab {

struct CheckResult {
  int criterion = 0;
  std::string description;
  bool passed = false;
  std::string expected;
  std::string actual;
};

// The instances are injectable so tests can feed in mutated versions.
struct VerificationInputs {
  std::function<SchoolChoiceProblem(int)> example1;
  std::function<SchoolChoiceProblem()> example2;
  std::function<SchoolChoiceProblem()> example3;
  int property_instances = 1000;
  std::uint64_t property_seed = 0;

  static VerificationInputs defaults();
};

std::vector<CheckResult> verify_reference_results(
    const VerificationInputs& inputs = VerificationInputs::defaults());

// One PASS/FAIL line per check, with expected and actual values under failures.
std::string render_checks(const std::vector<CheckResult>& checks);

bool all_passed(const std::vector<CheckResult>& checks);

// The trading-cycle table of example1(7), as printed by `cycles`.
std::string cycle_table_reproduction();

struct PropertyViolation {
  std::uint64_t seed = 0;
  std::string property;
  std::string detail;
};

// Random unit-capacity markets with n = m cycling through 3..6. Oracle-backed
// properties are only checked for n <= 5.
std::vector<PropertyViolation> run_property_suite(int instances, std::uint64_t first_seed);

}  // namespace matchlab
