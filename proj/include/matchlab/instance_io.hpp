#pragma once

// Line-oriented text format for problems:
//
//   # comment
//   students: i1 i2 i3
//   schools: s1:1 s2:2          (name:quota, quota defaults to 1)
//   pref i1: s2 s1              (acceptable schools, best first)
//   prio s1: i3 i1              (descending priority, may be partial)
//   consent: all | i1 i3        (optional)
//
// `students:` and `schools:` must precede the lines that use their names.

#include <optional>
#include <string>
#include <string_view>

#include "matchlab/core.hpp"

namespace matchlab {

struct InstanceFile {
  SchoolChoiceProblem problem;
  std::optional<ConsentStructure> consent;
};

// Throws InvalidInstance naming the offending line.
InstanceFile parse_instance_file(std::string_view text);
SchoolChoiceProblem parse_instance(std::string_view text);

// Consent specification as used on the command line: "all", "none" or a
// comma/space separated list of student names.
ConsentStructure parse_consent(const SchoolChoiceProblem& P, std::string_view spec);

// Emits only the explicitly listed priorities; the completion rule restores
// the rest on parsing.
std::string serialize_instance(const SchoolChoiceProblem& P,
                               const std::optional<ConsentStructure>& consent = std::nullopt);

InstanceFile read_instance_file(const std::string& path);

}  // namespace matchlab
