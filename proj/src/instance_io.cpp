#include "matchlab/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace matchlab {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

struct ListLine {
  int line = 0;
  std::string owner;
  std::vector<std::string> items;
};

void require_unique(const std::vector<std::string>& items, int line, const std::string& context) {
  std::set<std::string> seen;
  for (const auto& item : items)
    if (!seen.insert(item).second)
      throw InvalidInstance("duplicate entry '" + item + "' in " + context, line);
}

}  // namespace

InstanceFile parse_instance_file(std::string_view text) {
  std::optional<std::vector<std::string>> students;
  std::vector<std::pair<std::string, int>> schools;
  bool have_schools = false;
  std::vector<ListLine> prefs, prios;
  std::optional<ListLine> consent;

  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw InvalidInstance("expected 'key: values'", line_no);
    const auto head = tokens(line.substr(0, colon));
    const auto body = tokens(line.substr(colon + 1));
    if (head.empty()) throw InvalidInstance("missing key before ':'", line_no);

    const std::string& key = head[0];
    if (key == "students" && head.size() == 1) {
      if (students) throw InvalidInstance("second 'students:' line", line_no);
      require_unique(body, line_no, "students");
      students = body;
    } else if (key == "schools" && head.size() == 1) {
      if (have_schools) throw InvalidInstance("second 'schools:' line", line_no);
      have_schools = true;
      std::set<std::string> seen;
      for (const auto& tok : body) {
        std::string name = tok;
        int quota = 1;
        if (auto sep = tok.rfind(':'); sep != std::string::npos) {
          name = tok.substr(0, sep);
          const std::string q = tok.substr(sep + 1);
          auto [ptr, ec] = std::from_chars(q.data(), q.data() + q.size(), quota);
          if (ec != std::errc() || ptr != q.data() + q.size() || quota < 1)
            throw InvalidInstance("bad quota in '" + tok + "'", line_no);
        }
        if (name.empty()) throw InvalidInstance("empty school name in '" + tok + "'", line_no);
        if (!seen.insert(name).second) throw InvalidInstance("duplicate entry '" + name + "' in schools", line_no);
        schools.emplace_back(name, quota);
      }
    } else if ((key == "pref" || key == "prio") && head.size() == 2) {
      if (!students || !have_schools)
        throw InvalidInstance("'students:' and 'schools:' must come before '" + key + "' lines", line_no);
      require_unique(body, line_no, key + " " + head[1]);
      auto& bucket = key == "pref" ? prefs : prios;
      for (const auto& other : bucket)
        if (other.owner == head[1])
          throw InvalidInstance("second '" + key + "' line for '" + head[1] + "'", line_no);
      bucket.push_back({line_no, head[1], body});
    } else if (key == "consent" && head.size() == 1) {
      if (consent) throw InvalidInstance("second 'consent:' line", line_no);
      consent = ListLine{line_no, {}, body};
    } else {
      throw InvalidInstance("unrecognised line '" + std::string(line) + "'", line_no);
    }
  }
  if (!students) throw InvalidInstance("missing 'students:' line");
  if (!have_schools) throw InvalidInstance("missing 'schools:' line");

  int current_line = 0;
  try {
    ProblemBuilder b;
    for (const auto& i : *students) b.student(i);
    for (const auto& [name, quota] : schools) b.school(name, quota);
    for (const auto& p : prefs) {
      current_line = p.line;
      b.preferences(p.owner, p.items);
    }
    for (const auto& p : prios) {
      current_line = p.line;
      b.priorities(p.owner, p.items);
    }
    current_line = 0;
    InstanceFile file{b.build(), std::nullopt};
    if (consent) {
      current_line = consent->line;
      std::string joined;
      for (const auto& t : consent->items) joined += t + " ";
      file.consent = parse_consent(file.problem, joined.empty() ? "none" : joined);
    }
    return file;
  } catch (const InvalidInstance& e) {
    if (e.line() > 0 || current_line == 0) throw;
    throw InvalidInstance(e.what(), current_line);
  }
}

SchoolChoiceProblem parse_instance(std::string_view text) {
  return parse_instance_file(text).problem;
}

ConsentStructure parse_consent(const SchoolChoiceProblem& P, std::string_view spec) {
  std::string normalized(spec);
  for (char& c : normalized)
    if (c == ',') c = ' ';
  const auto names = tokens(normalized);
  if (names.size() == 1 && names[0] == "all") return ConsentStructure::everyone(P);
  if (names.empty() || (names.size() == 1 && names[0] == "none")) return ConsentStructure();
  require_unique(names, 0, "consent");
  std::vector<StudentId> members;
  for (const auto& name : names) members.push_back(P.student(name));
  return ConsentStructure(std::move(members));
}

std::string serialize_instance(const SchoolChoiceProblem& P,
                               const std::optional<ConsentStructure>& consent) {
  std::ostringstream out;
  out << "students:";
  for (int i = 0; i < P.num_students(); ++i) out << ' ' << P.student_name(StudentId{i});
  out << "\nschools:";
  for (int s = 0; s < P.num_schools(); ++s)
    out << ' ' << P.school_name(SchoolId{s}) << ':' << P.quota(SchoolId{s});
  out << '\n';
  for (int i = 0; i < P.num_students(); ++i) {
    out << "pref " << P.student_name(StudentId{i}) << ':';
    for (SchoolId s : P.preferences(StudentId{i})) out << ' ' << P.school_name(s);
    out << '\n';
  }
  for (int s = 0; s < P.num_schools(); ++s) {
    auto listed = P.listed_priorities(SchoolId{s});
    if (listed.empty()) continue;
    out << "prio " << P.school_name(SchoolId{s}) << ':';
    for (StudentId i : listed) out << ' ' << P.student_name(i);
    out << '\n';
  }
  if (consent) {
    out << "consent:";
    if (static_cast<int>(consent->members().size()) == P.num_students()) {
      out << " all";
    } else {
      for (StudentId i : consent->members()) out << ' ' << P.student_name(i);
    }
    out << '\n';
  }
  return out.str();
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_file(buffer.str());
}

}  // namespace matchlab
