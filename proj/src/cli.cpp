#include "matchlab/cli.hpp"

#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "matchlab/envy.hpp"
#include "matchlab/errors.hpp"
#include "matchlab/instance_io.hpp"
#include "matchlab/instances.hpp"
#include "matchlab/mechanisms.hpp"
#include "matchlab/report.hpp"
#include "matchlab/verify.hpp"

namespace matchlab {

namespace {

struct Options {
  std::string input;
  std::string mechanism;
  std::string consent;
  std::string family;
  int n = 7;
  int num_schools = 0;
  int max_quota = 1;
  std::uint64_t seed = 0;
  std::string emit;
  int instances = 1000;
  bool table = false;
};

ConsentStructure consent_for(const InstanceFile& file, const std::string& spec, bool& everyone) {
  const auto all = ConsentStructure::everyone(file.problem);
  ConsentStructure consent = all;
  if (!spec.empty()) {
    consent = parse_consent(file.problem, spec);
  } else if (file.consent) {
    consent = *file.consent;
  }
  everyone = consent == all;
  return consent;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ArgumentError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"School choice mechanisms: DA, EADA, DA+TTC, envy cycles and exhaustive oracles"};
  app.name("matchlab");
  app.require_subcommand(1);
  Options opt;
  std::function<int()> action;

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "instance file")->required()->check(CLI::ExistingFile);
  };
  auto report = [&](const char* name, const char* help, std::string (*fn)(const SchoolChoiceProblem&)) {
    auto* sub = app.add_subcommand(name, help);
    with_input(sub);
    sub->callback([&, fn] {
      action = [&, fn] {
        out << fn(read_instance_file(opt.input).problem);
        return kExitOk;
      };
    });
  };

  auto* solve = app.add_subcommand("solve", "run one mechanism and report its outcome against DA");
  with_input(solve);
  solve->add_option("--mechanism", opt.mechanism, "da | da-school | eada | eada-underdemanded | da-ttc")
      ->required();
  solve->add_option("--consent", opt.consent, "all | none | comma separated students (eada only)");
  solve->callback([&] {
    action = [&] {
      const Mechanism m = parse_mechanism(opt.mechanism);
      const auto file = read_instance_file(opt.input);
      bool everyone = true;
      const auto consent = consent_for(file, opt.consent, everyone);
      out << solve_report(file.problem, m, consent, everyone);
      return kExitOk;
    };
  });

  report("cycles", "trading cycles of the DA envy digraph with their blocking pairs", cycles_report);
  report("feedback-sets", "disjoint cycle packings that leave the envy digraph acyclic", feedback_sets_report);
  report("max-improve", "largest number of students any DA-dominating matching improves",
         max_improvement_report);
  report("frontier", "efficient DA-dominating matchings and their minimal blocking sets", frontier_report);
  report("digraph", "edge list of the DA envy digraph", +[](const SchoolChoiceProblem& P) {
    return export_edge_list(P, build_envy_digraph(P, da(P)));
  });

  auto* compare = app.add_subcommand("compare", "DA, EADA and DA+TTC side by side with the oracle bounds");
  with_input(compare);
  compare->add_option("--consent", opt.consent, "extra EADA run with this consent structure");
  compare->callback([&] {
    action = [&] {
      const auto file = read_instance_file(opt.input);
      std::optional<ConsentStructure> consent = file.consent;
      if (!opt.consent.empty()) consent = parse_consent(file.problem, opt.consent);
      out << render_comparison(file.problem, compare_mechanisms(file.problem, consent));
      return kExitOk;
    };
  });

  auto* family = app.add_subcommand("family", "print or save a reference instance");
  family->add_option("family", opt.family, "example1 | example2 | example3 | random")->required();
  family->add_option("--n", opt.n, "number of students (example1, random)");
  family->add_option("--schools", opt.num_schools, "number of schools (random; default n)");
  family->add_option("--quota", opt.max_quota, "largest school quota (random)");
  family->add_option("--seed", opt.seed, "seed (random)");
  family->add_option("--emit", opt.emit, "write the instance to this file instead of stdout");
  family->callback([&] {
    action = [&] {
      const auto text = serialize_instance(make_problem({opt.family, opt.n, opt.num_schools, opt.max_quota, opt.seed}));
      if (opt.emit.empty()) {
        out << text;
      } else {
        write_file(opt.emit, text);
      }
      return kExitOk;
    };
  });

  auto* ratio = app.add_subcommand("ratio", "I* over the number of students a mechanism improves");
  ratio->add_option("--family", opt.family, "example1 | example2 | example3")->required();
  ratio->add_option("--n", opt.n, "number of students (example1)");
  ratio->add_option("--mechanism", opt.mechanism, "eada | da-ttc")->default_val("eada");
  ratio->callback([&] {
    action = [&] {
      const auto P = make_problem({opt.family, opt.n, 0, 1, 0});
      out << format_ratio(family_ratio(P, parse_mechanism(opt.mechanism))) << "\n";
      return kExitOk;
    };
  });

  auto* verify = app.add_subcommand("verify-paper", "check the reference results and the property suite");
  verify->add_option("--instances", opt.instances, "random markets in the property suite");
  verify->add_option("--seed", opt.seed, "first seed of the property suite");
  verify->add_flag("--table", opt.table, "also print the example1(7) cycle table");
  verify->callback([&] {
    action = [&] {
      auto inputs = VerificationInputs::defaults();
      inputs.property_instances = opt.instances;
      inputs.property_seed = opt.seed;
      const auto checks = verify_reference_results(inputs);
      if (opt.table) out << cycle_table_reproduction() << "\n";
      out << render_checks(checks);
      return all_passed(checks) ? kExitOk : kExitChecksFailed;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    return action ? action() : kExitOk;
  } catch (const InvalidInstance& e) {
    err << "invalid instance: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const ResourceError& e) {
    err << "search too large: " << e.what() << "\n";
    return kExitResource;
  } catch (const DominationError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace matchlab
