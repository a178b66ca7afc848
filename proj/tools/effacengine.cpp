#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "effacengine/commands.hpp"
#include "effacengine/suite.hpp"

using namespace effacengine;

namespace {

// "builtin:<name>" selects a corpus scenario, anything else is a path
AnyScenario load(const std::string& arg) {
  const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) == 0) {
    const std::string name = arg.substr(prefix.size());
    for (auto& s : builtin_scenarios())
      if (scenario_name(s) == name) return s;
    throw InputError("no builtin scenario named '" + name + "'");
  }
  return load_scenario(arg);
}

void emit(const Report& r, const std::string& format, bool timing) {
  std::cout << (format == "jsonl" ? r.jsonl(timing) : r.text(timing));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"effacengine: effacements, the functors F_Z and G_Z, and their checks over finite-dimensional algebras"};
  app.require_subcommand(1);
  std::string format = "text";
  bool timing = false;
  app.add_option("--format", format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
  app.add_flag("--timing", timing, "include per-check wall time");

  std::string file;
  auto* validate = app.add_subcommand("validate", "check every axiom of a scenario");
  validate->add_option("file", file, "scenario file or builtin:<name>")->required();

  std::string z, m, which = "F", strategy;
  auto* functor = app.add_subcommand("functor", "apply F_Z or G_Z to a module");
  functor->add_option("--z", z, "closed subcategory name")->required();
  functor->add_option("--m", m, "module name")->required();
  functor->add_option("--which", which, "F or G")->check(CLI::IsMember({"F", "G"}));
  functor->add_option("file", file, "scenario file or builtin:<name>")->required();

  auto* efface = app.add_subcommand("efface", "construct and verify an effacement");
  efface->add_option("--z", z, "closed subcategory name")->required();
  efface->add_option("--m", m, "module name")->required();
  efface->add_option("--strategy", strategy, "ideal, point or composite")
      ->required()
      ->check(CLI::IsMember({"ideal", "point", "composite"}));
  efface->add_option("file", file, "scenario file or builtin:<name>")->required();

  bool all = false, serial = false;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<std::string> only;
  auto* check = app.add_subcommand("check", "run the property suite");
  check->add_flag("--all", all, "include every builtin scenario");
  check->add_option("--seed", seed, "seed for random trials");
  check->add_option("--trials", trials, "number of random instances");
  check->add_option("--case", only, "restrict to these case ids");
  check->add_flag("--serial", serial, "run checks on one thread");
  check->add_option("file", file, "scenario file or builtin:<name>");

  std::string input;
  auto* report = app.add_subcommand("report", "re-render a saved jsonl report");
  report->add_option("--input", input, "report file (default: standard input)");

  std::string write_dir;
  auto* scenarios = app.add_subcommand("scenarios", "list the builtin scenarios");
  scenarios->add_option("--write", write_dir, "also write each as <dir>/<name>.json");

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--format", format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
    sub->add_flag("--timing", timing, "include per-check wall time");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Report r;
    if (*validate) {
      r = cmd_validate(load(file));
    } else if (*functor) {
      r = cmd_functor(load(file), z, m, which == "F" ? Which::F : Which::G);
    } else if (*efface) {
      r = cmd_efface(load(file), z, m, strategy);
    } else if (*check) {
      std::vector<AnyScenario> ss;
      if (all) ss = builtin_scenarios();
      if (!file.empty()) ss.push_back(load(file));
      if (ss.empty() && trials == 0) throw InputError("check needs a scenario file, --all, or --trials");
      CheckOptions opts;
      opts.seed = seed;
      opts.trials = trials;
      opts.parallel = !serial;
      opts.only = only;
      r = cmd_check(ss, opts);
      if (all && file.empty()) r.scenario = "builtins";
    } else if (*report) {
      std::stringstream buf;
      if (input.empty()) {
        buf << std::cin.rdbuf();
      } else {
        std::ifstream in(input);
        if (!in) throw InputError("cannot open report '" + input + "'");
        buf << in.rdbuf();
      }
      r = parse_report_jsonl(buf.str());
      r.sort();
    } else if (*scenarios) {
      for (const auto& s : builtin_scenarios()) {
        std::cout << scenario_name(s) << "\n";
        if (!write_dir.empty()) {
          std::string fname = scenario_name(s);
          for (auto& c : fname)
            if (c == '/') c = '-';
          std::ofstream out(write_dir + "/" + fname + ".json");
          if (!out) throw InputError("cannot write into '" + write_dir + "'");
          out << serialize_scenario(s);
        }
      }
      return 0;
    }
    emit(r, format, timing);
    return r.exit_code();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
