#include <doctest.h>

#include <algorithm>
#include <set>

#include "effacengine/commands.hpp"
#include "effacengine/suite.hpp"
#include "support.hpp"

using namespace effacengine;

TEST_CASE("builtin scenarios are valid and round-trip") {
  std::set<std::string> names;
  for (const auto& s : testing_support::corpus()) {
    names.insert(scenario_name(s));
    std::visit([](const auto& sc) { CHECK(sc.validate().ok); }, s);
    auto text = serialize_scenario(s);
    auto back = parse_scenario(text);
    CHECK(serialize_scenario(back) == text);
  }
  CHECK(names.size() == 14);
  CHECK(names.count("dual-numbers/F5"));
  CHECK(names.count("local3/Q"));
}

TEST_CASE("parse errors name the field") {
  auto base = serialize_scenario(testing_support::corpus().front());
  auto broken = base;
  broken.replace(broken.find("\"F5\""), 4, "\"F6\"");
  CHECK_THROWS_AS(parse_scenario(broken), InputError);
  CHECK_THROWS_AS(parse_scenario("{"), InputError);
  CHECK_THROWS_AS(parse_scenario("{\"schema_version\": 99}"), InputError);
  try {
    parse_scenario(broken);
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("field") != std::string::npos);
  }
}

TEST_CASE("reports") {
  Report r;
  r.command = "check";
  r.scenario = "x";
  r.add("b", Status::undetermined, "budget spent");
  r.add("a", Status::pass, "");
  CHECK(r.exit_code() == 0);
  r.add("c", Status::fail, "nonzero");
  CHECK(r.exit_code() == 1);
  r.sort();
  CHECK(r.checks.front().name == "a");
  auto back = parse_report_jsonl(r.jsonl(false));
  CHECK(back.text(false) == r.text(false));
  CHECK(back.exit_code() == 1);
  CHECK_THROWS_AS(parse_report_jsonl("not json"), InputError);
}

TEST_CASE("registry") {
  const auto& reg = registry();
  CHECK(reg.size() >= 20);
  std::set<std::string> ids;
  for (const auto& c : reg) {
    CHECK(ids.insert(c.id).second);
    CHECK(!c.claim.empty());
    CHECK(static_cast<bool>(c.run));
    if (c.completeness == Completeness::spot_check) CHECK(!c.finite_shadow.empty());
  }
  CHECK(coverage_gaps().empty());
  auto points = cases_tagged("closed-point");
  CHECK(!points.empty());
  for (const auto* c : points) CHECK(std::find(c->tags.begin(), c->tags.end(), "closed-point") != c->tags.end());
  CHECK(find_case("adjunction") != nullptr);
  CHECK(find_case("no-such-case") == nullptr);
}

TEST_CASE("commands") {
  const auto& dual = testing_support::corpus().front();
  REQUIRE(scenario_name(dual) == "dual-numbers/F5");
  CHECK(cmd_validate(dual).exit_code() == 0);

  auto f = cmd_functor(dual, "Zx", "A", Which::F);
  CHECK(f.exit_code() == 0);
  CHECK(f.output.find("dim 1") != std::string::npos);
  auto g = cmd_functor(dual, "Zx", "A", Which::G);
  CHECK(g.exit_code() == 0);
  CHECK(g.output.find("dim 1") != std::string::npos);
  CHECK_THROWS_AS(cmd_functor(dual, "nope", "A", Which::F), InputError);

  auto e = cmd_efface(dual, "pointS", "S", "point");
  CHECK(e.exit_code() == 0);
  CHECK(e.output.find("domain vs A: isomorphic") != std::string::npos);
  CHECK_THROWS_AS(cmd_efface(dual, "Zx", "S", "point"), InputError);

  CheckOptions o;
  o.only = {"ideal-laws"};
  CHECK(cmd_check({dual}, o).exit_code() == 0);
  o.only = {"bogus"};
  CHECK_THROWS_AS(cmd_check({dual}, o), InputError);
}

TEST_CASE("reports are deterministic") {
  CheckOptions o;
  o.seed = 5;
  o.trials = 2;
  o.only = {"random-modules", "expectations"};
  auto a = cmd_check({testing_support::corpus()[2]}, o).jsonl(false);
  auto b = cmd_check({testing_support::corpus()[2]}, o).jsonl(false);
  CHECK(a == b);
  o.parallel = false;
  CHECK(cmd_check({testing_support::corpus()[2]}, o).jsonl(false) == a);
}
