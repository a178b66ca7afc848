#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "effacengine/corpus.hpp"
#include "effacengine/report.hpp"

namespace effacengine {

enum class Completeness { complete_at_finite_dim, spot_check };

std::string to_string(Completeness c);

struct Outcome {
  Status status = Status::pass;
  std::string details;
};

/// One executable claim. `run` returns nullopt when the scenario has nothing the claim
/// talks about (no row is emitted then).
struct PropertyCase {
  std::string id;
  std::string claim;
  std::vector<std::string> tags;
  Completeness completeness = Completeness::spot_check;
  std::string finite_shadow;  // what is actually enumerated, for spot checks
  std::vector<std::string> covers;  // operation names exercised
  std::function<std::optional<Outcome>(const AnyScenario&)> run;
};

const std::vector<PropertyCase>& registry();
const PropertyCase* find_case(const std::string& id);
std::vector<const PropertyCase*> cases_tagged(const std::string& tag);

/// Operation names every registry must exercise.
const std::vector<std::string>& required_operations();
/// Required operations no case covers.
std::vector<std::string> coverage_gaps();

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool parallel = true;
  std::vector<std::string> only;  // case ids; empty runs all
};

/// Random instances: a small builtin algebra with its ideals and closed subcategories,
/// plus two random modules R1, R2. Deterministic in (seed, index).
std::vector<AnyScenario> trial_scenarios(std::uint64_t seed, std::size_t count);

/// Every (case, scenario) pair, one row each, named "<case>/<scenario>".
Report run_suite(const std::vector<AnyScenario>& scenarios, const SuiteOptions& options);

}  // namespace effacengine
