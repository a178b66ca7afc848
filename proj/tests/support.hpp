#pragma once

#include <stdexcept>
#include <string>

#include "effacengine/corpus.hpp"

namespace testing_support {

inline const std::vector<effacengine::AnyScenario>& corpus() {
  static const auto all = effacengine::builtin_scenarios();
  return all;
}

template <class F>
const effacengine::Scenario<F>& builtin(const std::string& name) {
  for (const auto& s : corpus())
    if (effacengine::scenario_name(s) == name) return std::get<effacengine::Scenario<F>>(s);
  throw std::runtime_error("no builtin " + name);
}

inline const effacengine::Scenario<effacengine::PrimeField>& f5(const std::string& base) {
  return builtin<effacengine::PrimeField>(base + "/F5");
}
inline const effacengine::Scenario<effacengine::Rationals>& q(const std::string& base) {
  return builtin<effacengine::Rationals>(base + "/Q");
}

}  // namespace testing_support
