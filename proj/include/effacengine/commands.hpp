#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "effacengine/corpus.hpp"
#include "effacengine/report.hpp"

namespace effacengine {

enum class Which { F, G };

/// Axioms of every component. Unresolvable names throw InputError.
Report cmd_validate(const AnyScenario& s);

/// F_Z(M) or G_Z(M), its structure map, and the tensor/Hom comparison.
Report cmd_functor(const AnyScenario& s, const std::string& z, const std::string& m, Which which);

/// strategy: "ideal", "point" or "composite".
Report cmd_efface(const AnyScenario& s, const std::string& z, const std::string& m, const std::string& strategy);

struct CheckOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool parallel = true;
  std::vector<std::string> only;
};

/// The property suite over the given scenarios plus `trials` random instances.
Report cmd_check(const std::vector<AnyScenario>& scenarios, const CheckOptions& options);

}  // namespace effacengine
