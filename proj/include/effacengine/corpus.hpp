#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "effacengine/closed_sub.hpp"

namespace effacengine {

/// Malformed or unresolvable input (exit code 2 at the command line).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
struct Named {
  std::string name;
  T value;
};

/// How a closed subcategory was declared: by an ideal name, a point module name, or a
/// list of closed subcategory names forming a Gabriel product.
struct ClosedSubSpec {
  std::string kind;  // "ideal" | "point" | "gabriel"
  std::vector<std::string> refs;
};

/// A recorded expectation. kind is one of dim_F, dim_G, dim_ext1, iso, effacement.
struct Expectation {
  std::string kind;
  std::string z;
  std::string m;
  std::string n;
  std::string strategy;
  std::int64_t value = 0;
  std::string provenance;  // "trivial" or "derived:<oracle>"
};

template <class F>
struct Scenario {
  std::string name;
  F field;
  AlgebraPtr<F> algebra;
  std::vector<Named<Ideal<F>>> ideals;
  std::vector<Named<Module<F>>> modules;
  std::vector<std::pair<ClosedSubSpec, Named<ClosedSubPtr<F>>>> closed_subs;
  std::vector<Expectation> expected;

  const Ideal<F>& ideal(const std::string& n) const;
  const Module<F>& module(const std::string& n) const;
  const ClosedSubPtr<F>& closed_sub(const std::string& n) const;

  void add_ideal(std::string n, Ideal<F> i) { ideals.push_back({std::move(n), std::move(i)}); }
  void add_module(std::string n, Module<F> m) { modules.push_back({std::move(n), std::move(m)}); }
  /// Builds the closed subcategory from earlier ideals, modules and closed subcategories.
  void add_closed_sub(std::string n, ClosedSubSpec spec);

  /// Algebra axioms, ideals, modules, closed subcategories, provenance tags.
  AxiomCheck validate() const;
};

using AnyScenario = std::variant<Scenario<PrimeField>, Scenario<Rationals>>;

std::string scenario_name(const AnyScenario& s);

/// Structure-constant algebras used by the corpus.
template <class F>
AlgebraPtr<F> truncated_polynomial_algebra(const F& k, std::size_t n);
template <class F>
AlgebraPtr<F> upper_triangular_algebra(const F& k, std::size_t n);
/// k<a,b>/(a^2, b^2, ab, ba), basis 1, a, b.
template <class F>
AlgebraPtr<F> local_two_generator_algebra(const F& k);

/// dual-numbers, zero-ideal, trunc3, trunc4, triangular2, triangular3, local3; each over
/// F5 and Q. Names carry the field as a suffix, e.g. "dual-numbers/F5".
std::vector<AnyScenario> builtin_scenarios();

/// Largest module dimension random_module accepts.
constexpr std::size_t kRandomModuleMaxDim = 16;

/// A random quotient of a free module, in a random basis; deterministic per seed.
template <class F>
Module<F> random_module(const AlgebraPtr<F>& algebra, std::size_t dim, std::uint64_t seed);

/// Scenario files are JSON with a schema_version field. Throws InputError.
AnyScenario parse_scenario(const std::string& text);
AnyScenario load_scenario(const std::string& path);
std::string serialize_scenario(const AnyScenario& s);

constexpr int kSchemaVersion = 1;

}  // namespace effacengine
