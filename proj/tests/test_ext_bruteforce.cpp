#include <doctest.h>

#include "effacengine/homology.hpp"
#include "oracles.hpp"

using namespace effacengine;

TEST_CASE("F_2 algebra enumeration") {
  CHECK(oracle::algebras_f2(1).size() == 1);
  // F2 x F2, F4, F2[x]/(x^2)
  CHECK(oracle::algebras_f2(2).size() == 3);
  for (const auto& a : oracle::algebras_f2(3)) CHECK(oracle::to_library(a)->validate().ok);
}

TEST_CASE("Hom and Ext^1 over F_2 against exhaustive enumeration") {
  std::size_t triples = 0;
  for (int d = 1; d <= 3; ++d) {
    for (const auto& a : oracle::algebras_f2(d)) {
      auto alg = oracle::to_library(a);
      std::vector<oracle::Mod> mods;
      for (int n = 0; n <= 2; ++n)
        for (auto& m : oracle::modules_f2(a, n)) mods.push_back(m);
      std::vector<Module<PrimeField>> lib;
      for (const auto& m : mods) {
        lib.push_back(oracle::to_library(alg, m));
        CHECK(lib.back().validate().ok);
      }
      for (std::size_t i = 0; i < mods.size(); ++i)
        for (std::size_t j = 0; j < mods.size(); ++j) {
          CHECK((std::uint64_t{1} << hom_space(lib[i], lib[j]).size()) == oracle::hom_count(mods[i], mods[j]));
          CHECK((std::uint64_t{1} << ext1(lib[i], lib[j]).dim()) == oracle::ext_class_count(a, mods[i], mods[j]));
          ++triples;
        }
    }
  }
  CHECK(triples > 100);
}
