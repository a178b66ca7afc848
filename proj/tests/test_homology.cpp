#include <doctest.h>

#include "effacengine/effacement.hpp"
#include "effacengine/homology.hpp"
#include "support.hpp"

using namespace effacengine;
using testing_support::f5;
using testing_support::q;

TEST_CASE("presentations") {
  const auto& s = q("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  auto pa = free_cover(A);
  CHECK(pa.validate().ok);
  CHECK(pa.rank == 2);
  CHECK(pa.syzygy.dim() == 2);  // (dim A)^2 - dim A
  auto ma = minimal_cover(A);
  CHECK(ma.validate().ok);
  CHECK(ma.rank == 1);
  CHECK(ma.syzygy.dim() == 0);
  auto ps = minimal_cover(S);
  CHECK(ps.rank == 1);
  CHECK(ps.syzygy.dim() == 1);
  auto pz = free_cover(Module<Rationals>::zero(s.algebra));
  CHECK(pz.cover.dim() == 0);
}

TEST_CASE("Ext^1 dimensions") {
  const auto& s = f5("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  CHECK(ext1(S, S).dim() == 1);
  for (const auto& n : s.modules) CHECK(ext1(A, n.value).dim() == 0);

  const auto& t = q("triangular2");
  const auto& s1 = t.module("S1");
  const auto& s2 = t.module("S2");
  auto d12 = ext1(s1, s2).dim(), d21 = ext1(s2, s1).dim();
  CHECK(d12 + d21 == 1);
  CHECK(d12 * d21 == 0);
}

TEST_CASE("extensions and classes") {
  const auto& s = q("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  const auto& k = s.field;
  auto e = ext1(S, S);
  auto split = class_to_extension(e, Matrix<Rationals>(k, 1, 1));
  CHECK(split.validate().ok);
  CHECK(is_isomorphic(split.total, direct_sum(s.algebra, {S, S}).sum).yes());
  CHECK(extension_to_class(split, e).is_zero());

  auto one = class_to_extension(e, Matrix<Rationals>::row_vector(k, {1}));
  CHECK(is_isomorphic(one.total, A).yes());
  CHECK_FALSE(extension_to_class(one, e).is_zero());

  auto lambda = k.from_fraction(-7, 3);
  auto scaled = class_to_extension(e, Matrix<Rationals>::row_vector(k, {1}).scaled(lambda));
  CHECK(extension_to_class(scaled, e) == extension_to_class(one, e).scaled(lambda));
}

TEST_CASE("pullback maps") {
  const auto& s = f5("dual-numbers");
  const auto& S = s.module("S");
  auto e = ext1(S, S);
  CHECK(pullback_map(e, identity(S)).is_identity());

  auto cover = free_cover(S);
  auto ec = ext1(cover.cover, S);
  CHECK(pullback_map(e, cover.epi, ec).is_zero());

  auto eff = efface_point(s.closed_sub("pointS"), S);
  CHECK(pullback_map(e, eff.epi).is_zero());
}

TEST_CASE("universal extensions") {
  const auto& s = f5("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  auto split = universal_extension(A, S);
  CHECK(split.copies == 0);
  CHECK(is_isomorphic(split.extension.total, A).yes());

  auto u = universal_extension(S, S);
  CHECK(u.copies == 1);
  CHECK(is_isomorphic(u.extension.total, A).yes());

  const auto& t3 = q("trunc3");
  auto v = universal_extension(t3.module("A/x2"), t3.module("S"));
  CHECK(v.copies == 1);
  CHECK(is_isomorphic(v.extension.total, t3.module("A")).yes());

  auto full = universal_extension_full(S, S);
  CHECK(full.copies == 4);  // one copy per nonzero class of F_5
}

TEST_CASE("Ext of sums and products") {
  const auto& s = f5("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  auto ss = ext_sum_compat(S, S, S);
  CHECK(ss.source_dim == 2);
  CHECK(ss.target_dim == 2);
  CHECK(ss.iso);
  auto z = ext_sum_compat(S, Module<PrimeField>::zero(s.algebra), S);
  CHECK(z.matrix.is_identity());
  auto f = ext_sum_compat(A, S, S);
  CHECK(f.iso);
  CHECK(f.target_dim == 1);
  CHECK(ext_product_compat(S, S, S).iso);
}
