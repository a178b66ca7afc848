#include <doctest.h>

#include "effacengine/functors.hpp"
#include "effacengine/homology.hpp"
#include "support.hpp"

using namespace effacengine;
using testing_support::f5;
using testing_support::q;

TEST_CASE("F on the dual numbers") {
  const auto& s = f5("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  FunctorContext<PrimeField> ctx(s.closed_sub("Zx"));
  auto fa = apply_F(ctx, A);
  CHECK(fa.object.dim() == 1);
  CHECK(fa.structure.is_mono());
  CHECK(image(fa.structure.matrix) == s.ideal("x").space());
  auto fs = apply_F(ctx, S);
  CHECK(fs.object.dim() == 1);
  CHECK(fs.structure.matrix.is_zero());
  CHECK(is_isomorphic(fa.object, oracle_tensor(*ctx.z(), A).object).yes());
}

TEST_CASE("F on morphisms") {
  const auto& s = q("trunc3");
  FunctorContext<Rationals> ctx(s.closed_sub("Zx"));
  const auto& A = s.module("A");
  const auto& M = s.module("A/x2");
  auto fid = apply_F_mor(ctx, identity(A));
  CHECK(fid.matrix.is_identity());

  auto homs = hom_space(A, M);
  REQUIRE(!homs.empty());
  Morphism<Rationals> f{A, M, homs[0]};
  auto sol = lifts_of(ctx, f);
  auto first = restrict_lift(ctx, f, sol.particular);
  for (const auto& h : sol.homogeneous) CHECK(restrict_lift(ctx, f, sol.particular + h).matrix == first.matrix);

  auto ends = hom_space(M, M);
  Morphism<Rationals> g{M, M, ends.back()};
  auto gf = apply_F_mor(ctx, compose(g, f));
  CHECK(gf.matrix == apply_F_mor(ctx, f).matrix * apply_F_mor(ctx, g).matrix);
}

TEST_CASE("injective containers") {
  const auto& s = f5("dual-numbers");
  const auto& S = s.module("S");
  auto c = injective_effacement(*s.closed_sub("Zx"), S);
  CHECK(c.mbar.dim() > S.dim());
  CHECK(c.embedding.is_mono());

  const auto& zs = f5("zero-ideal");
  auto all = injective_effacement(*zs.closed_sub("Zall"), zs.module("S"));
  CHECK(all.mbar.dim() == all.ambient.dim());
  auto none = injective_effacement(*zs.closed_sub("Znone"), zs.module("S"));
  CHECK(none.mbar.dim() == zs.module("S").dim());
  CHECK(none.incl.matrix.is_identity());
}

TEST_CASE("G on the dual numbers") {
  const auto& s = q("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  FunctorContext<Rationals> ctx(s.closed_sub("Zx"));
  auto ga = apply_G(ctx, A);
  CHECK(ga.object.dim() == 1);
  CHECK(is_isomorphic(ga.object, oracle_hom(*ctx.z(), A).object).yes());
  CHECK(kernel(ga.structure.matrix) == sub_Z(*ctx.z(), A).space);
  auto gs = apply_G(ctx, S);
  CHECK(gs.object.dim() == 1);
  CHECK(is_isomorphic(gs.object, oracle_hom(*ctx.z(), S).object).yes());
}

TEST_CASE("degenerate ideals") {
  // I = A makes both functors the identity, I = 0 makes them vanish
  const auto& s = q("zero-ideal");
  FunctorContext<Rationals> unit(s.closed_sub("Znone")), zero(s.closed_sub("Zall"));
  for (const auto& m : s.modules) {
    auto f = apply_F(unit, m.value);
    CHECK(f.structure.matrix.rows() == m.value.dim());
    CHECK(is_invertible(f.structure.matrix));
    auto g = apply_G(unit, m.value);
    CHECK(is_invertible(g.structure.matrix));
    CHECK(apply_F(zero, m.value).object.dim() == 0);
    CHECK(apply_G(zero, m.value).object.dim() == 0);
  }
}

TEST_CASE("tensor and Hom oracles") {
  const auto& t3 = f5("trunc3");
  auto z = t3.closed_sub("Zx");
  auto t = oracle_tensor(*z, t3.module("A/x2"));
  CHECK(t.object.dim() == 2);
  CHECK(kernel(t.canonical.matrix).dim() == 1);
  CHECK(k_Z(*z, t3.module("A/x2")).dim() == 1);

  const auto& zs = f5("zero-ideal");
  for (const auto& m : zs.modules) {
    CHECK(oracle_tensor(*zs.closed_sub("Zall"), m.value).object.dim() == 0);
    CHECK(oracle_hom(*zs.closed_sub("Zall"), m.value).object.dim() == 0);
    CHECK(is_isomorphic(oracle_hom(*zs.closed_sub("Znone"), m.value).object, m.value).yes());
  }

  const auto& s = f5("dual-numbers");
  CHECK(oracle_hom(*s.closed_sub("Zx"), s.module("A")).object.dim() == 1);
  CHECK(oracle_hom(*z, t3.module("S")).object.dim() == 1);
}

TEST_CASE("adjunction dimensions") {
  const auto& s = f5("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  FunctorContext<PrimeField> ctx(s.closed_sub("Zx"));
  auto ss = adjunction_check(ctx, S, S);
  CHECK(ss.ok());
  CHECK(ss.hom_F_m_n == 1);
  CHECK(ss.middle == 1);
  auto z = adjunction_check(ctx, S, Module<PrimeField>::zero(s.algebra));
  CHECK(z.ok());
  CHECK(z.hom_m_G_n == 0);
  auto aa = adjunction_check(ctx, A, A);
  CHECK(aa.ok());
  CHECK(aa.hom_F_m_n == 1);
}

TEST_CASE("exactness on short exact sequences") {
  const auto& s = q("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  FunctorContext<Rationals> ctx(s.closed_sub("Zx"));
  auto e = class_to_extension(ext1(S, S), Matrix<Rationals>::row_vector(s.field, {1}));
  auto r = exactness_suite(ctx, e);
  CHECK(r.ok);
  CHECK(r.dims_F == std::vector<std::size_t>{1, 1, 1});
  CHECK(is_isomorphic(e.total, A).yes());

  auto split = class_to_extension(ext1(S, S), Matrix<Rationals>(s.field, 1, 1));
  auto rs = exactness_suite(ctx, split);
  CHECK(rs.ok);
  CHECK(rs.dims_F[1] == rs.dims_F[0] + rs.dims_F[2]);
  CHECK(rs.dims_G[1] == rs.dims_G[0] + rs.dims_G[2]);
}

TEST_CASE("Gabriel products") {
  const auto& s = f5("dual-numbers");
  auto zx = s.closed_sub("Zx");
  for (const auto& m : s.modules) {
    auto r = gabriel_functor_check(zx, zx, m.value);
    CHECK(r.ok);
    CHECK(r.dim_F == 0);
  }
  const auto& t3 = q("trunc3");
  auto tz = t3.closed_sub("Zx");
  auto r = gabriel_functor_check(tz, tz, t3.module("A"));
  CHECK(r.ok);
  CHECK(r.dim_F == 1);
  CHECK(r.nu_zero_on_members);
  FunctorContext<Rationals> ctx(t3.closed_sub("Zx.Zx"));
  CHECK(apply_F(ctx, t3.module("S")).structure.matrix.is_zero());
}

TEST_CASE("self-effacing generators") {
  const auto& s = f5("dual-numbers");
  const auto& z = *s.closed_sub("Zx");
  auto free = self_effacing_check(z, {{"A", s.module("A")}});
  CHECK(free.ok());
  auto simple = self_effacing_check(z, {{"S", s.module("S")}});
  CHECK_FALSE(simple.ok());
  const auto& zs = f5("zero-ideal");
  CHECK(self_effacing_check(*zs.closed_sub("Znone"), {{"S", zs.module("S")}}).ok());
}

TEST_CASE("alternate choices give canonically isomorphic functors") {
  const auto& s = q("local3");
  for (const auto& zname : {"Zrad", "Za", "pointS"}) {
    auto z = s.closed_sub(zname);
    FunctorOptions alt;
    alt.cover = CoverChoice::minimal;
    alt.strategy = EffacementStrategy::ideal;
    alt.container_seed = 17;
    alt.extra_copies = 1;
    FunctorContext<Rationals> c1(z), c2(z, alt);
    for (const auto& m : s.modules) {
      CHECK(canonical_F_iso(c1, c2, m.value).ok());
      CHECK(canonical_G_iso(c1, c2, m.value).ok());
    }
  }
}
