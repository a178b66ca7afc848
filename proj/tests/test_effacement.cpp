#include <doctest.h>

#include "effacengine/effacement.hpp"
#include "effacengine/homology.hpp"
#include "support.hpp"

using namespace effacengine;
using testing_support::f5;
using testing_support::q;

TEST_CASE("effacement by the ideal") {
  const auto& s = q("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  auto e = efface_by_ideal(s.closed_sub("Zx"), S, std::optional(minimal_cover(S)));
  CHECK(e.validate().ok);
  CHECK(is_isomorphic(e.domain, A).yes());
  CHECK(verify_effacement(e).ok);

  auto free = efface_by_ideal(s.closed_sub("Zx"), A, std::optional(minimal_cover(A)));
  CHECK(is_isomorphic(free.domain, A).yes());

  const auto& zs = q("zero-ideal");
  auto all = efface_by_ideal(zs.closed_sub("Zall"), zs.module("S"));
  CHECK(all.domain.dim() == free_cover(zs.module("S")).cover.dim());
}

TEST_CASE("closed-point effacement") {
  const auto& s = f5("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  auto e = efface_point(s.closed_sub("pointS"), S);
  CHECK(e.validate().ok);
  CHECK(is_isomorphic(e.domain, A).yes());
  CHECK(e.kernel.dim() == 1);

  auto self = efface_point(s.closed_sub("pointS"), A);
  CHECK(self.epi.matrix.is_identity());

  const auto& t3 = f5("trunc3");
  auto m = efface_point(t3.closed_sub("pointS"), t3.module("A/x2"));
  CHECK(m.kernel.dim() == 1);
  CHECK(is_isomorphic(m.domain, t3.module("A")).yes());
}

TEST_CASE("composite effacement") {
  const auto& s = f5("trunc3");
  const auto& M = s.module("S");
  auto z = s.closed_sub("Zx");
  auto e1 = std::make_shared<const Effacement<PrimeField>>(identity_effacement(z, M));
  auto c = efface_composite(e1, z);
  auto direct = efface_by_ideal(z, M);
  CHECK(c.validate().ok);
  CHECK(c.domain.dim() == direct.domain.dim());
  // the identity of a projective is an effacement, so the composite is one as well
  const auto& A = s.module("A");
  auto ea = std::make_shared<const Effacement<PrimeField>>(identity_effacement(z, A));
  CHECK(verify_effacement(efface_composite(ea, z)).ok);

  auto g = efface_natural(s.closed_sub("Zx.Zx"), s.module("A/x2"));
  CHECK(g.scope == EffacementScope::composite);
  CHECK(g.validate().ok);
  CHECK(verify_effacement(g).ok);
}

TEST_CASE("verification and its negative control") {
  const auto& s = q("dual-numbers");
  const auto& S = s.module("S");
  auto z = s.closed_sub("pointS");
  auto good = verify_effacement(efface_point(z, S));
  CHECK(good.ok);
  CHECK(good.tested.size() == 2);
  for (const auto& m : good.matrices) CHECK(m.is_zero());

  const auto& zs = q("zero-ideal");
  const auto& S0 = zs.module("S");
  auto cover = free_cover(S0);
  auto fc = Effacement<Rationals>{S0, cover.cover, cover.epi, cover.syzygy, EffacementScope::full_z,
                                  zs.closed_sub("Zall"), "free cover", {}};
  for (const auto& n : zs.modules) CHECK(verify_effacement(fc, {{n.name, n.value}}).ok);

  auto bad = verify_effacement(identity_effacement(z, S));
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violation);
  CHECK(bad.violation->pullback.rows() == 1);
  CHECK(bad.violation->pullback.cols() == 1);
  CHECK_FALSE(bad.violation->pullback.is_zero());
}

TEST_CASE("lifting through an effacement") {
  const auto& s = f5("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  auto e = efface_point(s.closed_sub("pointS"), S);
  auto self = lift_through(e, identity(S), e.epi);
  CHECK(self.validate().ok);
  CHECK(self.matrix * e.epi.matrix == e.epi.matrix);

  auto to_s = Morphism<PrimeField>{A, S, Matrix<PrimeField>::from_ints(s.field, {{1}, {0}})};
  auto l = lift_through(e, identity(S), to_s);
  CHECK(l.target.dim() == 2);
  CHECK(l.matrix * to_s.matrix == e.epi.matrix);

  // a split epi S + S -> S
  auto ss = direct_sum(s.algebra, {S, S});
  auto split = lift_through(e, identity(S), ss.projections[0]);
  CHECK(split.matrix * ss.projections[0].matrix == e.epi.matrix);
}

TEST_CASE("epimorphic images, sums and normalization") {
  const auto& s = q("trunc3");
  auto z = s.closed_sub("Zx");
  const auto& A = s.module("A");
  auto e = efface_by_ideal(z, A);
  auto q2 = quotient_module(A, Submodule<Rationals>{A, s.ideal("x2").space()});
  auto img = epimorphic_image(e, q2.projection);
  CHECK(img.validate().ok);
  CHECK(verify_effacement(img).ok);

  auto e2 = efface_by_ideal(z, s.module("S"));
  auto sum = block_sum(e, e2);
  CHECK(sum.validate().ok);
  CHECK(verify_effacement(sum).ok);

  auto n = normalize(identity_effacement(z, A));
  CHECK(n.validate().ok);
  CHECK(member(*z, restrict_to(n.kernel).module));
}
