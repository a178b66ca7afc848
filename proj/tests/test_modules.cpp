#include <doctest.h>

#include "effacengine/closed_sub.hpp"
#include "support.hpp"

using namespace effacengine;
using testing_support::f5;
using testing_support::q;

TEST_CASE("algebra axioms") {
  PrimeField k(5);
  CHECK(truncated_polynomial_algebra(k, 2)->validate().ok);
  CHECK(upper_triangular_algebra(k, 2)->validate().ok);
  CHECK(upper_triangular_algebra(k, 2)->dim() == 3);
  CHECK(local_two_generator_algebra(k)->validate().ok);

  auto a = truncated_polynomial_algebra(k, 2);
  std::vector<Matrix<PrimeField>> table;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) table.push_back(a->product(i, j));
  Algebra<PrimeField> bad(k, 2, table, Matrix<PrimeField>::row_vector(k, {2, 0}));
  auto c = bad.validate();
  CHECK_FALSE(c.ok);
  CHECK(c.axiom == "unit");
}

TEST_CASE("ideals") {
  const auto& s = q("dual-numbers");
  const auto& a = s.algebra;
  const auto& k = s.field;
  auto x = ideal_generated(a, Matrix<Rationals>::row_vector(k, {0, 1}));
  CHECK(x.dim() == 1);
  CHECK(x == s.ideal("x"));
  CHECK(ideal_generated(a, Matrix<Rationals>::row_vector(k, {1, 0})).dim() == 2);
  CHECK(ideal_generated(a, Matrix<Rationals>(k, 0, 2)).dim() == 0);
  CHECK(ideal_product(x, x).dim() == 0);
  CHECK(ideal_product(x, Ideal<Rationals>::zero(a)).dim() == 0);

  const auto& t3 = f5("trunc3");
  auto xx = ideal_product(t3.ideal("x"), t3.ideal("x"));
  CHECK(xx.dim() == 1);
  CHECK(xx == t3.ideal("x2"));
  CHECK(xx.is_subset_of(ideal_intersection(t3.ideal("x"), t3.ideal("x2"))));
  CHECK(xx.check_two_sided().ok);

  CHECK(annihilator_ideal(s.module("S")) == x);
  CHECK(annihilator_ideal(s.module("A")).dim() == 0);
  CHECK(annihilator_ideal(Module<Rationals>::zero(a)).dim() == 2);
}

TEST_CASE("hom spaces against the naive system and hand counts") {
  const auto& s = q("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  CHECK(hom_space(A, A).size() == 2);
  CHECK(hom_space(S, A).size() == 1);
  CHECK(hom_space(A, Module<Rationals>::zero(s.algebra)).empty());
  for (const auto& any : testing_support::corpus()) {
    std::visit(
        [](const auto& sc) {
          for (const auto& m : sc.modules)
            for (const auto& n : sc.modules) {
              auto fast = hom_space(m.value, n.value);
              auto slow = hom_space_naive(m.value, n.value);
              CHECK(fast.size() == slow.size());
              for (const auto& h : fast) {
                using F = std::decay_t<decltype(sc.field)>;
                CHECK(Morphism<F>{m.value, n.value, h}.validate().ok);
              }
            }
        },
        any);
  }
}

TEST_CASE("kernels, images, cokernels, submodules") {
  const auto& s = f5("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  CHECK(kernel_of(identity(A)).dim() == 0);
  CHECK(cokernel_of(zero_morphism(S, A)).module.dim() == 2);
  auto to_s = Morphism<PrimeField>{A, S, Matrix<PrimeField>::from_ints(s.field, {{1}, {0}})};
  REQUIRE(to_s.validate().ok);
  CHECK(image_of(to_s).dim() == 1);

  const auto& t3 = q("trunc3");
  const auto& A3 = t3.module("A");
  CHECK(submodule_generated(A3, Matrix<Rationals>::row_vector(t3.field, {0, 1, 0})).dim() == 2);
  CHECK(submodule_generated(A3, Matrix<Rationals>::row_vector(t3.field, {1, 0, 0})).dim() == 3);
  auto q0 = quotient_module(A3, zero_submodule(A3));
  CHECK(is_isomorphic(q0.module, A3).yes());
}

TEST_CASE("direct sums, pullbacks, pushouts") {
  const auto& s = f5("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  auto ss = direct_sum(s.algebra, {S, S});
  CHECK(ss.sum.dim() == 2);
  CHECK(ss.sum.action(1).is_zero());
  CHECK(direct_sum<PrimeField>(s.algebra, {}).sum.dim() == 0);
  auto as = direct_sum(s.algebra, {A, S});
  CHECK(as.sum.dim() == 3);
  CHECK(as.sum.validate().ok);

  auto pb = pullback(identity(A), identity(A));
  CHECK(is_isomorphic(pb.object, A).yes());
  auto po = pushout(zero_morphism(Module<PrimeField>::zero(s.algebra), A), zero_morphism(Module<PrimeField>::zero(s.algebra), S));
  CHECK(po.object.dim() == 3);

  // (x) -> A and (x) -> S, the latter an isomorphism of one-dimensional modules
  auto socle = restrict_to(Submodule<PrimeField>{A, Subspace<PrimeField>::span(Matrix<PrimeField>::row_vector(s.field, {0, 1}))});
  auto iso = Morphism<PrimeField>{socle.module, S, Matrix<PrimeField>::identity(s.field, 1)};
  REQUIRE(iso.validate().ok);
  CHECK(pushout(socle.inclusion, iso).object.dim() == 2);
}

TEST_CASE("isomorphism tests") {
  const auto& s = q("dual-numbers");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  auto self = is_isomorphic(A, A);
  CHECK(self.yes());
  auto ss = direct_sum(s.algebra, {S, S}).sum;
  CHECK(is_isomorphic(A, ss).verdict == IsoVerdict::no);
  auto socle = restrict_to(Submodule<Rationals>{A, Subspace<Rationals>::span(Matrix<Rationals>::row_vector(s.field, {0, 1}))});
  CHECK(is_isomorphic(socle.module, S).yes());
}

TEST_CASE("closed subcategories") {
  const auto& s = f5("dual-numbers");
  const auto& z = *s.closed_sub("Zx");
  const auto& A = s.module("A");
  const auto& S = s.module("S");
  CHECK(member(z, S));
  CHECK_FALSE(member(z, A));
  CHECK(member(z, Module<PrimeField>::zero(s.algebra)));
  CHECK(sub_Z(z, A).dim() == 1);
  CHECK(sub_Z(z, A).space == Subspace<PrimeField>::span(Matrix<PrimeField>::row_vector(s.field, {0, 1})));
  CHECK(quot_Z(z, A).module.dim() == 1);
  CHECK(member(z, quot_Z(z, A).module));
  CHECK(c_Z(z, A).module.dim() == 1);

  const auto& zs = f5("zero-ideal");
  const auto& all = *zs.closed_sub("Zall");
  const auto& none = *zs.closed_sub("Znone");
  const auto& A0 = zs.module("A");
  CHECK(sub_Z(all, A0).dim() == A0.dim());
  CHECK(sub_Z(none, A0).dim() == 0);
  CHECK(k_Z(all, A0).dim() == 0);
  CHECK(k_Z(none, A0).dim() == A0.dim());

  const auto& t3 = f5("trunc3");
  CHECK(k_Z(*t3.closed_sub("Zx"), t3.module("A")).dim() == 2);

  // K is not middle exact: 0 -> (x^2) -> A -> A/(x^2) -> 0 with I = (x)
  const auto& A3 = t3.module("A");
  auto x2 = restrict_to(Submodule<PrimeField>{A3, t3.ideal("x2").space()});
  CHECK(k_Z_homology(*t3.closed_sub("Zx"), x2.inclusion) == 1);

  // the point and the ideal describe the same subcategory of dual-number modules
  CHECK(s.closed_sub("pointS")->ideal() == s.ideal("x"));
  CHECK(s.closed_sub("Zx.Zx")->ideal().dim() == 0);
  CHECK(member_by_point_sum(*s.closed_sub("pointS"), direct_sum(s.algebra, {S, S}).sum) == IsoVerdict::yes);
  CHECK(member_by_point_sum(*s.closed_sub("pointS"), A) == IsoVerdict::no);
  CHECK_THROWS_AS(ClosedSub<PrimeField>::by_point(A), std::invalid_argument);
}

TEST_CASE("random modules") {
  const auto& s = q("dual-numbers");
  CHECK(random_module(s.algebra, 0, 1).dim() == 0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto m = random_module(s.algebra, 3, seed);
    CHECK(m.validate().ok);
    CHECK(2 * rank(m.action(1)) <= 3);
    CHECK(m.fingerprint() == random_module(s.algebra, 3, seed).fingerprint());
  }
}
