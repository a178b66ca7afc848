#include <doctest.h>

#include <random>

#include "effacengine/linalg.hpp"

using namespace effacengine;

namespace {

const PrimeField k5(5);
const Rationals qq;

}  // namespace

TEST_CASE("rational arithmetic agrees with GMP") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> small(-40, 40);
  std::uniform_int_distribution<long> huge(-(1L << 62), 1L << 62);
  for (int t = 0; t < 4000; ++t) {
    auto draw = [&] {
      long n = t % 3 == 0 ? huge(rng) : small(rng);
      long d = t % 5 == 0 ? huge(rng) : small(rng);
      if (d == 0) d = 1;
      return std::make_pair(n, d);
    };
    auto [an, ad] = draw();
    auto [bn, bd] = draw();
    mpq_class ga{mpz_class(an), mpz_class(ad)}, gb{mpz_class(bn), mpz_class(bd)};
    ga.canonicalize();
    gb.canonicalize();
    Rational a(ga), b(gb);
    CHECK((a + b).to_mpq() == ga + gb);
    CHECK((a - b).to_mpq() == ga - gb);
    CHECK((a * b).to_mpq() == ga * gb);
    if (sgn(gb) != 0) CHECK((a / b).to_mpq() == ga / gb);
    CHECK((a == b) == (ga == gb));
    CHECK(a.get_str() == ga.get_str());
  }
  // repeated squaring leaves the inline range and comes back
  Rational x(3L), one(1L);
  for (int i = 0; i < 8; ++i) x = x * x;
  CHECK_FALSE(x.is_small());
  Rational y = x / x;
  CHECK(y.is_small());
  CHECK(y == one);
  CHECK(qq.parse("-6/4") == qq.from_fraction(-3, 2));
  CHECK(qq.to_string(qq.parse("10/5")) == "2");
}

TEST_CASE("prime field basics") {
  CHECK(k5.inv(2) == 3);
  CHECK(k5.from_fraction(1, 2) == 3);
  CHECK(k5.parse("-1") == 4);
  CHECK_THROWS(PrimeField(6));
}

TEST_CASE("rref examples") {
  auto e = rref(Matrix<PrimeField>::from_ints(k5, {{2, 4}, {1, 2}}));
  CHECK(e.pivots == std::vector<std::size_t>{0});
  CHECK(e.reduced.row_matrix(0) == Matrix<PrimeField>::row_vector(k5, {1, 2}));
  for (std::size_t i = 1; i < e.reduced.rows(); ++i) CHECK(e.reduced.row_matrix(i).is_zero());

  auto id = rref(Matrix<Rationals>::identity(qq, 3));
  CHECK(id.reduced.is_identity());
  CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2});

  auto z = rref(Matrix<Rationals>(qq, 2, 3));
  CHECK(z.pivots.empty());
  CHECK(z.reduced.is_zero());
}

TEST_CASE("parallel rref matches the serial kernel") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 24, c = 1 + rng() % 24;
    Matrix<PrimeField> m(k5, r, c);
    Matrix<Rationals> mq(qq, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        // sparse-ish, so that ranks vary
        long v = rng() % 3 == 0 ? static_cast<long>(rng() % 7) - 3 : 0;
        m(i, j) = k5.from_int(v);
        mq(i, j) = qq.from_int(v);
      }
    auto a = rref_serial(m, c), b = rref_parallel(m, c);
    CHECK(a.reduced == b.reduced);
    CHECK(a.pivots == b.pivots);
    auto aq = rref_serial(mq, c), bq = rref_parallel(mq, c);
    CHECK(aq.reduced == bq.reduced);
    CHECK(aq.pivots == bq.pivots);
    // rank-nullity and row space preservation
    CHECK(kernel(m).dim() + image(m).dim() == r);
    CHECK(image(a.reduced) == image(m));
  }
}

TEST_CASE("kernel, image and solve") {
  auto zero = Matrix<PrimeField>(k5, 1, 1);
  CHECK(kernel(zero).dim() == 1);
  CHECK(kernel(Matrix<PrimeField>::identity(k5, 3)).is_zero());

  auto a = Matrix<Rationals>::from_ints(qq, {{1, 1}, {0, 1}});
  auto x = solve(a, Matrix<Rationals>::row_vector(qq, {3, 5}));
  REQUIRE(x);
  CHECK(*x == Matrix<Rationals>::row_vector(qq, {3, 2}));
  CHECK_FALSE(solve(Matrix<Rationals>::from_ints(qq, {{1, 0}, {2, 0}}), Matrix<Rationals>::row_vector(qq, {0, 1})));
  CHECK_THROWS_AS(solve(a, Matrix<Rationals>::row_vector(qq, {1, 2, 3})), std::invalid_argument);
}

TEST_CASE("quotient space") {
  auto sub = Subspace<Rationals>::span(Matrix<Rationals>::row_vector(qq, {1, 0}));
  auto qs = quotient_space(sub);
  CHECK(qs.dim == 1);
  CHECK((Matrix<Rationals>::row_vector(qq, {1, 0}) * qs.projection).is_zero());
  CHECK((qs.section * qs.projection).is_identity());
  CHECK(kernel(qs.projection) == sub);

  auto none = quotient_space(Subspace<Rationals>(qq, 3));
  CHECK(none.projection.is_identity());
  CHECK(quotient_space(Subspace<Rationals>::full(qq, 3)).dim == 0);
}
