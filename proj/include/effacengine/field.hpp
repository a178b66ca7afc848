#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace effacengine {

/// The prime field F_p for a prime p < 2^31. Elements are canonical residues in [0, p).
class PrimeField {
 public:
  using Element = std::int64_t;

  explicit PrimeField(std::int64_t p);

  std::int64_t modulus() const { return p_; }
  std::string name() const { return "F" + std::to_string(p_); }
  static constexpr bool is_finite() { return true; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const {
    Element r = v % p_;
    return r < 0 ? r + p_ : r;
  }
  Element from_fraction(std::int64_t num, std::int64_t den) const;

  Element add(Element a, Element b) const {
    Element r = a + b;
    return r >= p_ ? r - p_ : r;
  }
  Element sub(Element a, Element b) const {
    Element r = a - b;
    return r < 0 ? r + p_ : r;
  }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return (a * b) % p_; }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  // acc += a * b
  void axpy_in(Element& acc, Element a, Element b) const { acc = (acc + a * b) % p_; }

  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }
  bool equal(Element a, Element b) const { return a == b; }

  /// Accepts integers and "num/den" with den invertible mod p.
  Element parse(std::string_view text) const;
  std::string to_string(Element a) const { return std::to_string(a); }
  /// Balanced representative, used when printing or serialising small integers.
  std::int64_t to_int(Element a) const { return a; }

  std::uint64_t cardinality() const { return static_cast<std::uint64_t>(p_); }
  Element element_at(std::uint64_t i) const { return static_cast<Element>(i % p_); }
  Element random(std::mt19937_64& rng) const;
  Element random_small(std::mt19937_64& rng, int bound) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::int64_t p_;
};

/// Exact rational in lowest terms. Values whose numerator and denominator fit in
/// 63 bits stay inline; anything larger lives in a shared, immutable mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : n_(v) {  // NOLINT(google-explicit-constructor)
    if (v == INT64_MIN) set_big(mpq_class(v));
  }
  explicit Rational(const mpq_class& q) { set_big(q); }

  bool is_small() const { return !big_; }
  int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }
  mpq_class to_mpq() const;
  mpz_class get_num() const { return to_mpq().get_num(); }
  mpz_class get_den() const { return to_mpq().get_den(); }
  std::string get_str() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // normalised: a small value is never stored big
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_ && a.d_ == 1 && b.d_ == 1) {
      std::int64_t r;
      if (!__builtin_add_overflow(a.n_, b.n_, &r) && r != INT64_MIN) return Rational(r);
    }
    return add_slow(a, b);
  }
  friend Rational operator-(const Rational& a) {
    if (!a.big_) return Rational(-a.n_, a.d_, 0);
    return Rational(mpq_class(-*a.big_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_ && a.d_ == 1 && b.d_ == 1) {
      std::int64_t r;
      if (!__builtin_mul_overflow(a.n_, b.n_, &r) && r != INT64_MIN) return Rational(r);
    }
    return mul_slow(a, b);
  }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }

 private:
  Rational(std::int64_t n, std::int64_t d, int) : n_(n), d_(d) {}
  void set_big(const mpq_class& q);
  static Rational add_slow(const Rational& a, const Rational& b);
  static Rational mul_slow(const Rational& a, const Rational& b);
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t n_ = 0, d_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

/// The rationals, exact and always in lowest terms.
class Rationals {
 public:
  using Element = Rational;

  std::string name() const { return "Q"; }
  static constexpr bool is_finite() { return false; }

  Element zero() const { return Element(0L); }
  Element one() const { return Element(1L); }
  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }
  Element from_fraction(std::int64_t num, std::int64_t den) const;

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const;
  void axpy_in(Element& acc, const Element& a, const Element& b) const { acc += a * b; }

  bool is_zero(const Element& a) const { return a.sign() == 0; }
  bool is_one(const Element& a) const { return a == one(); }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element parse(std::string_view text) const;
  std::string to_string(const Element& a) const { return a.get_str(); }

  Element random(std::mt19937_64& rng) const { return random_small(rng, 3); }
  Element random_small(std::mt19937_64& rng, int bound) const;

  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

bool is_prime(std::int64_t n);

}  // namespace effacengine
