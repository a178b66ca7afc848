#include "effacengine/field.hpp"

#include <charconv>
#include <climits>
#include <stdexcept>

namespace effacengine {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::int64_t p) : p_(p) {
  if (p >= (std::int64_t{1} << 31) || !is_prime(p)) {
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero in " + name());
  // extended Euclid
  std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return t < 0 ? t + p_ : t;
}

PrimeField::Element PrimeField::from_fraction(std::int64_t num, std::int64_t den) const {
  Element d = from_int(den);
  if (d == 0) throw std::domain_error("denominator vanishes in " + name());
  return div(from_int(num), d);
}

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

PrimeField::Element PrimeField::parse(std::string_view text) const {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_int(parse_int(text));
  return from_fraction(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
}

PrimeField::Element PrimeField::random(std::mt19937_64& rng) const {
  return std::uniform_int_distribution<std::int64_t>(0, p_ - 1)(rng);
}

PrimeField::Element PrimeField::random_small(std::mt19937_64& rng, int bound) const {
  return from_int(std::uniform_int_distribution<std::int64_t>(-bound, bound)(rng));
}

namespace {

unsigned __int128 gcd_wide(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kSmallMax = INT64_MAX;

}  // namespace

void Rational::set_big(const mpq_class& q) {
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() && q.get_num() != LONG_MIN) {
    n_ = q.get_num().get_si();
    d_ = q.get_den().get_si();
    big_.reset();
  } else {
    big_ = std::make_shared<const mpq_class>(q);
  }
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q{mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_))};
  return q;
}

std::string Rational::get_str() const {
  if (big_) return big_->get_str();
  return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
}

Rational Rational::from_wide(__int128 n, __int128 d) {
  // d > 0
  unsigned __int128 g = gcd_wide(n < 0 ? -static_cast<unsigned __int128>(n) : n, d);
  if (g > 1) {
    n /= static_cast<__int128>(g);
    d /= static_cast<__int128>(g);
  }
  if (n <= kSmallMax && n >= -kSmallMax && d <= kSmallMax) return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d), 0);
  auto to_mpz = [](__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  };
  Rational r;
  r.set_big(mpq_class(to_mpz(n), to_mpz(d)));
  return r;
}

Rational Rational::add_slow(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return from_wide(static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_,
                     static_cast<__int128>(a.d_) * b.d_);
  }
  return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational Rational::mul_slow(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return from_wide(static_cast<__int128>(a.n_) * b.n_, static_cast<__int128>(a.d_) * b.d_);
  }
  return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.sign() == 0) throw std::domain_error("division by zero in Q");
  if (!a.big_ && !b.big_) {
    __int128 n = static_cast<__int128>(a.n_) * b.d_, d = static_cast<__int128>(a.d_) * b.n_;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return Rational::from_wide(n, d);
  }
  return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
}

Rationals::Element Rationals::from_fraction(std::int64_t num, std::int64_t den) const {
  if (den == 0) throw std::domain_error("zero denominator");
  mpq_class r(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  r.canonicalize();
  return Rational(r);
}

Rationals::Element Rationals::inv(const Element& a) const {
  if (a.sign() == 0) throw std::domain_error("inverse of zero in Q");
  return one() / a;
}

Rationals::Element Rationals::div(const Element& a, const Element& b) const { return a / b; }

Rationals::Element Rationals::parse(std::string_view text) const {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  for (char c : s) {
    if (!(c == '-' || c == '/' || (c >= '0' && c <= '9'))) {
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
  }
  mpq_class r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  if (sgn(r.get_den()) == 0) throw std::domain_error("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return Rational(r);
}

Rationals::Element Rationals::random_small(std::mt19937_64& rng, int bound) const {
  return Element(static_cast<long>(std::uniform_int_distribution<int>(-bound, bound)(rng)));
}

}  // namespace effacengine
