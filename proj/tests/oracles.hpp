#pragma once

// Reference computations that share no code with the library: plain integer arrays
// over F_2, exhaustive enumeration, and direct matrix products.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "effacengine/module.hpp"

namespace oracle {

// Row-major square or rectangular matrix over F_2.
struct Bits {
  int rows = 0, cols = 0;
  std::vector<int> a;
  Bits() = default;
  Bits(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), 0) {}
  int& at(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
  int at(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }
  static Bits identity(int n) {
    Bits m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static Bits from_mask(int r, int c, unsigned mask) {
    Bits m(r, c);
    for (int i = 0; i < r * c; ++i) m.a[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    return m;
  }
  friend bool operator==(const Bits& x, const Bits& y) { return x.rows == y.rows && x.cols == y.cols && x.a == y.a; }
  friend bool operator<(const Bits& x, const Bits& y) { return x.a < y.a; }
};

inline Bits mul(const Bits& x, const Bits& y) {
  Bits r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k)
      if (x.at(i, k))
        for (int j = 0; j < y.cols; ++j) r.at(i, j) ^= y.at(k, j);
  return r;
}

inline Bits add(const Bits& x, const Bits& y) {
  Bits r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] ^= y.a[i];
  return r;
}

// Inverse by trying every matrix; n <= 3 keeps this at 512 candidates.
inline bool invert(const Bits& m, Bits& inv) {
  const int n = m.rows;
  for (unsigned mask = 0; mask < (1u << (n * n)); ++mask) {
    Bits c = Bits::from_mask(n, n, mask);
    if (mul(m, c) == Bits::identity(n)) {
      inv = c;
      return true;
    }
  }
  return false;
}

// Unital algebra over F_2 with basis e_0 = 1, e_1, ..., e_{d-1}.
// c[(i*d + j)*d + k] is the e_k coefficient of e_i e_j.
struct Alg {
  int d = 1;
  std::vector<int> c;
  int coef(int i, int j, int k) const { return c[static_cast<std::size_t>((i * d + j) * d + k)]; }
};

inline bool associative(const Alg& a) {
  const int d = a.d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l)
        for (int out = 0; out < d; ++out) {
          int left = 0, right = 0;
          for (int k = 0; k < d; ++k) {
            left ^= a.coef(i, j, k) & a.coef(k, l, out);
            right ^= a.coef(j, l, k) & a.coef(i, k, out);
          }
          if (left != right) return false;
        }
  return true;
}

// Rewrites the table in the basis f_i = sum_k t(i,k) e_k (t(0,.) = e_0).
inline Alg transform(const Alg& a, const Bits& t, const Bits& tinv) {
  const int d = a.d;
  Alg r{d, std::vector<int>(static_cast<std::size_t>(d * d * d), 0)};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<int> prod(static_cast<std::size_t>(d), 0);  // f_i f_j in e coordinates
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
          if (t.at(i, p) && t.at(j, q))
            for (int k = 0; k < d; ++k) prod[static_cast<std::size_t>(k)] ^= a.coef(p, q, k);
      for (int out = 0; out < d; ++out) {
        int v = 0;
        for (int k = 0; k < d; ++k) v ^= prod[static_cast<std::size_t>(k)] & tinv.at(k, out);
        r.c[static_cast<std::size_t>((i * d + j) * d + out)] = v;
      }
    }
  return r;
}

// Every unital associative F_2-algebra of dimension d, one per isomorphism class.
inline std::vector<Alg> algebras_f2(int d) {
  std::vector<std::pair<Bits, Bits>> changes;
  const int free_rows = d - 1;
  for (unsigned mask = 0; mask < (1u << (free_rows * d)); ++mask) {
    Bits t(d, d);
    t.at(0, 0) = 1;
    for (int i = 0; i < free_rows * d; ++i) t.a[static_cast<std::size_t>(d + i)] = (mask >> i) & 1;
    Bits inv;
    if (invert(t, inv)) changes.emplace_back(t, inv);
  }
  const int free_products = (d - 1) * (d - 1);
  std::set<std::vector<int>> seen;
  std::vector<Alg> out;
  for (unsigned mask = 0; mask < (1u << (free_products * d)); ++mask) {
    Alg a{d, std::vector<int>(static_cast<std::size_t>(d * d * d), 0)};
    for (int i = 0; i < d; ++i) {
      a.c[static_cast<std::size_t>((0 * d + i) * d + i)] = 1;
      a.c[static_cast<std::size_t>((i * d + 0) * d + i)] = 1;
    }
    int bit = 0;
    for (int i = 1; i < d; ++i)
      for (int j = 1; j < d; ++j)
        for (int k = 0; k < d; ++k) a.c[static_cast<std::size_t>((i * d + j) * d + k)] = (mask >> bit++) & 1;
    if (!associative(a)) continue;
    std::vector<int> key = a.c;
    for (const auto& [t, tinv] : changes) key = std::min(key, transform(a, t, tinv).c);
    if (seen.insert(key).second) out.push_back(Alg{d, key});
  }
  return out;
}

// Right module: rho[i] is the matrix of v -> v e_i (row vectors).
struct Mod {
  int n = 0;
  std::vector<Bits> rho;
};

inline bool is_module(const Alg& a, const Mod& m) {
  if (!(m.rho[0] == Bits::identity(m.n))) return false;
  for (int i = 0; i < a.d; ++i)
    for (int j = 0; j < a.d; ++j) {
      Bits rhs(m.n, m.n);
      for (int k = 0; k < a.d; ++k)
        if (a.coef(i, j, k)) rhs = add(rhs, m.rho[static_cast<std::size_t>(k)]);
      if (!(mul(m.rho[static_cast<std::size_t>(i)], m.rho[static_cast<std::size_t>(j)]) == rhs)) return false;
    }
  return true;
}

// Modules of dimension n up to isomorphism (conjugation by GL_n(F_2)).
inline std::vector<Mod> modules_f2(const Alg& a, int n) {
  if (n == 0) return {Mod{0, std::vector<Bits>(static_cast<std::size_t>(a.d), Bits(0, 0))}};
  std::vector<std::pair<Bits, Bits>> gl;
  for (unsigned mask = 0; mask < (1u << (n * n)); ++mask) {
    Bits p = Bits::from_mask(n, n, mask), inv;
    if (invert(p, inv)) gl.emplace_back(p, inv);
  }
  const unsigned per = 1u << (n * n);
  unsigned total = 1;
  for (int i = 1; i < a.d; ++i) total *= per;
  std::set<std::vector<Bits>> seen;
  std::vector<Mod> out;
  for (unsigned code = 0; code < total; ++code) {
    Mod m{n, {Bits::identity(n)}};
    unsigned rest = code;
    for (int i = 1; i < a.d; ++i) {
      m.rho.push_back(Bits::from_mask(n, n, rest % per));
      rest /= per;
    }
    if (!is_module(a, m)) continue;
    std::vector<Bits> key = m.rho;
    for (const auto& [p, pinv] : gl) {
      std::vector<Bits> conj;
      for (const auto& r : m.rho) conj.push_back(mul(mul(p, r), pinv));
      key = std::min(key, conj);
    }
    if (seen.insert(key).second) out.push_back(m);
  }
  return out;
}

// |Hom_A(M, N)|: all linear maps h with rho_M(e_i) h = h rho_N(e_i).
inline std::uint64_t hom_count(const Mod& m, const Mod& n) {
  std::uint64_t count = 0;
  for (unsigned mask = 0; mask < (1u << (m.n * n.n)); ++mask) {
    Bits h = Bits::from_mask(m.n, n.n, mask);
    bool ok = true;
    for (std::size_t i = 0; i < m.rho.size() && ok; ++i) ok = mul(m.rho[i], h) == mul(h, n.rho[i]);
    count += ok;
  }
  return count;
}

// Number of extensions 0 -> N -> E -> M -> 0 up to Baer equivalence. E is k^N + k^M
// with action [[rho_N, 0], [delta, rho_M]]; delta ranges over every choice satisfying
// the module axioms, and two choices are identified when some [[1, 0], [h, 1]]
// conjugates one into the other.
inline std::uint64_t ext_class_count(const Alg& a, const Mod& m, const Mod& n) {
  const int cells = m.n * n.n;
  const int d = a.d;
  std::vector<std::vector<Bits>> cocycles;
  const unsigned per = 1u << cells;
  unsigned total = 1;
  for (int i = 1; i < d; ++i) total *= per;
  for (unsigned code = 0; code < total; ++code) {
    std::vector<Bits> delta{Bits(m.n, n.n)};
    unsigned rest = code;
    for (int i = 1; i < d; ++i) {
      delta.push_back(Bits::from_mask(m.n, n.n, rest % per));
      rest /= per;
    }
    bool ok = true;
    for (int i = 0; i < d && ok; ++i)
      for (int j = 0; j < d && ok; ++j) {
        // lower-left block of rho_E(e_i) rho_E(e_j) against that of rho_E(e_i e_j)
        Bits lhs = add(mul(delta[static_cast<std::size_t>(i)], n.rho[static_cast<std::size_t>(j)]),
                       mul(m.rho[static_cast<std::size_t>(i)], delta[static_cast<std::size_t>(j)]));
        Bits rhs(m.n, n.n);
        for (int k = 0; k < d; ++k)
          if (a.coef(i, j, k)) rhs = add(rhs, delta[static_cast<std::size_t>(k)]);
        ok = lhs == rhs;
      }
    if (ok) cocycles.push_back(delta);
  }
  std::set<std::vector<Bits>> orbits;
  for (const auto& delta : cocycles) {
    std::vector<Bits> best = delta;
    for (unsigned mask = 0; mask < per; ++mask) {
      Bits h = Bits::from_mask(m.n, n.n, mask);
      std::vector<Bits> moved;
      for (int i = 0; i < d; ++i) {
        auto s = static_cast<std::size_t>(i);
        moved.push_back(add(add(delta[s], mul(m.rho[s], h)), mul(h, n.rho[s])));
      }
      best = std::min(best, moved);
    }
    orbits.insert(best);
  }
  return orbits.size();
}

template <class F>
effacengine::Matrix<F> to_matrix(const F& k, const Bits& b) {
  effacengine::Matrix<F> m(k, static_cast<std::size_t>(b.rows), static_cast<std::size_t>(b.cols));
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = k.from_int(b.at(i, j));
  return m;
}

inline effacengine::AlgebraPtr<effacengine::PrimeField> to_library(const Alg& a) {
  effacengine::PrimeField k(2);
  std::vector<effacengine::Matrix<effacengine::PrimeField>> table;
  for (int i = 0; i < a.d; ++i)
    for (int j = 0; j < a.d; ++j) {
      effacengine::Matrix<effacengine::PrimeField> row(k, 1, static_cast<std::size_t>(a.d));
      for (int l = 0; l < a.d; ++l) row(0, static_cast<std::size_t>(l)) = a.coef(i, j, l);
      table.push_back(row);
    }
  effacengine::Matrix<effacengine::PrimeField> unit(k, 1, static_cast<std::size_t>(a.d));
  unit(0, 0) = 1;
  return std::make_shared<const effacengine::Algebra<effacengine::PrimeField>>(k, static_cast<std::size_t>(a.d), table, unit);
}

inline effacengine::Module<effacengine::PrimeField> to_library(const effacengine::AlgebraPtr<effacengine::PrimeField>& alg,
                                                                const Mod& m) {
  std::vector<effacengine::Matrix<effacengine::PrimeField>> action;
  for (const auto& r : m.rho) action.push_back(to_matrix(alg->field(), r));
  return effacengine::Module<effacengine::PrimeField>(alg, static_cast<std::size_t>(m.n), action);
}

// w: M -> N is an isomorphism of modules, checked by direct products only.
template <class F>
bool is_iso_witness(const effacengine::Module<F>& m, const effacengine::Module<F>& n, const effacengine::Matrix<F>& w,
                    const effacengine::Matrix<F>& w_inverse) {
  using effacengine::Matrix;
  if (w.rows() != m.dim() || w.cols() != n.dim() || m.dim() != n.dim()) return false;
  if (!(w * w_inverse).is_identity() || !(w_inverse * w).is_identity()) return false;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i)
    if (!(m.action(i) * w == w * n.action(i))) return false;
  return true;
}

}  // namespace oracle
