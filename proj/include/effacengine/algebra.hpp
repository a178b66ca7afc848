#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "effacengine/linalg.hpp"

namespace effacengine {

/// Outcome of checking algebra, module or ideal axioms. `axiom` names what failed.
struct AxiomCheck {
  bool ok = true;
  std::string axiom;
  std::string message;

  static AxiomCheck pass() { return {}; }
  static AxiomCheck fail(std::string axiom, std::string message) { return {false, std::move(axiom), std::move(message)}; }
};

/// Finite-dimensional unital associative algebra given by structure constants:
/// product(i, j) is the coordinate vector of e_i * e_j.
template <class F>
class Algebra {
 public:
  Algebra(F field, std::size_t dim, std::vector<Matrix<F>> products, Matrix<F> unit,
          std::vector<std::string> basis_names = {});

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Matrix<F>& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  const Matrix<F>& unit() const { return unit_; }
  const std::vector<std::string>& basis_names() const { return names_; }

  /// Product of two elements given as 1 x dim coordinate rows.
  Matrix<F> multiply(const Matrix<F>& a, const Matrix<F>& b) const;
  Matrix<F> basis_element(std::size_t i) const;

  /// Matrix of x -> x e_j (right regular action), rows indexed by e_i.
  const Matrix<F>& right_mult(std::size_t j) const { return right_[j]; }
  /// Matrix of x -> e_j x.
  const Matrix<F>& left_mult(std::size_t j) const { return left_[j]; }

  /// Associativity on all basis triples and the two unit laws; reports the first failure.
  AxiomCheck validate() const;

 private:
  F field_;
  std::size_t dim_;
  std::vector<Matrix<F>> table_;
  Matrix<F> unit_;
  std::vector<std::string> names_;
  std::vector<Matrix<F>> right_;
  std::vector<Matrix<F>> left_;
};

template <class F>
using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

/// Two-sided ideal, stored as a subspace of the algebra.
template <class F>
class Ideal {
 public:
  Ideal(AlgebraPtr<F> algebra, Subspace<F> space);

  static Ideal zero(AlgebraPtr<F> algebra);
  static Ideal unit(AlgebraPtr<F> algebra);

  const AlgebraPtr<F>& algebra() const { return algebra_; }
  const Subspace<F>& space() const { return space_; }
  const Matrix<F>& basis() const { return space_.basis(); }
  std::size_t dim() const { return space_.dim(); }

  AxiomCheck check_two_sided() const;
  bool is_subset_of(const Ideal& o) const { return space_.is_subspace_of(o.space_); }

  friend bool operator==(const Ideal& a, const Ideal& b) { return a.space_ == b.space_; }

 private:
  AlgebraPtr<F> algebra_;
  Subspace<F> space_;
};

/// Smallest two-sided ideal containing the rows of `generators`.
template <class F>
Ideal<F> ideal_generated(const AlgebraPtr<F>& algebra, const Matrix<F>& generators);

/// I * J: span of products of basis elements, closed as an ideal.
template <class F>
Ideal<F> ideal_product(const Ideal<F>& i, const Ideal<F>& j);

template <class F>
Ideal<F> ideal_intersection(const Ideal<F>& i, const Ideal<F>& j);

template <class F>
Ideal<F> ideal_sum(const Ideal<F>& i, const Ideal<F>& j);

}  // namespace effacengine
