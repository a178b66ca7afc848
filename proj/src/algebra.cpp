#include "effacengine/algebra.hpp"

#include <stdexcept>

namespace effacengine {

template <class F>
Algebra<F>::Algebra(F field, std::size_t dim, std::vector<Matrix<F>> products, Matrix<F> unit,
                    std::vector<std::string> basis_names)
    : field_(std::move(field)), dim_(dim), table_(std::move(products)), unit_(std::move(unit)),
      names_(std::move(basis_names)) {
  if (table_.size() != dim_ * dim_) {
    throw std::invalid_argument("structure table has " + std::to_string(table_.size()) + " entries, expected " +
                                std::to_string(dim_ * dim_));
  }
  for (const auto& p : table_) {
    if (p.rows() != 1 || p.cols() != dim_) throw std::invalid_argument("structure constant is not a 1x" + std::to_string(dim_) + " row");
  }
  if (unit_.rows() != 1 || unit_.cols() != dim_) throw std::invalid_argument("unit is not a 1x" + std::to_string(dim_) + " row");
  if (names_.empty()) {
    for (std::size_t i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i));
  }
  if (names_.size() != dim_) throw std::invalid_argument("basis name count does not match dimension");
  for (std::size_t j = 0; j < dim_; ++j) {
    Matrix<F> r(field_, dim_, dim_), l(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      r.set_block(i, 0, product(i, j));
      l.set_block(i, 0, product(j, i));
    }
    right_.push_back(std::move(r));
    left_.push_back(std::move(l));
  }
}

template <class F>
Matrix<F> Algebra<F>::basis_element(std::size_t i) const {
  Matrix<F> e(field_, 1, dim_);
  e(0, i) = field_.one();
  return e;
}

template <class F>
Matrix<F> Algebra<F>::multiply(const Matrix<F>& a, const Matrix<F>& b) const {
  Matrix<F> r(field_, 1, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (field_.is_zero(a(0, i))) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (field_.is_zero(b(0, j))) continue;
      r.add_scaled(field_.mul(a(0, i), b(0, j)), product(i, j));
    }
  }
  return r;
}

template <class F>
AxiomCheck Algebra<F>::validate() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    auto ei = basis_element(i);
    if (!(multiply(unit_, ei) == ei)) {
      return AxiomCheck::fail("unit", "1*" + names_[i] + " != " + names_[i]);
    }
    if (!(multiply(ei, unit_) == ei)) {
      return AxiomCheck::fail("unit", names_[i] + "*1 != " + names_[i]);
    }
  }
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        auto lhs = multiply(product(i, j), basis_element(k));
        auto rhs = multiply(basis_element(i), product(j, k));
        if (!(lhs == rhs)) {
          return AxiomCheck::fail("associativity", "(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                                       std::to_string(k) + ")");
        }
      }
  return AxiomCheck::pass();
}

template <class F>
Ideal<F>::Ideal(AlgebraPtr<F> algebra, Subspace<F> space) : algebra_(std::move(algebra)), space_(std::move(space)) {
  if (space_.ambient_dim() != algebra_->dim()) throw std::invalid_argument("ideal subspace does not live in the algebra");
}

template <class F>
Ideal<F> Ideal<F>::zero(AlgebraPtr<F> algebra) {
  Subspace<F> s(algebra->field(), algebra->dim());
  return Ideal(std::move(algebra), std::move(s));
}

template <class F>
Ideal<F> Ideal<F>::unit(AlgebraPtr<F> algebra) {
  auto s = Subspace<F>::full(algebra->field(), algebra->dim());
  return Ideal(std::move(algebra), std::move(s));
}

template <class F>
AxiomCheck Ideal<F>::check_two_sided() const {
  const auto& a = *algebra_;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    if (!space_.contains(space_.basis() * a.right_mult(j))) {
      return AxiomCheck::fail("two-sided", "not closed under right multiplication by " + a.basis_names()[j]);
    }
    if (!space_.contains(space_.basis() * a.left_mult(j))) {
      return AxiomCheck::fail("two-sided", "not closed under left multiplication by " + a.basis_names()[j]);
    }
  }
  return AxiomCheck::pass();
}

template <class F>
Ideal<F> ideal_generated(const AlgebraPtr<F>& algebra, const Matrix<F>& generators) {
  const auto& a = *algebra;
  if (generators.cols() != a.dim()) throw std::invalid_argument("ideal generators do not live in the algebra");
  auto current = Subspace<F>::span(generators);
  while (true) {
    std::vector<Matrix<F>> parts{current.basis()};
    for (std::size_t j = 0; j < a.dim(); ++j) {
      parts.push_back(current.basis() * a.right_mult(j));
      parts.push_back(current.basis() * a.left_mult(j));
    }
    auto next = Subspace<F>::span(Matrix<F>::vstack(a.field(), a.dim(), parts));
    if (next.dim() == current.dim()) break;
    current = std::move(next);
  }
  return Ideal<F>(algebra, std::move(current));
}

template <class F>
Ideal<F> ideal_product(const Ideal<F>& i, const Ideal<F>& j) {
  if (i.algebra() != j.algebra()) throw std::invalid_argument("ideal product of ideals of different algebras");
  const auto& a = *i.algebra();
  Matrix<F> products(a.field(), i.dim() * j.dim(), a.dim());
  for (std::size_t r = 0; r < i.dim(); ++r)
    for (std::size_t s = 0; s < j.dim(); ++s)
      products.set_block(r * j.dim() + s, 0, a.multiply(i.basis().row_matrix(r), j.basis().row_matrix(s)));
  return ideal_generated(i.algebra(), products);
}

template <class F>
Ideal<F> ideal_intersection(const Ideal<F>& i, const Ideal<F>& j) {
  return Ideal<F>(i.algebra(), i.space().intersect(j.space()));
}

template <class F>
Ideal<F> ideal_sum(const Ideal<F>& i, const Ideal<F>& j) {
  return Ideal<F>(i.algebra(), i.space().sum(j.space()));
}

template class Algebra<PrimeField>;
template class Algebra<Rationals>;
template class Ideal<PrimeField>;
template class Ideal<Rationals>;
template Ideal<PrimeField> ideal_generated(const AlgebraPtr<PrimeField>&, const Matrix<PrimeField>&);
template Ideal<Rationals> ideal_generated(const AlgebraPtr<Rationals>&, const Matrix<Rationals>&);
template Ideal<PrimeField> ideal_product(const Ideal<PrimeField>&, const Ideal<PrimeField>&);
template Ideal<Rationals> ideal_product(const Ideal<Rationals>&, const Ideal<Rationals>&);
template Ideal<PrimeField> ideal_intersection(const Ideal<PrimeField>&, const Ideal<PrimeField>&);
template Ideal<Rationals> ideal_intersection(const Ideal<Rationals>&, const Ideal<Rationals>&);
template Ideal<PrimeField> ideal_sum(const Ideal<PrimeField>&, const Ideal<PrimeField>&);
template Ideal<Rationals> ideal_sum(const Ideal<Rationals>&, const Ideal<Rationals>&);

}  // namespace effacengine
