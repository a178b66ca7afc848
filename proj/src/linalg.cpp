#include "effacengine/linalg.hpp"

#include <atomic>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace effacengine {

namespace {

std::atomic<std::size_t> g_parallel_threshold{1u << 14};

template <class F>
void swap_rows(Matrix<F>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = m.row(a);
  auto rb = m.row(b);
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(ra[j], rb[j]);
}

template <class F>
void normalize_row(Matrix<F>& m, std::size_t r, std::size_t c) {
  const F& k = m.field();
  auto row = m.row(r);
  auto inv = k.inv(row[c]);
  for (std::size_t j = c; j < m.cols(); ++j) {
    if (!k.is_zero(row[j])) row[j] = k.mul(row[j], inv);
  }
}

// row i -= row[i][c] * row p, for a normalised pivot row p with pivot column c.
template <class F>
void eliminate_row(Matrix<F>& m, std::size_t i, std::size_t p, std::size_t c) {
  const F& k = m.field();
  auto target = m.row(i);
  if (k.is_zero(target[c])) return;
  auto factor = k.neg(target[c]);
  auto pivot_row = m.row(p);
  for (std::size_t j = c; j < m.cols(); ++j) {
    if (!k.is_zero(pivot_row[j])) k.axpy_in(target[j], factor, pivot_row[j]);
  }
}

template <class F>
Echelon<F> finish(Matrix<F> m, std::vector<std::size_t> pivots) {
  return {std::move(m), std::move(pivots)};
}

}  // namespace

std::size_t parallel_rref_threshold() { return g_parallel_threshold.load(); }
void set_parallel_rref_threshold(std::size_t work) { g_parallel_threshold.store(work); }

template <class F>
Echelon<F> rref_serial(Matrix<F> m, std::size_t pivot_cols) {
  const F& k = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && k.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    swap_rows(m, r, p);
    normalize_row(m, r, c);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r) eliminate_row(m, i, r, c);
    }
    pivots.push_back(c);
    ++r;
  }
  return finish(std::move(m), std::move(pivots));
}

template <class F>
Echelon<F> rref_parallel(Matrix<F> m, std::size_t pivot_cols) {
  const F& k = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const auto n_rows = static_cast<std::ptrdiff_t>(m.rows());
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && k.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    swap_rows(m, r, p);
    normalize_row(m, r, c);
    const auto pivot_row = static_cast<std::ptrdiff_t>(r);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n_rows; ++i) {
      if (i != pivot_row) eliminate_row(m, static_cast<std::size_t>(i), r, c);
    }
    pivots.push_back(c);
    ++r;
  }
  return finish(std::move(m), std::move(pivots));
}

template <class F>
Echelon<F> rref(Matrix<F> m) {
  const std::size_t cols = m.cols();
  if (m.rows() * m.cols() >= parallel_rref_threshold()) return rref_parallel(std::move(m), cols);
  return rref_serial(std::move(m), cols);
}

namespace {

template <class F>
Echelon<F> rref_prefix(Matrix<F> m, std::size_t pivot_cols) {
  if (m.rows() * m.cols() >= parallel_rref_threshold()) return rref_parallel(std::move(m), pivot_cols);
  return rref_serial(std::move(m), pivot_cols);
}

}  // namespace

// --- Subspace ---------------------------------------------------------------

template <class F>
Subspace<F> Subspace<F>::span(const Matrix<F>& vectors) {
  auto e = rref(vectors);
  Subspace s(vectors.field(), vectors.cols());
  s.basis_ = e.reduced.block(0, 0, e.rank(), vectors.cols());
  s.pivots_ = std::move(e.pivots);
  return s;
}

template <class F>
Matrix<F> Subspace<F>::reduce(const Matrix<F>& vectors) const {
  if (vectors.cols() != ambient_dim()) {
    throw std::invalid_argument("subspace reduce: vector length " + std::to_string(vectors.cols()) +
                                " vs ambient " + std::to_string(ambient_dim()));
  }
  const F& k = field();
  Matrix<F> r = vectors;
  for (std::size_t v = 0; v < r.rows(); ++v) {
    auto row = r.row(v);
    for (std::size_t b = 0; b < dim(); ++b) {
      auto coeff = row[pivots_[b]];
      if (k.is_zero(coeff)) continue;
      auto factor = k.neg(coeff);
      auto brow = basis_.row(b);
      for (std::size_t j = pivots_[b]; j < ambient_dim(); ++j) {
        if (!k.is_zero(brow[j])) k.axpy_in(row[j], factor, brow[j]);
      }
    }
  }
  return r;
}

template <class F>
std::optional<Matrix<F>> Subspace<F>::coordinates(const Matrix<F>& vectors) const {
  if (!reduce(vectors).is_zero()) return std::nullopt;
  Matrix<F> coords(field(), vectors.rows(), dim());
  for (std::size_t v = 0; v < vectors.rows(); ++v)
    for (std::size_t b = 0; b < dim(); ++b) coords(v, b) = vectors(v, pivots_[b]);
  return coords;
}

template <class F>
Subspace<F> Subspace<F>::sum(const Subspace& o) const {
  if (o.ambient_dim() != ambient_dim()) throw std::invalid_argument("subspace sum: ambient mismatch");
  return span(Matrix<F>::vstack(field(), ambient_dim(), {basis_, o.basis_}));
}

template <class F>
Subspace<F> Subspace<F>::intersect(const Subspace& o) const {
  if (o.ambient_dim() != ambient_dim()) throw std::invalid_argument("subspace intersection: ambient mismatch");
  // x = a U = b W  <=>  (a, b) [U; -W] = 0
  Matrix<F> neg_w = o.basis_.scaled(field().neg(field().one()));
  auto ker = kernel(Matrix<F>::vstack(field(), ambient_dim(), {basis_, neg_w}));
  Matrix<F> a_part = ker.basis().block(0, 0, ker.dim(), dim());
  return span(a_part * basis_);
}

template <class F>
Subspace<F> kernel(const Matrix<F>& m) {
  return LeftSolver<F>(m).null_space();
}

// --- LeftSolver -------------------------------------------------------------

template <class F>
LeftSolver<F>::LeftSolver(const Matrix<F>& a) : n_rows_(a.rows()), n_cols_(a.cols()) {
  const F& k = a.field();
  Matrix<F> aug = Matrix<F>::hstack(k, a.rows(), {a, Matrix<F>::identity(k, a.rows())});
  auto e = rref_prefix(std::move(aug), a.cols());
  pivots_ = e.pivots;
  const std::size_t r = e.rank();
  reduced_ = e.reduced.block(0, 0, r, n_cols_);
  transform_ = e.reduced.block(0, n_cols_, r, n_rows_);
  null_rows_ = e.reduced.block(r, n_cols_, n_rows_ - r, n_rows_);
}

template <class F>
std::optional<Matrix<F>> LeftSolver<F>::solve(const Matrix<F>& b) const {
  if (b.cols() != n_cols_) {
    throw std::invalid_argument("solve: right-hand side has " + std::to_string(b.cols()) + " columns, expected " +
                                std::to_string(n_cols_));
  }
  const F& k = b.field();
  Matrix<F> coeffs(k, b.rows(), rank());
  Matrix<F> residual = b;
  for (std::size_t v = 0; v < b.rows(); ++v) {
    auto row = residual.row(v);
    for (std::size_t i = 0; i < rank(); ++i) {
      auto c = row[pivots_[i]];
      if (k.is_zero(c)) continue;
      coeffs(v, i) = c;
      auto factor = k.neg(c);
      auto rrow = reduced_.row(i);
      for (std::size_t j = pivots_[i]; j < n_cols_; ++j) {
        if (!k.is_zero(rrow[j])) k.axpy_in(row[j], factor, rrow[j]);
      }
    }
  }
  if (!residual.is_zero()) return std::nullopt;
  if (rank() == 0) return Matrix<F>(k, b.rows(), n_rows_);
  return coeffs * transform_;
}

template <class F>
Subspace<F> LeftSolver<F>::null_space() const {
  return Subspace<F>::span(null_rows_);
}

template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("solve: shape mismatch " + a.shape() + " vs " + b.shape());
  }
  return LeftSolver<F>(a).solve(b);
}

template <class F>
QuotientSpace<F> quotient_space(const Subspace<F>& sub) {
  const F& k = sub.field();
  const std::size_t n = sub.ambient_dim();
  std::vector<bool> is_pivot(n, false);
  for (auto p : sub.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  std::vector<std::size_t> index_of(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_pivot[c]) {
      index_of[c] = free_cols.size();
      free_cols.push_back(c);
    }
  }
  QuotientSpace<F> q;
  q.dim = free_cols.size();
  q.projection = Matrix<F>(k, n, q.dim);
  q.section = Matrix<F>(k, q.dim, n);
  for (std::size_t i = 0; i < q.dim; ++i) q.section(i, free_cols[i]) = k.one();
  // e_c - (row with pivot c) for pivot columns; e_c itself otherwise
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_pivot[c]) q.projection(c, index_of[c]) = k.one();
  }
  const auto& b = sub.basis();
  for (std::size_t r = 0; r < sub.dim(); ++r) {
    std::size_t c = sub.pivots()[r];
    for (std::size_t j = 0; j < q.dim; ++j) q.projection(c, j) = k.neg(b(r, free_cols[j]));
  }
  return q;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix " + m.shape());
  auto x = solve(m, Matrix<F>::identity(m.field(), m.rows()));
  if (!x) throw std::domain_error("matrix is singular");
  return *x;
}

#define EFFACENGINE_INSTANTIATE(F)                                        \
  template Echelon<F> rref_serial<F>(Matrix<F>, std::size_t);             \
  template Echelon<F> rref_parallel<F>(Matrix<F>, std::size_t);           \
  template Echelon<F> rref<F>(Matrix<F>);                                 \
  template class Subspace<F>;                                             \
  template class LeftSolver<F>;                                           \
  template Subspace<F> kernel<F>(const Matrix<F>&);                       \
  template std::optional<Matrix<F>> solve<F>(const Matrix<F>&, const Matrix<F>&); \
  template QuotientSpace<F> quotient_space<F>(const Subspace<F>&);        \
  template Matrix<F> inverse<F>(const Matrix<F>&);

EFFACENGINE_INSTANTIATE(PrimeField)
EFFACENGINE_INSTANTIATE(Rationals)

#undef EFFACENGINE_INSTANTIATE

}  // namespace effacengine
