#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "effacengine/matrix.hpp"

namespace effacengine {

template <class F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan reference kernel. Pivots are searched only in the first `pivot_cols`
/// columns; the remaining columns ride along (used for transformation tracking).
template <class F>
Echelon<F> rref_serial(Matrix<F> m, std::size_t pivot_cols);

/// Same result as rref_serial, with the per-pivot row elimination spread over OpenMP
/// threads. Falls back to one thread when OpenMP is unavailable.
template <class F>
Echelon<F> rref_parallel(Matrix<F> m, std::size_t pivot_cols);

/// Reduced row echelon form; picks the parallel kernel for large inputs.
template <class F>
Echelon<F> rref(Matrix<F> m);

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank();
}

/// Work threshold (rows * cols) above which rref() uses the parallel kernel.
std::size_t parallel_rref_threshold();
void set_parallel_rref_threshold(std::size_t work);

/// A subspace of k^n stored by its canonical reduced echelon basis, so two subspaces
/// are equal iff their basis matrices are identical.
template <class F>
class Subspace {
 public:
  Subspace(F field, std::size_t ambient_dim) : basis_(std::move(field), 0, ambient_dim) {}

  static Subspace span(const Matrix<F>& vectors);
  static Subspace full(const F& field, std::size_t n) { return span(Matrix<F>::identity(field, n)); }

  const F& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Matrix<F>& vectors) const { return coordinates(vectors).has_value(); }
  /// Coordinates of each row of `vectors` with respect to basis(); nullopt if some row
  /// lies outside the subspace.
  std::optional<Matrix<F>> coordinates(const Matrix<F>& vectors) const;
  /// Rows reduced modulo the subspace (zero iff contained).
  Matrix<F> reduce(const Matrix<F>& vectors) const;

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  bool is_subspace_of(const Subspace& o) const { return o.contains(basis_); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

/// {v : v m = 0}, a subspace of k^{rows(m)}.
template <class F>
Subspace<F> kernel(const Matrix<F>& m);

/// Row space of m, a subspace of k^{cols(m)}.
template <class F>
Subspace<F> image(const Matrix<F>& m) {
  return Subspace<F>::span(m);
}

/// Precomputed reduction of a coefficient matrix A for repeated solves of x A = b.
template <class F>
class LeftSolver {
 public:
  explicit LeftSolver(const Matrix<F>& a);

  std::size_t rank() const { return pivots_.size(); }
  /// Some x with x A = b (b may have several rows), or nullopt.
  std::optional<Matrix<F>> solve(const Matrix<F>& b) const;
  /// {x : x A = 0}.
  Subspace<F> null_space() const;

 private:
  std::size_t n_rows_;
  std::size_t n_cols_;
  Matrix<F> reduced_;    // R (rank x cols)
  Matrix<F> transform_;  // T with T A = R on the first rank rows
  Matrix<F> null_rows_;  // rows of T annihilating A
  std::vector<std::size_t> pivots_;
};

/// Some x with x a = b, or nullopt. Throws std::invalid_argument on shape mismatch.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b);

template <class F>
struct QuotientSpace {
  std::size_t dim = 0;
  Matrix<F> projection;  // ambient x dim, kernel exactly the subspace
  Matrix<F> section;     // dim x ambient, section * projection = identity
};

/// Quotient k^n / sub, using the non-pivot coordinates as the quotient basis.
template <class F>
QuotientSpace<F> quotient_space(const Subspace<F>& sub);

template <class F>
bool is_invertible(const Matrix<F>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m);

}  // namespace effacengine
