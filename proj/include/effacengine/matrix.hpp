#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "effacengine/field.hpp"

namespace effacengine {

/// Dense row-major matrix over a field object F. Vectors are 1 x n matrices; a list of
/// vectors is the matrix whose rows they are. Linear maps act on the right (v -> v M).
template <class F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix() : Matrix(F(default_field()), 0, 0) {}
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_ints(const F& field, std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t ncols = rows.size() ? rows.begin()->size() : 0;
    Matrix m(field, rows.size(), ncols);
    std::size_t i = 0;
    for (auto& row : rows) {
      if (row.size() != ncols) throw std::invalid_argument("ragged matrix literal");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = field.from_int(v);
      ++i;
    }
    return m;
  }

  static Matrix row_vector(const F& field, std::initializer_list<long long> entries) {
    Matrix m(field, 1, entries.size());
    std::size_t j = 0;
    for (long long v : entries) m(0, j++) = field.from_int(v);
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Element> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Element> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Matrix row_matrix(std::size_t i) const { return block(i, 0, 1, cols_); }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
    Matrix m(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("matrix block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) {
      throw std::invalid_argument("shape mismatch in product: " + shape() + " * " + o.shape());
    }
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Element& b = o(k, j);
          if (!field_.is_zero(b)) field_.axpy_in(r(i, j), a, b);
        }
      }
    }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o, "sum");
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.add(data_[k], o.data_[k]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o, "difference");
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.sub(data_[k], o.data_[k]);
    return r;
  }

  Matrix scaled(const Element& s) const {
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.mul(s, data_[k]);
    return r;
  }

  // this += s * o
  void add_scaled(const Element& s, const Matrix& o) {
    require_same_shape(o, "axpy");
    if (field_.is_zero(s)) return;
    for (std::size_t k = 0; k < data_.size(); ++k) {
      if (!field_.is_zero(o.data_[k])) field_.axpy_in(data_[k], s, o.data_[k]);
    }
  }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!field_.equal((*this)(i, j), i == j ? field_.one() : field_.zero())) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!a.field_.equal(a.data_[k], b.data_[k])) return false;
    return true;
  }

  /// Flattens row-major into a single row vector.
  Matrix flattened() const {
    Matrix r(field_, 1, rows_ * cols_);
    r.data_ = data_;
    return r;
  }

  static Matrix unflatten(const Matrix& v, std::size_t rows, std::size_t cols) {
    if (v.rows_ != 1 || v.cols_ != rows * cols) throw std::invalid_argument("unflatten: bad length");
    Matrix r(v.field_, rows, cols);
    r.data_ = v.data_;
    return r;
  }

  static Matrix hstack(const F& field, std::size_t rows, const std::vector<Matrix>& parts) {
    std::size_t total = 0;
    for (const auto& p : parts) {
      if (p.rows_ != rows) throw std::invalid_argument("hstack: row count mismatch");
      total += p.cols_;
    }
    Matrix r(field, rows, total);
    std::size_t c = 0;
    for (const auto& p : parts) {
      r.set_block(0, c, p);
      c += p.cols_;
    }
    return r;
  }

  static Matrix vstack(const F& field, std::size_t cols, const std::vector<Matrix>& parts) {
    std::size_t total = 0;
    for (const auto& p : parts) {
      if (p.cols_ != cols) throw std::invalid_argument("vstack: column count mismatch");
      total += p.rows_;
    }
    Matrix r(field, total, cols);
    std::size_t row = 0;
    for (const auto& p : parts) {
      r.set_block(row, 0, p);
      row += p.rows_;
    }
    return r;
  }

  static Matrix block_diagonal(const F& field, const std::vector<Matrix>& parts) {
    std::size_t nr = 0, nc = 0;
    for (const auto& p : parts) {
      nr += p.rows_;
      nc += p.cols_;
    }
    Matrix r(field, nr, nc);
    std::size_t i = 0, j = 0;
    for (const auto& p : parts) {
      r.set_block(i, j, p);
      i += p.rows_;
      j += p.cols_;
    }
    return r;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) os << ", ";
      os << '[';
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) os << ", ";
        os << field_.to_string((*this)(i, j));
      }
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  static F default_field() {
    if constexpr (std::is_same_v<F, PrimeField>) {
      return PrimeField(2);
    } else {
      return F{};
    }
  }

  void require_same_shape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::invalid_argument(std::string("shape mismatch in ") + what + ": " + shape() + " vs " + o.shape());
    }
  }

  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

}  // namespace effacengine
