#pragma once

// Exact linear algebra. EchelonSpace does Gauss-Jordan over a field one
// vector at a time; bareiss_rank is fraction-free elimination over an
// integral domain (polynomial matrices over Q(zeta)[T]).

#include <cstddef>
#include <utility>
#include <vector>

#include "iwadec/errors.hpp"
#include "iwadec/poly.hpp"

namespace iwadec {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(a_.begin() + static_cast<long>(r * cols_), a_.begin() + static_cast<long>((r + 1) * cols_));
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw MalformedInput("matrix dimension mismatch");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j)
          if (!y(k, j).is_zero()) r(i, j) += xik * y(k, j);
      }
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
    for (std::size_t i = 0; i < x.a_.size(); ++i)
      if (!(x.a_[i] == y.a_[i])) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

/// Row space over a field maintained in reduced echelon form.
template <typename T>
class EchelonSpace {
 public:
  explicit EchelonSpace(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<T>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }

  /// Reduce v against the current rows (in place); returns true if v is now zero.
  bool reduce(std::vector<T>& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const T& c = v[piv_[i]];
      if (c.is_zero()) continue;
      T f = c;
      const auto& r = rows_[i];
      for (std::size_t j = piv_[i]; j < dim_; ++j)
        if (!r[j].is_zero()) v[j] -= f * r[j];
    }
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }

  bool contains(std::vector<T> v) const { return reduce(v); }

  /// Adds v to the span; returns true if the rank grew.
  bool insert(std::vector<T> v) {
    if (v.size() != dim_) throw MalformedInput("vector length does not match the ambient dimension");
    if (reduce(v)) return false;
    std::size_t p = 0;
    while (v[p].is_zero()) ++p;
    T inv = v[p].inverse();
    for (std::size_t j = p; j < dim_; ++j)
      if (!v[j].is_zero()) v[j] *= inv;
    // keep existing rows reduced with respect to the new pivot
    for (auto& r : rows_) {
      if (r[p].is_zero()) continue;
      T f = r[p];
      for (std::size_t j = p; j < dim_; ++j)
        if (!v[j].is_zero()) r[j] -= f * v[j];
    }
    std::size_t pos = 0;
    while (pos < piv_.size() && piv_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
    piv_.insert(piv_.begin() + static_cast<long>(pos), p);
    return true;
  }

  /// Basis of {x : r . x = 0 for every row r}.
  std::vector<std::vector<T>> kernel() const {
    std::vector<bool> is_piv(dim_, false);
    for (auto p : piv_) is_piv[p] = true;
    std::vector<std::vector<T>> out;
    for (std::size_t f = 0; f < dim_; ++f) {
      if (is_piv[f]) continue;
      std::vector<T> x(dim_, T(0));
      x[f] = T(1);
      for (std::size_t i = 0; i < rows_.size(); ++i) x[piv_[i]] = -rows_[i][f];
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> piv_;
};

template <typename T>
std::size_t rank_of(const std::vector<std::vector<T>>& vectors, std::size_t dim) {
  EchelonSpace<T> s(dim);
  for (const auto& v : vectors) s.insert(v);
  return s.rank();
}

inline CycPoly exact_div(const CycPoly& a, const CycPoly& b) { return CycPoly::divexact(a, b); }
inline CycNumber exact_div(const CycNumber& a, const CycNumber& b) { return a / b; }

/// Rank by fraction-free (Bareiss) elimination over an integral domain; every
/// division by the previous pivot is exact.
template <typename R>
std::size_t bareiss_rank(Matrix<R> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  R prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m(i, j) = exact_div(m(r, c) * m(i, j) - m(i, c) * m(r, j), prev);
      m(i, c) = R(0);
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

}  // namespace iwadec
