// Dense square/rectangular matrices over Scalar with the elimination kernels
// used everywhere else: fraction-free determinant on the exact path,
// partially pivoted elimination on the float path, linear solve, inverse and
// kernel extraction.
#pragma once

#include <initializer_list>
#include <vector>

#include "flagshear/scalar.hpp"

namespace flagshear {

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }
  static Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (const auto& r : rows) {
      int j = 0;
      for (const auto& x : r) m(i, j++) = x;
      ++i;
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool all_exact() const {
    for (const auto& x : a_)
      if (!x.is_exact()) return false;
    return true;
  }

  std::vector<Scalar> col(int j) const {
    std::vector<Scalar> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_col(int j, const std::vector<Scalar>& c) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  Matrix submatrix_cols(const std::vector<int>& cols) const {
    Matrix m(rows_, static_cast<int>(cols.size()));
    for (int i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols.size(); ++j) m(i, static_cast<int>(j)) = (*this)(i, cols[j]);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw dimension_mismatch("matrix product");
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix r(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) r(i, j) = s * a(i, j);
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw dimension_mismatch("matrix difference");
    Matrix r(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
  }

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw dimension_mismatch("matrix-vector product");
    std::vector<Scalar> r(rows_, Scalar(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
      if (a_[i] != o.a_[i]) return false;
    return true;
  }

 private:
  int rows_, cols_;
  std::vector<Scalar> a_;
};

// Exact determinant by Bareiss (fraction-free two-step division) when all
// entries are rational; partially pivoted elimination otherwise.
inline Scalar det(const Matrix& m) {
  if (!m.square()) throw dimension_mismatch("det of non-square matrix");
  int n = m.rows();
  if (n == 0) return Scalar(1);
  Matrix w = m;
  int sign = 1;
  if (m.all_exact()) {
    Scalar prev(1);
    for (int k = 0; k < n - 1; ++k) {
      if (w(k, k).is_zero()) {
        int p = -1;
        for (int i = k + 1; i < n; ++i)
          if (!w(i, k).is_zero()) { p = i; break; }
        if (p < 0) return Scalar(0);
        for (int j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j)
          w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
      prev = w(k, k);
    }
    Scalar d = w(n - 1, n - 1);
    return sign < 0 ? -d : d;
  }
  Scalar d(1);
  for (int k = 0; k < n; ++k) {
    int p = k;
    Scalar best = w(k, k).abs();
    for (int i = k + 1; i < n; ++i) {
      Scalar c = w(i, k).abs();
      if (c > best) { best = c; p = i; }
    }
    if (best.is_zero()) return Scalar(0) * w(k, k);  // float zero at operand precision
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
      sign = -sign;
    }
    d *= w(k, k);
    for (int i = k + 1; i < n; ++i) {
      Scalar f = w(i, k) / w(k, k);
      for (int j = k; j < n; ++j) w(i, j) -= f * w(k, j);
    }
  }
  return sign < 0 ? -d : d;
}

// Cofactor-expansion determinant. Kept as an independent route for tests.
inline Scalar det_cofactor(const Matrix& m) {
  if (!m.square()) throw dimension_mismatch("det of non-square matrix");
  int n = m.rows();
  if (n == 0) return Scalar(1);
  if (n == 1) return m(0, 0);
  Scalar acc(0);
  for (int i = 0; i < n; ++i) {
    if (m(i, 0).is_zero()) continue;
    Matrix minor(n - 1, n - 1);
    for (int r = 0, rr = 0; r < n; ++r) {
      if (r == i) continue;
      for (int c = 1; c < n; ++c) minor(rr, c - 1) = m(r, c);
      ++rr;
    }
    Scalar term = m(i, 0) * det_cofactor(minor);
    acc += (i % 2 == 0) ? term : -term;
  }
  return acc;
}

namespace detail {

// Gaussian elimination into row echelon form; first-nonzero pivot on the
// exact path (deterministic), partial pivot otherwise. Returns pivot columns.
inline std::vector<int> echelonize(Matrix& w, bool exact, const Scalar* float_tol = nullptr) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < w.cols() && r < w.rows(); ++c) {
    int p = -1;
    if (exact) {
      for (int i = r; i < w.rows(); ++i)
        if (!w(i, c).is_zero()) { p = i; break; }
    } else {
      Scalar best(0);
      for (int i = r; i < w.rows(); ++i) {
        Scalar a = w(i, c).abs();
        if (p < 0 || a > best) { best = a; p = i; }
      }
      if (p >= 0 && (w(p, c).is_zero() || (float_tol && best < *float_tol))) p = -1;
    }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < w.cols(); ++j) std::swap(w(r, j), w(p, j));
    Scalar inv = w(r, c).inv();
    for (int j = c; j < w.cols(); ++j) w(r, j) *= inv;
    for (int i = 0; i < w.rows(); ++i) {
      if (i == r || w(i, c).is_zero()) continue;
      Scalar f = w(i, c);
      for (int j = c; j < w.cols(); ++j) w(i, j) -= f * w(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

inline int rank(const Matrix& m) {
  Matrix w = m;
  return static_cast<int>(detail::echelonize(w, m.all_exact()).size());
}

// Solves m x = b; throws if the system is singular.
inline std::vector<Scalar> solve(const Matrix& m, const std::vector<Scalar>& b) {
  if (!m.square() || m.rows() != static_cast<int>(b.size())) throw dimension_mismatch("solve");
  int n = m.rows();
  Matrix w(n, n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = m(i, j);
    w(i, n) = b[i];
  }
  auto piv = detail::echelonize(w, m.all_exact());
  if (static_cast<int>(piv.size()) != n) throw error(errc::math_precondition, "singular linear system");
  std::vector<Scalar> x(n);
  for (int i = 0; i < n; ++i) x[i] = w(i, n);
  return x;
}

inline Matrix inverse(const Matrix& m) {
  if (!m.square()) throw dimension_mismatch("inverse");
  int n = m.rows();
  Matrix w(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = m(i, j);
    w(i, n + i) = Scalar(1);
  }
  auto piv = detail::echelonize(w, m.all_exact());
  if (static_cast<int>(piv.size()) != n) throw error(errc::math_precondition, "matrix not invertible");
  Matrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = w(i, n + j);
  return r;
}

// Basis of the kernel, one vector per free column. For float matrices a
// relative tolerance decides pivot vanishing.
inline std::vector<std::vector<Scalar>> kernel(const Matrix& m, const Scalar* float_tol = nullptr) {
  Matrix w = m;
  auto piv = detail::echelonize(w, m.all_exact(), float_tol);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<Scalar> v(m.cols(), Scalar(0));
    v[c] = Scalar(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -w(static_cast<int>(r), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace flagshear
