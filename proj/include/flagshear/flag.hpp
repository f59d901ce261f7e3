// Complete flags in R^n stored as ordered bases: the first a columns span
// the a-dimensional subspace. Equality is projective, tested level by level
// through proportionality of the a-column minor vectors.
#pragma once

#include <vector>

#include "flagshear/matrix.hpp"

namespace flagshear {

class Flag {
 public:
  Flag() = default;
  explicit Flag(Matrix basis) : basis_(std::move(basis)) {
    if (!basis_.square()) throw dimension_mismatch("flag basis must be square");
    if (det(basis_).is_zero()) throw not_generic("flag basis is singular");
  }

  int n() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  std::vector<Scalar> column(int j) const { return basis_.col(j); }

  // Line spanned by the a-th basis vector is not flag data; the subspace
  // chain is. `subspace_cols(a)` gives a spanning set of F^(a).
  Matrix subspace_cols(int a) const {
    std::vector<int> idx(a);
    for (int i = 0; i < a; ++i) idx[i] = i;
    return basis_.submatrix_cols(idx);
  }

  static Flag standard(int n) { return Flag(Matrix::identity(n)); }
  static Flag reversed(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(n - 1 - i, i) = Scalar(1);
    return Flag(m);
  }

  // Osculating flag of the moment curve (1, t, t^2, ...): column j holds the
  // j-th derivative divided by j!.
  static Flag moment_curve(int n, const Scalar& t) {
    Matrix m(n, n);
    // m(i, j) = C(i, j) t^(i-j)
    for (int i = 0; i < n; ++i) {
      Scalar binom(1);
      for (int j = 0; j <= i; ++j) {
        m(i, j) = binom * t.pow(i - j);
        binom = binom * Scalar(i - j) / Scalar(j + 1);
      }
    }
    return Flag(m);
  }

  friend Flag operator*(const Matrix& g, const Flag& f) { return Flag(g * f.basis_); }

 private:
  Matrix basis_;
};

// All minors of the first a columns taken along row subsets, in a fixed
// enumeration order; proportionality of these vectors across two flags at
// every level a is flag equality.
inline std::vector<Scalar> level_minors(const Flag& f, int a) {
  int n = f.n();
  std::vector<Scalar> out;
  std::vector<int> rows(a);
  for (int i = 0; i < a; ++i) rows[i] = i;
  Matrix cols = f.subspace_cols(a);
  while (true) {
    Matrix sub(a, a);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < a; ++j) sub(i, j) = cols(rows[i], j);
    out.push_back(det(sub));
    int i = a - 1;
    while (i >= 0 && rows[i] == n - a + i) --i;
    if (i < 0) break;
    ++rows[i];
    for (int j = i + 1; j < a; ++j) rows[j] = rows[j - 1] + 1;
  }
  return out;
}

// Proportionality of minor vectors at every level. Exact data is compared
// exactly; once floats are involved the cross products are tested against a
// relative 2^(-prec/2) threshold.
inline bool flags_equal(const Flag& e, const Flag& f) {
  if (e.n() != f.n()) return false;
  for (int a = 1; a < e.n(); ++a) {
    auto u = level_minors(e, a), v = level_minors(f, a);
    bool exact = true;
    Scalar scale(0);
    for (const auto& x : u) {
      exact = exact && x.is_exact();
      scale += x * x;
    }
    for (const auto& x : v) {
      exact = exact && x.is_exact();
      scale += x * x;
    }
    for (size_t i = 0; i < u.size(); ++i)
      for (size_t j = i + 1; j < u.size(); ++j) {
        Scalar cross = u[i] * v[j] - u[j] * v[i];
        if (exact) {
          if (!cross.is_zero()) return false;
        } else {
          long prec = cross.precision();
          Scalar thr = Scalar::pow2(-prec / 2, prec);
          if (!(cross * cross <= thr * thr * scale * scale)) return false;
        }
      }
  }
  return true;
}

}  // namespace flagshear
