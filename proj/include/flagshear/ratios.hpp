// Projective invariants of flag tuples: triple ratios, quadruple ratios,
// double ratios, genericity and positivity predicates. Every wedge product
// is evaluated as the determinant of the matrix assembling the first a
// columns of E, then the first b of F, then the first c of G, in that order;
// the column-assembly order fixes all signs globally.
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "flagshear/flag.hpp"

namespace flagshear {

struct GenericityOptions {
  // In float mode a wedge determinant counts as nonzero when its magnitude,
  // relative to the product of column norms, exceeds 2^(-precision/4).
  long precision = kDefaultPrecision;
};

namespace wedge_detail {

inline Matrix assemble(const std::vector<std::pair<const Flag*, int>>& parts) {
  int n = parts.front().first->n();
  int total = 0;
  for (auto& [f, a] : parts) total += a;
  if (total != n) throw dimension_mismatch("wedge column counts must sum to n");
  Matrix m(n, n);
  int c = 0;
  for (auto& [f, a] : parts)
    for (int j = 0; j < a; ++j, ++c)
      for (int i = 0; i < n; ++i) m(i, c) = f->basis()(i, j);
  return m;
}

inline Scalar norm_sq_column(const Matrix& m, int j) {
  Scalar s(0);
  for (int i = 0; i < m.rows(); ++i) s += m(i, j) * m(i, j);
  return s;
}

}  // namespace wedge_detail

inline bool wedge_nonzero(const Scalar& d, const Matrix& assembled, const GenericityOptions& opt) {
  if (d.is_exact()) return !d.is_zero();
  // relative threshold against column norms
  Scalar scale(1);
  for (int j = 0; j < assembled.cols(); ++j) scale *= wedge_detail::norm_sq_column(assembled, j);
  Scalar thr = Scalar::pow2(-opt.precision / 4, opt.precision);
  return d * d > thr * thr * scale;
}

// Genericity of 2-4 flags: every wedge determinant over nonnegative column
// counts summing to n (at most the tuple size of them nonzero) must be
// nonzero.
inline bool is_generic(const std::vector<Flag>& flags, const GenericityOptions& opt = {}) {
  if (flags.size() < 2 || flags.size() > 4) throw dimension_mismatch("is_generic expects 2-4 flags");
  int n = flags[0].n();
  for (const auto& f : flags)
    if (f.n() != n) throw dimension_mismatch("flags of mixed dimension");
  int k = static_cast<int>(flags.size());
  std::vector<int> counts(k, 0);
  // enumerate all compositions of n into k nonnegative parts
  std::vector<int> idx(k, 0);
  std::function<bool(int, int)> rec = [&](int pos, int left) -> bool {
    if (pos == k - 1) {
      idx[pos] = left;
      std::vector<std::pair<const Flag*, int>> parts;
      for (int i = 0; i < k; ++i)
        if (idx[i] > 0) parts.emplace_back(&flags[i], idx[i]);
      if (parts.size() < 2) return true;  // single-flag wedge is its own minor, nonzero by invertibility
      Matrix m = wedge_detail::assemble(parts);
      Scalar d = det(m);
      return wedge_nonzero(d, m, opt);
    }
    for (int a = 0; a <= left; ++a) {
      idx[pos] = a;
      if (!rec(pos + 1, left - a)) return false;
    }
    return true;
  };
  return rec(0, n);
}

// (a,b,c)-triple ratio of a generic triple, a+b+c = n, a,b,c >= 1.
inline Scalar triple_ratio(const Flag& E, const Flag& F, const Flag& G, int a, int b, int c) {
  int n = E.n();
  if (a < 1 || b < 1 || c < 1 || a + b + c != n) throw index_out_of_range("triple ratio indices");
  auto w = [&](int x, int y, int z) {
    std::vector<std::pair<const Flag*, int>> parts;
    if (x > 0) parts.emplace_back(&E, x);
    if (y > 0) parts.emplace_back(&F, y);
    if (z > 0) parts.emplace_back(&G, z);
    Matrix m = wedge_detail::assemble(parts);
    Scalar d = det(m);
    if (d.is_exact() ? d.is_zero() : !wedge_nonzero(d, m, GenericityOptions{})) throw not_generic("vanishing wedge in triple ratio");
    return d;
  };
  return (w(a + 1, b, c - 1) / w(a - 1, b, c + 1)) *
         (w(a, b - 1, c + 1) / w(a, b + 1, c - 1)) *
         (w(a - 1, b + 1, c) / w(a + 1, b - 1, c));
}

// a-th quadruple ratio of a generic triple, 1 <= a <= n-1.
inline Scalar quadruple_ratio(const Flag& E, const Flag& F, const Flag& G, int a) {
  int n = E.n();
  if (a < 1 || a > n - 1) throw index_out_of_range("quadruple ratio index");
  auto w3 = [&](int x, const Flag& B, int y, const Flag& C, int z) {
    std::vector<std::pair<const Flag*, int>> parts;
    if (x > 0) parts.emplace_back(&E, x);
    if (y > 0) parts.emplace_back(&B, y);
    if (z > 0) parts.emplace_back(&C, z);
    Matrix m = wedge_detail::assemble(parts);
    Scalar d = det(m);
    if (d.is_exact() ? d.is_zero() : !wedge_nonzero(d, m, GenericityOptions{})) throw not_generic("vanishing wedge in quadruple ratio");
    return d;
  };
  return (w3(a - 1, F, n - a, G, 1) / w3(a, F, n - a - 1, G, 1)) *
         (w3(a, F, 1, G, n - a - 1) / w3(a - 1, F, 1, G, n - a)) *
         (w3(a + 1, F, n - a - 1, G, 0) / w3(a + 1, G, n - a - 1, F, 0)) *
         (w3(a, G, n - a, F, 0) / w3(a, F, n - a, G, 0));
}

// a-th double ratio of a quadruple (E, F, G, G'), with the leading minus.
inline Scalar double_ratio(const Flag& E, const Flag& F, const Flag& G, const Flag& Gp, int a) {
  int n = E.n();
  if (a < 1 || a > n - 1) throw index_out_of_range("double ratio index");
  auto w = [&](int x, int y, const Flag& H) {
    std::vector<std::pair<const Flag*, int>> parts;
    if (x > 0) parts.emplace_back(&E, x);
    if (y > 0) parts.emplace_back(&F, y);
    parts.emplace_back(&H, 1);
    Matrix m = wedge_detail::assemble(parts);
    Scalar d = det(m);
    if (d.is_exact() ? d.is_zero() : !wedge_nonzero(d, m, GenericityOptions{})) throw not_generic("vanishing wedge in double ratio");
    return d;
  };
  return -(w(a, n - a - 1, G) / w(a, n - a - 1, Gp)) * (w(a - 1, n - a, Gp) / w(a - 1, n - a, G));
}

// Positivity: a triple is positive when all triple ratios are positive; a
// quadruple additionally needs both triples (E,F,G), (E,F,G') positive and
// all double ratios positive.
inline bool is_positive_triple(const Flag& E, const Flag& F, const Flag& G) {
  int n = E.n();
  if (!is_generic({E, F, G})) throw not_generic("triple not generic");
  for (int a = 1; a <= n - 2; ++a)
    for (int b = 1; a + b <= n - 1; ++b) {
      int c = n - a - b;
      if (triple_ratio(E, F, G, a, b, c).sign() <= 0) return false;
    }
  return true;
}

inline bool is_positive_quadruple(const Flag& E, const Flag& F, const Flag& G, const Flag& Gp) {
  if (!is_generic({E, F, G, Gp})) throw not_generic("quadruple not generic");
  if (!is_positive_triple(E, F, G) || !is_positive_triple(E, F, Gp)) return false;
  for (int a = 1; a <= E.n() - 1; ++a)
    if (double_ratio(E, F, G, Gp, a).sign() <= 0) return false;
  return true;
}

inline bool is_positive(const std::vector<Flag>& flags) {
  if (flags.size() == 3) return is_positive_triple(flags[0], flags[1], flags[2]);
  if (flags.size() == 4) return is_positive_quadruple(flags[0], flags[1], flags[2], flags[3]);
  throw dimension_mismatch("is_positive expects 3 or 4 flags");
}

}  // namespace flagshear
