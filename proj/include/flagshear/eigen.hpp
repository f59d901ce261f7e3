// Real eigenvalue extraction for small dense matrices. Characteristic
// polynomial by Faddeev-LeVerrier, real roots isolated by Sturm sequences,
// rational roots certified exactly by a continued-fraction descent with a
// denominator bound, irrational roots polished by bisection/Newton in
// MPFR at the requested precision.
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "flagshear/matrix.hpp"

namespace flagshear {

// Polynomials are coefficient vectors, low degree first, over exact rationals.
using Poly = std::vector<mpq_class>;

namespace polydetail {

inline void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline mpq_class eval(const Poly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline BigFloat eval_float(const Poly& p, const BigFloat& x) {
  BigFloat acc(x.precision());
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    BigFloat c(*it, x.precision());
    acc = BigFloat::binop(acc, x, mpfr_mul);
    acc = BigFloat::binop(acc, c, mpfr_add);
  }
  return acc;
}

inline Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {0};
  Poly d(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  return d;
}

inline Poly neg_rem(const Poly& a, const Poly& b) {
  // -(a mod b), the Sturm-sequence step.
  Poly r = a;
  trim(r);
  Poly q = b;
  trim(q);
  while (degree(r) >= degree(q) && !(r.size() == 1 && r[0] == 0)) {
    mpq_class f = r.back() / q.back();
    int shift = degree(r) - degree(q);
    for (size_t i = 0; i < q.size(); ++i) r[i + shift] -= f * q[i];
    trim(r);
    if (r.size() == 1 && r[0] == 0) break;
  }
  for (auto& c : r) c = -c;
  return r;
}

inline std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, derivative(p)};
  trim(chain[0]);
  trim(chain[1]);
  while (polydetail::degree(chain.back()) > 0) {
    Poly nxt = neg_rem(chain[chain.size() - 2], chain.back());
    if (nxt.size() == 1 && nxt[0] == 0) break;
    chain.push_back(std::move(nxt));
  }
  return chain;
}

// Sign changes of the chain at x (x = +/- infinity handled by leading terms).
inline int sign_changes(const std::vector<Poly>& chain, const std::optional<mpq_class>& x, int inf_sign) {
  int changes = 0, prev = 0;
  for (const auto& p : chain) {
    int s;
    if (x) {
      s = sgn(eval(p, *x));
    } else {
      s = sgn(p.back());
      if (inf_sign < 0 && degree(p) % 2 == 1) s = -s;
    }
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

inline int roots_in(const std::vector<Poly>& chain, const mpq_class& lo, const mpq_class& hi) {
  return sign_changes(chain, lo, 0) - sign_changes(chain, hi, 0);
}

// gcd of two rational polynomials (monic result).
inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!(b.size() == 1 && b[0] == 0)) {
    Poly r = a;
    while (degree(r) >= degree(b) && !(r.size() == 1 && r[0] == 0)) {
      mpq_class f = r.back() / b.back();
      int shift = degree(r) - degree(b);
      for (size_t i = 0; i < b.size(); ++i) r[i + shift] -= f * b[i];
      trim(r);
    }
    a = b;
    b = r;
  }
  if (!(a.back() == 1)) {
    mpq_class lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

inline Poly square_free_part(const Poly& p) {
  Poly g = gcd(p, derivative(p));
  if (degree(g) == 0) return p;
  // exact division p / g
  Poly r = p, q(p.size() - g.size() + 1, mpq_class(0));
  trim(r);
  while (degree(r) >= degree(g)) {
    mpq_class f = r.back() / g.back();
    int shift = degree(r) - degree(g);
    q[shift] = f;
    for (size_t i = 0; i < g.size(); ++i) r[i + shift] -= f * g[i];
    trim(r);
    if (r.size() == 1 && r[0] == 0) break;
  }
  trim(q);
  return q;
}

inline Poly deflate(const Poly& p, const mpq_class& root) {
  // p / (x - root), assuming root is exact.
  Poly q(p.size() - 1);
  mpq_class carry = p.back();
  for (int i = static_cast<int>(p.size()) - 2; i >= 0; --i) {
    q[i] = carry;
    carry = p[i] + carry * root;
  }
  return q;
}

}  // namespace polydetail

// Characteristic polynomial det(xI - M), exact on rational input.
inline Poly characteristic_polynomial(const Matrix& m) {
  if (!m.square()) throw dimension_mismatch("characteristic polynomial");
  if (!m.all_exact()) throw error(errc::math_precondition, "characteristic polynomial requires exact entries");
  int n = m.rows();
  // Faddeev-LeVerrier: M_1 = M, c_{n-1} = -tr; M_{k+1} = M(M_k + c .. I).
  std::vector<mpq_class> c(n + 1, mpq_class(0));
  c[n] = 1;
  Matrix mk = m;
  for (int k = 1; k <= n; ++k) {
    mpq_class tr = 0;
    for (int i = 0; i < n; ++i) tr += mk(i, i).rational();
    mpq_class ck = -tr / k;
    c[n - k] = ck;
    if (k < n) {
      Matrix adj = mk;
      for (int i = 0; i < n; ++i) adj(i, i) += Scalar(ck);
      mk = m * adj;
    }
  }
  return Poly(c.begin(), c.end());
}

struct IsolatedRoot {
  // Root of the square-free polynomial inside (lo, hi]; rational holds the
  // exact value when the root is rational.
  mpq_class lo, hi;
  std::optional<mpq_class> rational;
};

namespace polydetail {

// Simplest rational (smallest denominator) in the closed interval [lo, hi].
inline mpq_class simplest_in(const mpq_class& lo, const mpq_class& hi) {
  if (lo > hi) throw error(errc::math_precondition, "empty interval");
  if (lo <= 0 && 0 <= hi) return 0;
  if (hi < 0) return -simplest_in(-hi, -lo);
  // now 0 < lo <= hi
  mpz_class fl = lo.get_num() / lo.get_den();  // floor, lo > 0
  if (mpq_class(fl + 1) <= hi) return mpq_class(fl + 1);
  if (mpq_class(fl) == lo) return lo;
  // no integer in [lo, hi]: recurse on reciprocal of the fractional part
  mpq_class a = lo - mpq_class(fl), b = hi - mpq_class(fl);
  return mpq_class(fl) + 1 / simplest_in(1 / b, 1 / a);
}

// Exact rational-root test on an isolating interval. A rational root u/v of
// the primitive integer form of p must have v dividing the leading
// coefficient; once the interval is shorter than 1/(2 v_max^2) it contains
// at most one rational with denominator below the bound, and the simplest
// rational in the interval is that unique candidate.
inline std::optional<mpq_class> rational_root_in(const Poly& p, mpq_class lo, mpq_class hi) {
  if (eval(p, hi) == 0) return hi;
  if (eval(p, lo) == 0) {
    // lo is a different root of the square-free polynomial; step inside.
    for (int i = 0; i < 512 && eval(p, lo) == 0; ++i) {
      mpq_class m = (lo + hi) / 2;
      mpq_class v = eval(p, m);
      if (v == 0) return m;
      if (sgn(v) == sgn(eval(p, hi))) hi = m; else lo = m;
    }
  }
  int slo = sgn(eval(p, lo));
  mpz_class den_lcm = 1;
  for (const auto& c : p) den_lcm = lcm(den_lcm, c.get_den());
  mpz_class lead = p.back().get_num() * (den_lcm / p.back().get_den());
  mpz_class vmax = ::abs(lead);
  mpq_class width_target(1, 1);
  width_target /= mpq_class(2 * vmax * vmax);

  // Shrink the bracket with float Newton at escalating precision; each
  // candidate bracket is certified by exact sign tests before adoption.
  long bits_needed = static_cast<long>(mpz_sizeinbase(vmax.get_mpz_t(), 2)) * 2 + 16;
  Poly dp = derivative(p);
  for (long prec = 192; prec <= bits_needed + 128 && hi - lo >= width_target; prec *= 2) {
    BigFloat x(mpq_class((lo + hi) / 2), prec);
    for (int it = 0; it < 2 * static_cast<int>(p.size()) + static_cast<int>(prec / 8); ++it) {
      BigFloat fx = eval_float(p, x), dfx = eval_float(dp, x);
      if (dfx.is_zero()) break;
      x = BigFloat::binop(x, BigFloat::binop(fx, dfx, mpfr_div), mpfr_sub);
    }
    mpq_class c = Scalar(x).to_exact_dyadic();
    mpq_class rad = mpq_class(1);
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(prec > 8 ? prec - 8 : 1));
    rad /= mpq_class(p2);
    mpq_class nlo = c - rad, nhi = c + rad;
    if (nlo <= lo || nhi >= hi) continue;
    mpq_class vlo = eval(p, nlo), vhi = eval(p, nhi);
    if (vlo == 0) return nlo;
    if (vhi == 0) return nhi;
    if (sgn(vlo) == slo && sgn(vhi) != slo) { lo = nlo; hi = nhi; }
  }
  while (hi - lo >= width_target) {
    mpq_class m = (lo + hi) / 2;
    mpq_class v = eval(p, m);
    if (v == 0) return m;
    if (sgn(v) == slo) lo = m; else hi = m;
  }
  mpq_class cand = simplest_in(lo, hi);
  if (cand.get_den() <= vmax && eval(p, cand) == 0) return cand;
  return std::nullopt;
}

}  // namespace polydetail

// Isolates all real roots of the (exact) polynomial p. Returns one entry per
// distinct real root of the square-free part, sorted increasing.
inline std::vector<IsolatedRoot> isolate_real_roots(const Poly& p_in) {
  Poly p = polydetail::square_free_part(p_in);
  polydetail::trim(p);
  auto chain = polydetail::sturm_chain(p);
  // Cauchy bound
  mpq_class bound = 0;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    mpq_class c = ::abs(p[i] / p.back());
    if (c > bound) bound = c;
  }
  bound += 1;
  std::vector<IsolatedRoot> out;
  struct Seg { mpq_class lo, hi; int count; };
  std::vector<Seg> stack{{-bound, bound, polydetail::roots_in(chain, -bound, bound)}};
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1) {
      out.push_back({s.lo, s.hi, std::nullopt});
      continue;
    }
    mpq_class mid = (s.lo + s.hi) / 2;
    // avoid mid being a root of p (it would sit on the boundary harmlessly,
    // Sturm counts roots in (lo, hi])
    int left = polydetail::roots_in(chain, s.lo, mid);
    int right = s.count - left;
    stack.push_back({s.lo, mid, left});
    stack.push_back({mid, s.hi, right});
  }
  std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
  for (auto& r : out) r.rational = polydetail::rational_root_in(p, r.lo, r.hi);
  // count real roots with multiplicity check: compare degree of square-free part
  return out;
}

// Refines an isolating interval of the square-free poly p to a float root at
// `prec` bits: bisection to get a good seed, then Newton.
inline BigFloat refine_root(const Poly& p, const IsolatedRoot& r, long prec) {
  if (r.rational) return BigFloat(*r.rational, prec);
  Poly dp = polydetail::derivative(p);
  mpq_class lo = r.lo, hi = r.hi;
  int slo = sgn(polydetail::eval(p, lo));
  for (int i = 0; i < 80; ++i) {
    mpq_class mid = (lo + hi) / 2;
    mpq_class v = polydetail::eval(p, mid);
    if (v == 0) return BigFloat(mid, prec);
    if (sgn(v) == slo) lo = mid; else hi = mid;
  }
  BigFloat x(mpq_class((lo + hi) / 2), prec);
  for (int i = 0; i < 64; ++i) {
    BigFloat fx = polydetail::eval_float(p, x);
    BigFloat dfx = polydetail::eval_float(dp, x);
    if (dfx.is_zero()) break;
    BigFloat step = BigFloat::binop(fx, dfx, mpfr_div);
    x = BigFloat::binop(x, step, mpfr_sub);
  }
  return x;
}

struct EigenPair {
  Scalar value;                 // exact when certified rational
  std::vector<Scalar> vector;   // normalized: first nonzero coordinate = 1
};

// All eigenvalues real with pairwise distinct absolute values, sorted by
// strictly decreasing absolute value; eigenvectors normalized.
inline std::vector<EigenPair> real_eigen(const Matrix& m, long prec = kDefaultPrecision) {
  if (!m.square()) throw dimension_mismatch("real_eigen");
  int n = m.rows();
  const bool was_float = !m.all_exact();
  Matrix mx(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mx(i, j) = Scalar(m(i, j).to_exact_dyadic());
  Poly chi = characteristic_polynomial(mx);
  Poly sf = polydetail::square_free_part(chi);
  polydetail::trim(sf);
  if (polydetail::degree(sf) < n) throw repeated_modulus("characteristic polynomial has repeated roots");
  auto iso = isolate_real_roots(chi);
  if (static_cast<int>(iso.size()) < n) throw non_real_spectrum("fewer than n real eigenvalues");

  struct Root {
    IsolatedRoot r;
    BigFloat approx;
    Scalar value;
  };
  std::vector<Root> roots;
  for (auto& r : iso) {
    BigFloat a = refine_root(sf, r, prec);
    Scalar v = (r.rational && !was_float) ? Scalar(*r.rational) : Scalar(a);
    roots.push_back({r, a, v});
  }
  // sort by decreasing absolute value; equal absolute values are an error
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    return a.value.abs() > b.value.abs();
  });
  Scalar tol = Scalar::pow2(-prec / 2, prec);
  for (size_t i = 0; i + 1 < roots.size(); ++i) {
    Scalar d = roots[i].value.abs() - roots[i + 1].value.abs();
    if (roots[i].r.rational && roots[i + 1].r.rational) {
      if (d.is_zero()) throw repeated_modulus("two eigenvalues share an absolute value");
    } else if (d.abs() < tol) {
      throw repeated_modulus("two eigenvalues share an absolute value within tolerance");
    }
  }

  std::vector<EigenPair> out;
  for (auto& r : roots) {
    std::vector<Scalar> vec;
    if (r.value.is_exact()) {
      Matrix shifted = mx;
      for (int i = 0; i < n; ++i) shifted(i, i) -= r.value;
      auto ker = kernel(shifted);
      if (ker.size() != 1) throw repeated_modulus("eigenvalue with non-simple eigenspace");
      vec = ker[0];
    } else {
      Matrix shifted(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          shifted(i, j) = Scalar(mx(i, j).to_float(prec));
          if (i == j) shifted(i, j) -= r.value;
        }
      Scalar ftol = Scalar::pow2(-2 * prec / 3, prec);
      auto ker = kernel(shifted, &ftol);
      if (ker.empty()) throw non_real_spectrum("failed to extract eigenvector at working precision");
      vec = ker[0];
    }
    // normalize: first nonzero coordinate = 1
    int lead = -1;
    for (int i = 0; i < n; ++i)
      if (!vec[i].is_zero()) { lead = i; break; }
    if (lead < 0) throw non_real_spectrum("zero eigenvector");
    Scalar inv = vec[lead].inv();
    for (auto& x : vec) x *= inv;
    if (!r.value.is_exact()) {
      Scalar tol2 = Scalar::pow2(-prec / 2, prec);
      auto mv = mx.apply(vec);
      for (int i = 0; i < n; ++i) {
        Scalar resid = (mv[i] - r.value * vec[i]).abs();
        if (!(resid < tol2))
          throw non_real_spectrum("eigen residual above tolerance");
      }
    }
    out.push_back({r.value, std::move(vec)});
  }
  return out;
}

}  // namespace flagshear
