// The constraint system on exponentiated coordinates: side products along
// closed leaves, Closed Leaf Equality/Inequality membership, exact affine
// dimension of the solution polytope, the global triangle-invariant
// relation residuals, and deterministic interior sampling.
//
// Equalities are integer exponent vectors on the multiplicative variables,
// so "linear in logarithms" becomes "monomial equals 1" and exact rational
// arithmetic decides everything.
#pragma once

#include <optional>

#include "flagshear/invariants.hpp"

namespace flagshear {

// Rotation identification: the value at (slot s, (a,b,c)) equals the value
// at (slot 0, rot^s(a,b,c)) with rot(a,b,c) = (c,a,b).
inline std::tuple<int, int, int> rotate_to_slot0(int slot, int a, int b, int c) {
  for (int i = 0; i < slot % 3; ++i) {
    int na = c, nb = a, nc = b;
    a = na;
    b = nb;
    c = nc;
  }
  return {a, b, c};
}

struct VarKey {
  // kind 0: triangle variable (tri, slot-0 indices a,b,c)
  // kind 1: shear variable (leaf, index a)
  int kind = 0;
  std::string id;
  int a = 0, b = 0, c = 0;
  auto operator<=>(const VarKey&) const = default;
};

class ConstraintSystem {
 public:
  ConstraintSystem(const LaminationComplex& lam, int n) : lam_(lam), n_(n) {
    for (const auto& t : lam.triangles)
      for (auto [a, b, c] : triangle_index_set(n)) push_var(VarKey{0, t.id, a, b, c});
    for (const auto& g : lam.infinite_leaves)
      for (int a = 1; a <= n - 1; ++a) push_var(VarKey{1, g.id, a});
    for (const auto& c : lam.closed_leaves)
      for (int a = 1; a <= n - 1; ++a) push_var(VarKey{1, c.id, a});
    for (const auto& c : lam.closed_leaves)
      for (int a = 1; a <= n - 1; ++a) {
        std::vector<long> row(vars_.size(), 0);
        accumulate_side(row, c.id, Side::right, a, +1);
        accumulate_side(row, c.id, Side::left, a, -1);
        rows_.push_back(std::move(row));
        row_names_.push_back(c.id + ":" + std::to_string(a));
      }
  }

  int n() const { return n_; }
  const LaminationComplex& lamination() const { return lam_; }
  const std::vector<VarKey>& variables() const { return vars_; }
  const std::vector<std::vector<long>>& equality_rows() const { return rows_; }
  const std::vector<std::string>& row_names() const { return row_names_; }

  int var_index(const VarKey& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) throw index_out_of_range("constraint variable");
    return it->second;
  }

  // Exponent vector of exp L_a^side(c) as integer coefficients on the
  // variables, following the four-case formulas. `sign` accumulates.
  void accumulate_side(std::vector<long>& row, const std::string& cid, Side side, int a, long sign) const {
    SpiralDir dir = lam_.spiral_direction(cid, side);
    long outer = (side == Side::right) == (dir == SpiralDir::with_orientation) ? sign : -sign;
    // case (right, with): +sigma-bar_a + sum_{b+c=n-a} tau_abc
    // case (right, against): -sigma-bar_{n-a} - sum_{b+c=a} tau_{(n-a)bc}
    // left-side cases are the right-side cases negated
    int idx = (dir == SpiralDir::with_orientation) ? a : n_ - a;
    for (const auto& item : lam_.spiral_sequence(cid, side)) {
      if (item.kind == SpiralItem::leaf_end) {
        const InfiniteLeaf& g = lam_.infinite(item.id);
        // sigma-bar_idx: sigma_idx when the leaf is oriented toward the
        // closed leaf (this end is its positive end), sigma_{n-idx} otherwise
        int k = item.positive_end ? idx : n_ - idx;
        row[var_index(VarKey{1, g.id, k})] += outer;
      } else {
        int ta = (dir == SpiralDir::with_orientation) ? a : n_ - a;
        int rest = n_ - ta;  // b + c = n - ta; with == : rest = n-a; against: rest = a
        for (int b = 1; b <= rest - 1; ++b) {
          int c = rest - b;
          auto [ca, cb, cc] = rotate_to_slot0(item.slot, ta, b, c);
          row[var_index(VarKey{0, item.id, ca, cb, cc})] += outer;
        }
      }
    }
  }

  Scalar evaluate_row(const std::vector<long>& row, const CoordinateVector& cv) const {
    Scalar prod(1);
    for (size_t i = 0; i < row.size(); ++i) {
      if (row[i] == 0) continue;
      const VarKey& k = vars_[i];
      const Scalar& v = k.kind == 0 ? cv.tri(k.id, 0, k.a, k.b, k.c) : cv.shear(k.id, k.a);
      prod *= v.pow(row[i]);
    }
    return prod;
  }

 private:
  void push_var(VarKey k) {
    index_[k] = static_cast<int>(vars_.size());
    vars_.push_back(std::move(k));
  }

  const LaminationComplex& lam_;
  int n_;
  std::vector<VarKey> vars_;
  std::map<VarKey, int> index_;
  std::vector<std::vector<long>> rows_;
  std::vector<std::string> row_names_;
};

// exp L_a^side(c_i) evaluated on a coordinate vector.
inline Scalar side_length_product(const CoordinateVector& cv, const LaminationComplex& lam, const std::string& cid,
                                  Side side, int a) {
  if (a < 1 || a > cv.n - 1) throw index_out_of_range("side product index");
  ConstraintSystem cs(lam, cv.n);  // small; rebuilt on demand by callers that loop
  std::vector<long> row(cs.variables().size(), 0);
  cs.accumulate_side(row, cid, side, a, +1);
  return cs.evaluate_row(row, cv);
}

struct MembershipReport {
  bool pass = true;
  std::vector<std::string> violations;
};

inline MembershipReport check_membership(const CoordinateVector& cv, const LaminationComplex& lam,
                                         long tol_exp = 128) {
  MembershipReport rep;
  ConstraintSystem cs(lam, cv.n);
  bool exact = cv.all_exact();
  Scalar tol = Scalar::pow2(-tol_exp);
  for (const auto& c : lam.closed_leaves) {
    for (int a = 1; a <= cv.n - 1; ++a) {
      std::vector<long> right(cs.variables().size(), 0), left(right);
      cs.accumulate_side(right, c.id, Side::right, a, +1);
      cs.accumulate_side(left, c.id, Side::left, a, +1);
      Scalar lr = cs.evaluate_row(right, cv), ll = cs.evaluate_row(left, cv);
      bool eq = exact ? lr == ll : (lr - ll).abs() < tol * (lr.abs() + ll.abs());
      if (!eq) {
        rep.pass = false;
        rep.violations.push_back("equality " + c.id + ":" + std::to_string(a));
      }
      if (!(lr > Scalar(1)) ) {
        rep.pass = false;
        rep.violations.push_back("inequality " + c.id + ":" + std::to_string(a));
      }
    }
  }
  return rep;
}

// Exact rank of the equality exponent matrix; dimension = variables - rank.
inline int affine_dimension(const LaminationComplex& lam, int n) {
  ConstraintSystem cs(lam, n);
  int rows = static_cast<int>(cs.equality_rows().size());
  int cols = static_cast<int>(cs.variables().size());
  if (rows == 0) return cols;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Scalar(cs.equality_rows()[i][j]);
  return cols - rank(m);
}

// Multiplicative residual of the global triangle-invariant relation for
// index a: product over all triangles and vertices of
// (prod_{b+c=n-a} exp tau_abc) / (prod_{b+c=a} exp tau_{(n-a)bc}).
inline Scalar global_relation_residual(const CoordinateVector& cv, const LaminationComplex& lam, int a) {
  int n = cv.n;
  if (a < 1 || a > n - 1) throw index_out_of_range("relation index");
  Scalar prod(1);
  for (const auto& t : lam.triangles)
    for (int s = 0; s < 3; ++s) {
      for (int b = 1; b <= n - a - 1; ++b) prod *= cv.tri(t.id, s, a, b, n - a - b);
      for (int b = 1; b <= a - 1; ++b) prod /= cv.tri(t.id, s, n - a, b, a - b);
    }
  return prod;
}

// ---------------------------------------------------------------------------
// Deterministic interior sampling
// ---------------------------------------------------------------------------

struct SplitMix {
  uint64_t s;
  explicit SplitMix(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

// Parametrizes the equality variety multiplicatively through an integer
// kernel basis of the exponent matrix, so every point is a member of the
// equality locus by construction and stays rational with no root
// extraction. A perceptron pass finds an integer kernel direction making
// every side product grow; a deterministic boost along it then clears the
// strict inequalities whatever the seeded randomness drew.
inline CoordinateVector sample_interior(const LaminationComplex& lam, int n, uint64_t seed, int max_boost = 64) {
  ConstraintSystem cs(lam, n);
  const auto& vars = cs.variables();
  int nv = static_cast<int>(vars.size());

  // integer kernel basis of the equality rows
  Matrix em(static_cast<int>(cs.equality_rows().size()), nv);
  for (int i = 0; i < em.rows(); ++i)
    for (int j = 0; j < nv; ++j) em(i, j) = Scalar(cs.equality_rows()[i][j]);
  auto kerq = kernel(em);
  std::vector<std::vector<long>> basis;
  for (auto& v : kerq) {
    mpz_class lcm_den = 1;
    for (auto& x : v) lcm_den = lcm(lcm_den, x.rational().get_den());
    std::vector<long> iv(nv);
    for (int j = 0; j < nv; ++j) {
      mpq_class q = v[j].rational() * mpq_class(lcm_den);
      iv[j] = static_cast<long>(q.get_num().get_si());
    }
    basis.push_back(std::move(iv));
  }
  int nk = static_cast<int>(basis.size());
  if (nk == 0) throw sampling_failed("equality locus is a point");

  // inequality functionals pulled back to kernel coordinates
  std::vector<std::vector<long>> W;
  for (const auto& c : lam.closed_leaves)
    for (int a = 1; a <= n - 1; ++a) {
      std::vector<long> row(nv, 0);
      cs.accumulate_side(row, c.id, Side::right, a, +1);
      std::vector<long> wrow(nk, 0);
      for (int k = 0; k < nk; ++k)
        for (int j = 0; j < nv; ++j) wrow[k] += row[j] * basis[k][j];
      W.push_back(std::move(wrow));
    }

  // perceptron: integer w with <W_r, w> > 0 for every row (feasible since
  // the polytope has nonempty interior)
  std::vector<long> w(nk, 0);
  for (int it = 0; it < 100000; ++it) {
    bool done = true;
    for (const auto& row : W) {
      long dot = 0;
      for (int k = 0; k < nk; ++k) dot += row[k] * w[k];
      if (dot <= 0) {
        done = false;
        for (int k = 0; k < nk; ++k) w[k] += row[k];
      }
    }
    if (done) break;
    if (it == 99999) throw sampling_failed("no positive direction found (empty interior?)");
  }

  SplitMix rng(seed ^ (0xabcd1234u + static_cast<uint64_t>(n) * 77));
  std::vector<Scalar> t(nk);
  for (int k = 0; k < nk; ++k) {
    long num = 8 + static_cast<long>(rng.next() % 9);  // in [8/12, 16/12]
    t[k] = Scalar(num, 12);
  }

  const Scalar base(3, 2);
  for (int boost = 0; boost <= max_boost; ++boost) {
    std::vector<Scalar> u(nk);
    for (int k = 0; k < nk; ++k) u[k] = t[k] * base.pow(boost * w[k]);
    std::vector<Scalar> value(nv, Scalar(1));
    for (int j = 0; j < nv; ++j)
      for (int k = 0; k < nk; ++k)
        if (basis[k][j] != 0) value[j] *= u[k].pow(basis[k][j]);
    CoordinateVector cv;
    cv.n = n;
    cv.lamination = lam.name;
    for (int j = 0; j < nv; ++j) {
      const VarKey& k = vars[j];
      if (k.kind == 1) {
        cv.shear_exp[LeafKey{k.id, k.a}] = value[j];
      } else {
        // indices at slot s are the s-fold forward rotation
        // (a,b,c) -> (b,c,a) of the canonical slot-0 indices
        int a = k.a, b = k.b, c = k.c;
        for (int s = 0; s < 3; ++s) {
          cv.triangle_exp[TriKey{k.id, s, a, b, c}] = value[j];
          int na = b, nb = c, nc = a;
          a = na;
          b = nb;
          c = nc;
        }
      }
    }
    if (check_membership(cv, lam).pass) return cv;
  }
  throw sampling_failed("no interior point found within the boost budget");
}

// Full forward map with the membership post-condition.
inline CoordinateVector full_coordinates(const Representation& rep, const LaminationComplex& lam,
                                         const LiftAtlas& atlas, long prec = kDefaultPrecision,
                                         bool use_alt = false) {
  CoordinateVector cv = assemble_coordinates(rep, lam, atlas, prec, use_alt);
  auto r = check_membership(cv, lam);
  if (!r.pass) {
    std::string msg = "NotHitchinCompatible:";
    for (const auto& v : r.violations) msg += " " + v;
    throw membership_failed(msg);
  }
  return cv;
}

}  // namespace flagshear
