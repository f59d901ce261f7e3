// The inverse map: realizes flag triples with prescribed triple ratios,
// extends decorations across infinite leaves with prescribed shears, glues
// across closed leaves by matching eigenflags and fixing the residual
// diagonal freedom with the transverse-arc shears, and extracts holonomies
// by transporting a base triple along the atlas dual paths.
#pragma once

#include <functional>

#include "flagshear/polytope.hpp"

namespace flagshear {

// Line spanning E^(a) /\ F^(n-a+1).
inline std::vector<Scalar> intersection_line(const Flag& E, const Flag& F, int a) {
  int n = E.n();
  Matrix sys(n, n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < a; ++j) sys(i, j) = E.basis()(i, j);
    for (int j = 0; j < n - a + 1; ++j) sys(i, a + j) = -F.basis()(i, j);
  }
  auto ker = kernel(sys);
  if (ker.size() != 1) throw not_generic("flag pair intersection is not a line");
  std::vector<Scalar> v(n, Scalar(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < a; ++j) v[i] += E.basis()(i, j) * ker[0][j];
  bool zero = true;
  for (auto& x : v) zero = zero && x.is_zero();
  if (zero) throw not_generic("degenerate intersection line");
  return v;
}

// Basis u_1, ..., u_n with u_a spanning E^(a) /\ F^(n-a+1); maps the
// standard descending flag to E and the ascending one to F.
inline Matrix pair_basis(const Flag& E, const Flag& F) {
  int n = E.n();
  Matrix u(n, n);
  for (int a = 1; a <= n; ++a) {
    auto v = intersection_line(E, F, a);
    for (int i = 0; i < n; ++i) u(i, a - 1) = v[i];
  }
  if (det(u).is_zero()) throw not_generic("pair basis degenerate");
  return u;
}

using TripleRatioFn = std::function<Scalar(int, int, int)>;

// Builds the third flag of a triple against the standard pair: E the
// descending coordinate flag, F the ascending one, G^(1) spanned by the
// all-ones vector, higher levels solved one at a time from the prescribed
// triple ratios through the triangular system the ratio formula induces.
inline Flag realize_third_flag(int n, const TripleRatioFn& prescribed) {
  Flag E = Flag::standard(n), F = Flag::reversed(n);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, 0) = Scalar(1);

  // determinant of [E_cols | F_cols | G-cols..., v at the end]
  auto wedge_known = [&](int ea, int fb, int gc) {
    Matrix m(n, n);
    int col = 0;
    for (int j = 0; j < ea; ++j, ++col)
      for (int i = 0; i < n; ++i) m(i, col) = E.basis()(i, j);
    for (int j = 0; j < fb; ++j, ++col)
      for (int i = 0; i < n; ++i) m(i, col) = F.basis()(i, j);
    for (int j = 0; j < gc; ++j, ++col)
      for (int i = 0; i < n; ++i) m(i, col) = g(i, j);
    if (col != n) throw dimension_mismatch("wedge arity");
    return det(m);
  };

  for (int level = 1; level <= n - 2; ++level) {
    // unknown next column v; u_j(v) = det[E_j | F_{n-level-1-j} | g_1..g_level | v]
    int m_eq = n - level;  // j = 0 .. n-level-1
    auto u_form = [&](int j) {
      // linear form coefficients: coefficient of v_i
      std::vector<Scalar> coeff(n, Scalar(0));
      Matrix base(n, n);
      int col = 0;
      for (int k = 0; k < j; ++k, ++col)
        for (int i = 0; i < n; ++i) base(i, col) = E.basis()(i, k);
      for (int k = 0; k < n - level - 1 - j; ++k, ++col)
        for (int i = 0; i < n; ++i) base(i, col) = F.basis()(i, k);
      for (int k = 0; k < level; ++k, ++col)
        for (int i = 0; i < n; ++i) base(i, col) = g(i, k);
      // v goes in the last column
      for (int i = 0; i < n; ++i) {
        Matrix m = base;
        for (int r = 0; r < n; ++r) m(r, n - 1) = Scalar(r == i ? 1 : 0);
        coeff[i] = det(m);
      }
      return coeff;
    };
    // target values: u_0 = 1 gauge, then the ratio recurrence
    std::vector<Scalar> target(m_eq);
    target[0] = Scalar(1);
    for (int a = 1; a <= m_eq - 1; ++a) {
      int b = n - level - a;
      Scalar t = prescribed(a, b, level);
      if (t.is_zero()) throw realization_failed("prescribed ratio is zero");
      Scalar num = t * wedge_known(a, b + 1, level - 1) * wedge_known(a + 1, b - 1, level);
      Scalar den = wedge_known(a + 1, b, level - 1) * wedge_known(a - 1, b + 1, level);
      if (den.is_zero()) throw realization_failed("vanishing intermediate wedge");
      target[a] = target[a - 1] * num / den;
    }
    // gauge: v components vanish at pivot rows of the known g-columns
    Matrix gk(n, level);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < level; ++j) gk(i, j) = g(i, j);
    Matrix gkt(level, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < level; ++j) gkt(j, i) = g(i, j);
    auto piv = detail::echelonize(gkt, gkt.all_exact());
    // assemble the n x n linear system for v
    Matrix sys(n, n);
    std::vector<Scalar> rhs(n, Scalar(0));
    for (int j = 0; j < m_eq; ++j) {
      auto coeff = u_form(j);
      for (int i = 0; i < n; ++i) sys(j, i) = coeff[i];
      rhs[j] = target[j];
    }
    for (int k = 0; k < level; ++k) {
      sys(m_eq + k, piv[k]) = Scalar(1);
      rhs[m_eq + k] = Scalar(0);
    }
    std::vector<Scalar> v;
    try {
      v = solve(sys, rhs);
    } catch (const error&) {
      throw realization_failed("third-flag solve is singular");
    }
    for (int i = 0; i < n; ++i) g(i, level) = v[i];
  }
  // complete the basis with a coordinate vector keeping it invertible
  for (int i = n - 1; i >= 0; --i) {
    Matrix full = g;
    for (int r = 0; r < n; ++r) full(r, n - 1) = Scalar(r == i ? 1 : 0);
    if (!det(full).is_zero()) {
      g = full;
      break;
    }
    if (i == 0) throw realization_failed("could not complete third flag basis");
  }
  return Flag(g);
}

struct RealizedTriple {
  Flag E, F, G;
};

// Positive triple with prescribed triple ratios, normalized: E the standard
// descending flag, F the ascending one. Re-verified exactly.
inline RealizedTriple realize_triple(int n, const TripleRatioFn& prescribed) {
  Flag G = realize_third_flag(n, prescribed);
  Flag E = Flag::standard(n), F = Flag::reversed(n);
  for (auto [a, b, c] : triangle_index_set(n))
    if (triple_ratio(E, F, G, a, b, c) != prescribed(a, b, c))
      throw realization_failed("realized triple ratios do not match");
  return {E, F, G};
}

// Given the positive pair (E, F), the flag at the known far vertex and the
// prescribed ratios of the opposite triangle, produces the far flag G'
// across the leaf: triple ratios of (E, F, G') are the prescribed ones and
// D_a(E, F, G_known, G') equals the prescribed shear exactly. The diagonal
// adjustment in the intersection-line basis makes the choice unique.
inline Flag extend_across_leaf(const Flag& E, const Flag& F, const Flag& G_known, const TripleRatioFn& prescribed,
                               const std::vector<Scalar>& shear_targets) {
  int n = E.n();
  RealizedTriple abs = realize_triple(n, prescribed);
  Matrix U = pair_basis(E, F);
  Matrix Ui = inverse(U);
  std::vector<Scalar> gamma = Ui.apply(G_known.basis().col(0));
  std::vector<Scalar> gamma0 = abs.G.basis().col(0);
  for (int i = 0; i < n; ++i)
    if (gamma[i].is_zero() || gamma0[i].is_zero())
      throw not_generic("far-vertex line meets an intersection line");
  std::vector<Scalar> beta(n);
  beta[0] = Scalar(1);
  for (int a = 1; a <= n - 1; ++a) {
    const Scalar& d = shear_targets[a - 1];
    if (d.is_zero()) throw realization_failed("prescribed shear is zero");
    beta[a] = -(beta[a - 1] * gamma[a] * gamma0[a - 1]) / (d * gamma[a - 1] * gamma0[a]);
  }
  Matrix scaled(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scaled(i, j) = beta[i] * abs.G.basis()(i, j);
  Flag Gp(U * scaled);
  for (int a = 1; a <= n - 1; ++a)
    if (double_ratio(E, F, G_known, Gp, a) != shear_targets[a - 1])
      throw realization_failed("extension double ratios do not match");
  for (auto [a, b, c] : triangle_index_set(n))
    if (triple_ratio(E, F, Gp, a, b, c) != prescribed(a, b, c))
      throw realization_failed("extension triple ratios do not match");
  return Gp;
}

// ---------------------------------------------------------------------------
// Moving-frame reconstruction
// ---------------------------------------------------------------------------

struct DecoratedTriangle {
  std::string tri;
  std::array<Flag, 3> flags;  // by clockwise vertex slot
};

// The unique projective map sending one decorated triple to another with
// the same triple ratios: flags at slots 0 and 1 map as flags, the line at
// slot 2 maps to the line, and uniqueness carries the rest.
inline Matrix solve_map(const DecoratedTriangle& src, const DecoratedTriangle& dst) {
  int n = src.flags[0].n();
  Matrix U = pair_basis(src.flags[0], src.flags[1]);
  Matrix Up = pair_basis(dst.flags[0], dst.flags[1]);
  std::vector<Scalar> gamma = inverse(U).apply(src.flags[2].basis().col(0));
  std::vector<Scalar> gammap = inverse(Up).apply(dst.flags[2].basis().col(0));
  Matrix D(n, n);
  for (int i = 0; i < n; ++i) {
    if (gamma[i].is_zero() || gammap[i].is_zero()) throw not_generic("solve_map degenerate line coordinates");
    D(i, i) = gammap[i] / gamma[i];
  }
  return Up * D * inverse(U);
}

class Reconstructor {
 public:
  Reconstructor(const CoordinateVector& coords, const LaminationComplex& lam, const LiftAtlas& atlas,
                long prec = kDefaultPrecision, bool check_positivity = true)
      : coords_(coords), lam_(lam), atlas_(atlas), prec_(prec), check_positivity_(check_positivity) {}

  // prescribed triple ratios of a triangle as seen from slot `slot`
  TripleRatioFn tau_at(const std::string& tri, int slot) const {
    return [this, tri, slot](int a, int b, int c) { return coords_.tri(tri, slot, a, b, c); };
  }

  DecoratedTriangle realize_base(const std::string& tri) const {
    RealizedTriple t = realize_triple(coords_.n, tau_at(tri, 0));
    return DecoratedTriangle{tri, {t.E, t.F, t.G}};
  }

  DecoratedTriangle leaf_move(const DecoratedTriangle& cur, const std::string& leaf_id, bool from_left) const {
    int n = coords_.n;
    const InfiniteLeaf& g = lam_.infinite(leaf_id);
    const LeafSideRef& src = from_left ? g.left : g.right;
    const LeafSideRef& dst = from_left ? g.right : g.left;
    if (cur.tri != src.triangle) throw relator_violation("dual path visits the wrong triangle at " + leaf_id);
    Flag E = cur.flags[src.x_slot];
    Flag F = cur.flags[src.y_slot];
    int src_far = 3 - src.x_slot - src.y_slot;
    Flag known = cur.flags[src_far];
    // prescribed ratios for the new triple (E, F, G_new):
    //  - crossing into the right triangle (clockwise x, z', y):
    //    T_abc(E, F, G') = tau_acb(dst, x)^(-1)
    //  - crossing into the left triangle (clockwise x, y, z):
    //    T_abc(E, F, G) = tau_abc(dst, x)
    TripleRatioFn prescribed;
    if (from_left) {
      prescribed = [this, &dst](int a, int b, int c) {
        return coords_.tri(dst.triangle, dst.x_slot, a, c, b).inv();
      };
    } else {
      prescribed = tau_at(dst.triangle, dst.x_slot);
    }
    std::vector<Scalar> targets;
    for (int a = 1; a <= n - 1; ++a) {
      Scalar d = coords_.shear(leaf_id, a);
      targets.push_back(from_left ? d : d.inv());
    }
    Flag Gnew = extend_across_leaf(E, F, known, prescribed, targets);
    DecoratedTriangle out;
    out.tri = dst.triangle;
    out.flags[dst.x_slot] = E;
    out.flags[dst.y_slot] = F;
    out.flags[3 - dst.x_slot - dst.y_slot] = Gnew;
    if (check_positivity_) {
      if (!is_positive_triple(out.flags[0], out.flags[1], out.flags[2]))
        throw not_positive("reconstructed triple not positive at " + leaf_id);
      const Flag& z = from_left ? known : Gnew;
      const Flag& zp = from_left ? Gnew : known;
      if (!is_positive_quadruple(E, F, z, zp))
        throw not_positive("reconstructed quadruple not positive at " + leaf_id);
    }
    return out;
  }

  // Holonomy of a leaf-move loop applied to a decorated triangle.
  Matrix loop_holonomy(const DecoratedTriangle& start, const std::vector<Move>& loop) const {
    DecoratedTriangle cur = start;
    for (const auto& mv : loop) {
      if (mv.kind != Move::leaf) throw relator_violation("arc loop contains a non-leaf move");
      cur = leaf_move(cur, mv.id, mv.from_left);
    }
    if (cur.tri != start.tri) throw relator_violation("arc loop does not close combinatorially");
    return solve_map(start, cur);
  }

  struct EigenFrame {
    Matrix lines;               // columns: eigenlines, decreasing eigenvalue
    std::vector<Scalar> mu;     // eigenvalues
  };

  // Eigenvectors of the closed-leaf holonomy. The eigenvalue ratios are
  // forced by the side products, so the eigenvalues are theta * m_a with
  // theta = tr(M) / sum(m_a); no root isolation is needed and the frame
  // stays exact on rational input.
  EigenFrame eigen_frame(const Matrix& M, const std::vector<Scalar>& m) const {
    int n = M.rows();
    Scalar tr(0), sum(0);
    for (int i = 0; i < n; ++i) tr += M(i, i);
    for (auto& x : m) sum += x;
    if (sum.is_zero()) throw eigenvalue_mismatch("degenerate eigenvalue pattern");
    Scalar theta = tr / sum;
    EigenFrame fr;
    fr.lines = Matrix(n, n);
    for (int a = 0; a < n; ++a) {
      Scalar mu = theta * m[a];
      fr.mu.push_back(mu);
      Matrix shifted = M;
      for (int i = 0; i < n; ++i) shifted(i, i) -= mu;
      if (shifted.all_exact()) {
        if (!det(shifted).is_zero())
          throw eigenvalue_mismatch("closed-leaf holonomy spectrum does not match the side products");
      }
      auto ker = kernel(shifted);
      if (ker.size() != 1) throw eigenvalue_mismatch("closed-leaf holonomy eigenspace is not a line");
      for (int i = 0; i < n; ++i) fr.lines(i, a) = ker[0][i];
    }
    if (det(fr.lines).is_zero()) throw eigenvalue_mismatch("eigenframe degenerate");
    return fr;
  }

  DecoratedTriangle arc_move(const DecoratedTriangle& cur, const std::string& cid, bool from_left) const {
    int n = coords_.n;
    const ClosedLeaf& c = lam_.closed(cid);
    const ArcEnd& entry = from_left ? c.arc_left : c.arc_right;
    const ArcEnd& exit = from_left ? c.arc_right : c.arc_left;
    Side entry_side = from_left ? Side::left : Side::right;
    Side exit_side = from_left ? Side::right : Side::left;
    if (cur.tri != entry.triangle) throw relator_violation("dual path visits the wrong triangle at arc " + cid);

    // side products must agree across the leaf (Closed Leaf Equality)
    std::vector<Scalar> lam_entry, lam_exit;
    for (int a = 1; a <= n - 1; ++a) {
      lam_entry.push_back(side_length_product(coords_, lam_, cid, entry_side, a));
      lam_exit.push_back(side_length_product(coords_, lam_, cid, exit_side, a));
      bool equal = lam_entry.back().is_exact() && lam_exit.back().is_exact()
                       ? lam_entry.back() == lam_exit.back()
                       : (lam_entry.back() - lam_exit.back()).abs() < Scalar::pow2(-prec_ / 2, prec_);
      if (!equal) throw eigenvalue_mismatch("Closed Leaf Equality violated at " + cid);
    }
    // m_a = prod_{b=a..n-1} lambda_b, m_n = 1
    std::vector<Scalar> m(n, Scalar(1));
    for (int a = n - 2; a >= 0; --a) m[a] = m[a + 1] * lam_entry[a];

    const ArcLoops& loops = atlas_.arc_loops.at(cid);
    const std::vector<Move>& entry_loop = from_left ? loops.left_loop : loops.right_loop;
    const std::vector<Move>& exit_loop = from_left ? loops.right_loop : loops.left_loop;

    Matrix M_entry = loop_holonomy(cur, entry_loop);
    EigenFrame fe = eigen_frame(M_entry, m);

    DecoratedTriangle abs = realize_base(exit.triangle);
    Matrix M_exit = loop_holonomy(abs, exit_loop);
    EigenFrame fx = eigen_frame(M_exit, m);

    // diagonal freedom fixed by the transverse-arc shears:
    // D_a(F(x), F(y), F(z), F(z')) = exp sigma_a(k) with z the left far
    // vertex and z' the right one
    Flag Ex(fe.lines);
    Matrix rev(n, n);
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < n; ++i) rev(i, n - 1 - a) = fe.lines(i, a);
    Flag Fy(rev);
    Matrix Vi = inverse(fe.lines);
    Matrix Vxi = inverse(fx.lines);
    std::vector<Scalar> actual_far = Vi.apply(cur.flags[entry.far_slot].basis().col(0));
    std::vector<Scalar> abs_far = Vxi.apply(abs.flags[exit.far_slot].basis().col(0));
    for (int i = 0; i < n; ++i)
      if (actual_far[i].is_zero() || abs_far[i].is_zero())
        throw not_generic("arc far line meets an eigenline at " + cid);
    std::vector<Scalar> beta(n);
    beta[0] = Scalar(1);
    for (int a = 1; a <= n - 1; ++a) {
      Scalar d = coords_.shear(cid, a);
      if (from_left) {
        // gamma = actual (left far), gamma' = beta o abs (right far)
        beta[a] = -(beta[a - 1] * actual_far[a] * abs_far[a - 1]) / (d * actual_far[a - 1] * abs_far[a]);
      } else {
        // gamma = beta o abs (left far), gamma' = actual (right far)
        beta[a] = -(d * beta[a - 1] * abs_far[a - 1] * actual_far[a]) / (abs_far[a] * actual_far[a - 1]);
      }
    }
    Matrix D(n, n);
    for (int i = 0; i < n; ++i) D(i, i) = beta[i];
    Matrix A = fe.lines * D * Vxi;

    DecoratedTriangle out;
    out.tri = exit.triangle;
    for (int s = 0; s < 3; ++s) out.flags[s] = A * abs.flags[s];

    // post-conditions: the arc double ratios hold exactly, and the glued
    // quadruple is positive
    const Flag& z = from_left ? cur.flags[entry.far_slot] : out.flags[exit.far_slot];
    const Flag& zp = from_left ? out.flags[exit.far_slot] : cur.flags[entry.far_slot];
    for (int a = 1; a <= n - 1; ++a)
      if (double_ratio(Ex, Fy, z, zp, a) != coords_.shear(cid, a)) {
        if (coords_.all_exact()) throw realization_failed("arc double ratios do not match at " + cid);
      }
    if (check_positivity_ && !is_positive_quadruple(Ex, Fy, z, zp))
      throw not_positive("glued quadruple not positive at " + cid);
    return out;
  }

  DecoratedTriangle run_path(const DecoratedTriangle& start, const std::vector<Move>& path) const {
    DecoratedTriangle cur = start;
    for (const auto& mv : path)
      cur = mv.kind == Move::leaf ? leaf_move(cur, mv.id, mv.from_left) : arc_move(cur, mv.id, mv.from_left);
    return cur;
  }

  Representation reconstruct() const {
    auto member = check_membership(coords_, lam_);
    if (!member.pass) {
      std::string msg = "coordinates are not in the polytope:";
      for (auto& v : member.violations) msg += " " + v;
      throw membership_failed(msg);
    }
    DecoratedTriangle base = realize_base(atlas_.base_triangle);
    std::map<std::string, Matrix> gens;
    bool projective = false;
    int n = coords_.n;
    for (const auto& g : atlas_.generators) {
      DecoratedTriangle end = run_path(base, atlas_.generator_paths.at(g));
      if (end.tri != atlas_.base_triangle) throw relator_violation("generator path does not return to base");
      Matrix M = solve_map(base, end);
      // full-flag transport check at the third vertex
      if (!flags_equal(M * base.flags[2], end.flags[2]))
        throw relator_violation("holonomy does not transport the base decoration for " + g);
      // normalize to determinant +-1 when a rational n-th root exists
      Scalar d = det(M);
      if (d.is_zero()) throw relator_violation("singular holonomy for " + g);
      Scalar root;
      if (d.abs().exact_root(static_cast<unsigned long>(n), root)) {
        M = root.inv() * M;
      } else {
        projective = true;
      }
      if (n % 2 == 0 && det(M).sign() < 0)
        throw relator_violation("holonomy of " + g + " lies outside PSL (negative determinant)");
      gens[g] = M;
    }
    Representation rep(n, gens, projective);
    // relator must evaluate to a scalar matrix
    Matrix R = rep.eval_word(atlas_.relator);
    Scalar diag = R(0, 0);
    Scalar tol = Scalar::pow2(-prec_ / 2, prec_);
    Scalar scale(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) scale += R(i, j) * R(i, j);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Scalar want = i == j ? diag : Scalar(0);
        Scalar dev = R(i, j) - want;
        bool okay = R(i, j).is_exact() && diag.is_exact() ? dev.is_zero() : dev * dev < tol * tol * scale;
        if (!okay) throw relator_violation("relator does not map to a scalar matrix");
      }
    return rep;
  }

 private:
  const CoordinateVector& coords_;
  const LaminationComplex& lam_;
  const LiftAtlas& atlas_;
  long prec_;
  bool check_positivity_;
};

inline Representation reconstruct(const CoordinateVector& coords, const LaminationComplex& lam,
                                  const LiftAtlas& atlas, long prec = kDefaultPrecision) {
  return Reconstructor(coords, lam, atlas, prec).reconstruct();
}

}  // namespace flagshear
