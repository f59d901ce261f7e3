// The forward map: from a representation plus lamination and lift atlas to
// exponentiated triangle invariants, shear invariants and closed-leaf length
// spectra. All values are stored multiplicatively (the triple/double ratios
// themselves), so every identity stays exact over the rationals.
#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "flagshear/atlas.hpp"
#include "flagshear/lamination.hpp"
#include "flagshear/ratios.hpp"
#include "flagshear/representation.hpp"

namespace flagshear {

struct TriKey {
  std::string tri;
  int slot;
  int a, b, c;
  auto operator<=>(const TriKey&) const = default;
};

struct LeafKey {
  std::string leaf;
  int a;
  auto operator<=>(const LeafKey&) const = default;
};

struct CoordinateVector {
  int n = 0;
  std::string lamination;
  std::map<TriKey, Scalar> triangle_exp;  // exp tau_abc(T, vertex slot)
  std::map<LeafKey, Scalar> shear_exp;    // exp sigma_a, infinite and closed leaves
  std::map<LeafKey, Scalar> length_exp;   // exp ell_a, representation-side only

  const Scalar& tri(const std::string& t, int slot, int a, int b, int c) const {
    auto it = triangle_exp.find(TriKey{t, slot, a, b, c});
    if (it == triangle_exp.end()) throw index_out_of_range("triangle invariant " + t);
    return it->second;
  }
  const Scalar& shear(const std::string& leaf, int a) const {
    auto it = shear_exp.find(LeafKey{leaf, a});
    if (it == shear_exp.end()) throw index_out_of_range("shear invariant " + leaf);
    return it->second;
  }
  bool all_exact() const {
    for (auto& [k, v] : triangle_exp)
      if (!v.is_exact()) return false;
    for (auto& [k, v] : shear_exp)
      if (!v.is_exact()) return false;
    return true;
  }
};

// Enumerates (a, b, c) with a,b,c >= 1, a+b+c = n.
inline std::vector<std::tuple<int, int, int>> triangle_index_set(int n) {
  std::vector<std::tuple<int, int, int>> out;
  for (int a = 1; a <= n - 2; ++a)
    for (int b = 1; a + b <= n - 1; ++b) out.emplace_back(a, b, n - a - b);
  return out;
}

// Evaluation context: caches the closed-leaf eigendata so that every flag
// annotation costs one word evaluation and a cached flag.
class FlagEvaluator {
 public:
  FlagEvaluator(const Representation& rep, const LiftAtlas& atlas, long prec = kDefaultPrecision)
      : rep_(rep), atlas_(atlas), prec_(prec) {}

  const EigenData& closed_eigendata(const std::string& cid) {
    auto it = eigen_.find(cid);
    if (it != eigen_.end()) return it->second;
    auto wt = atlas_.closed_words.find(cid);
    if (wt == atlas_.closed_words.end()) throw unknown_leaf(cid);
    Matrix m = rep_.eval_word(wt->second);
    auto [jt, _] = eigen_.emplace(cid, positive_eigendata(m, prec_));
    return jt->second;
  }

  Flag flag(const FlagAnnotation& a) {
    const EigenData& e = closed_eigendata(a.closed_leaf);
    const Flag& base = a.attracting ? e.stable : e.unstable;
    if (a.conj.empty()) return base;
    return rep_.eval_word(a.conj) * base;
  }

  const Representation& rep() const { return rep_; }
  long precision() const { return prec_; }

 private:
  const Representation& rep_;
  const LiftAtlas& atlas_;
  long prec_;
  std::map<std::string, EigenData> eigen_;
};

// exp tau for all three vertices of one triangle. The three vertex flags
// must form a positive triple; the rotation identities hold by construction
// and are re-checked exactly.
inline std::map<TriKey, Scalar> triangle_invariants(FlagEvaluator& ev, const LaminationComplex& lam,
                                                    const LiftAtlas& atlas, const std::string& tri,
                                                    bool use_alt = false) {
  const auto& table = use_alt ? atlas.triangle_annotations_alt : atlas.triangle_annotations;
  auto it = table.find(tri);
  if (it == table.end()) throw unknown_leaf("triangle " + tri);
  std::array<Flag, 3> f{ev.flag(it->second[0]), ev.flag(it->second[1]), ev.flag(it->second[2])};
  if (!is_positive_triple(f[0], f[1], f[2]))
    throw not_positive("triangle " + tri + " has a non-positive flag triple");
  int n = ev.rep().n();
  std::map<TriKey, Scalar> out;
  for (int s = 0; s < 3; ++s)
    for (auto [a, b, c] : triangle_index_set(n))
      out[TriKey{tri, s, a, b, c}] = triple_ratio(f[s], f[(s + 1) % 3], f[(s + 2) % 3], a, b, c);
  for (auto [a, b, c] : triangle_index_set(n))
    for (int s = 0; s < 3; ++s)
      if (out[TriKey{tri, s, a, b, c}] != out[TriKey{tri, (s + 1) % 3, b, c, a}])
        throw error(errc::math_precondition, "rotation identity failed at " + tri);
  return out;
}

inline std::vector<Scalar> shear_from_quad(FlagEvaluator& ev, const QuadAnnotation& q, const std::string& site) {
  Flag x = ev.flag(q.x), y = ev.flag(q.y), z = ev.flag(q.z), zp = ev.flag(q.zp);
  if (!is_positive_quadruple(x, y, z, zp)) throw not_positive("site " + site + " has a non-positive quadruple");
  int n = ev.rep().n();
  std::vector<Scalar> out;
  for (int a = 1; a <= n - 1; ++a) out.push_back(double_ratio(x, y, z, zp, a));
  return out;
}

inline std::vector<Scalar> shear_infinite(FlagEvaluator& ev, const LiftAtlas& atlas, const std::string& leaf,
                                          bool use_alt = false) {
  const auto& table = use_alt ? atlas.infinite_annotations_alt : atlas.infinite_annotations;
  auto it = table.find(leaf);
  if (it == table.end()) throw unknown_leaf(leaf);
  return shear_from_quad(ev, it->second, leaf);
}

inline std::vector<Scalar> shear_closed(FlagEvaluator& ev, const LiftAtlas& atlas, const std::string& cid,
                                        bool use_alt = false) {
  const auto& table = use_alt ? atlas.closed_annotations_alt : atlas.closed_annotations;
  auto it = table.find(cid);
  if (it == table.end()) throw unknown_leaf(cid);
  return shear_from_quad(ev, it->second, cid);
}

// exp ell_a = m_a / m_{a+1} of the closed-leaf holonomy.
inline std::vector<Scalar> lengths(FlagEvaluator& ev, const std::string& cid) {
  const EigenData& e = ev.closed_eigendata(cid);
  std::vector<Scalar> out;
  for (size_t a = 0; a + 1 < e.values.size(); ++a) out.push_back(e.values[a] / e.values[a + 1]);
  return out;
}

// Assembles the full coordinate vector. Polytope membership is the caller's
// concern (see polytope.hpp: full_coordinates), keeping this layer free of
// the constraint machinery.
inline CoordinateVector assemble_coordinates(const Representation& rep, const LaminationComplex& lam,
                                             const LiftAtlas& atlas, long prec = kDefaultPrecision,
                                             bool use_alt = false) {
  FlagEvaluator ev(rep, atlas, prec);
  CoordinateVector cv;
  cv.n = rep.n();
  cv.lamination = lam.name;
  for (const auto& t : lam.triangles) {
    auto vals = triangle_invariants(ev, lam, atlas, t.id, use_alt);
    cv.triangle_exp.insert(vals.begin(), vals.end());
  }
  for (const auto& g : lam.infinite_leaves) {
    auto vals = shear_infinite(ev, atlas, g.id, use_alt);
    for (int a = 1; a <= cv.n - 1; ++a) cv.shear_exp[LeafKey{g.id, a}] = vals[a - 1];
  }
  for (const auto& c : lam.closed_leaves) {
    auto vals = shear_closed(ev, atlas, c.id, use_alt);
    for (int a = 1; a <= cv.n - 1; ++a) cv.shear_exp[LeafKey{c.id, a}] = vals[a - 1];
    auto ell = lengths(ev, c.id);
    for (int a = 1; a <= cv.n - 1; ++a) cv.length_exp[LeafKey{c.id, a}] = ell[a - 1];
  }
  for (auto& [k, v] : cv.triangle_exp)
    if (v.sign() <= 0) throw not_positive("nonpositive triangle invariant");
  for (auto& [k, v] : cv.shear_exp)
    if (v.sign() <= 0) throw not_positive("nonpositive shear invariant");
  return cv;
}

}  // namespace flagshear
