// JSON schemas for every file the tools read and write. Exact rationals
// serialize as "p/q" strings, floats as decimal strings tagged with their
// precision at the call site; matrices are row-major nested arrays.
#pragma once

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "flagshear/atlas.hpp"
#include "flagshear/invariants.hpp"
#include "flagshear/lamination.hpp"
#include "flagshear/representation.hpp"

namespace flagshear {

using json = nlohmann::json;

inline json to_json(const Scalar& s) { return s.str(); }

inline Scalar scalar_from_json(const json& j, long prec = kDefaultPrecision) {
  if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Scalar::parse(j.get<std::string>(), prec);
  if (j.is_number_float()) return Scalar(BigFloat(j.get<double>(), prec));
  throw parse_error("expected a scalar literal");
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j, long prec = kDefaultPrecision) {
  if (!j.is_array() || j.empty()) throw parse_error("expected a matrix (array of rows)");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) throw parse_error("ragged matrix rows");
    for (int c = 0; c < cols; ++c) m(i, c) = scalar_from_json(j[i][c], prec);
  }
  return m;
}

inline json to_json(const Flag& f) { return json{{"n", f.n()}, {"basis", to_json(f.basis())}}; }

inline Flag flag_from_json(const json& j, long prec = kDefaultPrecision) {
  Matrix m = matrix_from_json(j.at("basis"), prec);
  if (m.rows() != j.at("n").get<int>()) throw parse_error("flag dimension mismatch");
  return Flag(m);
}

// --------------------------------------------------------------------------
// Representation
// --------------------------------------------------------------------------

inline json to_json(const Representation& rho) {
  json gens = json::object();
  for (const auto& [name, m] : rho.generators()) gens[name] = to_json(m);
  json j{{"n", rho.n()}, {"generators", gens}};
  if (rho.projective()) j["projective"] = true;
  return j;
}

inline Representation representation_from_json(const json& j, long prec = kDefaultPrecision) {
  int n = j.at("n").get<int>();
  std::map<std::string, Matrix> gens;
  for (auto& [name, mj] : j.at("generators").items()) gens[name] = matrix_from_json(mj, prec);
  bool projective = j.value("projective", false);
  return Representation(n, std::move(gens), projective);
}

// --------------------------------------------------------------------------
// Lamination
// --------------------------------------------------------------------------

inline Side side_from_json(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  throw parse_error("bad side: " + s);
}

inline SpiralDir dir_from_json(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "with") return SpiralDir::with_orientation;
  if (s == "against") return SpiralDir::against_orientation;
  throw parse_error("bad spiral direction: " + s);
}

inline json to_json(const SpiralTarget& t) {
  return json{{"closed_leaf", t.closed_leaf}, {"side", to_string(t.side)}, {"direction", to_string(t.direction)}};
}

inline SpiralTarget target_from_json(const json& j) {
  return SpiralTarget{j.at("closed_leaf").get<std::string>(), side_from_json(j.at("side")),
                      dir_from_json(j.at("direction"))};
}

inline json to_json(const LaminationComplex& lam) {
  json j;
  j["name"] = lam.name;
  j["genus"] = lam.genus;
  json cls = json::array();
  for (const auto& c : lam.closed_leaves) {
    cls.push_back(json{{"id", c.id},
                       {"arc",
                        {{"left", {{"triangle", c.arc_left.triangle}, {"far_slot", c.arc_left.far_slot}}},
                         {"right", {{"triangle", c.arc_right.triangle}, {"far_slot", c.arc_right.far_slot}}}}}});
  }
  j["closed_leaves"] = cls;
  json infs = json::array();
  for (const auto& g : lam.infinite_leaves) {
    infs.push_back(json{{"id", g.id},
                        {"pos_end", to_json(g.pos_end)},
                        {"neg_end", to_json(g.neg_end)},
                        {"left", {{"triangle", g.left.triangle}, {"x_slot", g.left.x_slot}, {"y_slot", g.left.y_slot}}},
                        {"right", {{"triangle", g.right.triangle}, {"x_slot", g.right.x_slot}, {"y_slot", g.right.y_slot}}}});
  }
  j["infinite_leaves"] = infs;
  json tris = json::array();
  for (const auto& t : lam.triangles) {
    json spikes = json::array();
    for (const auto& s : t.spikes) spikes.push_back(to_json(s));
    tris.push_back(json{{"id", t.id}, {"spikes", spikes}});
  }
  j["triangles"] = tris;
  json orders = json::object();
  for (const auto& [cid, sides] : lam.spiral_orders) {
    json so = json::object();
    for (const auto& [side, items] : sides) {
      json arr = json::array();
      for (const auto& item : items) {
        if (item.kind == SpiralItem::leaf_end)
          arr.push_back(json{{"kind", "leaf_end"}, {"leaf", item.id}, {"end", item.positive_end ? "pos" : "neg"}});
        else
          arr.push_back(json{{"kind", "spike"}, {"triangle", item.id}, {"slot", item.slot}});
      }
      so[to_string(side)] = arr;
    }
    orders[cid] = so;
  }
  j["spiral_orders"] = orders;
  return j;
}

inline LaminationComplex lamination_from_json(const json& j) {
  LaminationComplex lam;
  lam.name = j.value("name", "");
  lam.genus = j.at("genus").get<int>();
  for (const auto& cj : j.at("closed_leaves")) {
    ClosedLeaf c;
    c.id = cj.at("id").get<std::string>();
    const auto& arc = cj.at("arc");
    c.arc_left = {arc.at("left").at("triangle").get<std::string>(), arc.at("left").at("far_slot").get<int>()};
    c.arc_right = {arc.at("right").at("triangle").get<std::string>(), arc.at("right").at("far_slot").get<int>()};
    lam.closed_leaves.push_back(std::move(c));
  }
  for (const auto& gj : j.at("infinite_leaves")) {
    InfiniteLeaf g;
    g.id = gj.at("id").get<std::string>();
    g.pos_end = target_from_json(gj.at("pos_end"));
    g.neg_end = target_from_json(gj.at("neg_end"));
    g.left = {gj.at("left").at("triangle").get<std::string>(), gj.at("left").at("x_slot").get<int>(),
              gj.at("left").at("y_slot").get<int>()};
    g.right = {gj.at("right").at("triangle").get<std::string>(), gj.at("right").at("x_slot").get<int>(),
               gj.at("right").at("y_slot").get<int>()};
    lam.infinite_leaves.push_back(std::move(g));
  }
  for (const auto& tj : j.at("triangles")) {
    Triangle t;
    t.id = tj.at("id").get<std::string>();
    const auto& spikes = tj.at("spikes");
    if (spikes.size() != 3) throw parse_error("triangle " + t.id + " needs 3 spikes");
    for (int i = 0; i < 3; ++i) t.spikes[i] = target_from_json(spikes[i]);
    lam.triangles.push_back(std::move(t));
  }
  for (auto& [cid, so] : j.at("spiral_orders").items()) {
    for (const char* sname : {"left", "right"}) {
      if (!so.contains(sname)) continue;
      Side side = sname == std::string("left") ? Side::left : Side::right;
      std::vector<SpiralItem> items;
      for (const auto& ij : so.at(sname)) {
        SpiralItem item;
        if (ij.at("kind") == "leaf_end") {
          item.kind = SpiralItem::leaf_end;
          item.id = ij.at("leaf").get<std::string>();
          item.positive_end = ij.at("end") == "pos";
        } else {
          item.kind = SpiralItem::spike;
          item.id = ij.at("triangle").get<std::string>();
          item.slot = ij.at("slot").get<int>();
        }
        items.push_back(std::move(item));
      }
      lam.spiral_orders[cid][side] = std::move(items);
    }
  }
  return lam;
}

// --------------------------------------------------------------------------
// Atlas
// --------------------------------------------------------------------------

inline json to_json(const FlagAnnotation& a) {
  return json{{"conj", a.conj}, {"closed_leaf", a.closed_leaf}, {"end", a.attracting ? "+" : "-"}};
}

inline FlagAnnotation annotation_from_json(const json& j) {
  FlagAnnotation a;
  a.conj = j.at("conj").get<Word>();
  a.closed_leaf = j.at("closed_leaf").get<std::string>();
  std::string e = j.at("end").get<std::string>();
  if (e != "+" && e != "-") throw parse_error("bad end: " + e);
  a.attracting = e == "+";
  return a;
}

inline json to_json(const QuadAnnotation& q) {
  return json{{"x", to_json(q.x)}, {"y", to_json(q.y)}, {"z", to_json(q.z)}, {"zp", to_json(q.zp)}};
}

inline QuadAnnotation quad_from_json(const json& j) {
  return QuadAnnotation{annotation_from_json(j.at("x")), annotation_from_json(j.at("y")),
                        annotation_from_json(j.at("z")), annotation_from_json(j.at("zp"))};
}

inline json to_json(const Move& m) {
  return json{{"kind", m.kind == Move::leaf ? "leaf" : "arc"}, {"id", m.id}, {"from", m.from_left ? "left" : "right"}};
}

inline Move move_from_json(const json& j) {
  Move m;
  std::string k = j.at("kind").get<std::string>();
  if (k == "leaf")
    m.kind = Move::leaf;
  else if (k == "arc")
    m.kind = Move::arc;
  else
    throw parse_error("bad move kind: " + k);
  m.id = j.at("id").get<std::string>();
  m.from_left = j.at("from") == "left";
  return m;
}

inline json to_json(const LiftAtlas& atlas) {
  json j;
  j["lamination"] = atlas.lamination;
  j["generators"] = atlas.generators;
  j["relator"] = atlas.relator;
  j["closed_words"] = atlas.closed_words;
  auto tri_map = [](const std::map<std::string, std::array<FlagAnnotation, 3>>& m) {
    json out = json::object();
    for (const auto& [id, arr] : m) out[id] = json::array({to_json(arr[0]), to_json(arr[1]), to_json(arr[2])});
    return out;
  };
  auto quad_map = [](const std::map<std::string, QuadAnnotation>& m) {
    json out = json::object();
    for (const auto& [id, q] : m) out[id] = to_json(q);
    return out;
  };
  j["triangle_annotations"] = tri_map(atlas.triangle_annotations);
  j["infinite_annotations"] = quad_map(atlas.infinite_annotations);
  j["closed_annotations"] = quad_map(atlas.closed_annotations);
  if (!atlas.triangle_annotations_alt.empty()) j["triangle_annotations_alt"] = tri_map(atlas.triangle_annotations_alt);
  if (!atlas.infinite_annotations_alt.empty()) j["infinite_annotations_alt"] = quad_map(atlas.infinite_annotations_alt);
  if (!atlas.closed_annotations_alt.empty()) j["closed_annotations_alt"] = quad_map(atlas.closed_annotations_alt);
  j["base_triangle"] = atlas.base_triangle;
  json paths = json::object();
  for (const auto& [g, moves] : atlas.generator_paths) {
    json arr = json::array();
    for (const auto& m : moves) arr.push_back(to_json(m));
    paths[g] = arr;
  }
  j["generator_paths"] = paths;
  json loops = json::object();
  for (const auto& [c, l] : atlas.arc_loops) {
    json left = json::array(), right = json::array();
    for (const auto& m : l.left_loop) left.push_back(to_json(m));
    for (const auto& m : l.right_loop) right.push_back(to_json(m));
    loops[c] = json{{"left_loop", left}, {"right_loop", right}};
  }
  j["arc_loops"] = loops;
  return j;
}

inline LiftAtlas atlas_from_json(const json& j) {
  LiftAtlas a;
  a.lamination = j.value("lamination", "");
  a.generators = j.at("generators").get<std::vector<std::string>>();
  a.relator = j.at("relator").get<Word>();
  for (auto& [id, wj] : j.at("closed_words").items()) a.closed_words[id] = wj.get<Word>();
  auto read_tris = [&](const char* key, std::map<std::string, std::array<FlagAnnotation, 3>>& out) {
    if (!j.contains(key)) return;
    for (auto& [id, arr] : j.at(key).items()) {
      if (arr.size() != 3) throw parse_error("triangle annotation arity");
      out[id] = {annotation_from_json(arr[0]), annotation_from_json(arr[1]), annotation_from_json(arr[2])};
    }
  };
  auto read_quads = [&](const char* key, std::map<std::string, QuadAnnotation>& out) {
    if (!j.contains(key)) return;
    for (auto& [id, qj] : j.at(key).items()) out[id] = quad_from_json(qj);
  };
  read_tris("triangle_annotations", a.triangle_annotations);
  read_quads("infinite_annotations", a.infinite_annotations);
  read_quads("closed_annotations", a.closed_annotations);
  read_tris("triangle_annotations_alt", a.triangle_annotations_alt);
  read_quads("infinite_annotations_alt", a.infinite_annotations_alt);
  read_quads("closed_annotations_alt", a.closed_annotations_alt);
  a.base_triangle = j.at("base_triangle").get<std::string>();
  if (j.contains("generator_paths"))
    for (auto& [g, arr] : j.at("generator_paths").items()) {
      std::vector<Move> moves;
      for (const auto& mj : arr) moves.push_back(move_from_json(mj));
      a.generator_paths[g] = std::move(moves);
    }
  if (j.contains("arc_loops"))
    for (auto& [c, lj] : j.at("arc_loops").items()) {
      ArcLoops l;
      for (const auto& mj : lj.at("left_loop")) l.left_loop.push_back(move_from_json(mj));
      for (const auto& mj : lj.at("right_loop")) l.right_loop.push_back(move_from_json(mj));
      a.arc_loops[c] = std::move(l);
    }
  return a;
}

// --------------------------------------------------------------------------
// Coordinate vectors
// --------------------------------------------------------------------------

// Exact values as rational strings; with `log_precision > 0`, natural
// logarithms are added as decimal strings computed at that precision.
inline json to_json(const CoordinateVector& cv, long log_precision = 0) {
  json j;
  j["lamination"] = cv.lamination;
  j["n"] = cv.n;
  json tri = json::object();
  for (const auto& [k, v] : cv.triangle_exp) {
    std::string idx = std::to_string(k.a) + "," + std::to_string(k.b) + "," + std::to_string(k.c);
    tri[k.tri][std::to_string(k.slot)][idx] = v.str();
  }
  j["triangle_exp"] = tri;
  json sh = json::object(), le = json::object();
  for (const auto& [k, v] : cv.shear_exp) {
    while (static_cast<int>(sh[k.leaf].size()) < k.a) sh[k.leaf].push_back("");
    sh[k.leaf][k.a - 1] = v.str();
  }
  j["shear_exp"] = sh;
  for (const auto& [k, v] : cv.length_exp) {
    while (static_cast<int>(le[k.leaf].size()) < k.a) le[k.leaf].push_back("");
    le[k.leaf][k.a - 1] = v.str();
  }
  if (!cv.length_exp.empty()) j["length_exp"] = le;
  if (log_precision > 0) {
    auto log_of = [&](const Scalar& v) {
      BigFloat x = v.to_float(log_precision);
      BigFloat out(log_precision);
      mpfr_log(out.raw(), x.raw(), MPFR_RNDN);
      return out.str();
    };
    json tl = json::object(), sl = json::object();
    for (const auto& [k, v] : cv.triangle_exp)
      tl[k.tri][std::to_string(k.slot)][std::to_string(k.a) + "," + std::to_string(k.b) + "," + std::to_string(k.c)] =
          log_of(v);
    for (const auto& [k, v] : cv.shear_exp) {
      while (static_cast<int>(sl[k.leaf].size()) < k.a) sl[k.leaf].push_back("");
      sl[k.leaf][k.a - 1] = log_of(v);
    }
    j["logs"] = json{{"precision", log_precision}, {"triangle", tl}, {"shear", sl}};
  }
  return j;
}

inline CoordinateVector coordinates_from_json(const json& j, long prec = kDefaultPrecision, bool exact_only = false) {
  CoordinateVector cv;
  cv.lamination = j.value("lamination", "");
  cv.n = j.at("n").get<int>();
  auto parse_scalar = [&](const json& sj) {
    Scalar s = scalar_from_json(sj, prec);
    if (exact_only && !s.is_exact()) throw parse_error("exact mode rejects non-rational scalars");
    return s;
  };
  if (j.contains("triangle_exp"))
    for (auto& [tri, slots] : j.at("triangle_exp").items())
      for (auto& [slot, idxmap] : slots.items())
        for (auto& [idx, val] : idxmap.items()) {
          int a, b, c;
          if (sscanf(idx.c_str(), "%d,%d,%d", &a, &b, &c) != 3) throw parse_error("bad triangle index " + idx);
          cv.triangle_exp[TriKey{tri, std::stoi(slot), a, b, c}] = parse_scalar(val);
        }
  if (j.contains("shear_exp"))
    for (auto& [leaf, arr] : j.at("shear_exp").items())
      for (size_t i = 0; i < arr.size(); ++i) cv.shear_exp[LeafKey{leaf, static_cast<int>(i + 1)}] = parse_scalar(arr[i]);
  if (j.contains("length_exp"))
    for (auto& [leaf, arr] : j.at("length_exp").items())
      for (size_t i = 0; i < arr.size(); ++i) cv.length_exp[LeafKey{leaf, static_cast<int>(i + 1)}] = parse_scalar(arr[i]);
  return cv;
}

// --------------------------------------------------------------------------
// Files
// --------------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw parse_error(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot write " + path);
  out << j.dump(1) << "\n";
}

}  // namespace flagshear
