// Lift annotations for a lamination: group words identifying lifted ideal
// vertices as fixed flags of closed-leaf holonomies, plus the dual-path data
// (leaf and arc moves) along which reconstruction transports flag triples in
// the universal cover.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "flagshear/lamination.hpp"
#include "flagshear/representation.hpp"

namespace flagshear {

// A lifted ideal vertex is w . (endpoint of the standard lift of a closed
// leaf): the attracting (+) or repelling (-) fixed flag of the conjugate
// w [c] w^-1.
struct FlagAnnotation {
  Word conj;                // conjugating word w (may be empty)
  std::string closed_leaf;  // c
  bool attracting = true;   // + end or - end
};

struct QuadAnnotation {
  FlagAnnotation x, y, z, zp;
};

// One step of a dual path: cross an infinite leaf, or jump across a closed
// leaf along (a translate of) its transverse arc. `from_left` gives the side
// the move starts on, relative to the crossed leaf's orientation.
struct Move {
  enum Kind { leaf, arc } kind = leaf;
  std::string id;
  bool from_left = true;
};

struct ArcLoops {
  // Dual loops computing the closed-leaf holonomy as seen from each arc
  // endpoint triangle; leaf moves only, based at that triangle, and
  // homotopic to the positively oriented closed leaf.
  std::vector<Move> left_loop;
  std::vector<Move> right_loop;
};

class LiftAtlas {
 public:
  std::string lamination;
  std::vector<std::string> generators;
  Word relator;
  std::map<std::string, Word> closed_words;
  std::map<std::string, std::array<FlagAnnotation, 3>> triangle_annotations;
  std::map<std::string, QuadAnnotation> infinite_annotations;
  std::map<std::string, QuadAnnotation> closed_annotations;
  // Optional second annotation set per site (alternative lifts).
  std::map<std::string, std::array<FlagAnnotation, 3>> triangle_annotations_alt;
  std::map<std::string, QuadAnnotation> infinite_annotations_alt;
  std::map<std::string, QuadAnnotation> closed_annotations_alt;
  std::string base_triangle;
  std::map<std::string, std::vector<Move>> generator_paths;
  std::map<std::string, ArcLoops> arc_loops;

  void validate_against(const LaminationComplex& lam) const {
    auto check_word = [&](const Word& w, const std::string& where) {
      for (const auto& letter : w) {
        auto [name, inv] = split_letter(letter);
        bool found = false;
        for (const auto& g : generators) found = found || g == name;
        if (!found) throw parse_error("atlas word at " + where + " uses undeclared generator " + name);
      }
    };
    check_word(relator, "relator");
    for (const auto& c : lam.closed_leaves) {
      auto it = closed_words.find(c.id);
      if (it == closed_words.end()) throw parse_error("no closed word for " + c.id);
      check_word(it->second, c.id);
    }
    auto check_annot = [&](const FlagAnnotation& a, const std::string& where) {
      check_word(a.conj, where);
      lam.closed(a.closed_leaf);
    };
    for (const auto& t : lam.triangles) {
      auto it = triangle_annotations.find(t.id);
      if (it == triangle_annotations.end()) throw parse_error("no annotations for triangle " + t.id);
      for (const auto& a : it->second) check_annot(a, t.id);
    }
    for (const auto& g : lam.infinite_leaves) {
      auto it = infinite_annotations.find(g.id);
      if (it == infinite_annotations.end()) throw parse_error("no annotations for leaf " + g.id);
      for (const auto* a : {&it->second.x, &it->second.y, &it->second.z, &it->second.zp}) check_annot(*a, g.id);
    }
    for (const auto& c : lam.closed_leaves) {
      auto it = closed_annotations.find(c.id);
      if (it == closed_annotations.end()) throw parse_error("no annotations for closed leaf " + c.id);
      const QuadAnnotation& q = it->second;
      for (const auto* a : {&q.x, &q.y, &q.z, &q.zp}) check_annot(*a, c.id);
      // x, y are the fixed flags of [c] itself, up to a common prefix
      if (q.x.closed_leaf != c.id || q.y.closed_leaf != c.id || !q.x.attracting || q.y.attracting)
        throw parse_error("closed annotations of " + c.id + " must be the +/- ends of [" + c.id + "]");
      if (q.x.conj != q.y.conj)
        throw parse_error("closed annotations of " + c.id + " must share the conjugating prefix");
    }
    if (!lam.has_triangle(base_triangle)) throw parse_error("base triangle missing");
    for (const auto& g : generators) {
      auto it = generator_paths.find(g);
      if (it == generator_paths.end()) throw parse_error("no dual path for generator " + g);
      for (const auto& m : it->second) {
        if (m.kind == Move::leaf)
          lam.infinite(m.id);
        else
          lam.closed(m.id);
      }
    }
    for (const auto& c : lam.closed_leaves) {
      auto it = arc_loops.find(c.id);
      if (it == arc_loops.end()) throw parse_error("no arc loops for " + c.id);
      for (const auto* loop : {&it->second.left_loop, &it->second.right_loop})
        for (const auto& m : *loop)
          if (m.kind != Move::leaf) throw parse_error("arc loops must consist of leaf moves only");
    }
  }
};

}  // namespace flagshear
