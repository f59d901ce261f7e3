// Combinatorial model of a finite-leaved maximal geodesic lamination on a
// closed oriented surface: closed leaves with transverse arcs, infinite
// leaves with oriented ends spiraling onto closed leaves, ideal triangles
// with clockwise-ordered vertex slots, and one period of the spiral order
// along each side of each closed leaf. No metric data is represented.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flagshear/scalar.hpp"

namespace flagshear {

enum class Side { left, right };
enum class SpiralDir { with_orientation, against_orientation };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }
inline const char* to_string(SpiralDir d) { return d == SpiralDir::with_orientation ? "with" : "against"; }

// Where one end of an infinite leaf (or one triangle spike) accumulates.
struct SpiralTarget {
  std::string closed_leaf;
  Side side = Side::left;
  SpiralDir direction = SpiralDir::with_orientation;
  bool operator==(const SpiralTarget&) const = default;
};

// One side of an infinite leaf: the adjacent triangle, with the vertex slots
// matching the leaf's positive and negative endpoints. Slots are indexed
// 0,1,2 in clockwise order around the triangle.
struct LeafSideRef {
  std::string triangle;
  int x_slot = 0;  // slot at the positive endpoint
  int y_slot = 0;  // slot at the negative endpoint
};

struct InfiniteLeaf {
  std::string id;
  SpiralTarget pos_end;
  SpiralTarget neg_end;
  LeafSideRef left;   // triangle to the left of the oriented leaf
  LeafSideRef right;  // triangle to the right
};

struct ArcEnd {
  std::string triangle;
  int far_slot = 0;  // vertex of that triangle farthest from the closed leaf
};

struct ClosedLeaf {
  std::string id;
  ArcEnd arc_left;   // endpoint of the transverse arc on the left side
  ArcEnd arc_right;  // and on the right side
};

struct Triangle {
  std::string id;
  std::array<SpiralTarget, 3> spikes;  // per clockwise vertex slot
};

struct SpiralItem {
  enum Kind { leaf_end, spike } kind = leaf_end;
  std::string id;        // leaf id or triangle id
  bool positive_end = true;  // for leaf ends
  int slot = 0;              // for spikes
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
  int s = 0, t = 0, u = 0;
  std::map<std::string, int> spiral_multiplicity;  // "<leaf>:<side>" -> k
  void fail(const std::string& msg) {
    valid = false;
    violations.push_back(msg);
  }
};

class LaminationComplex {
 public:
  std::string name;
  int genus = 2;
  std::vector<ClosedLeaf> closed_leaves;
  std::vector<InfiniteLeaf> infinite_leaves;
  std::vector<Triangle> triangles;
  // one period of the alternating order per (closed leaf, side)
  std::map<std::string, std::map<Side, std::vector<SpiralItem>>> spiral_orders;

  const ClosedLeaf& closed(const std::string& id) const {
    for (const auto& c : closed_leaves)
      if (c.id == id) return c;
    throw unknown_leaf(id);
  }
  const InfiniteLeaf& infinite(const std::string& id) const {
    for (const auto& g : infinite_leaves)
      if (g.id == id) return g;
    throw unknown_leaf(id);
  }
  const Triangle& triangle(const std::string& id) const {
    for (const auto& t : triangles)
      if (t.id == id) return t;
    throw unknown_leaf("triangle " + id);
  }
  bool has_triangle(const std::string& id) const {
    for (const auto& t : triangles)
      if (t.id == id) return true;
    return false;
  }

  ValidationReport validate() const {
    ValidationReport r;
    r.s = static_cast<int>(closed_leaves.size());
    r.t = static_cast<int>(infinite_leaves.size());
    r.u = static_cast<int>(triangles.size());
    if (genus < 2) r.fail("genus must be at least 2");
    if (r.u != 4 * (genus - 1)) r.fail("triangle count " + std::to_string(r.u) + " != 4(g-1)");
    if (r.t != 6 * (genus - 1)) r.fail("infinite leaf count " + std::to_string(r.t) + " != 6(g-1)");
    if (r.s < 1 || r.s > 3 * (genus - 1)) r.fail("closed leaf count out of range");

    // Leaf side references: existence, clockwise slot conventions, and one
    // use per triangle side.
    std::map<std::string, int> side_use;  // "tri:slotpair" -> count
    for (const auto& g : infinite_leaves) {
      for (int which = 0; which < 2; ++which) {
        const LeafSideRef& ref = which == 0 ? g.left : g.right;
        if (!has_triangle(ref.triangle)) {
          r.fail("leaf " + g.id + " references missing triangle " + ref.triangle);
          continue;
        }
        if (ref.x_slot < 0 || ref.x_slot > 2 || ref.y_slot < 0 || ref.y_slot > 2 || ref.x_slot == ref.y_slot)
          r.fail("leaf " + g.id + " has bad slots");
        // left triangle: clockwise order (x, y, far); right: (x, far, y)
        int expect_y = which == 0 ? (ref.x_slot + 1) % 3 : (ref.x_slot + 2) % 3;
        if (ref.y_slot != expect_y)
          r.fail("leaf " + g.id + (which == 0 ? " left" : " right") + " side violates the clockwise slot convention");
        int lo = std::min(ref.x_slot, ref.y_slot), hi = std::max(ref.x_slot, ref.y_slot);
        side_use[ref.triangle + ":" + std::to_string(lo) + std::to_string(hi)]++;
        // spike consistency: the triangle's spikes at the endpoint slots
        // agree with the leaf end targets
        const Triangle& tri = triangle(ref.triangle);
        if (!(tri.spikes[ref.x_slot] == g.pos_end))
          r.fail("leaf " + g.id + ": spike at " + ref.triangle + " slot " + std::to_string(ref.x_slot) +
                 " disagrees with the positive end target");
        if (!(tri.spikes[ref.y_slot] == g.neg_end))
          r.fail("leaf " + g.id + ": spike at " + ref.triangle + " slot " + std::to_string(ref.y_slot) +
                 " disagrees with the negative end target");
      }
    }
    for (const auto& t : triangles)
      for (int s0 = 0; s0 < 3; ++s0) {
        int s1 = (s0 + 1) % 3;
        int lo = std::min(s0, s1), hi = std::max(s0, s1);
        std::string key = t.id + ":" + std::to_string(lo) + std::to_string(hi);
        if (side_use[key] != 1)
          r.fail("triangle side " + key + " used " + std::to_string(side_use[key]) + " times (expected once)");
      }

    // Spiral orders: every (closed leaf, side) present, alternating, equal
    // counts, matching targets, direction uniform along the side.
    std::map<std::string, int> end_seen, spike_seen;
    int total_ends = 0;
    for (const auto& c : closed_leaves) {
      auto it = spiral_orders.find(c.id);
      for (Side side : {Side::left, Side::right}) {
        const std::vector<SpiralItem>* items = nullptr;
        if (it != spiral_orders.end()) {
          auto jt = it->second.find(side);
          if (jt != it->second.end()) items = &jt->second;
        }
        std::string key = c.id + ":" + to_string(side);
        if (!items || items->empty()) {
          r.fail("no spiral order for " + key + " (every side of a closed leaf receives spikes)");
          continue;
        }
        int ends = 0, spikes = 0;
        std::optional<SpiralDir> dir;
        for (size_t i = 0; i < items->size(); ++i) {
          const SpiralItem& item = (*items)[i];
          const SpiralItem& next = (*items)[(i + 1) % items->size()];
          if (item.kind == next.kind) r.fail(key + ": spiral order does not alternate");
          if (item.kind == SpiralItem::leaf_end) {
            ++ends;
            ++total_ends;
            bool found = false;
            for (const auto& gg : infinite_leaves) found = found || gg.id == item.id;
            if (!found) {
              r.fail(key + ": unknown leaf " + item.id);
              continue;
            }
            const InfiniteLeaf& g = infinite(item.id);
            const SpiralTarget& tgt = item.positive_end ? g.pos_end : g.neg_end;
            if (tgt.closed_leaf != c.id || tgt.side != side)
              r.fail(key + ": leaf end " + item.id + " does not spiral here");
            if (dir && *dir != tgt.direction) r.fail(key + ": mixed spiral directions");
            dir = tgt.direction;
            end_seen[item.id + (item.positive_end ? "+" : "-")]++;
          } else {
            ++spikes;
            if (!has_triangle(item.id)) {
              r.fail(key + ": unknown triangle " + item.id);
              continue;
            }
            const Triangle& tri = triangle(item.id);
            const SpiralTarget& tgt = tri.spikes[item.slot];
            if (tgt.closed_leaf != c.id || tgt.side != side)
              r.fail(key + ": spike " + item.id + "/" + std::to_string(item.slot) + " does not spiral here");
            if (dir && *dir != tgt.direction) r.fail(key + ": mixed spiral directions");
            dir = tgt.direction;
            spike_seen[item.id + ":" + std::to_string(item.slot)]++;
          }
        }
        if (ends != spikes) r.fail(key + ": unequal numbers of leaf ends and spikes");
        r.spiral_multiplicity[key] = ends;
      }
    }
    for (const auto& g : infinite_leaves)
      for (const char* e : {"+", "-"})
        if (end_seen[g.id + e] != 1) r.fail("leaf end " + g.id + e + " appears " + std::to_string(end_seen[g.id + e]) + " times in spiral orders");
    for (const auto& t : triangles)
      for (int s0 = 0; s0 < 3; ++s0)
        if (spike_seen[t.id + ":" + std::to_string(s0)] != 1)
          r.fail("spike " + t.id + ":" + std::to_string(s0) + " appears " +
                 std::to_string(spike_seen[t.id + ":" + std::to_string(s0)]) + " times");
    if (r.valid && total_ends != 2 * r.t) r.fail("total spiral ends != 2t");

    // Arc endpoints exist.
    for (const auto& c : closed_leaves) {
      for (const ArcEnd* e : {&c.arc_left, &c.arc_right}) {
        if (!has_triangle(e->triangle)) r.fail("arc of " + c.id + " references missing triangle " + e->triangle);
        if (e->far_slot < 0 || e->far_slot > 2) r.fail("arc of " + c.id + " has a bad far slot");
      }
    }
    return r;
  }

  // The alternating sequence along one side of a closed leaf, as stored and
  // validated. Leaf ends carry their toward/away orientation flag.
  const std::vector<SpiralItem>& spiral_sequence(const std::string& closed_leaf, Side side) const {
    auto it = spiral_orders.find(closed_leaf);
    if (it == spiral_orders.end()) throw unknown_leaf(closed_leaf);
    auto jt = it->second.find(side);
    if (jt == it->second.end() || jt->second.empty())
      throw unknown_leaf(closed_leaf + ":" + to_string(side) + " has no spiral data");
    return jt->second;
  }

  // Spiraling direction along one side (validated uniform).
  SpiralDir spiral_direction(const std::string& closed_leaf, Side side) const {
    for (const auto& item : spiral_sequence(closed_leaf, side)) {
      if (item.kind == SpiralItem::leaf_end) {
        const InfiniteLeaf& g = infinite(item.id);
        return (item.positive_end ? g.pos_end : g.neg_end).direction;
      }
      return triangle(item.id).spikes[item.slot].direction;
    }
    throw unknown_leaf(closed_leaf);
  }
};

}  // namespace flagshear
