#!/usr/bin/env python3
"""Generates the bundled genus-2 lamination/atlas/representation fixtures.

Everything is derived from explicit rational hyperbolic geometry on the
boundary circle RP^1: closed leaves are axes of rational-eigenvalue group
elements, infinite leaves are geodesics between fixed points of conjugates,
and all combinatorial fields (clockwise slots, left/right sides, spiral
orders, far vertices, dual paths) are computed and cross-checked exactly.
The emitted JSON is data for the C++ test suites, which re-validate it
independently; this script fails loudly on any inconsistency.
"""

import json
import math
from collections import deque
from fractions import Fraction as Fr
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data"

# ---------------------------------------------------------------------------
# Exact boundary points and Mobius transformations
# ---------------------------------------------------------------------------


def pt(a, b=1):
    """Projective point [a : b] on RP^1, normalized to a hashable form."""
    if isinstance(a, tuple):
        return a
    a, b = Fr(a), Fr(b)
    if a == 0 and b == 0:
        raise ValueError("invalid point")
    if b == 0:
        return (Fr(1), Fr(0))
    return (a / b, Fr(1))


INF = pt(1, 0)


def cross(p, q):
    return p[0] * q[1] - p[1] * q[0]


def ccw(a, b, c):
    """True when (a, b, c) is counterclockwise (cyclically increasing)."""
    return cross(b, a) * cross(c, b) * cross(c, a) > 0


def in_ccw_arc(z, frm, to):
    return ccw(frm, z, to)


def on_left(z, y, x):
    """z on the left of the geodesic oriented from y to x."""
    return in_ccw_arc(z, x, y)


def linked(p, q, r, s):
    """Geodesics (p,q) and (r,s) cross (all four points distinct)."""
    return in_ccw_arc(r, p, q) != in_ccw_arc(s, p, q)


def mmul(*ms):
    out = ((Fr(1), Fr(0)), (Fr(0), Fr(1)))
    for n in ms:
        out = (
            (out[0][0] * n[0][0] + out[0][1] * n[1][0], out[0][0] * n[0][1] + out[0][1] * n[1][1]),
            (out[1][0] * n[0][0] + out[1][1] * n[1][0], out[1][0] * n[0][1] + out[1][1] * n[1][1]),
        )
    return out


def mdet(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def minv(m):
    d = mdet(m)
    return ((m[1][1] / d, -m[0][1] / d), (-m[1][0] / d, m[0][0] / d))


def mact(m, p):
    return pt(m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1])


def M(a, b, c, d):
    return ((Fr(a), Fr(b)), (Fr(c), Fr(d)))


IDM = M(1, 0, 0, 1)


def isqrt_fr(x):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fr(rn, rd)


def fixed_points(m):
    """(attracting, repelling) fixed points; requires rational eigenvalues."""
    tr = m[0][0] + m[1][1]
    disc = tr * tr - 4 * mdet(m)
    r = isqrt_fr(disc)
    assert r is not None and r != 0, f"needs rational distinct eigenvalues, tr={tr} det={mdet(m)}"
    l1, l2 = (tr + r) / 2, (tr - r) / 2
    if abs(l1) < abs(l2):
        l1, l2 = l2, l1
    out = []
    for lam in (l1, l2):
        a, b = m[0][0] - lam, m[0][1]
        c, d = m[1][0], m[1][1] - lam
        v = (b, -a) if (a != 0 or b != 0) else (d, -c)
        out.append(pt(v[0], v[1]))
    assert out[0] != out[1]
    return out[0], out[1]


def eval_word(word, env):
    m = IDM
    for letter in word:
        if letter.endswith("^-1"):
            m = mmul(m, minv(env[letter[:-3]]))
        else:
            m = mmul(m, env[letter])
    return m


def mobius_three(ps, qs):
    """The Mobius transformation sending ps[i] -> qs[i]."""

    def frame(p, q, r):
        det = cross(p, q)
        assert det != 0
        alpha = cross(r, q) / det
        beta = cross(p, r) / det
        return ((beta * q[0], alpha * p[0]), (beta * q[1], alpha * p[1]))

    return mmul(frame(*qs), minv(frame(*ps)))


def word_ball(env, radius):
    letters = []
    for g in sorted(env):
        letters.append((g, env[g]))
        letters.append((g + "^-1", minv(env[g])))
    ball = [([], IDM)]
    frontier = [([], IDM)]
    for _ in range(radius):
        nxt = []
        for w, m in frontier:
            for name, lm in letters:
                if w:
                    last = w[-1]
                    if (last + "^-1" == name) or (name + "^-1" == last):
                        continue
                nxt.append((w + [name], mmul(m, lm)))
        ball.extend(nxt)
        frontier = nxt
    return ball


class Annotator:
    def __init__(self, env, closed_words, radius=4):
        self.ball = word_ball(env, radius)
        self.fixed = {}
        for cid, w in closed_words.items():
            att, rep = fixed_points(eval_word(w, env))
            self.fixed[cid] = (att, rep)

    def annotate(self, p):
        for w, m in self.ball:
            for cid, (att, rep) in self.fixed.items():
                if mact(m, att) == p:
                    return {"conj": w, "closed_leaf": cid, "end": "+"}
                if mact(m, rep) == p:
                    return {"conj": w, "closed_leaf": cid, "end": "-"}
        raise AssertionError(f"no annotation found for {p}")


def assert_clockwise(points):
    assert not ccw(points[0], points[1], points[2]), f"slots must be clockwise: {points}"


def far_slot_from_axis(points, axis):
    """Slot of the vertex farthest from the axis: opposite the unique side
    separating the triangle from both axis endpoints."""
    hits = []
    for s in range(3):
        p, q = points[(s + 1) % 3], points[(s + 2) % 3]
        r = points[s]
        ok = True
        for e in axis:
            if e == p or e == q:
                continue
            if in_ccw_arc(e, p, q) == in_ccw_arc(r, p, q):
                ok = False
        if ok:
            hits.append(s)
    assert len(hits) == 1, f"ambiguous far vertex: {hits} for {points} vs {axis}"
    return hits[0]


# ---------------------------------------------------------------------------
# Fixture assembly with verification
# ---------------------------------------------------------------------------


class Fixture:
    def __init__(self, name, genus, env, closed_words, relator, base_triangle, annot_radius=4):
        self.name = name
        self.genus = genus
        self.env = env
        self.closed_words = closed_words
        self.relator = relator
        self.base_triangle = base_triangle
        self.tri_lifts = {}
        self.leaves = {}
        self.closed = {}
        self.axes = {}
        for cid, w in closed_words.items():
            m = eval_word(w, env)
            att, rep = fixed_points(m)
            self.axes[cid] = {"att": att, "rep": rep, "mat": m}
        r = eval_word(relator, env)
        assert r[0][1] == 0 and r[1][0] == 0 and r[0][0] == r[1][1], f"relator not scalar: {r}"
        self.annot = Annotator(env, closed_words, annot_radius)
        self._side_table = None

    # -- data entry ----------------------------------------------------
    def add_triangle(self, cls, points):
        points = tuple(pt(p) for p in points)
        assert_clockwise(points)
        self.tri_lifts[cls] = points

    def lift_points(self, cls, transport):
        return tuple(mact(transport, p) for p in self.tri_lifts[cls])

    def add_leaf(self, lid, pos, neg, left, right, pos_target, neg_target):
        """left/right: (class, transport matrix) of the adjacent lifts of the
        standard leaf lift (pos, neg)."""
        pos, neg = pt(pos), pt(neg)
        rec = {"id": lid, "pos": pos, "neg": neg}
        for side_name, (cls, transport) in (("left", left), ("right", right)):
            points = self.lift_points(cls, transport)
            assert pos in points and neg in points, f"leaf {lid}: {side_name} lift misses an endpoint"
            third = next(p for p in points if p not in (pos, neg))
            assert on_left(third, neg, pos) == (side_name == "left"), (
                f"leaf {lid}: {side_name} triangle on the wrong side")
            x, y = points.index(pos), points.index(neg)
            if side_name == "left":
                assert y == (x + 1) % 3, f"leaf {lid}: left slots not clockwise (x,y,z)"
            else:
                assert y == (x + 2) % 3, f"leaf {lid}: right slots not clockwise (x,z,y)"
            rec[side_name] = {"cls": cls, "x": x, "y": y, "transport": transport}
        for which, p, (cid, side) in (("pos", pos, pos_target), ("neg", neg, neg_target)):
            a = self.annot.annotate(p)
            assert a["closed_leaf"] == cid, f"leaf {lid} {which} end is not on a lift of {cid}"
            rec[which + "_end"] = {
                "closed_leaf": cid,
                "side": side,
                "direction": "with" if a["end"] == "+" else "against",
            }
        self.leaves[lid] = rec
        self._side_table = None

    def add_closed(self, cid, arc_left, arc_right, period_left, period_right):
        ax = self.axes[cid]
        axis = (ax["rep"], ax["att"])
        entry = {"id": cid}
        for side_name, (cls, transport), period in (
            ("left", arc_left, period_left),
            ("right", arc_right, period_right),
        ):
            points = self.lift_points(cls, transport)
            for p in points:
                if p in axis:
                    continue
                assert on_left(p, axis[0], axis[1]) == (side_name == "left"), (
                    f"arc endpoint triangle of {cid} on the wrong side ({side_name})")
            far = far_slot_from_axis(points, axis)
            entry["arc_" + side_name] = {"triangle": cls, "far_slot": far, "points": points}
            entry["period_" + side_name] = self._verify_period(cid, side_name, period)
        self.closed[cid] = entry

    def _verify_period(self, cid, side_name, period):
        ax = self.axes[cid]
        axis = (ax["rep"], ax["att"])
        assert len(period) % 2 == 0 and len(period) >= 2
        strands, spikes = [], []
        for i, item in enumerate(period):
            if i % 2 == 0:
                lid, transport = item
                leaf = self.leaves[lid]
                a, b = mact(transport, leaf["pos"]), mact(transport, leaf["neg"])
                if a in axis:
                    which, endp, far = "pos", a, b
                elif b in axis:
                    which, endp, far = "neg", b, a
                else:
                    raise AssertionError(f"strand {lid} misses the axis of {cid}")
                tgt = leaf[which + "_end"]
                assert tgt["closed_leaf"] == cid and tgt["side"] == side_name, (
                    f"{lid} {which} end does not belong to {cid}:{side_name}")
                expected_endp = ax["att"] if tgt["direction"] == "with" else ax["rep"]
                assert endp == expected_endp, f"strand {lid}: wrong axis endpoint for its direction"
                assert on_left(far, axis[0], axis[1]) == (side_name == "left"), (
                    f"strand {lid} far endpoint on the wrong side")
                strands.append((lid, which, endp, far))
            else:
                cls, transport = item
                spikes.append((cls, self.lift_points(cls, transport)))
        k = len(strands)
        items = []
        for closure in (ax["mat"], minv(ax["mat"])):
            ok = True
            trial = []
            for i in range(k):
                lid, which, endp, far_prev = strands[i]
                if i + 1 < k:
                    _, _, nendp, far_next = strands[i + 1]
                else:
                    nlid, nwhich, nendp, nfar = strands[0]
                    far_next = mact(closure, nfar)
                cls, points = spikes[i]
                if set(points) != {endp, far_prev, far_next}:
                    ok = False
                    break
                trial.append({"kind": "leaf_end", "leaf": lid, "end": which})
                trial.append({"kind": "spike", "triangle": cls, "slot": points.index(endp)})
            if ok:
                items = trial
                break
        assert items, f"{cid}:{side_name}: period does not close with either holonomy direction"
        return items

    # -- derived data ----------------------------------------------------
    def derive_spikes(self):
        spikes = {cls: [None, None, None] for cls in self.tri_lifts}
        for cid, entry in self.closed.items():
            for side_name in ("left", "right"):
                items = entry["period_" + side_name]
                dirn = None
                for it in items:
                    if it["kind"] == "leaf_end":
                        leaf = self.leaves[it["leaf"]]
                        dirn = leaf[("pos" if it["end"] == "pos" else "neg") + "_end"]["direction"]
                for it in items:
                    if it["kind"] == "spike":
                        tgt = {"closed_leaf": cid, "side": side_name, "direction": dirn}
                        cur = spikes[it["triangle"]][it["slot"]]
                        assert cur is None or cur == tgt, f"conflicting spike {it}"
                        spikes[it["triangle"]][it["slot"]] = tgt
        for cls, arr in spikes.items():
            assert all(x is not None for x in arr), f"{cls} has unassigned spikes: {arr}"
        return spikes

    # -- dual-path BFS -----------------------------------------------------
    def side_table(self):
        if self._side_table is None:
            table = {}
            for lid, leaf in self.leaves.items():
                for side in ("left", "right"):
                    rec = leaf[side]
                    key = (rec["cls"], frozenset((rec["x"], rec["y"])))
                    assert key not in table, f"duplicate side {key}"
                    table[key] = (lid, side == "left")
            self._side_table = table
        return self._side_table

    def neighbors(self, state):
        cls, points = state
        out = []
        for s0 in range(3):
            pair = frozenset((s0, (s0 + 1) % 3))
            lid, we_left = self.side_table()[(cls, pair)]
            leaf = self.leaves[lid]
            src = leaf["left" if we_left else "right"]
            dst = leaf["right" if we_left else "left"]
            src_points = self.lift_points(src["cls"], src["transport"])
            dst_points = self.lift_points(dst["cls"], dst["transport"])
            m = mobius_three(src_points, points)
            npoints = tuple(mact(m, p) for p in dst_points)
            out.append((("leaf", lid, we_left), (dst["cls"], npoints)))
        for cid, entry in self.closed.items():
            for side_name, other in (("left", "right"), ("right", "left")):
                rec = entry["arc_" + side_name]
                if rec["triangle"] != cls:
                    continue
                m = mobius_three(rec["points"], points)
                dst = entry["arc_" + other]
                npoints = tuple(mact(m, p) for p in dst["points"])
                out.append((("arc", cid, side_name == "left"), (dst["triangle"], npoints)))
        return out

    def find_path(self, start, target, max_depth=8):
        seen = {start: (None, None, 0)}
        q = deque([start])
        while q:
            cur = q.popleft()
            if cur == target:
                moves = []
                node = cur
                while seen[node][0] is not None:
                    prev, mv, _ = seen[node]
                    moves.append(mv)
                    node = prev
                return list(reversed(moves))
            depth = seen[cur][2]
            if depth >= max_depth:
                continue
            for mv, nxt in self.neighbors(cur):
                if nxt not in seen:
                    seen[nxt] = (cur, mv, depth + 1)
                    q.append(nxt)
        raise AssertionError("no dual path found")

    def generator_paths(self):
        base = self.tri_lifts[self.base_triangle]
        paths = {}
        for g in sorted(self.env):
            m = self.env[g]
            target = (self.base_triangle, tuple(mact(m, p) for p in base))
            mvs = self.find_path((self.base_triangle, base), target)
            paths[g] = [{"kind": k, "id": i, "from": "left" if l else "right"} for (k, i, l) in mvs]
        return paths

    def arc_loop(self, cid, side_name):
        rec = self.closed[cid]["arc_" + side_name]
        start = (rec["triangle"], rec["points"])
        hol = self.axes[cid]["mat"]
        target = (rec["triangle"], tuple(mact(hol, p) for p in rec["points"]))
        mvs = self.find_path(start, target)
        for k, i, l in mvs:
            assert k == "leaf", "arc loops must stay inside the component"
        return [{"kind": k, "id": i, "from": "left" if l else "right"} for (k, i, l) in mvs]

    # -- global disjointness spot check -------------------------------------
    def check_disjoint(self, radius=3):
        ball = word_ball(self.env, radius)
        lifts = []
        for lid, leaf in self.leaves.items():
            for w, m in ball:
                lifts.append((lid, mact(m, leaf["pos"]), mact(m, leaf["neg"])))
        for cid, ax in self.axes.items():
            for w, m in ball:
                lifts.append((cid, mact(m, ax["att"]), mact(m, ax["rep"])))
        uniq = {}
        for lid, a, b in lifts:
            uniq[frozenset((a, b))] = lid
        geos = [(frozenset(k), v) for k, v in uniq.items()]
        pts = [tuple(sorted(k, key=lambda p: (p[1] == 0, p[0]))) for k, v in geos]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                a, b = pts[i]
                c, d = pts[j]
                if len({a, b, c, d}) < 4:
                    continue
                assert not linked(a, b, c, d), f"leaves cross: {geos[i][1]} and {geos[j][1]}"

    # -- emission ------------------------------------------------------------
    def emit(self):
        spikes = self.derive_spikes()
        lam = {
            "name": self.name,
            "genus": self.genus,
            "closed_leaves": [],
            "infinite_leaves": [],
            "triangles": [],
            "spiral_orders": {},
        }
        for cid in sorted(self.closed):
            entry = self.closed[cid]
            lam["closed_leaves"].append({
                "id": cid,
                "arc": {
                    "left": {"triangle": entry["arc_left"]["triangle"], "far_slot": entry["arc_left"]["far_slot"]},
                    "right": {"triangle": entry["arc_right"]["triangle"], "far_slot": entry["arc_right"]["far_slot"]},
                },
            })
            lam["spiral_orders"][cid] = {"left": entry["period_left"], "right": entry["period_right"]}
        for lid in sorted(self.leaves):
            leaf = self.leaves[lid]
            lam["infinite_leaves"].append({
                "id": lid,
                "pos_end": leaf["pos_end"],
                "neg_end": leaf["neg_end"],
                "left": {"triangle": leaf["left"]["cls"], "x_slot": leaf["left"]["x"], "y_slot": leaf["left"]["y"]},
                "right": {"triangle": leaf["right"]["cls"], "x_slot": leaf["right"]["x"], "y_slot": leaf["right"]["y"]},
            })
        for cls in sorted(self.tri_lifts):
            lam["triangles"].append({"id": cls, "spikes": spikes[cls]})

        atlas = {
            "lamination": self.name,
            "generators": sorted(self.env.keys()),
            "relator": self.relator,
            "closed_words": self.closed_words,
            "triangle_annotations": {},
            "infinite_annotations": {},
            "closed_annotations": {},
            "triangle_annotations_alt": {},
            "infinite_annotations_alt": {},
            "closed_annotations_alt": {},
            "base_triangle": self.base_triangle,
            "generator_paths": self.generator_paths(),
            "arc_loops": {},
        }
        alt_g = sorted(self.env.keys())[0]

        def alt(a):
            return {"conj": [alt_g] + a["conj"], "closed_leaf": a["closed_leaf"], "end": a["end"]}

        for cls in sorted(self.tri_lifts):
            arr = [self.annot.annotate(p) for p in self.tri_lifts[cls]]
            atlas["triangle_annotations"][cls] = arr
            atlas["triangle_annotations_alt"][cls] = [alt(a) for a in arr]
        for lid in sorted(self.leaves):
            leaf = self.leaves[lid]
            lrec, rrec = leaf["left"], leaf["right"]
            z = self.lift_points(lrec["cls"], lrec["transport"])[(lrec["x"] + 2) % 3]
            zp = self.lift_points(rrec["cls"], rrec["transport"])[(rrec["x"] + 1) % 3]
            quad = {
                "x": self.annot.annotate(leaf["pos"]),
                "y": self.annot.annotate(leaf["neg"]),
                "z": self.annot.annotate(z),
                "zp": self.annot.annotate(zp),
            }
            atlas["infinite_annotations"][lid] = quad
            atlas["infinite_annotations_alt"][lid] = {k: alt(v) for k, v in quad.items()}
        for cid in sorted(self.closed):
            entry = self.closed[cid]
            lrec, rrec = entry["arc_left"], entry["arc_right"]
            quad = {
                "x": {"conj": [], "closed_leaf": cid, "end": "+"},
                "y": {"conj": [], "closed_leaf": cid, "end": "-"},
                "z": self.annot.annotate(lrec["points"][lrec["far_slot"]]),
                "zp": self.annot.annotate(rrec["points"][rrec["far_slot"]]),
            }
            atlas["closed_annotations"][cid] = quad
            atlas["closed_annotations_alt"][cid] = {k: alt(v) for k, v in quad.items()}
            atlas["arc_loops"][cid] = {
                "left_loop": self.arc_loop(cid, "left"),
                "right_loop": self.arc_loop(cid, "right"),
            }
        return lam, atlas


def rep_json(env):
    gens = {}
    for g in sorted(env):
        m = env[g]
        gens[g] = [[str(m[0][0]), str(m[0][1])], [str(m[1][0]), str(m[1][1])]]
    return {"n": 2, "generators": gens}


def reflection(p, q):
    """Reflection across the geodesic with endpoints p, q (boundary action)."""
    p, q = pt(p), pt(q)
    if q == INF:
        p, q = q, p
    if p == INF:
        return M(-1, 2 * q[0], 0, 1)
    a, b = p[0], q[0]
    return M(a + b, -2 * a * b, 2, -(a + b))


# ---------------------------------------------------------------------------
# Fixture 1: genus-2 double of a pair of pants (s = 3)
# ---------------------------------------------------------------------------


def build_pants_double(reverse_c1=False):
    X = M(Fr(-5, 2), 1, -1, 0)
    Y = M(0, 2, Fr(-1, 2), Fr(-5, 2))
    r1 = reflection(Fr(1, 2), 2)
    r2 = reflection(-4, -1)
    r3 = reflection(5, INF)

    def norm_det1(m):
        r = isqrt_fr(abs(mdet(m)))
        assert r is not None
        return ((m[0][0] / r, m[0][1] / r), (m[1][0] / r, m[1][1] / r))

    U = norm_det1(mmul(r1, r2))
    V = norm_det1(mmul(r1, r3))
    env = {"X": X, "Y": Y, "U": U, "V": V}
    Xi, Yi, Ui, Vi = minv(X), minv(Y), minv(U), minv(V)

    relator = ["V", "Y^-1", "X^-1", "V^-1", "X", "U", "Y", "U^-1"]
    # reversing the orientation of c1 is free data; it flips that leaf's
    # sides and makes the spiraling run against the orientation, exercising
    # the other two side-product cases
    closed_words = {"c1": ["X^-1"] if reverse_c1 else ["X"], "c2": ["Y"], "c3": ["X", "Y"]}
    name = "pants_double_rev" if reverse_c1 else "pants_double"
    fx = Fixture(name, 2, env, closed_words, relator, "TA")

    assert fixed_points(X) == (pt(2), pt(Fr(1, 2)))
    assert fixed_points(Y) == (pt(-1), pt(-4))
    assert fixed_points(mmul(X, Y)) == (pt(5), INF)

    def r1p(v):
        return mact(r1, pt(v))

    # standard triangle lifts, clockwise slot order
    fx.add_triangle("TA", (5, 2, -1))
    fx.add_triangle("TB", (2, Fr(-2, 5), -1))
    fx.add_triangle("TpA", (r1p(2), r1p(5), r1p(-1)))           # (2, 7/5, 1)
    fx.add_triangle("TpB", (r1p(2), r1p(-1), r1p(Fr(-2, 5))))   # (2, 1, 10/11)

    # front leaves; reversing c1 swaps which of its sides is which
    c1f = "right" if reverse_c1 else "left"   # side of c1 facing the front pants
    c1b = "left" if reverse_c1 else "right"
    fx.add_leaf("g12", 2, -1, ("TA", IDM), ("TB", IDM), ("c1", c1f), ("c2", "left"))
    fx.add_leaf("g23", -1, 5, ("TA", IDM), ("TB", Yi), ("c2", "left"), ("c3", "right"))
    fx.add_leaf("g31", 5, 2, ("TA", IDM), ("TB", X), ("c3", "right"), ("c1", c1f))
    # mirror leaves (left/right of the oriented lift swap under the mirror)
    Y2i = mmul(U, Yi, Ui)
    fx.add_leaf("gp12", r1p(2), r1p(-1), ("TpB", IDM), ("TpA", IDM), ("c1", c1b), ("c2", "right"))
    fx.add_leaf("gp23", r1p(-1), r1p(5), ("TpB", Y2i), ("TpA", IDM), ("c2", "right"), ("c3", "left"))
    fx.add_leaf("gp31", r1p(5), r1p(2), ("TpB", X), ("TpA", IDM), ("c3", "left"), ("c1", c1b))

    # closed leaves: arcs and one spiral period per side
    front_arc, back_arc = ("TB", IDM), ("TpB", IDM)
    front_period = [("g12", IDM), ("TA", IDM), ("g31", IDM), ("TB", X)]
    back_period = [("gp12", IDM), ("TpA", IDM), ("gp31", IDM), ("TpB", X)]
    if reverse_c1:
        fx.add_closed("c1", back_arc, front_arc, back_period, front_period)
    else:
        fx.add_closed("c1", front_arc, back_arc, front_period, back_period)
    _SKIP = reverse_c1  # identical geometry to the base fixture
    fx.add_closed(
        "c2",
        ("TA", IDM),
        ("TpA", Ui),
        [("g12", IDM), ("TA", IDM), ("g23", IDM), ("TB", Yi)],
        [("gp12", Ui), ("TpA", Ui), ("gp23", Ui), ("TpB", mmul(Yi, Ui))],
    )
    fx.add_closed(
        "c3",
        ("TpA", Vi),
        ("TA", IDM),
        [("gp23", Vi), ("TpA", Vi), ("gp31", Vi), ("TpB", mmul(Vi, X))],
        [("g23", IDM), ("TA", IDM), ("g31", IDM), ("TB", X)],
    )

    # the reversed variant relabels orientation data on the same geodesics,
    # so the expensive embedding check only needs to run once
    fx.check_disjoint(radius=2 if reverse_c1 else 3)
    return fx, env


# ---------------------------------------------------------------------------
# Fixture 2: genus-2 double of a one-holed torus (s = 1)
# ---------------------------------------------------------------------------


# ---------------------------------------------------------------------------
# Fixture 2: genus-2 double of a one-holed torus (s = 1)
# ---------------------------------------------------------------------------


def in_arc_avoiding(z, a, b, avoid):
    """z in the closed-at-a, open-at-b arc from a to b not through `avoid`."""
    if z == a:
        return True
    if z == b:
        return False
    if in_ccw_arc(avoid, a, b):
        return in_ccw_arc(z, b, a)
    return in_ccw_arc(z, a, b)


def build_torus_double():
    # trace triple (3, 3, 9/2): commutator trace -17/4 with rational
    # eigenvalues (-4, -1/4)
    A = M(3, 1, -1, 0)
    B = M(1, Fr(1, 2), 2, 2)
    K = mmul(A, B, minv(A), minv(B))
    assert K[0][0] + K[1][1] == Fr(-17, 4)
    attK, repK = fixed_points(K)
    r = reflection(attK, repK)
    A2 = mmul(r, A, r)
    B2 = mmul(r, B, r)
    for g, m in (("A2", A2), ("B2", B2)):
        assert all(x.denominator >= 1 for row in m for x in row)
    env = {"A": A, "B": B, "C": A2, "D": B2}
    relator = ["A", "B", "A^-1", "B^-1", "D", "C", "D^-1", "C^-1"]
    closed_words = {"c1": ["A", "B", "A^-1", "B^-1"]}

    # Ideal quadrilateral fundamental domain with side pairings
    # A: (q1, q2) -> (q4, q3) and B: (q2, q3) -> (q1, q4); solving the
    # pairing consistency forces q1 = A^-1 w for a fixed point w of the
    # boundary commutator, and then q2 = B^-1 A^-1 w, q3 = A B^-1 A^-1 w,
    # q4 = w. Spinning the triangulation around the boundary replaces the
    # ideal vertices by this orbit of w.
    Ai, Bi = minv(A), minv(B)
    q1w, q2w, q3w, q4w = Ai, mmul(Bi, Ai), mmul(A, Bi, Ai), IDM
    t1, t2, t3, t4 = A, mmul(A, B), mmul(A, B, Ai), IDM  # transports to w
    variants = [
        {
            "tris": [(q1w, q2w, q3w), (q1w, q3w, q4w)],  # diagonal (q1, q3)
            "leaves": [
                ("la", q1w, q2w, t1, t2),
                ("lb", q2w, q3w, t2, t3),
                ("ld", q1w, q3w, t1, t3),
            ],
        },
        {
            "tris": [(q1w, q2w, q4w), (q2w, q3w, q4w)],  # diagonal (q2, q4)
            "leaves": [
                ("la", q1w, q2w, t1, t2),
                ("lb", q2w, q3w, t2, t3),
                ("ld", q2w, q4w, t2, t4),
            ],
        },
    ]
    last = None
    for omega in (attK, repK):
        for vi, variant in enumerate(variants):
            try:
                return assemble_torus(env, relator, closed_words, K, r, omega, variant), env
            except AssertionError as e:
                last = AssertionError(f"omega={omega} variant={vi}: {e}")
    raise last


def assemble_torus(env, relator, closed_words, K, r, omega, variant):
    fx = Fixture("torus_double", 2, env, closed_words, relator, "TA", annot_radius=5)
    ax = fx.axes["c1"]
    assert omega in (ax["att"], ax["rep"])

    def cw(points):
        return points if not ccw(points[0], points[1], points[2]) else (points[0], points[2], points[1])

    def rconj(m):
        return mmul(r, m, r)

    tris = {}
    for name, words in zip(("TA", "TB"), variant["tris"]):
        pts = cw(tuple(mact(w, omega) for w in words))
        tris[name] = pts
        fx.add_triangle(name, pts)
    for name in ("TA", "TB"):
        pts = cw(tuple(mact(r, p) for p in tris[name]))
        tris["Tp" + name[1]] = pts
        fx.add_triangle("Tp" + name[1], pts)

    ball = word_ball(env, 4)

    def find_adjacent(p, q):
        found = {}
        for cls in ("TA", "TB", "TpA", "TpB"):
            base = fx.tri_lifts[cls]
            for word, m in ball:
                pts = tuple(mact(m, x) for x in base)
                if p in pts and q in pts:
                    third = next(x for x in pts if x not in (p, q))
                    side = "left" if on_left(third, q, p) else "right"
                    found.setdefault(side, (cls, m))
            if "left" in found and "right" in found:
                break
        assert "left" in found and "right" in found, f"no adjacency for ({p}, {q})"
        return found["left"], found["right"]

    front_is_left = on_left(mact(variant["leaves"][0][2], omega), ax["rep"], ax["att"])
    front_side = "left" if front_is_left else "right"
    back_side = "right" if front_is_left else "left"

    strand_transports = {}  # (leaf id, 'pos'/'neg') -> transport
    for lid, wp, wq, tp, tq in variant["leaves"]:
        p, q = mact(wp, omega), mact(wq, omega)
        assert mact(tp, p) == omega and mact(tq, q) == omega, f"bad strand transports for {lid}"
        left, right = find_adjacent(p, q)
        fx.add_leaf(lid, p, q, left, right, ("c1", front_side), ("c1", front_side))
        strand_transports[(lid, "pos")] = tp
        strand_transports[(lid, "neg")] = tq
        pm, qm = mact(r, p), mact(r, q)
        lm, rm = find_adjacent(pm, qm)
        fx.add_leaf(lid + "m", pm, qm, lm, rm, ("c1", back_side), ("c1", back_side))
        strand_transports[(lid + "m", "pos")] = rconj(tp)
        strand_transports[(lid + "m", "neg")] = rconj(tq)

    def one_period(side):
        mirror = side == back_side
        leaves = [l[0] + ("m" if mirror else "") for l in variant["leaves"]]
        raw = []
        for lid in leaves:
            for which in ("pos", "neg"):
                t = strand_transports[(lid, which)]
                leaf = fx.leaves[lid]
                a, b = mact(t, leaf["pos"]), mact(t, leaf["neg"])
                far = b if a == omega else a
                assert omega in (a, b) and far != omega, f"strand {lid}:{which} misses omega"
                assert on_left(far, ax["rep"], ax["att"]) == (side == "left"), (
                    f"strand {lid}:{which} on the wrong side for {side}")
                raw.append([lid, t, far])
        # normalize all strands into the K-period window anchored at the
        # first strand's far endpoint
        hol = ax["mat"]
        anchor = raw[0][2]
        bound = mact(hol, anchor)
        for item in raw[1:]:
            placed = False
            t = item[1]
            for j in range(-6, 7):
                tj = t
                for _ in range(abs(j)):
                    tj = mmul(hol, tj) if j > 0 else mmul(minv(hol), tj)
                leaf = fx.leaves[item[0]]
                aa, bb = mact(tj, leaf["pos"]), mact(tj, leaf["neg"])
                if omega not in (aa, bb):
                    continue
                fj = bb if aa == omega else aa
                if in_arc_avoiding(fj, anchor, bound, ax["rep"] if omega == ax["att"] else ax["att"]):
                    item[1], item[2] = tj, fj
                    placed = True
                    break
            assert placed, f"could not normalize strand {item[0]} into the period window"
        # sort along the window
        avoid = ax["rep"] if omega == ax["att"] else ax["att"]

        def less(i1, i2):
            if raw[i1][2] == raw[i2][2]:
                return False
            return in_arc_avoiding(raw[i2][2], raw[i1][2], bound, avoid)

        order = list(range(len(raw)))
        for i in range(1, len(order)):
            k = i
            while k > 0 and less(order[k], order[k - 1]):
                order[k], order[k - 1] = order[k - 1], order[k]
                k -= 1

        def find_spike(f1, f2):
            target = {omega, f1, f2}
            for cls in ("TA", "TB", "TpA", "TpB"):
                base = fx.tri_lifts[cls]
                for word, m in ball:
                    pts = tuple(mact(m, x) for x in base)
                    if set(pts) == target:
                        return (cls, m)
            return None

        period = []
        for idx in range(len(order)):
            lid, t, far = raw[order[idx]]
            if idx + 1 < len(order):
                spike = find_spike(far, raw[order[idx + 1]][2])
            else:
                # period closure: the next strand is a holonomy translate of
                # the first, in whichever direction the order runs
                spike = find_spike(far, mact(hol, raw[order[0]][2])) or find_spike(
                    far, mact(minv(hol), raw[order[0]][2]))
            assert spike, f"no spike triangle after {far} on {side}"
            period.append((lid, t))
            period.append(spike)
        return period

    period_left = one_period("left")
    period_right = one_period("right")

    arc_front = ("TA", IDM)
    arc_back = ("TpA", IDM)
    if front_side == "left":
        fx.add_closed("c1", arc_front, arc_back, period_left, period_right)
    else:
        fx.add_closed("c1", arc_back, arc_front, period_left, period_right)

    fx.check_disjoint(radius=3)
    return fx


def emit_fixture(fx, env, name):
    lam, atlas = fx.emit()
    (OUT / f"{name}.lam.json").write_text(json.dumps(lam, indent=1) + "\n")
    (OUT / f"{name}.atlas.json").write_text(json.dumps(atlas, indent=1) + "\n")
    (OUT / f"{name}.rep2.json").write_text(json.dumps(rep_json(env), indent=1) + "\n")
    print(f"{name}: ok")
    print("  generator paths:", {g: len(p) for g, p in atlas["generator_paths"].items()})
    print("  arc loops:", {c: (len(l["left_loop"]), len(l["right_loop"])) for c, l in atlas["arc_loops"].items()})


def main():
    OUT.mkdir(exist_ok=True)
    fx, env = build_pants_double()
    emit_fixture(fx, env, "pants_double")
    fxr, envr = build_pants_double(reverse_c1=True)
    emit_fixture(fxr, envr, "pants_double_rev")
    fx2, env2 = build_torus_double()
    emit_fixture(fx2, env2, "torus_double")


if __name__ == "__main__":
    main()
