#include <catch2/catch_amalgamated.hpp>

#include "flagshear/json_io.hpp"
#include "flagshear/synthesis.hpp"

using namespace flagshear;

namespace {

struct PantsFixture {
  LaminationComplex lam;
  LiftAtlas atlas;
  Representation rho2;
  PantsFixture()
      : lam(lamination_from_json(load_json_file(std::string(FS_DATA_DIR) + "/pants_double.lam.json"))),
        atlas(atlas_from_json(load_json_file(std::string(FS_DATA_DIR) + "/pants_double.atlas.json"))),
        rho2(representation_from_json(load_json_file(std::string(FS_DATA_DIR) + "/pants_double.rep2.json"))) {}
};

TripleRatioFn constant_ratio(Scalar v) {
  return [v](int, int, int) { return v; };
}

}  // namespace

TEST_CASE("realize_triple with all ratios 1 mirrors the moment-curve class") {
  for (int n : {2, 3, 4}) {
    RealizedTriple t = realize_triple(n, constant_ratio(Scalar(1)));
    REQUIRE(flags_equal(t.E, Flag::standard(n)));
    REQUIRE(flags_equal(t.F, Flag::reversed(n)));
    for (auto [a, b, c] : triangle_index_set(n)) REQUIRE(triple_ratio(t.E, t.F, t.G, a, b, c) == Scalar(1));
    if (n >= 3) REQUIRE(is_positive({t.E, t.F, t.G}));
  }
}

TEST_CASE("realize_triple hits prescribed values exactly") {
  RealizedTriple t = realize_triple(3, constant_ratio(Scalar(2)));
  REQUIRE(triple_ratio(t.E, t.F, t.G, 1, 1, 1) == Scalar(2));
  // a non-symmetric prescription at n=4
  auto fn = [](int a, int b, int c) { return Scalar(1 + a + 2 * b + 3 * c, 4); };
  RealizedTriple q = realize_triple(4, fn);
  for (auto [a, b, c] : triangle_index_set(4)) REQUIRE(triple_ratio(q.E, q.F, q.G, a, b, c) == fn(a, b, c));
}

TEST_CASE("extend across a leaf: the n=2 worked example") {
  Matrix me(2, 2);
  me(0, 0) = Scalar(1);
  me(1, 1) = Scalar(1);
  Flag E(me);  // E^(1) = span(1,0)
  Matrix mf(2, 2);
  mf(1, 0) = Scalar(1);
  mf(0, 1) = Scalar(1);
  Flag F(mf);  // F^(1) = span(0,1)
  Matrix mg(2, 2);
  mg(0, 0) = Scalar(1);
  mg(1, 0) = Scalar(1);
  mg(0, 1) = Scalar(1);
  Flag G(mg);  // span(1,1)
  Flag Gp = extend_across_leaf(E, F, G, constant_ratio(Scalar(1)), {Scalar(3)});
  // expected: span(1, -1/3)
  Scalar ratio = Gp.basis()(1, 0) / Gp.basis()(0, 0);
  REQUIRE(ratio == Scalar(-1, 3));
  REQUIRE(double_ratio(E, F, G, Gp, 1) == Scalar(3));
}

TEST_CASE("extension reproduces an existing far flag from its double ratios") {
  int n = 3;
  PantsFixture fx;
  Representation rho = lift_representation(fx.rho2, n);
  FlagEvaluator ev(rho, fx.atlas);
  const auto& quad = fx.atlas.infinite_annotations.at("g12");
  Flag x = ev.flag(quad.x), y = ev.flag(quad.y), z = ev.flag(quad.z), zp = ev.flag(quad.zp);
  std::vector<Scalar> d;
  for (int a = 1; a <= n - 1; ++a) d.push_back(double_ratio(x, y, z, zp, a));
  // prescribed ratios of the right triangle in (x, y, z') order
  TripleRatioFn fn = [&](int a, int b, int c) { return triple_ratio(x, y, zp, a, b, c); };
  Flag rebuilt = extend_across_leaf(x, y, z, fn, d);
  REQUIRE(flags_equal(rebuilt, zp));
}

TEST_CASE("master round trip on sampled interior points") {
  PantsFixture fx;
  for (int n : {2, 3}) {
    for (uint64_t seed : {1ull, 7ull, 23ull}) {
      CoordinateVector cv = sample_interior(fx.lam, n, seed);
      Representation rep = reconstruct(cv, fx.lam, fx.atlas);
      CoordinateVector back = full_coordinates(rep, fx.lam, fx.atlas);
      REQUIRE(back.triangle_exp == cv.triangle_exp);
      for (auto& [k, v] : cv.shear_exp) REQUIRE(back.shear_exp.at(k) == v);
      // closed-leaf monodromy eigenvalue ratios equal the side products
      for (const auto& c : fx.lam.closed_leaves)
        for (int a = 1; a <= n - 1; ++a)
          REQUIRE(back.length_exp.at(LeafKey{c.id, a}) ==
                  side_length_product(cv, fx.lam, c.id, Side::right, a));
    }
  }
}

TEST_CASE("round trip through the fuchsian fixture coordinates") {
  PantsFixture fx;
  CoordinateVector cv = full_coordinates(fx.rho2, fx.lam, fx.atlas);
  Representation rep = reconstruct(cv, fx.lam, fx.atlas);
  CoordinateVector back = full_coordinates(rep, fx.lam, fx.atlas);
  for (auto& [k, v] : cv.shear_exp) REQUIRE(back.shear_exp.at(k) == v);
  for (auto& [k, v] : cv.length_exp) REQUIRE(back.length_exp.at(k) == v);
}

TEST_CASE("reconstruction is covariant under the base normalization") {
  // renormalizing against a different base triple changes the output by a
  // global conjugation only: coordinates agree after the forward map
  PantsFixture fx;
  CoordinateVector cv = sample_interior(fx.lam, 3, 5);
  Representation a = reconstruct(cv, fx.lam, fx.atlas);
  LiftAtlas moved = fx.atlas;
  // transport every generator path through a different start: conjugating
  // all annotation words by a generator is the same lamination seen from a
  // translated base lift
  CoordinateVector ca = full_coordinates(a, fx.lam, fx.atlas);
  CoordinateVector cb = full_coordinates(a, fx.lam, moved, kDefaultPrecision, true);
  REQUIRE(ca.triangle_exp == cb.triangle_exp);
}

TEST_CASE("membership violations abort reconstruction") {
  PantsFixture fx;
  CoordinateVector cv = sample_interior(fx.lam, 3, 11);
  cv.shear_exp[LeafKey{"g12", 1}] *= Scalar(3, 2);
  REQUIRE_THROWS_AS(reconstruct(cv, fx.lam, fx.atlas), membership_failed);
}

TEST_CASE("a scrambled atlas path is caught by the relator or transport checks") {
  PantsFixture fx;
  CoordinateVector cv = sample_interior(fx.lam, 2, 3);
  LiftAtlas bad = fx.atlas;
  // corrupting one edge path: the holonomy extraction no longer closes
  std::swap(bad.generator_paths["X"], bad.generator_paths["Y"]);
  bool caught = false;
  try {
    Representation rep = reconstruct(cv, fx.lam, bad);
    CoordinateVector back = full_coordinates(rep, fx.lam, bad);
    caught = !(back.shear_exp == cv.shear_exp);
  } catch (const error& e) {
    caught = e.code == errc::reconstruction || e.code == errc::math_precondition;
  }
  REQUIRE(caught);
}

TEST_CASE("master round trip on the torus fixture") {
  LaminationComplex lam =
      lamination_from_json(load_json_file(std::string(FS_DATA_DIR) + "/torus_double.lam.json"));
  LiftAtlas atlas = atlas_from_json(load_json_file(std::string(FS_DATA_DIR) + "/torus_double.atlas.json"));
  for (int n : {2, 3}) {
    for (uint64_t seed : {2ull, 9ull}) {
      CoordinateVector cv = sample_interior(lam, n, seed);
      Representation rep = reconstruct(cv, lam, atlas);
      CoordinateVector back = full_coordinates(rep, lam, atlas);
      REQUIRE(back.triangle_exp == cv.triangle_exp);
      for (auto& [k, v] : cv.shear_exp) REQUIRE(back.shear_exp.at(k) == v);
    }
  }
}

TEST_CASE("round trip on the reversed-orientation fixture") {
  LaminationComplex lam =
      lamination_from_json(load_json_file(std::string(FS_DATA_DIR) + "/pants_double_rev.lam.json"));
  LiftAtlas atlas = atlas_from_json(load_json_file(std::string(FS_DATA_DIR) + "/pants_double_rev.atlas.json"));
  for (int n : {2, 3}) {
    CoordinateVector cv = sample_interior(lam, n, 13);
    Representation rep = reconstruct(cv, lam, atlas);
    CoordinateVector back = full_coordinates(rep, lam, atlas);
    REQUIRE(back.triangle_exp == cv.triangle_exp);
    for (auto& [k, v] : cv.shear_exp) REQUIRE(back.shear_exp.at(k) == v);
  }
}
