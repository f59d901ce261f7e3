#include <catch2/catch_amalgamated.hpp>

#include "flagshear/json_io.hpp"
#include "flagshear/polytope.hpp"

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
  Representation lifted(int n) const { return n == 2 ? rho2 : lift_representation(rho2, n); }
};

}  // namespace

TEST_CASE("fixture representation satisfies the relator exactly") {
  PantsFixture fx;
  Matrix r = fx.rho2.eval_word(fx.atlas.relator);
  bool plus = r == Matrix::identity(2);
  Matrix neg = Scalar(-1) * Matrix::identity(2);
  bool minus = r == neg;
  REQUIRE((plus || minus));
}

TEST_CASE("fuchsian triangle invariants are all 1") {
  PantsFixture fx;
  for (int n : {3, 4}) {
    Representation rho = fx.lifted(n);
    FlagEvaluator ev(rho, fx.atlas);
    for (const auto& t : fx.lam.triangles) {
      auto vals = triangle_invariants(ev, fx.lam, fx.atlas, t.id);
      for (auto& [k, v] : vals) REQUIRE(v == Scalar(1));
    }
  }
}

TEST_CASE("closed-leaf lengths follow the eigenvalue ladder") {
  PantsFixture fx;
  for (int n : {2, 3, 4}) {
    Representation rho = fx.lifted(n);
    FlagEvaluator ev(rho, fx.atlas);
    for (const auto& c : fx.lam.closed_leaves) {
      auto ell = lengths(ev, c.id);
      REQUIRE(static_cast<int>(ell.size()) == n - 1);
      // all simple-root lengths coincide for a lifted Fuchsian element
      for (auto& v : ell) REQUIRE(v == ell[0]);
      REQUIRE(ell[0] > Scalar(1));
    }
  }
}

TEST_CASE("length spectrum relation: side products match lengths (all four cases)") {
  PantsFixture fx;
  for (int n : {2, 3, 4}) {
    Representation rho = fx.lifted(n);
    CoordinateVector cv = full_coordinates(rho, fx.lam, fx.atlas);
    FlagEvaluator ev(rho, fx.atlas);
    for (const auto& c : fx.lam.closed_leaves) {
      auto ell = lengths(ev, c.id);
      for (Side side : {Side::left, Side::right}) {
        for (int a = 1; a <= n - 1; ++a) {
          Scalar lhs = side_length_product(cv, fx.lam, c.id, side, a);
          REQUIRE(lhs == ell[a - 1]);
        }
      }
    }
  }
}

TEST_CASE("fuchsian shear invariants: frozen regression values at n=2") {
  PantsFixture fx;
  CoordinateVector cv = full_coordinates(fx.rho2, fx.lam, fx.atlas);
  // Thurston shears of the doubled pants structure, computed once from the
  // fixture and frozen. The closed-leaf holonomies all have eigenvalue 2, so
  // exp ell = 4 and the equalities force the products below.
  for (const auto& c : fx.lam.closed_leaves) {
    REQUIRE(side_length_product(cv, fx.lam, c.id, Side::right, 1) == Scalar(4));
  }
  // the doubling mirror reverses orientation, so mirror leaves carry
  // reciprocal shears
  REQUIRE(cv.shear("g12", 1) * cv.shear("gp12", 1) == Scalar(1));
  REQUIRE(cv.shear("g23", 1) * cv.shear("gp23", 1) == Scalar(1));
  REQUIRE(cv.shear("g31", 1) * cv.shear("gp31", 1) == Scalar(1));
  // frozen values
  REQUIRE(cv.shear("g12", 1) == Scalar(1, 8));
  REQUIRE(cv.shear("g23", 1) == Scalar(2));
  REQUIRE(cv.shear("g31", 1) == Scalar(2));
  // the symmetric double has zero twist along every pants curve
  REQUIRE(cv.shear("c1", 1) == Scalar(1));
  REQUIRE(cv.shear("c2", 1) == Scalar(1));
  REQUIRE(cv.shear("c3", 1) == Scalar(1));
}

TEST_CASE("full coordinates pass membership and n=2 has no triangle data") {
  PantsFixture fx;
  CoordinateVector cv2 = full_coordinates(fx.rho2, fx.lam, fx.atlas);
  REQUIRE(cv2.triangle_exp.empty());
  auto rep = check_membership(cv2, fx.lam);
  REQUIRE(rep.pass);
  CoordinateVector cv3 = full_coordinates(fx.lifted(3), fx.lam, fx.atlas);
  for (auto& [k, v] : cv3.triangle_exp) REQUIRE(v == Scalar(1));
  REQUIRE(check_membership(cv3, fx.lam).pass);
}

TEST_CASE("conjugation invariance of every coordinate") {
  PantsFixture fx;
  int n = 3;
  Representation rho = fx.lifted(n);
  Matrix A = Matrix::from_rows({{Scalar(1), Scalar(2), Scalar(0)},
                                {Scalar(0), Scalar(1), Scalar(-1)},
                                {Scalar(1), Scalar(0), Scalar(1)}});
  REQUIRE_FALSE(det(A).is_zero());  // any invertible matrix acts projectively
  std::map<std::string, Matrix> gens;
  Matrix Ai = inverse(A);
  for (auto& [name, mtx] : rho.generators()) gens[name] = A * mtx * Ai;
  Representation conj(n, gens, true);
  CoordinateVector a = full_coordinates(rho, fx.lam, fx.atlas);
  CoordinateVector b = full_coordinates(conj, fx.lam, fx.atlas);
  REQUIRE(a.triangle_exp == b.triangle_exp);
  for (auto& [k, v] : a.shear_exp) REQUIRE(v == b.shear_exp.at(k));
  for (auto& [k, v] : a.length_exp) REQUIRE(v == b.length_exp.at(k));
}

TEST_CASE("well-definedness: alternative lift annotations give equal values") {
  PantsFixture fx;
  for (int n : {2, 3}) {
    Representation rho = fx.lifted(n);
    CoordinateVector a = assemble_coordinates(rho, fx.lam, fx.atlas, kDefaultPrecision, false);
    CoordinateVector b = assemble_coordinates(rho, fx.lam, fx.atlas, kDefaultPrecision, true);
    REQUIRE(a.triangle_exp == b.triangle_exp);
    for (auto& [k, v] : a.shear_exp) REQUIRE(v == b.shear_exp.at(k));
  }
}

TEST_CASE("orientation data drives the sigma index flip in side products") {
  // perturbing one infinite-leaf shear breaks exactly the equalities of the
  // two closed-leaf sides its ends touch
  PantsFixture fx;
  CoordinateVector cv = full_coordinates(fx.lifted(3), fx.lam, fx.atlas);
  cv.shear_exp[LeafKey{"g12", 1}] *= Scalar(7, 5);
  auto rep = check_membership(cv, fx.lam);
  REQUIRE_FALSE(rep.pass);
  // g12 spirals on c1 and c2; equalities of c3 stay intact
  for (auto& v : rep.violations) {
    REQUIRE(v.find("c3") == std::string::npos);
    REQUIRE(v.find("equality") != std::string::npos);
  }
  REQUIRE_FALSE(rep.violations.empty());
}

TEST_CASE("non-loxodromic words surface as errors") {
  PantsFixture fx;
  std::map<std::string, Matrix> gens;
  gens["X"] = Matrix::from_rows({{Scalar(0), Scalar(-1)}, {Scalar(1), Scalar(0)}});  // rotation
  for (auto& [name, mtx] : fx.rho2.generators())
    if (name != "X") gens[name] = mtx;
  Representation bad(2, gens);
  REQUIRE_THROWS_AS(full_coordinates(bad, fx.lam, fx.atlas), not_loxodromic);
}

TEST_CASE("torus fixture: forward map, lengths and membership, exact") {
  LaminationComplex lam =
      lamination_from_json(load_json_file(std::string(FS_DATA_DIR) + "/torus_double.lam.json"));
  LiftAtlas atlas = atlas_from_json(load_json_file(std::string(FS_DATA_DIR) + "/torus_double.atlas.json"));
  Representation rho2 =
      representation_from_json(load_json_file(std::string(FS_DATA_DIR) + "/torus_double.rep2.json"));
  for (int n : {2, 3}) {
    Representation rho = n == 2 ? rho2 : lift_representation(rho2, n);
    CoordinateVector cv = full_coordinates(rho, lam, atlas);
    FlagEvaluator ev(rho, atlas);
    auto ell = lengths(ev, "c1");
    for (Side side : {Side::left, Side::right})
      for (int a = 1; a <= n - 1; ++a)
        REQUIRE(side_length_product(cv, lam, "c1", side, a) == ell[a - 1]);
    if (n == 3)
      for (auto& [k, v] : cv.triangle_exp) REQUIRE(v == Scalar(1));
  }
}

TEST_CASE("reversed closed-leaf orientation: against-direction cases and index flip") {
  LaminationComplex lam =
      lamination_from_json(load_json_file(std::string(FS_DATA_DIR) + "/pants_double_rev.lam.json"));
  LiftAtlas atlas = atlas_from_json(load_json_file(std::string(FS_DATA_DIR) + "/pants_double_rev.atlas.json"));
  Representation rho2 =
      representation_from_json(load_json_file(std::string(FS_DATA_DIR) + "/pants_double_rev.rep2.json"));
  REQUIRE(lam.validate().valid);
  // the spiraling now runs against the orientation of c1 on both sides
  REQUIRE(lam.spiral_direction("c1", Side::left) == SpiralDir::against_orientation);
  REQUIRE(lam.spiral_direction("c1", Side::right) == SpiralDir::against_orientation);
  REQUIRE(lam.spiral_direction("c2", Side::left) == SpiralDir::with_orientation);

  PantsFixture base;
  for (int n : {2, 3, 4}) {
    Representation rho = n == 2 ? rho2 : lift_representation(rho2, n);
    CoordinateVector cv = full_coordinates(rho, lam, atlas);
    FlagEvaluator ev(rho, atlas);
    // the length spectrum relation holds in the against-direction cases too
    for (const auto& c : lam.closed_leaves) {
      auto ell = lengths(ev, c.id);
      for (Side side : {Side::left, Side::right})
        for (int a = 1; a <= n - 1; ++a)
          REQUIRE(side_length_product(cv, lam, c.id, side, a) == ell[a - 1]);
    }
    // reversing the orientation of c1 swaps its shear indices a <-> n-a
    CoordinateVector orig = full_coordinates(base.lifted(n), base.lam, base.atlas);
    for (int a = 1; a <= n - 1; ++a)
      REQUIRE(cv.shear("c1", a) == orig.shear("c1", n - a));
    // other leaves are untouched
    for (int a = 1; a <= n - 1; ++a) REQUIRE(cv.shear("g23", a) == orig.shear("g23", a));
  }
}

TEST_CASE("reversing an infinite leaf swaps its shear indices") {
  PantsFixture fx;
  int n = 3;
  Representation rho = fx.lifted(n);
  FlagEvaluator ev(rho, fx.atlas);
  auto quad = fx.atlas.infinite_annotations.at("g12");
  QuadAnnotation reversed{quad.y, quad.x, quad.zp, quad.z};  // flip orientation: x<->y, left<->right
  auto fwd = shear_from_quad(ev, quad, "g12");
  auto rev = shear_from_quad(ev, reversed, "g12-rev");
  for (int a = 1; a <= n - 1; ++a) REQUIRE(rev[a - 1] == fwd[n - a - 1]);
}

TEST_CASE("reversing a closed curve inverts the length spectrum order") {
  PantsFixture fx;
  int n = 4;
  Representation rho = fx.lifted(n);
  Matrix m = rho.eval_word(fx.atlas.closed_words.at("c2"));
  auto fwd = positive_eigendata(m);
  auto rev = positive_eigendata(inverse(m));
  for (int a = 0; a + 1 < n; ++a) {
    Scalar la = fwd.values[a] / fwd.values[a + 1];
    Scalar lrev = rev.values[n - 2 - a] / rev.values[n - 1 - a];
    REQUIRE(la == lrev);
  }
}
