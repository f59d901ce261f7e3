#include <catch2/catch_amalgamated.hpp>

#include "flagshear/json_io.hpp"
#include "flagshear/polytope.hpp"

using namespace flagshear;

namespace {
LaminationComplex pants() {
  return lamination_from_json(load_json_file(std::string(FS_DATA_DIR) + "/pants_double.lam.json"));
}
}  // namespace

TEST_CASE("variable counts after rotation identification") {
  auto lam = pants();
  ConstraintSystem cs3(lam, 3);
  // 4 triangles x 1 index class + 9 leaves x 2 = 22
  REQUIRE(cs3.variables().size() == 22);
  REQUIRE(cs3.equality_rows().size() == 6);
  ConstraintSystem cs2(lam, 2);
  REQUIRE(cs2.variables().size() == 9);
}

TEST_CASE("affine dimension matches 2(g-1)(n^2-1) on both fixtures") {
  auto lam = pants();
  REQUIRE(affine_dimension(lam, 2) == 6);
  REQUIRE(affine_dimension(lam, 3) == 16);
  REQUIRE(affine_dimension(lam, 4) == 30);
  auto torus = lamination_from_json(load_json_file(std::string(FS_DATA_DIR) + "/torus_double.lam.json"));
  REQUIRE(affine_dimension(torus, 2) == 6);
  REQUIRE(affine_dimension(torus, 3) == 16);
  REQUIRE(affine_dimension(torus, 4) == 30);
}

TEST_CASE("all-ones vector passes equalities, fails every inequality") {
  auto lam = pants();
  int n = 3;
  CoordinateVector cv;
  cv.n = n;
  cv.lamination = lam.name;
  for (const auto& t : lam.triangles)
    for (int s = 0; s < 3; ++s)
      for (auto [a, b, c] : triangle_index_set(n)) cv.triangle_exp[TriKey{t.id, s, a, b, c}] = Scalar(1);
  for (const auto& g : lam.infinite_leaves)
    for (int a = 1; a <= n - 1; ++a) cv.shear_exp[LeafKey{g.id, a}] = Scalar(1);
  for (const auto& c : lam.closed_leaves)
    for (int a = 1; a <= n - 1; ++a) cv.shear_exp[LeafKey{c.id, a}] = Scalar(1);
  for (const auto& c : lam.closed_leaves)
    for (Side side : {Side::left, Side::right})
      for (int a = 1; a <= n - 1; ++a)
        REQUIRE(side_length_product(cv, lam, c.id, side, a) == Scalar(1));
  auto rep = check_membership(cv, lam);
  REQUIRE_FALSE(rep.pass);
  int ineq = 0, eq = 0;
  for (auto& v : rep.violations) (v.find("inequality") != std::string::npos ? ineq : eq)++;
  REQUIRE(eq == 0);
  REQUIRE(ineq == 3 * (n - 1) * 2 / 2);  // one per (closed leaf, a)
}

TEST_CASE("sampled interior points are members, deterministically") {
  auto lam = pants();
  for (int n : {2, 3, 4}) {
    CoordinateVector cv = sample_interior(lam, n, 1);
    REQUIRE(check_membership(cv, lam).pass);
    CoordinateVector cv2 = sample_interior(lam, n, 1);
    REQUIRE(cv.shear_exp == cv2.shear_exp);
    REQUIRE(cv.triangle_exp == cv2.triangle_exp);
    CoordinateVector cv3 = sample_interior(lam, n, 2);
    REQUIRE_FALSE((cv3.shear_exp == cv.shear_exp && cv3.triangle_exp == cv.triangle_exp));
  }
}

TEST_CASE("global relation residual is exactly 1 on samples and fuchsian coordinates") {
  auto lam = pants();
  auto atlas = atlas_from_json(load_json_file(std::string(FS_DATA_DIR) + "/pants_double.atlas.json"));
  auto rho2 = representation_from_json(load_json_file(std::string(FS_DATA_DIR) + "/pants_double.rep2.json"));
  for (int n : {3, 4, 5}) {
    for (uint64_t seed = 0; seed < 5; ++seed) {
      CoordinateVector cv = sample_interior(lam, n, seed);
      for (int a = 1; a <= (n - 1) / 2; ++a)
        REQUIRE(global_relation_residual(cv, lam, a) == Scalar(1));
      if (n % 2 == 0)
        REQUIRE(global_relation_residual(cv, lam, n / 2) == Scalar(1));
    }
  }
  CoordinateVector fcv = full_coordinates(lift_representation(rho2, 3), lam, atlas);
  REQUIRE(global_relation_residual(fcv, lam, 1) == Scalar(1));
}

TEST_CASE("sampled values are rational and in sensible ranges") {
  auto lam = pants();
  CoordinateVector cv = sample_interior(lam, 3, 7);
  for (auto& [k, v] : cv.triangle_exp) {
    REQUIRE(v.is_exact());
    REQUIRE(v > Scalar(0));
  }
  for (auto& [k, v] : cv.shear_exp) REQUIRE(v.is_exact());
}
