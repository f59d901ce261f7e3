#include <catch2/catch_amalgamated.hpp>

#include "flagshear/representation.hpp"

using namespace flagshear;

namespace {

Matrix m2(long a, long b, long c, long d) {
  return Matrix::from_rows({{Scalar(a), Scalar(b)}, {Scalar(c), Scalar(d)}});
}
Matrix m2q(Scalar a, Scalar b, Scalar c, Scalar d) {
  return Matrix::from_rows({{a, b}, {c, d}});
}

struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // random SL2 over Q via products of elementary shears
  Matrix sl2() {
    Matrix m = Matrix::identity(2);
    for (int k = 0; k < 4; ++k) {
      long t = static_cast<long>(next() % 7) - 3;
      Matrix e = (k % 2 == 0) ? m2(1, t, 0, 1) : m2(1, 0, t, 1);
      m = m * e;
    }
    return m;
  }
  // hyperbolic SL2 with rational eigenvalues: conjugate of diag(2, 1/2)
  Matrix sl2_rational_hyperbolic() {
    Matrix d = Matrix::from_rows({{Scalar(2), Scalar(0)}, {Scalar(0), Scalar(1, 2)}});
    Matrix g = sl2();
    return g * d * inverse(g);
  }
};

}  // namespace

TEST_CASE("eval_word basics") {
  std::map<std::string, Matrix> gens;
  gens["g"] = m2q(Scalar(2), Scalar(0), Scalar(0), Scalar(1, 2));
  gens["h"] = m2(1, 1, 0, 1);
  Representation rho(2, gens);
  REQUIRE(rho.eval_word({}) == Matrix::identity(2));
  REQUIRE(rho.eval_word({"g", "g^-1"}) == Matrix::identity(2));
  REQUIRE(rho.eval_word({"g", "h"}) == gens.at("g") * gens.at("h"));
  REQUIRE_THROWS_AS(rho.eval_word({"nope"}), unknown_generator);
}

TEST_CASE("representation validation") {
  std::map<std::string, Matrix> bad;
  bad["g"] = m2(2, 0, 0, 1);  // det 2
  REQUIRE_THROWS_AS(Representation(2, bad), determinant_not_one);
  Representation proj(2, bad, true);
  REQUIRE(proj.projective());
}

TEST_CASE("positive_eigendata on diagonal input") {
  Matrix d(3, 3);
  d(0, 0) = Scalar(4);
  d(1, 1) = Scalar(2);
  d(2, 2) = Scalar(1);
  auto e = positive_eigendata(d);
  REQUIRE(e.values[0] == Scalar(4));
  REQUIRE(e.values[2] == Scalar(1));
  REQUIRE(flags_equal(e.stable, Flag::standard(3)));
  REQUIRE(flags_equal(e.unstable, Flag::reversed(3)));
}

TEST_CASE("negated diagonal with odd n is rejected") {
  Matrix d(3, 3);
  d(0, 0) = Scalar(-4);
  d(1, 1) = Scalar(-2);
  d(2, 2) = Scalar(-1);
  REQUIRE_THROWS_AS(positive_eigendata(d), mixed_signs);
  // even n: the negated lift is taken
  Matrix d2(2, 2);
  d2(0, 0) = Scalar(-4);
  d2(1, 1) = Scalar(-1, 4);
  auto e = positive_eigendata(d2);
  REQUIRE(e.values[0] == Scalar(4));
  REQUIRE(e.values[1] == Scalar(1, 4));
}

TEST_CASE("mixed signs rejected") {
  Matrix d(2, 2);
  d(0, 0) = Scalar(4);
  d(1, 1) = Scalar(-1);
  REQUIRE_THROWS_AS(positive_eigendata(d), mixed_signs);
}

TEST_CASE("rotation matrix is not loxodromic") {
  Matrix r = Matrix::from_rows({{Scalar(0), Scalar(-1)}, {Scalar(1), Scalar(0)}});
  REQUIRE_THROWS_AS(positive_eigendata(r), not_loxodromic);
}

TEST_CASE("conjugated diagonal: stable flag transported") {
  Matrix p = Matrix::from_rows({{Scalar(1), Scalar(1), Scalar(0)},
                                {Scalar(0), Scalar(1), Scalar(2)},
                                {Scalar(1), Scalar(0), Scalar(1)}});
  Matrix d(3, 3);
  d(0, 0) = Scalar(9);
  d(1, 1) = Scalar(3);
  d(2, 2) = Scalar(1);
  Matrix m = p * d * inverse(p);
  auto e = positive_eigendata(m);
  REQUIRE(e.values[0] == Scalar(9));
  REQUIRE(flags_equal(e.stable, Flag(p)));
}

TEST_CASE("stable flag of M equals unstable flag of M inverse") {
  Rng rng(3);
  int done = 0;
  for (int t = 0; t < 15; ++t) {
    Matrix s = rng.sl2_rational_hyperbolic();
    ++done;
    Matrix m = sl2_symmetric_lift(s, 3);
    auto a = positive_eigendata(m);
    auto b = positive_eigendata(inverse(m));
    REQUIRE(flags_equal(a.stable, b.unstable));
    REQUIRE(flags_equal(a.unstable, b.stable));
  }
  REQUIRE(done > 0);
}

TEST_CASE("sl2 lift: diagonal pattern and identity") {
  for (int n : {2, 3, 4, 5, 6}) {
    Matrix d = m2q(Scalar(2), Scalar(0), Scalar(0), Scalar(1, 2));
    Matrix l = sl2_symmetric_lift(d, n);
    for (int k = 1; k <= n; ++k) REQUIRE(l(k - 1, k - 1) == Scalar(2).pow(n - 2 * k + 1));
    REQUIRE(sl2_symmetric_lift(Matrix::identity(2), n) == Matrix::identity(n));
    REQUIRE(det(l) == Scalar(1));
  }
}

TEST_CASE("sl2 lift of the unipotent has binomial entries") {
  Matrix u = m2(1, 1, 0, 1);
  Matrix l = sl2_symmetric_lift(u, 3);
  // basis X^2, XY, Y^2 under X -> X, Y -> X + Y
  Matrix expect = Matrix::from_rows({{Scalar(1), Scalar(1), Scalar(1)},
                                     {Scalar(0), Scalar(1), Scalar(2)},
                                     {Scalar(0), Scalar(0), Scalar(1)}});
  REQUIRE(l == expect);
}

TEST_CASE("sl2 lift is multiplicative, randomized exact") {
  Rng rng(9);
  for (int n : {3, 4, 5}) {
    for (int t = 0; t < 25; ++t) {
      Matrix a = rng.sl2(), b = rng.sl2();
      REQUIRE(sl2_symmetric_lift(a * b, n) == sl2_symmetric_lift(a, n) * sl2_symmetric_lift(b, n));
    }
  }
}

TEST_CASE("lift rejects determinant != 1") {
  REQUIRE_THROWS_AS(sl2_symmetric_lift(m2(2, 0, 0, 1), 3), determinant_not_one);
}

TEST_CASE("fuchsian lift lengths are a-independent") {
  // eigenvalues (a, 1/a) lift to a^(n-2k+1), so m_a/m_{a+1} = a^2 throughout
  Matrix s = m2q(Scalar(5, 4), Scalar(3, 4), Scalar(3, 4), Scalar(5, 4));
  REQUIRE(det(s) == Scalar(1));
  for (int n : {3, 4, 5}) {
    Matrix l = sl2_symmetric_lift(s, n);
    auto e = positive_eigendata(l);
    Scalar ratio = e.values[0] / e.values[1];
    for (int a = 1; a < n - 1; ++a) REQUIRE(e.values[a - 1] / e.values[a] == ratio);
  }
}
