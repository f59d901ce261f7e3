#include <catch2/catch_amalgamated.hpp>

#include <array>

#include "flagshear/ratios.hpp"

using namespace flagshear;

namespace {

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
  Scalar rational() {
    long num = static_cast<long>(next() % 17) - 8;
    long den = 1 + static_cast<long>(next() % 5);
    return Scalar(num, den);
  }
  Flag flag(int n) {
    while (true) {
      Matrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rational();
      if (!det(m).is_zero()) return Flag(m);
    }
  }
  Matrix invertible(int n) {
    while (true) {
      Matrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rational();
      if (!det(m).is_zero()) return m;
    }
  }
};

// The n=3 derived triple from the worked example: E standard, F reversed,
// G with G^(1) = span(1,1,1), G^(2) = span{(1,1,1),(1,2,4)}.
Flag derived_G3() {
  Matrix g(3, 3);
  g(0, 0) = Scalar(1); g(1, 0) = Scalar(1); g(2, 0) = Scalar(1);
  g(0, 1) = Scalar(1); g(1, 1) = Scalar(2); g(2, 1) = Scalar(4);
  g(0, 2) = Scalar(1);
  return Flag(g);
}

}  // namespace

TEST_CASE("genericity of coordinate flags") {
  Flag e = Flag::standard(3), f = Flag::reversed(3);
  REQUIRE(is_generic({e, f}));
  REQUIRE_FALSE(is_generic({e, e}));
  Flag g = Flag::moment_curve(3, Scalar(1));
  REQUIRE(is_generic({e, f, g}));
}

TEST_CASE("derived n=3 triple ratio equals 2") {
  Flag e = Flag::standard(3), f = Flag::reversed(3), g = derived_G3();
  REQUIRE(triple_ratio(e, f, g, 1, 1, 1) == Scalar(2));
  // swapping E and F inverts (Lemma 1.2 pattern)
  REQUIRE(triple_ratio(f, e, g, 1, 1, 1) == Scalar(1, 2));
  // and is positive
  REQUIRE(is_positive({e, f, g}));
}

TEST_CASE("moment curve osculating flags have all triple ratios 1") {
  for (int n : {3, 4}) {
    std::vector<std::array<long, 3>> triples = {{0, 1, 2}, {-1, 1, 3}, {1, 2, 7}};
    for (auto [t1, t2, t3] : triples) {
      Flag e = Flag::moment_curve(n, Scalar(t1));
      Flag f = Flag::moment_curve(n, Scalar(t2));
      Flag g = Flag::moment_curve(n, Scalar(t3));
      for (int a = 1; a <= n - 2; ++a)
        for (int b = 1; a + b <= n - 1; ++b)
          REQUIRE(triple_ratio(e, f, g, a, b, n - a - b) == Scalar(1));
      REQUIRE(is_positive({e, f, g}));
    }
    // rational, non-integer parameters too
    Flag e = Flag::moment_curve(n, Scalar(1, 3));
    Flag f = Flag::moment_curve(n, Scalar(1, 2));
    Flag g = Flag::moment_curve(n, Scalar(5, 2));
    for (int a = 1; a <= n - 2; ++a)
      for (int b = 1; a + b <= n - 1; ++b)
        REQUIRE(triple_ratio(e, f, g, a, b, n - a - b) == Scalar(1));
  }
}

TEST_CASE("negative triple detected by is_positive") {
  Flag e = Flag::standard(3), f = Flag::reversed(3);
  Matrix g(3, 3);
  g(0, 0) = Scalar(1); g(1, 0) = Scalar(-1); g(2, 0) = Scalar(1);
  g(0, 1) = Scalar(1); g(1, 1) = Scalar(2); g(2, 1) = Scalar(4);
  g(0, 2) = Scalar(1);
  Flag gg(g);
  REQUIRE(triple_ratio(e, f, gg, 1, 1, 1).sign() < 0);
  REQUIRE_FALSE(is_positive({e, f, gg}));
}

TEST_CASE("quadruple ratio basics") {
  Flag e = Flag::standard(3), f = Flag::reversed(3), g = derived_G3();
  // Q_{n-1} = 1 always
  REQUIRE(quadruple_ratio(e, f, g, 2) == Scalar(1));
  // Q_{n-2} = T_{(n-2)11}; here n=3 so Q_1 = T_111 = 2
  REQUIRE(quadruple_ratio(e, f, g, 1) == Scalar(2));
  // swapping the last two flags inverts
  REQUIRE(quadruple_ratio(e, g, f, 1) == Scalar(1, 2));
}

TEST_CASE("double ratio basics") {
  // G' = G cancels everything but the sign
  Flag e = Flag::standard(3), f = Flag::reversed(3), g = derived_G3();
  REQUIRE(double_ratio(e, f, g, g, 1) == Scalar(-1));

  // n=2 worked example: E=span(1,0), F=span(0,1), G=span(1,1), G'=span(1,-1)
  Matrix me(2, 2); me(0, 0) = Scalar(1); me(1, 1) = Scalar(1);
  Matrix mf(2, 2); mf(1, 0) = Scalar(1); mf(0, 1) = Scalar(1);
  Matrix mg(2, 2); mg(0, 0) = Scalar(1); mg(1, 0) = Scalar(1); mg(0, 1) = Scalar(1);
  Matrix mgp(2, 2); mgp(0, 0) = Scalar(1); mgp(1, 0) = Scalar(-1); mgp(0, 1) = Scalar(1);
  Flag E(me), F(mf), G(mg), Gp(mgp);
  REQUIRE(double_ratio(E, F, G, Gp, 1) == Scalar(1));
}

TEST_CASE("permutation, product and inversion identities, randomized exact") {
  Rng rng(2024);
  for (int n : {3, 4, 5}) {
    int done = 0;
    while (done < 30) {
      Flag e = rng.flag(n), f = rng.flag(n), g = rng.flag(n), gp = rng.flag(n);
      if (!is_generic({e, f, g}) || !is_generic({e, f, g, gp})) continue;
      ++done;
      // T_abc(E,F,G) = T_bca(F,G,E) = 1/T_bac(F,E,G)
      for (int a = 1; a <= n - 2; ++a)
        for (int b = 1; a + b <= n - 1; ++b) {
          int c = n - a - b;
          Scalar t = triple_ratio(e, f, g, a, b, c);
          REQUIRE(t == triple_ratio(f, g, e, b, c, a));
          REQUIRE(t * triple_ratio(f, e, g, b, a, c) == Scalar(1));
        }
      // Q_a = prod_{b+c=n-a} T_abc, and Q_{n-1} = 1
      for (int a = 1; a <= n - 1; ++a) {
        Scalar prod(1);
        for (int b = 1; b <= n - a - 1; ++b) prod *= triple_ratio(e, f, g, a, b, n - a - b);
        REQUIRE(quadruple_ratio(e, f, g, a) == prod);
      }
      REQUIRE(quadruple_ratio(e, f, g, n - 1) == Scalar(1));
      // double-ratio inversions
      for (int a = 1; a <= n - 1; ++a) {
        Scalar d = double_ratio(e, f, g, gp, a);
        REQUIRE(double_ratio(e, f, gp, g, a) * d == Scalar(1));
        REQUIRE(double_ratio(f, e, g, gp, n - a) * d == Scalar(1));
      }
    }
  }
}

TEST_CASE("PGL invariance and representative independence") {
  Rng rng(77);
  for (int n : {3, 4}) {
    int done = 0;
    while (done < 10) {
      Flag e = rng.flag(n), f = rng.flag(n), g = rng.flag(n), gp = rng.flag(n);
      if (!is_generic({e, f, g}) || !is_generic({e, f, g, gp})) continue;
      ++done;
      Matrix A = rng.invertible(n);
      for (int a = 1; a <= n - 2; ++a)
        for (int b = 1; a + b <= n - 1; ++b) {
          int c = n - a - b;
          REQUIRE(triple_ratio(e, f, g, a, b, c) == triple_ratio(A * e, A * f, A * g, a, b, c));
        }
      for (int a = 1; a <= n - 1; ++a) {
        REQUIRE(double_ratio(e, f, g, gp, a) == double_ratio(A * e, A * f, A * g, A * gp, a));
        REQUIRE(quadruple_ratio(e, f, g, a) == quadruple_ratio(A * e, A * f, A * g, a));
      }
      // rescale a column of g: same flag, same ratios
      Matrix gb = g.basis();
      for (int i = 0; i < n; ++i) gb(i, 1) = gb(i, 1) * Scalar(-7, 3);
      Flag g2(gb);
      REQUIRE(flags_equal(g, g2));
      for (int a = 1; a <= n - 2; ++a)
        for (int b = 1; a + b <= n - 1; ++b)
          REQUIRE(triple_ratio(e, f, g, a, b, n - a - b) == triple_ratio(e, f, g2, a, b, n - a - b));
      for (int a = 1; a <= n - 1; ++a)
        REQUIRE(double_ratio(e, f, g, gp, a) == double_ratio(e, f, g2, gp, a));
    }
  }
}

TEST_CASE("flag equality is projective, inequivalent flags differ") {
  Flag e = Flag::standard(3);
  Matrix m = Matrix::identity(3);
  m(0, 0) = Scalar(5);
  m(1, 1) = Scalar(-2);
  m(0, 1) = Scalar(3);  // column 1 gains a multiple of column 0: same flag
  REQUIRE(flags_equal(e, Flag(m)));
  REQUIRE_FALSE(flags_equal(e, Flag::reversed(3)));
}

TEST_CASE("interleaved quadruples from the moment curve are positive") {
  for (int n : {3, 4}) {
    // boundary parameters t1 < t2 < t3 < t4 in the leaf configuration:
    // (x, y) endpoints separate z from z'
    Flag x = Flag::moment_curve(n, Scalar(-1));
    Flag y = Flag::moment_curve(n, Scalar(1, 2));
    Flag z = Flag::moment_curve(n, Scalar(0));
    Flag zp = Flag::moment_curve(n, Scalar(3));
    REQUIRE(is_positive({x, y, z, zp}));
  }
}
