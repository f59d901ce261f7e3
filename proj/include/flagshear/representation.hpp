// Surface-group representations as generator -> matrix assignments, word
// evaluation, eigendata of positive lifts (stable/unstable flags), and the
// irreducible SL2 -> SLn symmetric-power lift used to build Fuchsian-type
// test representations.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "flagshear/eigen.hpp"
#include "flagshear/flag.hpp"

namespace flagshear {

// A word is a sequence of letters "g" or "g^-1".
using Word = std::vector<std::string>;

inline std::pair<std::string, bool> split_letter(const std::string& letter) {
  auto pos = letter.find('^');
  if (pos == std::string::npos) return {letter, false};
  std::string gen = letter.substr(0, pos);
  std::string e = letter.substr(pos + 1);
  if (e != "-1") throw parse_error("unsupported exponent in word letter: " + letter);
  return {gen, true};
}

class Representation {
 public:
  Representation() : n_(0) {}
  // `projective` relaxes the determinant normalization to det != 0; the
  // projective class is what reconstruction produces when no rational
  // n-th root normalizes the determinant.
  Representation(int n, std::map<std::string, Matrix> gens, bool projective = false)
      : n_(n), gens_(std::move(gens)), projective_(projective) {
    for (auto& [name, m] : gens_) {
      if (!m.square() || m.rows() != n_) throw dimension_mismatch("generator " + name);
      Scalar d = det(m);
      if (d.is_zero()) throw determinant_not_one("generator " + name + " is singular");
      if (!projective_) {
        if (d.is_exact()) {
          if (!(d == Scalar(1) || d == Scalar(-1)))
            throw determinant_not_one("generator " + name + " must have determinant +-1");
        } else {
          Scalar tol = Scalar::pow2(-d.precision() / 2, d.precision());
          if (!((d - Scalar(1)).abs() < tol || (d + Scalar(1)).abs() < tol))
            throw determinant_not_one("generator " + name + " must have determinant +-1");
        }
      }
      inv_[name] = inverse(m);
    }
  }

  int n() const { return n_; }
  bool projective() const { return projective_; }
  const std::map<std::string, Matrix>& generators() const { return gens_; }

  const Matrix& generator(const std::string& name) const {
    auto it = gens_.find(name);
    if (it == gens_.end()) throw unknown_generator(name);
    return it->second;
  }

  Matrix eval_word(const Word& w) const {
    Matrix acc = Matrix::identity(n_);
    for (const auto& letter : w) {
      auto [name, inv] = split_letter(letter);
      auto& table = inv ? inv_ : gens_;
      auto it = table.find(name);
      if (it == table.end()) throw unknown_generator(name);
      acc = acc * it->second;
    }
    return acc;
  }

 private:
  int n_;
  std::map<std::string, Matrix> gens_;
  std::map<std::string, Matrix> inv_;
  bool projective_ = false;
};

struct EigenData {
  std::vector<Scalar> values;              // m_1 > m_2 > ... > m_n > 0
  std::vector<std::vector<Scalar>> lines;  // eigenline of m_a
  Flag stable;                             // E^(a) = L_1 + ... + L_a
  Flag unstable;                           // F^(a) = L_n + ... + L_{n-a+1}
};

// Eigendata of the positive lift: all eigenvalues real, distinct absolute
// values, one sign (negated when all negative, which forces n even up to
// scale). Scale-invariant by construction, so projective representatives
// are handled uniformly.
inline EigenData positive_eigendata(const Matrix& m, long prec = kDefaultPrecision) {
  std::vector<EigenPair> pairs;
  try {
    pairs = real_eigen(m, prec);
  } catch (const non_real_spectrum& e) {
    throw not_loxodromic(e.what());
  } catch (const repeated_modulus& e) {
    throw not_loxodromic(e.what());
  }
  int n = m.rows();
  int neg = 0;
  for (auto& p : pairs)
    if (p.value.sign() < 0) ++neg;
  if (neg != 0 && neg != n)
    throw mixed_signs("eigenvalues of both signs: not of Hitchin type");
  EigenData d;
  for (auto& p : pairs) d.values.push_back(neg == n ? -p.value : p.value);
  if (neg == n) {
    // Negating the matrix is only available as a lift when n is even; for
    // odd n an all-negative spectrum means determinant < 0 for any scale
    // choice with positive-oriented data, which is rejected for Hitchin use.
    if (n % 2 == 1) throw mixed_signs("all-negative spectrum with odd n is not a Hitchin lift");
  }
  Matrix stable(n, n), unstable(n, n);
  for (int a = 0; a < n; ++a) {
    d.lines.push_back(pairs[a].vector);
    for (int i = 0; i < n; ++i) {
      stable(i, a) = pairs[a].vector[i];
      unstable(i, n - 1 - a) = pairs[a].vector[i];
    }
  }
  d.stable = Flag(stable);
  d.unstable = Flag(unstable);
  return d;
}

// Matrix of the substitution action on degree-(n-1) monomials in two
// variables. Multiplicative: lift(AB) = lift(A) lift(B); diag(a, 1/a) lifts
// to diag(a^(n-1), a^(n-3), ..., a^(1-n)).
inline Matrix sl2_symmetric_lift(const Matrix& m, int n) {
  if (m.rows() != 2 || m.cols() != 2) throw dimension_mismatch("sl2 lift expects a 2x2 matrix");
  if (det(m) != Scalar(1)) throw determinant_not_one("sl2 lift requires determinant exactly 1");
  const Scalar& a = m(0, 0);
  const Scalar& b = m(0, 1);
  const Scalar& c = m(1, 0);
  const Scalar& dd = m(1, 1);
  int deg = n - 1;
  Matrix out(n, n);
  // column j: coefficients of (a X + c Y)^(deg-j) (b X + d Y)^j on monomials
  // X^(deg-i) Y^i.
  for (int j = 0; j <= deg; ++j) {
    std::vector<Scalar> poly{Scalar(1)};  // coefficients in Y-degree order
    auto mul_linear = [&](const Scalar& u, const Scalar& v) {
      // multiply by (u X + v Y)
      std::vector<Scalar> next(poly.size() + 1, Scalar(0));
      for (size_t k = 0; k < poly.size(); ++k) {
        next[k] += poly[k] * u;
        next[k + 1] += poly[k] * v;
      }
      poly = std::move(next);
    };
    for (int t = 0; t < deg - j; ++t) mul_linear(a, c);
    for (int t = 0; t < j; ++t) mul_linear(b, dd);
    for (int i = 0; i <= deg; ++i) out(i, j) = poly[i];
  }
  return out;
}

// Lift a whole SL2 representation through the symmetric power.
inline Representation lift_representation(const Representation& rho2, int n) {
  if (rho2.n() != 2) throw dimension_mismatch("lift_representation expects an SL2 input");
  std::map<std::string, Matrix> gens;
  for (auto& [name, m] : rho2.generators()) {
    Matrix mm = m;
    if (det(mm) == Scalar(-1)) throw determinant_not_one("generator " + name + " has determinant -1");
    gens[name] = sl2_symmetric_lift(mm, n);
  }
  return Representation(n, std::move(gens));
}

}  // namespace flagshear
