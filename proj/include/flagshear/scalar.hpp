// Two-level scalar tower: exact rationals (GMP) and arbitrary-precision
// binary floats (MPFR). Rationals are kept in lowest terms with positive
// denominator; any operation touching a float yields a float whose
// precision is the maximum of the operand precisions.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace flagshear {

inline constexpr long kDefaultPrecision = 256;

// ---------------------------------------------------------------------------
// Errors shared across the library. Each carries a stable code used by the
// CLI to map failures onto exit statuses.
// ---------------------------------------------------------------------------

enum class errc {
  parse = 1,
  math_precondition = 2,
  reconstruction = 3,
  identity_violation = 4,
};

struct error : std::runtime_error {
  errc code;
  error(errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

struct parse_error : error {
  explicit parse_error(const std::string& w) : error(errc::parse, w) {}
};
struct dimension_mismatch : error {
  explicit dimension_mismatch(const std::string& w) : error(errc::math_precondition, "DimensionMismatch: " + w) {}
};
struct not_generic : error {
  explicit not_generic(const std::string& w) : error(errc::math_precondition, "NotGeneric: " + w) {}
};
struct non_real_spectrum : error {
  explicit non_real_spectrum(const std::string& w) : error(errc::math_precondition, "NonRealSpectrum: " + w) {}
};
struct repeated_modulus : error {
  explicit repeated_modulus(const std::string& w) : error(errc::math_precondition, "RepeatedModulus: " + w) {}
};
struct not_loxodromic : error {
  explicit not_loxodromic(const std::string& w) : error(errc::math_precondition, "NotLoxodromic: " + w) {}
};
struct mixed_signs : error {
  explicit mixed_signs(const std::string& w) : error(errc::math_precondition, "MixedSigns: " + w) {}
};
struct unknown_generator : error {
  explicit unknown_generator(const std::string& w) : error(errc::math_precondition, "UnknownGenerator: " + w) {}
};
struct unknown_leaf : error {
  explicit unknown_leaf(const std::string& w) : error(errc::math_precondition, "UnknownLeaf: " + w) {}
};
struct not_positive : error {
  explicit not_positive(const std::string& w) : error(errc::math_precondition, "NotPositive: " + w) {}
};
struct determinant_not_one : error {
  explicit determinant_not_one(const std::string& w) : error(errc::math_precondition, "DeterminantNotOne: " + w) {}
};
struct membership_failed : error {
  explicit membership_failed(const std::string& w) : error(errc::math_precondition, "MembershipFailed: " + w) {}
};
struct sampling_failed : error {
  explicit sampling_failed(const std::string& w) : error(errc::math_precondition, "SamplingFailed: " + w) {}
};
struct index_out_of_range : error {
  explicit index_out_of_range(const std::string& w) : error(errc::math_precondition, "IndexOutOfRange: " + w) {}
};
struct eigenvalue_mismatch : error {
  explicit eigenvalue_mismatch(const std::string& w) : error(errc::reconstruction, "EigenvalueMismatch: " + w) {}
};
struct relator_violation : error {
  explicit relator_violation(const std::string& w) : error(errc::reconstruction, "RelatorViolation: " + w) {}
};
struct realization_failed : error {
  explicit realization_failed(const std::string& w) : error(errc::reconstruction, "RealizationFailed: " + w) {}
};

// ---------------------------------------------------------------------------
// BigFloat: thin RAII wrapper over mpfr_t.
// ---------------------------------------------------------------------------

class BigFloat {
 public:
  BigFloat() { mpfr_init2(v_, kDefaultPrecision); mpfr_set_zero(v_, 1); }
  explicit BigFloat(long prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(double d, long prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }
  BigFloat(const mpq_class& q, long prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  long precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  static BigFloat binop(const BigFloat& a, const BigFloat& b,
                        int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
    BigFloat r(std::max(a.precision(), b.precision()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  std::string str(int digits = 0) const {
    if (digits <= 0) digits = static_cast<int>(precision() / 3.32) + 2;
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string di = neg ? mant.substr(1) : mant;
    std::string out = (neg ? "-" : "") + (di.empty() ? "0" : "0." + di) + "e" + std::to_string(e);
    return out;
  }

 private:
  mpfr_t v_;
};

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

class Scalar {
 public:
  Scalar() : exact_(true), q_(0) {}
  Scalar(long n) : exact_(true), q_(n) {}
  Scalar(long n, long d) : exact_(true), q_(n, d) { canonical(); }
  Scalar(const mpq_class& q) : exact_(true), q_(q) { canonical(); }
  Scalar(mpq_class&& q) : exact_(true), q_(std::move(q)) { canonical(); }
  Scalar(const BigFloat& f) : exact_(false), f_(f) {}
  Scalar(BigFloat&& f) : exact_(false), f_(std::move(f)) {}

  static Scalar zero() { return Scalar(0); }
  static Scalar one() { return Scalar(1); }
  static Scalar big_float(double d, long prec = kDefaultPrecision) { return Scalar(BigFloat(d, prec)); }

  bool is_exact() const { return exact_; }
  const mpq_class& rational() const {
    if (!exact_) throw error(errc::math_precondition, "scalar is not exact");
    return q_;
  }
  // Precision carried by this value; rationals report the default so that
  // mixed expressions land at a sensible width.
  long precision() const { return exact_ ? kDefaultPrecision : f_.precision(); }

  BigFloat to_float(long prec) const { return exact_ ? BigFloat(q_, prec) : f_; }
  double to_double() const { return exact_ ? q_.get_d() : f_.to_double(); }

  // Every finite binary float is a dyadic rational; this conversion is exact.
  mpq_class to_exact_dyadic() const {
    if (exact_) return q_;
    if (f_.is_zero()) return mpq_class(0);
    mpz_class z;
    mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), f_.raw());
    mpq_class q(z);
    if (e >= 0) {
      mpz_class p2;
      mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(e));
      q *= mpq_class(p2);
    } else {
      mpz_class p2;
      mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(-e));
      q /= mpq_class(p2);
    }
    return q;
  }

  int sign() const { return exact_ ? sgn(q_) : f_.sign(); }
  bool is_zero() const { return exact_ ? q_ == 0 : f_.is_zero(); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(mpq_class(a.q_ + b.q_));
    return Scalar(BigFloat::binop(a.promote(b), b.promote(a), mpfr_add));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(mpq_class(a.q_ - b.q_));
    return Scalar(BigFloat::binop(a.promote(b), b.promote(a), mpfr_sub));
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(mpq_class(a.q_ * b.q_));
    return Scalar(BigFloat::binop(a.promote(b), b.promote(a), mpfr_mul));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw error(errc::math_precondition, "division by zero");
    if (a.exact_ && b.exact_) return Scalar(mpq_class(a.q_ / b.q_));
    return Scalar(BigFloat::binop(a.promote(b), b.promote(a), mpfr_div));
  }
  Scalar operator-() const {
    if (exact_) return Scalar(mpq_class(-q_));
    BigFloat r(f_.precision());
    mpfr_neg(r.raw(), f_.raw(), MPFR_RNDN);
    return Scalar(std::move(r));
  }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  Scalar inv() const { return Scalar(1) / *this; }

  Scalar pow(long e) const {
    if (e == 0) return Scalar(1);
    Scalar base = e < 0 ? inv() : *this;
    unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : e;
    Scalar acc(1);
    while (k) {
      if (k & 1) acc *= base;
      base = base * base;
      k >>= 1;
    }
    return acc;
  }

  // Exact k-th root of a positive rational, when one exists.
  bool exact_root(unsigned long k, Scalar& out) const {
    if (!exact_ || sign() <= 0) return false;
    mpz_class num = q_.get_num(), den = q_.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k)) return false;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k)) return false;
    out = Scalar(mpq_class(rn, rd));
    return true;
  }

  int compare(const Scalar& b) const {
    if (exact_ && b.exact_) return cmp(q_, b.q_);
    BigFloat fa = promote(b), fb = b.promote(*this);
    return mpfr_cmp(fa.raw(), fb.raw());
  }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.compare(b) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return a.compare(b) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.compare(b) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return a.compare(b) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return a.compare(b) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return a.compare(b) >= 0; }

  // 2^e as a float at the given precision; used for tolerances.
  static Scalar pow2(long e, long prec = kDefaultPrecision) {
    BigFloat r(prec);
    mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
    return Scalar(std::move(r));
  }

  std::string str() const {
    if (exact_) return q_.get_str();
    return f_.str();
  }

  // Parses "p/q", integers, and plain decimal strings ("1.25", "-3e-2").
  static Scalar parse(const std::string& s, long prec = kDefaultPrecision) {
    if (s.empty()) throw parse_error("empty scalar literal");
    if (s.find_first_of(".eE") == std::string::npos || s.find('/') != std::string::npos) {
      mpq_class q;
      if (q.set_str(s, 10) != 0) throw parse_error("bad rational literal: " + s);
      q.canonicalize();
      return Scalar(std::move(q));
    }
    BigFloat f(prec);
    if (mpfr_set_str(f.raw(), s.c_str(), 10, MPFR_RNDN) != 0)
      throw parse_error("bad numeric literal: " + s);
    return Scalar(std::move(f));
  }

 private:
  void canonical() { q_.canonicalize(); }
  BigFloat promote(const Scalar& other) const {
    long prec = std::max(precision(), other.precision());
    return to_float(prec);
  }

  bool exact_;
  mpq_class q_;
  BigFloat f_;
};

inline Scalar abs(const Scalar& s) { return s.abs(); }

}  // namespace flagshear
