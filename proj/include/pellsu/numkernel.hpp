#pragma once

// Exact integer / rational / quadratic-surd arithmetic and certified real
// enclosures. BigInt and Rational are GMP's C++ classes; CertifiedReal is an
// MPFR-backed interval with outward rounding on every operation.

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "pellsu/error.hpp"

namespace pellsu {

using BigInt = mpz_class;
using Rational = mpq_class;

inline constexpr long kDefaultPrecisionBits = 256;
inline constexpr long kDefaultEscalationCapBits = 1L << 20;
inline constexpr long kMinPrecisionBits = 64;

// Working precision and the ceiling for automatic escalation (doubling).
struct PrecisionPolicy {
  long bits = kDefaultPrecisionBits;
  long cap_bits = kDefaultEscalationCapBits;

  // Defaults, with `bits` overridden by PELLSU_PREC_BITS when set.
  static PrecisionPolicy from_env();
  PrecisionPolicy with_bits(long b) const { return {b, cap_bits}; }
};

// Owning RAII handle for one mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(long bits = kDefaultPrecisionBits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  // Scientific decimal with `digits` significant digits.
  std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

 private:
  mpfr_t value_;
};

enum class Ordering { Less, Greater, Indeterminate };

// Closed interval [lower, upper] guaranteed to contain the true value.
class CertifiedReal {
 public:
  CertifiedReal();
  static CertifiedReal exact(long value, long bits);
  static CertifiedReal exact(const BigInt& value, long bits);
  static CertifiedReal exact(const Rational& value, long bits);
  // Smallest representable enclosure of [lo, hi].
  static CertifiedReal hull(const Rational& lo, const Rational& hi, long bits);
  // mid ± rad, mainly for tests and configuration input.
  static CertifiedReal around(const Rational& mid, const Rational& rad, long bits);
  // Exact decimal literal such as "8.62e28" or "3/2".
  static CertifiedReal from_decimal(std::string_view text, long bits);
  // [lo, hi] with both endpoints rounded outward to `bits`.
  static CertifiedReal from_endpoints(const BigFloat& lo, const BigFloat& hi, long bits);

  // Exact textual form "bits;lo;hi" with hexadecimal endpoints, and its
  // inverse. Used for checkpoints, where values must survive a round trip.
  std::string serialize() const;
  static CertifiedReal deserialize(std::string_view text);

  long precision_bits() const { return bits_; }
  const BigFloat& lower() const { return lo_; }
  const BigFloat& upper() const { return hi_; }
  BigFloat midpoint() const;
  // Rounded up so that [mid - rad, mid + rad] covers [lower, upper].
  BigFloat radius() const;
  double approx() const;

  bool contains(const Rational& q) const;
  bool contains(const CertifiedReal& inner) const;
  bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
  bool certainly_nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }
  bool certainly_less(const CertifiedReal& other) const;
  bool certainly_greater(const CertifiedReal& other) const { return other.certainly_less(*this); }

  std::optional<BigInt> floor_if_certain() const;
  // Floor / ceiling of the upper endpoint: sound upper bounds for floor/ceil.
  BigInt floor_of_upper() const;
  BigInt ceil_of_upper() const;
  BigInt floor_of_lower() const;

  // Same interval re-expressed at a different nominal precision (widened
  // outward if the new precision is smaller).
  CertifiedReal with_precision(long bits) const;

  friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator-(const CertifiedReal& a);

  friend CertifiedReal log(const CertifiedReal& x);
  friend CertifiedReal exp(const CertifiedReal& x);
  friend CertifiedReal log1p(const CertifiedReal& x);
  friend CertifiedReal sqrt(const CertifiedReal& x);
  friend CertifiedReal acosh(const CertifiedReal& x);
  friend CertifiedReal cosh(const CertifiedReal& x);
  friend CertifiedReal abs(const CertifiedReal& x);
  friend CertifiedReal pow(const CertifiedReal& base, const CertifiedReal& exponent);
  friend CertifiedReal max(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal min(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b);

 private:
  CertifiedReal(BigFloat lo, BigFloat hi, long bits);

  BigFloat lo_;
  BigFloat hi_;
  long bits_;
};

CertifiedReal operator*(const CertifiedReal& a, const BigInt& k);
CertifiedReal operator*(const CertifiedReal& a, long k);
CertifiedReal operator+(const CertifiedReal& a, long k);

// Less/Greater only when the enclosures are disjoint.
Ordering certified_compare(const CertifiedReal& a, const CertifiedReal& b);

// An expression that can be re-evaluated at any requested precision.
using RealSource = std::function<CertifiedReal(long bits)>;

// Floor of a refinable value, doubling precision until the enclosure no
// longer straddles an integer. Throws PrecisionExhausted at the cap.
BigInt certified_floor(const RealSource& x, const PrecisionPolicy& policy);

// log n for small integers, cached per thread and precision.
CertifiedReal log_of(unsigned long n, long bits);
// Euler's number e.
CertifiedReal euler_e(long bits);

// a + b·sqrt(d) with rational a, b and a fixed non-square d > 1.
class QuadraticSurd {
 public:
  QuadraticSurd(Rational a, Rational b, BigInt d);
  static QuadraticSurd one(const BigInt& d);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const BigInt& d() const { return d_; }

  QuadraticSurd conjugate() const;
  Rational norm() const;  // a² − b²d, exact
  int sign() const;       // exact, via a² versus b²d
  bool is_rational() const { return b_ == 0; }
  QuadraticSurd inverse() const;

  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y);
  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  struct Trusted {};
  QuadraticSurd(Rational a, Rational b, BigInt d, Trusted);
  void require_same_field(const QuadraticSurd& other) const;

  Rational a_;
  Rational b_;
  BigInt d_;
};

QuadraticSurd surd_pow(const QuadraticSurd& x, unsigned long k);

// Enclosure of a surd's value; avoids cancellation when a and b have
// opposite signs by evaluating norm / conjugate instead.
CertifiedReal to_certified(const QuadraticSurd& x, long bits);

CertifiedReal certified_log(const Rational& x, long bits);
CertifiedReal certified_log(const BigInt& x, long bits);
CertifiedReal certified_log(const QuadraticSurd& x, long bits);

bool is_perfect_square(const BigInt& n);
BigInt ipow(const BigInt& base, unsigned long exponent);
BigInt ipow(unsigned long base, unsigned long exponent);

// Exact parse of "123", "-4.5", "8.62e28", "17.2E+28", "3/4".
Rational parse_decimal(std::string_view text);
BigInt parse_bigint(std::string_view text);

}  // namespace pellsu
