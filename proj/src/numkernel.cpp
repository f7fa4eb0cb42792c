#include "pellsu/numkernel.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <utility>

namespace pellsu {

// ---------------------------------------------------------------------------
// PrecisionPolicy

PrecisionPolicy PrecisionPolicy::from_env() {
  PrecisionPolicy policy;
  if (const char* env = std::getenv("PELLSU_PREC_BITS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    long bits = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || bits < kMinPrecisionBits) {
      throw InvalidInput("PELLSU_PREC_BITS must be an integer >= 64, got '" + std::string(env) + "'");
    }
    policy.bits = bits;
    policy.cap_bits = std::max(policy.cap_bits, bits);
  }
  return policy;
}

// ---------------------------------------------------------------------------
// BigFloat

BigFloat::BigFloat(long bits) { mpfr_init2(value_, static_cast<mpfr_prec_t>(bits)); }

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits, mpfr_rnd_t rnd) const {
  if (mpfr_zero_p(value_)) return "0";
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(digits), value_, rnd);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mantissa.empty() && mantissa[0] == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  // mantissa has implied leading "0." ; rewrite as d.ddd e(exponent-1)
  std::string out = sign + mantissa.substr(0, 1);
  std::string rest = mantissa.substr(1);
  while (!rest.empty() && rest.back() == '0') rest.pop_back();
  if (!rest.empty()) out += "." + rest;
  long e10 = static_cast<long>(exponent) - 1;
  if (e10 != 0) out += "e" + std::to_string(e10);
  return out;
}

// ---------------------------------------------------------------------------
// CertifiedReal

namespace {

long max_bits(const CertifiedReal& a, const CertifiedReal& b) {
  return std::max(a.precision_bits(), b.precision_bits());
}

// Rational -> mpfr with the requested direction.
void set_rational(mpfr_ptr out, const Rational& q, mpfr_rnd_t rnd) {
  mpfr_set_q(out, q.get_mpq_t(), rnd);
}

}  // namespace

CertifiedReal::CertifiedReal() : lo_(kDefaultPrecisionBits), hi_(kDefaultPrecisionBits), bits_(kDefaultPrecisionBits) {
  mpfr_set_zero(lo_.get(), 1);
  mpfr_set_zero(hi_.get(), 1);
}

CertifiedReal::CertifiedReal(BigFloat lo, BigFloat hi, long bits)
    : lo_(std::move(lo)), hi_(std::move(hi)), bits_(bits) {
  if (mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get())) throw DomainError("interval operation produced NaN");
}

CertifiedReal CertifiedReal::exact(long value, long bits) {
  BigFloat lo(bits), hi(bits);
  mpfr_set_si(lo.get(), value, MPFR_RNDD);
  mpfr_set_si(hi.get(), value, MPFR_RNDU);
  return {std::move(lo), std::move(hi), bits};
}

CertifiedReal CertifiedReal::exact(const BigInt& value, long bits) {
  BigFloat lo(bits), hi(bits);
  mpfr_set_z(lo.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), value.get_mpz_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), bits};
}

CertifiedReal CertifiedReal::exact(const Rational& value, long bits) {
  BigFloat lo(bits), hi(bits);
  set_rational(lo.get(), value, MPFR_RNDD);
  set_rational(hi.get(), value, MPFR_RNDU);
  return {std::move(lo), std::move(hi), bits};
}

CertifiedReal CertifiedReal::hull(const Rational& lo_q, const Rational& hi_q, long bits) {
  if (lo_q > hi_q) throw InvalidInput("interval lower end exceeds upper end");
  BigFloat lo(bits), hi(bits);
  set_rational(lo.get(), lo_q, MPFR_RNDD);
  set_rational(hi.get(), hi_q, MPFR_RNDU);
  return {std::move(lo), std::move(hi), bits};
}

CertifiedReal CertifiedReal::around(const Rational& mid, const Rational& rad, long bits) {
  if (rad < 0) throw InvalidInput("negative radius");
  return hull(mid - rad, mid + rad, bits);
}

CertifiedReal CertifiedReal::from_decimal(std::string_view text, long bits) {
  return exact(parse_decimal(text), bits);
}

CertifiedReal CertifiedReal::from_endpoints(const BigFloat& lo_in, const BigFloat& hi_in, long bits) {
  if (mpfr_cmp(lo_in.get(), hi_in.get()) > 0) throw InvalidInput("interval lower end exceeds upper end");
  BigFloat lo(bits), hi(bits);
  mpfr_set(lo.get(), lo_in.get(), MPFR_RNDD);
  mpfr_set(hi.get(), hi_in.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), bits};
}

namespace {

std::string hex_of(mpfr_srcptr x) {
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%Ra", x) < 0) throw Error("mpfr_asprintf failed");
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

}  // namespace

std::string CertifiedReal::serialize() const {
  return std::to_string(bits_) + ";" + hex_of(lo_.get()) + ";" + hex_of(hi_.get());
}

CertifiedReal CertifiedReal::deserialize(std::string_view text) {
  auto first = text.find(';');
  auto second = first == std::string_view::npos ? first : text.find(';', first + 1);
  if (second == std::string_view::npos) throw InvalidInput("malformed serialized interval");
  long bits = std::stol(std::string(text.substr(0, first)));
  if (bits < 2) throw InvalidInput("malformed serialized interval");
  std::string lo_s(text.substr(first + 1, second - first - 1));
  std::string hi_s(text.substr(second + 1));
  // Endpoints were produced at `bits`, so parsing at `bits` is exact.
  BigFloat lo(bits), hi(bits);
  if (mpfr_set_str(lo.get(), lo_s.c_str(), 0, MPFR_RNDD) != 0 || mpfr_set_str(hi.get(), hi_s.c_str(), 0, MPFR_RNDU) != 0)
    throw InvalidInput("malformed serialized interval endpoint");
  if (mpfr_cmp(lo.get(), hi.get()) > 0) throw InvalidInput("serialized interval is reversed");
  return {std::move(lo), std::move(hi), bits};
}

BigFloat CertifiedReal::midpoint() const {
  BigFloat mid(bits_ + 2);
  mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  return mid;
}

BigFloat CertifiedReal::radius() const {
  BigFloat mid = midpoint();
  BigFloat up(bits_), down(bits_);
  mpfr_sub(up.get(), hi_.get(), mid.get(), MPFR_RNDU);
  mpfr_sub(down.get(), mid.get(), lo_.get(), MPFR_RNDU);
  if (mpfr_cmp(up.get(), down.get()) < 0) return down;
  return up;
}

double CertifiedReal::approx() const { return midpoint().to_double(); }

bool CertifiedReal::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool CertifiedReal::contains(const CertifiedReal& inner) const {
  return mpfr_cmp(lo_.get(), inner.lo_.get()) <= 0 && mpfr_cmp(hi_.get(), inner.hi_.get()) >= 0;
}

bool CertifiedReal::certainly_less(const CertifiedReal& other) const {
  return mpfr_cmp(hi_.get(), other.lo_.get()) < 0;
}

std::optional<BigInt> CertifiedReal::floor_if_certain() const {
  BigInt lo_floor = floor_of_lower();
  BigInt hi_floor = floor_of_upper();
  if (lo_floor != hi_floor) return std::nullopt;
  return lo_floor;
}

BigInt CertifiedReal::floor_of_upper() const {
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), hi_.get(), MPFR_RNDD);
  return out;
}

BigInt CertifiedReal::ceil_of_upper() const {
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), hi_.get(), MPFR_RNDU);
  return out;
}

BigInt CertifiedReal::floor_of_lower() const {
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), lo_.get(), MPFR_RNDD);
  return out;
}

CertifiedReal CertifiedReal::with_precision(long bits) const {
  BigFloat lo(bits), hi(bits);
  mpfr_set(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(hi.get(), hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), bits};
}

CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
  long bits = max_bits(a, b);
  BigFloat lo(bits), hi(bits);
  mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), bits};
}

CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
  long bits = max_bits(a, b);
  BigFloat lo(bits), hi(bits);
  mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), bits};
}

CertifiedReal operator-(const CertifiedReal& a) {
  BigFloat lo(a.bits_), hi(a.bits_);
  mpfr_neg(lo.get(), a.hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), a.lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), a.bits_};
}

CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
  long bits = max_bits(a, b);
  BigFloat lo(bits), hi(bits), t(bits);
  mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return {std::move(lo), std::move(hi), bits};
}

CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
  if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0) {
    throw DomainError("division by an interval containing zero");
  }
  long bits = max_bits(a, b);
  BigFloat lo(bits), hi(bits), t(bits);
  mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return {std::move(lo), std::move(hi), bits};
}

CertifiedReal operator*(const CertifiedReal& a, const BigInt& k) {
  return a * CertifiedReal::exact(k, a.precision_bits());
}

CertifiedReal operator*(const CertifiedReal& a, long k) { return a * CertifiedReal::exact(k, a.precision_bits()); }

CertifiedReal operator+(const CertifiedReal& a, long k) { return a + CertifiedReal::exact(k, a.precision_bits()); }

CertifiedReal log(const CertifiedReal& x) {
  if (!x.certainly_positive()) throw DomainError("log of an interval not certainly positive");
  BigFloat lo(x.bits_), hi(x.bits_);
  mpfr_log(lo.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_log(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), x.bits_};
}

CertifiedReal log1p(const CertifiedReal& x) {
  if (mpfr_cmp_si(x.lo_.get(), -1) <= 0) throw DomainError("log1p of an interval reaching -1");
  BigFloat lo(x.bits_), hi(x.bits_);
  mpfr_log1p(lo.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_log1p(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), x.bits_};
}

CertifiedReal exp(const CertifiedReal& x) {
  BigFloat lo(x.bits_), hi(x.bits_);
  mpfr_exp(lo.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_exp(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), x.bits_};
}

CertifiedReal sqrt(const CertifiedReal& x) {
  if (!x.certainly_nonnegative()) throw DomainError("sqrt of an interval not certainly non-negative");
  BigFloat lo(x.bits_), hi(x.bits_);
  mpfr_sqrt(lo.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), x.bits_};
}

CertifiedReal acosh(const CertifiedReal& x) {
  if (mpfr_cmp_ui(x.lo_.get(), 1) < 0) throw DomainError("acosh of an interval reaching below 1");
  BigFloat lo(x.bits_), hi(x.bits_);
  mpfr_acosh(lo.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_acosh(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), x.bits_};
}

CertifiedReal cosh(const CertifiedReal& x) {
  BigFloat lo(x.bits_), hi(x.bits_);
  if (mpfr_sgn(x.lo_.get()) >= 0) {
    mpfr_cosh(lo.get(), x.lo_.get(), MPFR_RNDD);
    mpfr_cosh(hi.get(), x.hi_.get(), MPFR_RNDU);
  } else if (mpfr_sgn(x.hi_.get()) <= 0) {
    mpfr_cosh(lo.get(), x.hi_.get(), MPFR_RNDD);
    mpfr_cosh(hi.get(), x.lo_.get(), MPFR_RNDU);
  } else {
    BigFloat t(x.bits_);
    mpfr_set_ui(lo.get(), 1, MPFR_RNDD);
    mpfr_cosh(hi.get(), x.lo_.get(), MPFR_RNDU);
    mpfr_cosh(t.get(), x.hi_.get(), MPFR_RNDU);
    if (mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
  }
  return {std::move(lo), std::move(hi), x.bits_};
}

CertifiedReal abs(const CertifiedReal& x) {
  if (x.certainly_nonnegative()) return x;
  if (mpfr_sgn(x.hi_.get()) <= 0) return -x;
  BigFloat lo(x.bits_), hi(x.bits_);
  mpfr_set_zero(lo.get(), 1);
  if (mpfr_cmpabs(x.lo_.get(), x.hi_.get()) > 0) {
    mpfr_abs(hi.get(), x.lo_.get(), MPFR_RNDU);
  } else {
    mpfr_set(hi.get(), x.hi_.get(), MPFR_RNDU);
  }
  return {std::move(lo), std::move(hi), x.bits_};
}

CertifiedReal pow(const CertifiedReal& base, const CertifiedReal& exponent) {
  return exp(exponent * log(base));
}

CertifiedReal max(const CertifiedReal& a, const CertifiedReal& b) {
  long bits = max_bits(a, b);
  BigFloat lo(bits), hi(bits);
  mpfr_max(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), bits};
}

CertifiedReal min(const CertifiedReal& a, const CertifiedReal& b) {
  long bits = max_bits(a, b);
  BigFloat lo(bits), hi(bits);
  mpfr_min(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_min(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), bits};
}

CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b) {
  long bits = max_bits(a, b);
  BigFloat lo(bits), hi(bits);
  mpfr_min(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi), bits};
}

Ordering certified_compare(const CertifiedReal& a, const CertifiedReal& b) {
  if (a.certainly_less(b)) return Ordering::Less;
  if (b.certainly_less(a)) return Ordering::Greater;
  return Ordering::Indeterminate;
}

BigInt certified_floor(const RealSource& x, const PrecisionPolicy& policy) {
  long bits = policy.bits;
  while (true) {
    if (auto f = x(bits).floor_if_certain()) return *f;
    if (bits >= policy.cap_bits) throw PrecisionExhausted("floor is ambiguous", bits);
    bits = std::min(bits * 2, policy.cap_bits);
  }
}

CertifiedReal log_of(unsigned long n, long bits) {
  thread_local std::map<std::pair<unsigned long, long>, CertifiedReal> cache;
  auto key = std::make_pair(n, bits);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  CertifiedReal value = certified_log(BigInt(n), bits);
  cache.emplace(key, value);
  return value;
}

CertifiedReal euler_e(long bits) { return exp(CertifiedReal::exact(1L, bits)); }

// ---------------------------------------------------------------------------
// QuadraticSurd

bool is_perfect_square(const BigInt& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

QuadraticSurd::QuadraticSurd(Rational a, Rational b, BigInt d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (d_ <= 1) throw InvalidInput("surd field requires d > 1");
  if (is_perfect_square(d_)) throw InvalidInput("surd field requires non-square d");
  a_.canonicalize();
  b_.canonicalize();
}

QuadraticSurd::QuadraticSurd(Rational a, Rational b, BigInt d, Trusted)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

QuadraticSurd QuadraticSurd::one(const BigInt& d) { return QuadraticSurd(Rational(1), Rational(0), d); }

void QuadraticSurd::require_same_field(const QuadraticSurd& other) const {
  if (d_ != other.d_) throw InvalidInput("mixed-field surd arithmetic is not supported");
}

QuadraticSurd QuadraticSurd::conjugate() const { return {a_, -b_, d_, Trusted{}}; }

Rational QuadraticSurd::norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

int QuadraticSurd::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: |a| versus |b|·sqrt(d)
  int cmp_sq = cmp(a_ * a_, b_ * b_ * Rational(d_));
  return cmp_sq > 0 ? sa : sb;
}

QuadraticSurd QuadraticSurd::inverse() const {
  Rational n = norm();
  if (n == 0) throw DomainError("inverse of zero surd");
  return {a_ / n, -b_ / n, d_, Trusted{}};
}

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
  x.require_same_field(y);
  return {x.a_ + y.a_, x.b_ + y.b_, x.d_, QuadraticSurd::Trusted{}};
}

QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) {
  x.require_same_field(y);
  return {x.a_ - y.a_, x.b_ - y.b_, x.d_, QuadraticSurd::Trusted{}};
}

QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
  x.require_same_field(y);
  Rational a = x.a_ * y.a_ + x.b_ * y.b_ * Rational(x.d_);
  Rational b = x.a_ * y.b_ + x.b_ * y.a_;
  return {std::move(a), std::move(b), x.d_, QuadraticSurd::Trusted{}};
}

QuadraticSurd surd_pow(const QuadraticSurd& x, unsigned long k) {
  QuadraticSurd result = QuadraticSurd::one(x.d());
  QuadraticSurd base = x;
  while (k > 0) {
    if (k & 1UL) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

namespace {

constexpr long kGuardBits = 32;

// a + b·sqrt(d) where a and b do not have opposite signs.
CertifiedReal same_sign_value(const Rational& a, const Rational& b, const BigInt& d, long bits) {
  CertifiedReal root = sqrt(CertifiedReal::exact(d, bits));
  return CertifiedReal::exact(a, bits) + CertifiedReal::exact(b, bits) * root;
}

}  // namespace

CertifiedReal to_certified(const QuadraticSurd& x, long bits) {
  int sa = sgn(x.a());
  int sb = sgn(x.b());
  if (sa == 0 || sb == 0 || sa == sb) return same_sign_value(x.a(), x.b(), x.d(), bits);
  // a + b√d = norm / (a − b√d), and a − b√d has no cancellation.
  CertifiedReal conj = same_sign_value(x.a(), -x.b(), x.d(), bits);
  return CertifiedReal::exact(x.norm(), bits) / conj;
}

CertifiedReal certified_log(const Rational& x, long bits) {
  if (x <= 0) throw DomainError("log of non-positive rational");
  if (x == 1) return CertifiedReal::exact(0L, bits);
  return log(CertifiedReal::exact(x, bits + kGuardBits)).with_precision(bits);
}

CertifiedReal certified_log(const BigInt& x, long bits) { return certified_log(Rational(x), bits); }

CertifiedReal certified_log(const QuadraticSurd& x, long bits) {
  if (x.sign() <= 0) throw DomainError("log of non-positive surd");
  if (x.is_rational()) return certified_log(x.a(), bits);
  return log(to_certified(x, bits + kGuardBits)).with_precision(bits);
}

// ---------------------------------------------------------------------------
// Integers and parsing

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt ipow(unsigned long base, unsigned long exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

BigInt parse_bigint(std::string_view text) {
  Rational q = parse_decimal(text);
  if (q.get_den() != 1) throw InvalidInput("expected an integer, got '" + std::string(text) + "'");
  return q.get_num();
}

Rational parse_decimal(std::string_view text) {
  auto fail = [&]() -> Rational { throw InvalidInput("malformed number '" + std::string(text) + "'"); };
  if (text.empty()) return fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) return fail();
    Rational out = num / den;
    out.canonicalize();
    return out;
  }
  size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) --scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (digits.empty()) return fail();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail();
    ++i;
    std::string exp_text(text.substr(i));
    if (exp_text.empty()) return fail();
    size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != exp_text.size()) return fail();
    scale += e;
  }
  BigInt mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  Rational out;
  if (scale >= 0) {
    out = Rational(mantissa * ipow(10UL, static_cast<unsigned long>(scale)));
  } else {
    out = Rational(mantissa, ipow(10UL, static_cast<unsigned long>(-scale)));
    out.canonicalize();
  }
  return out;
}

}  // namespace pellsu
