#include <doctest.h>

#include <cstdlib>
#include <random>

#include "pellsu/numkernel.hpp"

using namespace pellsu;

namespace {

CertifiedReal around(double mid, double rad, long bits = 128) {
  return CertifiedReal::around(Rational(mid), Rational(rad), bits);
}

}  // namespace

TEST_CASE("surd powers are exact") {
  QuadraticSurd g(3, 2, 2);
  CHECK(surd_pow(g, 0) == QuadraticSurd::one(2));
  CHECK(g * g.conjugate() == QuadraticSurd::one(2));
  CHECK(surd_pow(g, 2) == QuadraticSurd(17, 12, 2));
  CHECK(g.norm() == 1);
  CHECK(g.inverse() == g.conjugate());
}

TEST_CASE("gamma^l times eta^l is exactly one") {
  QuadraticSurd g(3, 2, 2), e(3, -2, 2);
  for (unsigned long l = 0; l <= 200; ++l) CHECK(surd_pow(g, l) * surd_pow(e, l) == QuadraticSurd::one(2));
}

TEST_CASE("mixed fields are rejected") {
  CHECK_THROWS_AS(QuadraticSurd(1, 1, 2) * QuadraticSurd(1, 1, 3), InvalidInput);
  CHECK_THROWS_AS(QuadraticSurd(1, 1, 9), InvalidInput);
}

TEST_CASE("surd sign is decided exactly") {
  CHECK(QuadraticSurd(3, -2, 2).sign() > 0);
  CHECK(QuadraticSurd(-3, 2, 2).sign() < 0);
  CHECK(QuadraticSurd(0, 0, 2).sign() == 0);
}

TEST_CASE("certified_log") {
  const long bits = 256;
  CertifiedReal l1 = certified_log(Rational(1), bits);
  CHECK(l1.contains(Rational(0)));
  CHECK(l1.radius().to_double() <= std::ldexp(1.0, -bits + 1));

  // acosh(3) to 30 digits.
  CertifiedReal lg = certified_log(QuadraticSurd(3, 2, 2), bits);
  CertifiedReal ref = CertifiedReal::from_decimal("1.76274717403908605046521864996", bits);
  CHECK(lg.certainly_positive());
  CHECK(abs(lg - ref).certainly_less(CertifiedReal::from_decimal("1e-29", bits)));

  CHECK_THROWS_AS(certified_log(Rational(-2), bits), DomainError);
  CHECK_THROWS_AS(certified_log(Rational(0), bits), DomainError);
  CHECK_THROWS_AS(certified_log(QuadraticSurd(-3, 2, 2), bits), DomainError);
}

TEST_CASE("log of a surd with cancellation stays tight") {
  // η = 3 − 2√2 ≈ 0.1716: log η = −log γ.
  CertifiedReal a = certified_log(QuadraticSurd(3, -2, 2), 256);
  CertifiedReal b = certified_log(QuadraticSurd(3, 2, 2), 256);
  CHECK(abs(a + b).certainly_less(CertifiedReal::from_decimal("1e-70", 256)));
}

TEST_CASE("certified_floor") {
  PrecisionPolicy p{64, 1 << 12};
  CHECK(certified_floor([](long b) { return around(2.5, 0.01, b); }, p) == 2);
  CHECK(certified_floor([](long b) { return log_of(2, b) / log_of(3, b); }, p) == 0);
  CHECK(certified_floor([](long b) { return -(log_of(2, b) / log_of(3, b)); }, p) == -1);
  // An enclosure of 3 that never shrinks enough to exclude 3 - ε.
  RealSource stuck = [](long b) { return CertifiedReal::around(Rational(3), Rational(1, 1000), b); };
  CHECK_THROWS_AS(certified_floor(stuck, p), PrecisionExhausted);
}

TEST_CASE("certified_compare") {
  CHECK(certified_compare(around(1.0, 0.1), around(2.0, 0.1)) == Ordering::Less);
  CHECK(certified_compare(around(2.0, 0.1), around(1.0, 0.1)) == Ordering::Greater);
  CHECK(certified_compare(around(1.0, 0.5), around(1.2, 0.5)) == Ordering::Indeterminate);
  CHECK(certified_compare(log_of(2, 64), log_of(3, 64)) == Ordering::Less);
}

TEST_CASE("interval soundness for random rationals") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(1, 1'000'000'000), den(1, 1'000'000);
  for (int i = 0; i < 300; ++i) {
    Rational x(num(rng), den(rng));
    x.canonicalize();
    for (long bits : {64L, 128L, 256L}) {
      CertifiedReal lo = certified_log(x, bits);
      CertifiedReal hi = certified_log(x, 2 * bits + 64);
      // The doubled-precision interval is inside the coarse one.
      CHECK(lo.contains(hi));
      CHECK(mpfr_cmp(hi.radius().get(), lo.radius().get()) <= 0);
    }
  }
}

TEST_CASE("arithmetic encloses exact rational results") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> n(-100000, 100000), d(1, 1000);
  for (int i = 0; i < 500; ++i) {
    Rational a(n(rng), d(rng)), b(n(rng), d(rng));
    a.canonicalize();
    b.canonicalize();
    auto A = CertifiedReal::exact(a, 64), B = CertifiedReal::exact(b, 64);
    CHECK((A + B).contains(Rational(a + b)));
    CHECK((A - B).contains(Rational(a - b)));
    CHECK((A * B).contains(Rational(a * b)));
    if (b != 0) CHECK((A / B).contains(Rational(a / b)));
  }
}

TEST_CASE("serialization is exact") {
  CertifiedReal x = log_of(3, 300) / log_of(7, 300);
  CertifiedReal y = CertifiedReal::deserialize(x.serialize());
  CHECK(y.precision_bits() == x.precision_bits());
  CHECK(mpfr_equal_p(x.lower().get(), y.lower().get()));
  CHECK(mpfr_equal_p(x.upper().get(), y.upper().get()));
}

TEST_CASE("decimal parsing") {
  CHECK(parse_decimal("8.62e28") == Rational(BigInt("86200000000000000000000000000")));
  CHECK(parse_decimal("17.2E+28") == Rational(BigInt("172000000000000000000000000000")));
  CHECK(parse_decimal("-4.5") == Rational(-9, 2));
  CHECK(parse_decimal("3/4") == Rational(3, 4));
  CHECK(parse_bigint("1.179e19") == BigInt("11790000000000000000"));
  CHECK_THROWS_AS(parse_bigint("1.5"), InvalidInput);
  CHECK_THROWS_AS(parse_decimal("abc"), InvalidInput);
  CHECK(CertifiedReal::from_decimal("1.33e14", 128).contains(Rational(BigInt("133000000000000"))));
}

TEST_CASE("precision comes from the environment") {
  setenv("PELLSU_PREC_BITS", "512", 1);
  CHECK(PrecisionPolicy::from_env().bits == 512);
  unsetenv("PELLSU_PREC_BITS");
  CHECK(PrecisionPolicy::from_env().bits == kDefaultPrecisionBits);
}

TEST_CASE("integer helpers") {
  CHECK(is_perfect_square(BigInt(160801)));
  CHECK_FALSE(is_perfect_square(BigInt(160802)));
  CHECK(ipow(3, 5) == 243);
  CHECK(ipow(BigInt(2), 100) == BigInt("1267650600228229401496703205376"));
}
