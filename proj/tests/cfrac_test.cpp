#include <doctest.h>

#include "pellsu/cfrac.hpp"

using namespace pellsu;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

CertifiedReal exact(const Rational& q) { return CertifiedReal::exact(q, 128); }

}  // namespace

TEST_CASE("classical expansions") {
  CHECK(cfrac::expand(cfrac::sqrt_source(2), 8).quotients == ints({1, 2, 2, 2, 2, 2, 2, 2}));
  CHECK(cfrac::expand(cfrac::golden_ratio_source(), 8).quotients == ints({1, 1, 1, 1, 1, 1, 1, 1}));
  CHECK(cfrac::expand(cfrac::sqrt_source(7), 9).quotients == ints({2, 1, 1, 1, 4, 1, 1, 1, 4}));
}

TEST_CASE("log2/log3 expansion") {
  auto cf = cfrac::expand(cfrac::log_ratio_source(2, 3), 20);
  CHECK(cf.quotients == ints({0, 1, 1, 1, 2, 2, 3, 1, 5, 2, 23, 2, 2, 1, 1, 55, 1, 4, 3, 1}));
  CHECK_FALSE(cf.truncated);
  CHECK(cf.convergents[5].p == 12);
  CHECK(cf.convergents[5].q == 19);
}

TEST_CASE("tau labels") {
  auto a = cfrac::expand(cfrac::parse_tau("log2log3"), 6).quotients;
  CHECK(a == ints({0, 1, 1, 1, 2, 2}));
  CHECK(cfrac::expand(cfrac::parse_tau("sqrt:2"), 3).quotients == ints({1, 2, 2}));
  CHECK(cfrac::expand(cfrac::parse_tau("golden"), 3).quotients == ints({1, 1, 1}));
  // log 3 / log(2 + √3) = 0.834...
  CHECK(cfrac::expand(cfrac::parse_tau("pell-unit:2"), 1).quotients == ints({0}));
  CHECK_THROWS_AS(cfrac::parse_tau("sqrt:4"), InvalidInput);
  CHECK_THROWS_AS(cfrac::parse_tau("pi"), InvalidInput);
}

TEST_CASE("a(M)") {
  auto tau = cfrac::log_ratio_source(2, 3);
  auto a10 = cfrac::a_of_M(tau, 10);
  CHECK(a10.N == 5);
  CHECK(a10.q_N == 19);
  CHECK(a10.a_M == 2);
  // Reference expansion at 300 digits.
  auto a1 = cfrac::a_of_M(tau, BigInt("86200000000000000000000000000"));
  CHECK(a1.a_M == 55);
  CHECK(a1.N == 58);
  CHECK(a1.q_N == BigInt("139694794708741478486001936819"));
  auto a2 = cfrac::a_of_M(tau, BigInt("17800000000000000000"));
  CHECK(a2.a_M == 55);
  CHECK(a2.N == 39);
  CHECK(a2.q_N == BigInt("36143248623210700400"));
}

TEST_CASE("truncation at the precision cap") {
  auto cf = cfrac::expand(cfrac::log_ratio_source(2, 3), 200, PrecisionPolicy{64, 128});
  CHECK(cf.truncated);
  CHECK(cf.size() < 200);
  CHECK(cf.quotients[15] == 55);
  CHECK_THROWS_AS(cfrac::a_of_M(cfrac::log_ratio_source(2, 3), parse_bigint("1e80"), PrecisionPolicy{64, 128}),
                  PrecisionExhausted);
}

TEST_CASE("nearest integer distance") {
  CHECK(cfrac::nearest_int_distance(exact(Rational(2, 5))).contains(Rational(2, 5)));
  CHECK(cfrac::nearest_int_distance(exact(Rational(13, 5))).contains(Rational(2, 5)));
  auto z = cfrac::nearest_int_distance(exact(Rational(7)));
  CHECK(z.contains(Rational(0)));
  CHECK(z.radius().to_double() == 0.0);
  auto neg = cfrac::nearest_int_distance(exact(Rational(-13, 5)));
  CHECK(neg.contains(Rational(2, 5)));
  // Straddling a half-integer still gives a valid enclosure.
  auto half = cfrac::nearest_int_distance(CertifiedReal::around(Rational(1, 2), Rational(1, 100), 64));
  CHECK(half.contains(Rational(1, 2)));
  CHECK(half.contains(Rational(49, 100)));
}

TEST_CASE("convergent identities") {
  for (auto tau : {cfrac::log_ratio_source(2, 3), cfrac::sqrt_source(2), cfrac::golden_ratio_source(),
                   cfrac::log_ratio_source(3, 5), cfrac::pell_unit_tau_source(6)}) {
    auto cf = cfrac::expand(tau, 60);
    REQUIRE(cf.size() == 60);
    for (std::size_t t = 1; t < cf.size(); ++t) {
      const auto& c = cf.convergents[t];
      const auto& b = cf.convergents[t - 1];
      BigInt det = c.p * b.q - b.p * c.q;
      CHECK(det == (t % 2 == 1 ? 1 : -1));
      if (t >= 2) CHECK(c.q > b.q);
      CHECK(cf.quotients[t] >= 1);
    }
    for (std::size_t t = 0; t + 1 < cf.size(); ++t) {
      const auto& c = cf.convergents[t];
      CertifiedReal gap = abs(tau(512) * c.q - CertifiedReal::exact(c.p, 512));
      CHECK(gap.certainly_less(CertifiedReal::exact(Rational(BigInt(1), cf.convergents[t + 1].q), 512)));
    }
  }
}

TEST_CASE("Legendre-type bound by enumeration") {
  for (const char* label : {"log2log3", "sqrt:2"}) {
    auto tau = cfrac::parse_tau(label);
    for (long M : {10L, 50L, 100L, 200L}) {
      BigInt aM = cfrac::a_of_M(tau, M).a_M;
      CertifiedReal t = tau(256);
      for (long m = 1; m < M; ++m) {
        CertifiedReal mt = t * m;
        BigInt n = (mt + CertifiedReal::exact(Rational(1, 2), 256)).floor_of_lower();
        CertifiedReal lhs = abs(mt - CertifiedReal::exact(n, 256));
        CertifiedReal rhs = CertifiedReal::exact(Rational(BigInt(1), (aM + 2) * m), 256);
        REQUIRE(rhs.certainly_less(lhs));
      }
    }
  }
}
