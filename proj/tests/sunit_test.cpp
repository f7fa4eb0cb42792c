#include <doctest.h>

#include <random>
#include <set>

#include "pellsu/sunit.hpp"

using namespace pellsu;
using sunit::PrimeSet;

TEST_CASE("prime sets") {
  CHECK_NOTHROW(PrimeSet{2, 3, 5});
  CHECK_THROWS_AS(PrimeSet({3, 2}), InvalidInput);
  CHECK_THROWS_AS(PrimeSet({2, 4}), InvalidInput);
  CHECK_THROWS_AS(PrimeSet(std::vector<std::uint64_t>{}), InvalidInput);
  CHECK(sunit::is_prime(1'000'000'007ULL));
  CHECK_FALSE(sunit::is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("decompose") {
  PrimeSet S{2, 3};
  auto d = sunit::decompose(108, S);
  REQUIRE(d);
  CHECK(d->sign == 1);
  CHECK(d->exponents == std::vector<unsigned long>{2, 3});
  CHECK_FALSE(sunit::decompose(30, S));
  auto m1 = sunit::decompose(-1, S);
  REQUIRE(m1);
  CHECK(m1->sign == -1);
  CHECK(m1->exponents == std::vector<unsigned long>{0, 0});
  CHECK_THROWS_AS(sunit::decompose(0, S), InvalidInput);
}

TEST_CASE("ordered 2-3 form") {
  CHECK(sunit::as_2a3b_ordered(3) == std::pair<unsigned long, unsigned long>{0, 1});
  CHECK_FALSE(sunit::as_2a3b_ordered(12));
  CHECK(sunit::as_2a3b_ordered(108) == std::pair<unsigned long, unsigned long>{2, 3});
  CHECK(sunit::as_2a3b_ordered(1) == std::pair<unsigned long, unsigned long>{0, 0});
  CHECK_FALSE(sunit::as_2a3b_ordered(2));
}

TEST_CASE("max exponent") {
  CHECK(sunit::max_exponent({{1, {2, 3}}}) == 3);
  CHECK(sunit::max_exponent({{1, {1, 0}}, {1, {0, 4}}}) == 4);
  CHECK(sunit::max_exponent({{-1, {0, 0}}}) == 0);
  CHECK_THROWS_AS(sunit::max_exponent({}), InvalidInput);
}

TEST_CASE("round trip over random S-smooth integers") {
  PrimeSet S{2, 3, 5, 7, 11};
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 10000; ++i) {
    std::vector<unsigned long> e(S.size());
    for (auto& x : e) x = rng() % 40;
    int sign = rng() % 2 ? 1 : -1;
    sunit::SUnitDecomposition dec{sign, e};
    BigInt n = dec.value(S);
    auto back = sunit::decompose(n, S);
    REQUIRE(back);
    REQUIRE(*back == dec);
  }
}

TEST_CASE("decompose agrees with a factorization sieve up to 1e6") {
  PrimeSet S{2, 3, 5};
  const unsigned long N = 1'000'000;
  std::vector<unsigned long> spf(N + 1, 0);
  for (unsigned long p = 2; p <= N; ++p)
    if (spf[p] == 0)
      for (unsigned long q = p; q <= N; q += p)
        if (spf[q] == 0) spf[q] = p;
  for (unsigned long n = 1; n <= N; ++n) {
    bool smooth = true;
    for (unsigned long m = n; m > 1; m /= spf[m])
      if (spf[m] > 5) smooth = false;
    REQUIRE(sunit::decompose(BigInt(n), S).has_value() == smooth);
  }
}

TEST_CASE("ordered form agrees with decompose") {
  PrimeSet S{2, 3};
  for (unsigned long n = 1; n <= 100000; ++n) {
    auto d = sunit::decompose(BigInt(n), S);
    bool expect = d && d->exponents[0] <= d->exponents[1];
    REQUIRE(sunit::as_2a3b_ordered(BigInt(n)).has_value() == expect);
  }
}

TEST_CASE("units up to a bound") {
  auto u = sunit::units_up_to(PrimeSet{2, 3}, 10);
  std::vector<BigInt> values;
  for (const auto& [v, d] : u) values.push_back(v);
  CHECK(values == std::vector<BigInt>{1, 2, 3, 4, 6, 8, 9});
}

TEST_CASE("enumerate S-unit sums") {
  auto r1 = sunit::enumerate_sunit_sums(PrimeSet{2, 3}, 1, 10);
  std::vector<BigInt> v1;
  for (const auto& s : r1) v1.push_back(s.value);
  CHECK(v1 == std::vector<BigInt>{1, 2, 3, 4, 6, 8, 9});

  auto r2 = sunit::enumerate_sunit_sums(PrimeSet{2, 3}, 2, 5);
  bool five = false;
  for (const auto& s : r2) {
    for (const auto& w : s.witnesses) {
      REQUIRE(w.size() == 2);
      BigInt sum = 0;
      for (const auto& t : w) sum += t.value(PrimeSet{2, 3});
      REQUIRE(sum == s.value);
    }
    if (s.value == 5) five = true;
  }
  CHECK(five);

  auto r3 = sunit::enumerate_sunit_sums(PrimeSet{2}, 1, 1);
  REQUIRE(r3.size() == 1);
  CHECK(r3[0].value == 1);
}

TEST_CASE("sum enumeration is exhaustive against direct pairing") {
  PrimeSet S{2, 3, 5};
  const BigInt bound = 2000;
  auto units = sunit::units_up_to(S, bound);
  std::set<BigInt> direct;
  for (const auto& [a, da] : units)
    for (const auto& [b, db] : units)
      if (a + b <= bound) direct.insert(a + b);
  std::set<BigInt> listed;
  for (const auto& s : sunit::enumerate_sunit_sums(S, 2, bound)) listed.insert(s.value);
  CHECK(listed == direct);
}

TEST_CASE("enumeration budget") {
  sunit::EnumerationOptions opts;
  opts.max_combinations = 100;
  try {
    sunit::enumerate_sunit_sums(PrimeSet{2, 3, 5, 7}, 3, BigInt(1000000), opts);
    FAIL("expected the budget to run out");
  } catch (const sunit::EnumerationBudgetExceeded& e) {
    CHECK(e.progress() >= 100);
  }
}
