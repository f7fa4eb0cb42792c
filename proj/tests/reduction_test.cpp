#include <doctest.h>

#include <random>

#include "pellsu/reduction.hpp"

using namespace pellsu;

namespace {

const long kBits = 256;

CertifiedReal num(long v) { return CertifiedReal::exact(v, kBits); }

struct Candidate {
  RealSource tau, mu;
  CertifiedReal A;
};

// τ = log 3/log γ, μ = j·log 2/log γ, A = 2/log γ for X1 = 2^{a1}·3^{a2}.
Candidate final_stage(unsigned long a1, unsigned long a2, long j) {
  BigInt x1 = ipow(2, a1) * ipow(3, a2);
  QuadraticSurd g(Rational(x1), 1, x1 * x1 - 1);
  RealSource lg = [g](long b) { return certified_log(g, b); };
  return {[lg](long b) { return log_of(3, b) / lg(b); }, [lg, j](long b) { return log_of(2, b) * j / lg(b); },
          num(2) / lg(kBits)};
}

}  // namespace

TEST_CASE("Legendre exponent bound reproduces the chain") {
  auto tau = cfrac::log_ratio_source(2, 3);
  CertifiedReal base = sqrt(num(3));
  struct Step {
    const char* M;
    long bound;
  };
  for (Step s : {Step{"8.62e28", 377}, Step{"1.78e19", 255}, Step{"1.2e19", 253}, Step{"1.179e19", 253}}) {
    BigInt M = parse_bigint(s.M);
    CertifiedReal C = num(32) * CertifiedReal::exact(BigInt(M * M), kBits);
    CHECK(reduction::legendre_exponent_bound(tau, M, C, base) == s.bound);
  }
  BigInt M1 = parse_bigint("8.62e28");
  auto cf = cfrac::expand_past(tau, M1, 0);
  auto r = reduction::legendre_exponent_analysis(cf, M1, num(32) * CertifiedReal::exact(BigInt(M1 * M1), kBits), base);
  CHECK(r.a.a_M == 55);
  // 2·log(32·M³·57)/log 3 = 377.5457...
  CHECK(r.exponent.certainly_greater(CertifiedReal::from_decimal("377.545", kBits)));
  CHECK(r.exponent.certainly_less(CertifiedReal::from_decimal("377.546", kBits)));
}

TEST_CASE("Legendre bound is zero for a tiny right-hand side") {
  // a(1) = 1 for log2/log3, so C·M·(a+2) = 3/2 < 3.
  auto tiny = CertifiedReal::exact(Rational(1, 2), kBits);
  CHECK(reduction::legendre_exponent_bound(cfrac::log_ratio_source(2, 3), 1, tiny, num(3)) == 0);
}

TEST_CASE("Dujella-Petho matches the reference computation") {
  const BigInt M = parse_bigint("1.179e19");
  struct Ref {
    unsigned long a1, a2;
    long j;
    long bound;
    const char* q;
    const char* eps_lo;
    const char* eps_hi;
  };
  for (const Ref& r : {Ref{1, 1, 1, 43, "324016368941181954109", "0.437032261786", "0.437032261787"},
                       Ref{5, 10, 3, 41, "153237961930711048511", "0.314741402889", "0.314741402891"},
                       Ref{0, 1, 1, 48, "551659067242188141997", "0.00467944691113", "0.00467944691115"},
                       Ref{5, 5, 1, 45, "11406076811692445081557", "0.455209869894", "0.455209869896"},
                       Ref{62, 195, 1, 38, "102575210812733038780", "0.396826527674", "0.396826527676"}}) {
    Candidate c = final_stage(r.a1, r.a2, r.j);
    auto o = reduction::dujella_petho(c.tau, c.mu, c.A, num(3), M);
    REQUIRE(o);
    CHECK(o->bound == r.bound);
    CHECK(o->q_used == BigInt(r.q));
    CHECK(o->epsilon1.certainly_positive());
    CHECK(o->epsilon1.certainly_greater(CertifiedReal::from_decimal(r.eps_lo, kBits)));
    CHECK(o->epsilon1.certainly_less(CertifiedReal::from_decimal(r.eps_hi, kBits)));
    CHECK(o->q_used > 6 * M);
  }
}

TEST_CASE("degenerate shift gives no reduction") {
  auto tau = cfrac::sqrt_source(2);
  RealSource mu = [tau](long b) { return tau(b) * 2L; };
  CHECK_FALSE(reduction::dujella_petho(tau, mu, num(1), num(2), 1000));
  RealSource zero = [](long b) { return CertifiedReal::exact(0L, b); };
  CHECK_FALSE(reduction::dujella_petho(tau, zero, num(1), num(2), 1000, 5));
}

TEST_CASE("Dujella-Petho soundness by enumeration") {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    long D = 2 + static_cast<long>(rng() % 200), E = 2 + static_cast<long>(rng() % 200);
    if (is_perfect_square(BigInt(D)) || is_perfect_square(BigInt(E))) continue;
    long F = 1 + static_cast<long>(rng() % 9);
    long M = 10 + static_cast<long>(rng() % 491);
    RealSource tau = cfrac::sqrt_source(D);
    RealSource mu = [E, F](long b) { return sqrt(CertifiedReal::exact(E, b)) / CertifiedReal::exact(F, b); };
    CertifiedReal A = num(1 + static_cast<long>(rng() % 20)), B = num(2 + static_cast<long>(rng() % 3));
    auto o = reduction::dujella_petho(tau, mu, A, B, M);
    if (!o) continue;
    ++checked;
    // No 1 ≤ m ≤ M has |mτ − n + μ| < A·B^{−(bound+1)}.
    CertifiedReal floor_value =
        A / pow(B, CertifiedReal::exact(BigInt(o->bound + 1), kBits));
    CertifiedReal t = tau(kBits), u = mu(kBits);
    for (long m = 1; m <= M; ++m) {
      CertifiedReal x = t * m + u;
      BigInt n = (x + CertifiedReal::exact(Rational(1, 2), kBits)).floor_of_lower();
      CertifiedReal lhs = abs(x - CertifiedReal::exact(n, kBits));
      REQUIRE(floor_value.certainly_less(lhs));
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("bound does not decrease with M for a fixed denominator") {
  Candidate c = final_stage(3, 7, 5);
  auto cf = cfrac::expand_past(c.tau, BigInt(6) * parse_bigint("1e22"), 25);
  std::optional<reduction::ReductionOutcome> prev;
  for (const char* Ms : {"1e15", "3e15", "1e16", "5e16", "1e17", "1e18", "1e19"}) {
    auto o = reduction::dujella_petho(cf, c.tau, c.mu, c.A, num(3), parse_bigint(Ms));
    REQUIRE(o);
    if (prev && prev->q_used == o->q_used) CHECK(prev->bound <= o->bound);
    prev = o;
  }
}

TEST_CASE("convergent gap") {
  auto tau = cfrac::sqrt_source(2);
  auto cf = cfrac::expand(tau, 10);
  for (std::size_t t = 1; t < 9; ++t) {
    auto gap = reduction::convergent_gap(tau, cf.convergents[t], kBits);
    CHECK(gap.certainly_positive());
    CHECK(gap.certainly_less(CertifiedReal::exact(Rational(BigInt(1), cf.convergents[t + 1].q), kBits)));
  }
}
