#include <doctest.h>

#include <cmath>
#include <random>

#include "pellsu/baker.hpp"

using namespace pellsu;

namespace {

const long kBits = 256;

CertifiedReal c(double v) { return CertifiedReal::exact(Rational(v), kBits); }

}  // namespace

TEST_CASE("rational heights") {
  CHECK(abs(baker::height_rational(2, kBits) - log_of(2, kBits)).certainly_less(c(1e-60)));
  CHECK(abs(baker::height_rational(Rational(3, 2), kBits) - log_of(3, kBits)).certainly_less(c(1e-60)));
  CHECK(baker::height_rational(1, kBits).contains(Rational(0)));
  CHECK(abs(baker::height_rational(Rational(-7, 3), kBits) - log_of(7, kBits)).certainly_less(c(1e-60)));
}

TEST_CASE("height symmetry") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    long p = 1 + rng() % 100000, q = 1 + rng() % 100000;
    Rational a(p, q), b(q, p);
    a.canonicalize();
    b.canonicalize();
    CHECK(abs(baker::height_rational(a, kBits) - baker::height_rational(b, kBits)).certainly_less(c(1e-60)));
  }
}

TEST_CASE("Pell unit heights") {
  auto h2 = baker::height_pell_unit(pell::fundamental_solution(2), kBits);
  CHECK(abs(h2 * 2L - CertifiedReal::from_decimal("1.76274717403908605046521864996", kBits)).certainly_less(c(1e-29)));
  auto h3 = baker::height_pell_unit(pell::fundamental_solution(3), kBits);
  CHECK(abs(h3 - CertifiedReal::from_decimal("0.6584789484624083543125231736539842", kBits))
            .certainly_less(c(1e-33)));
  for (unsigned long d : {2UL, 3UL, 7UL, 61UL}) {
    auto ctx = pell::fundamental_solution(d);
    auto twice = baker::height_pell_unit(ctx, kBits) * 2L;
    CHECK(twice.contains(certified_log(ctx.gamma, 4 * kBits)));
  }
}

TEST_CASE("Matveev bound values") {
  auto inst = baker::MatveevInstance::make(1, 1, {CertifiedReal::from_decimal("0.16", kBits)}, c(1));
  CHECK(abs(baker::matveev_lower_bound(inst) - c(181440)).certainly_less(c(1e-50)));
  CHECK_THROWS_AS(baker::MatveevInstance::make(1, 1, {CertifiedReal::from_decimal("0.15", kBits)}, c(1)),
                  InvalidInput);
  CHECK_THROWS_AS(baker::MatveevInstance::make(2, 1, {c(1)}, c(1)), InvalidInput);
  CHECK_THROWS_AS(baker::MatveevInstance::make(1, 1, {c(1)}, c(0.5)), InvalidInput);
}

TEST_CASE("Matveev bound is linear in each A_j") {
  std::vector<CertifiedReal> A{c(1.5), c(2.0), c(3.25)};
  auto L = baker::matveev_lower_bound(baker::MatveevInstance::make(3, 2, A, c(100)));
  A[1] = A[1] * 2L;
  auto L2 = baker::matveev_lower_bound(baker::MatveevInstance::make(3, 2, A, c(100)));
  CHECK(abs(L2 - L * 2L).certainly_less(L * CertifiedReal::from_decimal("1e-60", kBits)));
}

TEST_CASE("Matveev bound is monotone") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ad(0.16, 50.0), bd(1.0, 1e12);
  for (int i = 0; i < 100; ++i) {
    int t = 1 + static_cast<int>(rng() % 4), dL = 1 + static_cast<int>(rng() % 3);
    std::vector<CertifiedReal> A;
    for (int j = 0; j < t; ++j) A.push_back(c(ad(rng)));
    CertifiedReal B = c(bd(rng));
    auto L = baker::matveev_lower_bound(baker::MatveevInstance::make(t, dL, A, B));
    auto A_up = A;
    std::size_t j = rng() % t;
    A_up[j] = A[j] + 1L;
    CHECK(L.certainly_less(baker::matveev_lower_bound(baker::MatveevInstance::make(t, dL, A_up, B))));
    CHECK(L.certainly_less(baker::matveev_lower_bound(baker::MatveevInstance::make(t, dL, A, B * 2L))));
    auto A_more = A;
    A_more.push_back(c(ad(rng)));
    CHECK(L.certainly_less(baker::matveev_lower_bound(baker::MatveevInstance::make(t + 1, dL, A_more, B))));
  }
}

TEST_CASE("shrink_bound values") {
  auto s = baker::shrink_bound(c(1), c(10), c(0));
  CHECK(abs(s - CertifiedReal::from_decimal("46.05170185988091368", kBits)).certainly_less(c(1e-15)));
  auto e = euler_e(kBits);
  CHECK(abs(baker::shrink_bound(c(1), e, c(0)) - e * 2L).certainly_less(c(1e-50)));
  CHECK_THROWS_AS(baker::shrink_bound(c(2), c(1), c(0)), PreconditionError);
}

TEST_CASE("shrink_bound dominates brute force") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dd(0.05, 3.0), ratio(std::exp(1.0), 60.0), bd(-5.0, 40.0);
  for (int i = 0; i < 100; ++i) {
    double delta = dd(rng), alpha = delta * ratio(rng), beta = bd(rng);
    auto bound = baker::shrink_bound(c(delta), c(alpha), c(beta));
    // δB ≤ α log B + β fails for all large B; scan well past the bound.
    long limit = static_cast<long>(bound.approx() * 4) + 100;
    long largest = 0;
    for (long B = 1; B <= limit; ++B)
      if (delta * B <= alpha * std::log(static_cast<double>(B)) + beta + 1e-9) largest = B;
    CHECK(c(static_cast<double>(largest)).certainly_less(bound + 1L));
    CHECK(largest <= bound.floor_of_upper());
  }
}

TEST_CASE("absorption factor") {
  for (double k : {1.0, 2.0, 5.5, 40.0}) {
    for (double nmin : {2.0, 7.0, 7.5, 100.0}) {
      auto kappa = baker::absorption_factor(c(k), c(nmin));
      for (double n = nmin; n < nmin * 1e6; n *= 1.37) {
        double lhs = 1 + std::log(k * n), rhs = kappa.approx() * std::log(n);
        CHECK(lhs <= rhs * (1 + 1e-12));
      }
    }
  }
  CHECK_THROWS_AS(baker::absorption_factor(c(2), c(1)), PreconditionError);
}
