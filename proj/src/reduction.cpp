#include "pellsu/reduction.hpp"

#include <algorithm>

namespace pellsu::reduction {

namespace {

long bit_length(const BigInt& n) { return static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)); }

BigInt largest_below(const CertifiedReal& x) {
  BigInt b = x.ceil_of_upper() - 1;
  return b < 0 ? BigInt(0) : b;
}

}  // namespace

LegendreResult legendre_exponent_analysis(const cfrac::CFExpansion& cf, const BigInt& M, const CertifiedReal& C,
                                          const CertifiedReal& base) {
  if (M < 1) throw InvalidInput("M must be at least 1");
  if (!C.certainly_positive()) throw InvalidInput("C must be positive");
  long bits = std::max(C.precision_bits(), base.precision_bits());
  if (!base.certainly_greater(CertifiedReal::exact(1L, bits))) throw InvalidInput("base must exceed 1");
  LegendreResult out;
  out.a = cfrac::a_of_M(cf, M);
  CertifiedReal rhs = C * CertifiedReal::exact(M, bits) * CertifiedReal::exact(BigInt(out.a.a_M + 2), bits);
  out.exponent = log(rhs) / log(base);
  out.bound = largest_below(out.exponent);
  return out;
}

BigInt legendre_exponent_bound(const RealSource& tau, const BigInt& M, const CertifiedReal& C,
                               const CertifiedReal& base, const PrecisionPolicy& policy) {
  cfrac::CFExpansion cf = cfrac::expand_past(tau, M, 0, policy);
  if (cf.truncated) throw PrecisionExhausted("continued fraction truncated before q > M", cf.bits_used);
  return legendre_exponent_analysis(cf, M, C, base).bound;
}

CertifiedReal convergent_gap(const RealSource& tau, const cfrac::Convergent& c, long bits) {
  return abs(tau(bits) * c.q - CertifiedReal::exact(c.p, bits));
}

std::optional<ReductionOutcome> dujella_petho(const cfrac::CFExpansion& cf, const RealSource& tau,
                                              const RealSource& mu, const CertifiedReal& A, const CertifiedReal& B,
                                              const BigInt& M, int max_convergents, const PrecisionPolicy& policy) {
  if (M < 1) throw InvalidInput("M must be at least 1");
  if (!A.certainly_positive()) throw InvalidInput("A must be positive");
  if (!B.certainly_greater(CertifiedReal::exact(1L, B.precision_bits()))) throw InvalidInput("B must exceed 1");
  if (max_convergents < 1) throw InvalidInput("max_convergents must be positive");

  BigInt six_m = 6 * M;
  std::size_t start = 0;
  while (start < cf.size() && cf.convergents[start].q <= six_m) ++start;
  if (start == 0) start = 1;  // index 0 has q = 1 and is never above 6M anyway
  int attempts = 0;
  for (std::size_t t = start; t < cf.size() && attempts < max_convergents; ++t) {
    ++attempts;
    const cfrac::Convergent& c = cf.convergents[t];
    long bits = std::max(policy.bits, 2 * bit_length(c.q) + bit_length(M) + 64);
    while (true) {
      CertifiedReal tau_gap = convergent_gap(tau, c, bits);
      CertifiedReal mu_gap = cfrac::nearest_int_distance(mu(bits) * c.q);
      CertifiedReal eps = mu_gap - CertifiedReal::exact(M, bits) * tau_gap;
      if (eps.certainly_positive()) {
        CertifiedReal k = log(A * CertifiedReal::exact(c.q, bits) / eps) / log(B);
        return ReductionOutcome{c.q, eps, largest_below(k), t, attempts};
      }
      if (mpfr_sgn(eps.upper().get()) <= 0) break;  // certainly not positive
      if (bits >= policy.cap_bits) throw PrecisionExhausted("sign of epsilon1 undecided", bits);
      bits = std::min(bits * 2, policy.cap_bits);
    }
  }
  if (attempts < max_convergents && cf.truncated)
    throw PrecisionExhausted("continued fraction too short for the requested convergents", cf.bits_used);
  return std::nullopt;
}

std::optional<ReductionOutcome> dujella_petho(const RealSource& tau, const RealSource& mu, const CertifiedReal& A,
                                              const CertifiedReal& B, const BigInt& M, int max_convergents,
                                              const PrecisionPolicy& policy) {
  if (M < 1) throw InvalidInput("M must be at least 1");
  if (max_convergents < 1) throw InvalidInput("max_convergents must be positive");
  cfrac::CFExpansion cf = cfrac::expand_past(tau, 6 * M, static_cast<std::size_t>(max_convergents - 1), policy);
  return dujella_petho(cf, tau, mu, A, B, M, max_convergents, policy);
}

}  // namespace pellsu::reduction
