#pragma once

#include <cstddef>
#include <optional>

#include "pellsu/cfrac.hpp"
#include "pellsu/numkernel.hpp"

namespace pellsu::reduction {

inline constexpr int kDefaultMaxConvergents = 26;  // first q > 6M plus 25 successors

struct LegendreResult {
  cfrac::AofM a;
  CertifiedReal exponent;  // log(C·M·(a(M)+2)) / log base
  BigInt bound;            // largest x with base^x < C·M·(a(M)+2), at least 0
};

// For a form with real τ and 0 < m < M satisfying |mτ − n| ≤ C·base^{−x},
// the Legendre-type estimate |mτ − n| > 1/((a(M)+2)m) caps x.
LegendreResult legendre_exponent_analysis(const cfrac::CFExpansion& cf, const BigInt& M, const CertifiedReal& C,
                                          const CertifiedReal& base);
BigInt legendre_exponent_bound(const RealSource& tau, const BigInt& M, const CertifiedReal& C,
                               const CertifiedReal& base, const PrecisionPolicy& policy = {});

struct ReductionOutcome {
  BigInt q_used;
  CertifiedReal epsilon1;  // ||μq|| − M||τq||, certified positive
  BigInt bound;            // largest k not excluded
  std::size_t convergent_index = 0;
  int attempts = 0;
};

// Dujella–Pethő: for 0 < m ≤ M and |mτ − n + μ| < A·B^{−k}, a convergent
// p/q of τ with q > 6M and ε = ||μq|| − M||τq|| > 0 forces
// k < log(Aq/ε)/log B. Tries up to `max_convergents` denominators starting
// at the first q > 6M; empty when none gives ε > 0.
std::optional<ReductionOutcome> dujella_petho(const cfrac::CFExpansion& cf, const RealSource& tau,
                                              const RealSource& mu, const CertifiedReal& A, const CertifiedReal& B,
                                              const BigInt& M, int max_convergents = kDefaultMaxConvergents,
                                              const PrecisionPolicy& policy = {});
std::optional<ReductionOutcome> dujella_petho(const RealSource& tau, const RealSource& mu, const CertifiedReal& A,
                                              const CertifiedReal& B, const BigInt& M,
                                              int max_convergents = kDefaultMaxConvergents,
                                              const PrecisionPolicy& policy = {});

// ||qτ|| = |qτ − p| for a convergent p/q with index ≥ 1.
CertifiedReal convergent_gap(const RealSource& tau, const cfrac::Convergent& c, long bits);

}  // namespace pellsu::reduction
