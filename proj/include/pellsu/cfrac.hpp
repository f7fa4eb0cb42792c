#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "pellsu/numkernel.hpp"

namespace pellsu::cfrac {

struct Convergent {
  BigInt p;
  BigInt q;
};

// Certified prefix [a0; a1, a2, ...] of an irrational and its convergents,
// indexed from t = 0 with p0/q0 = a0/1.
struct CFExpansion {
  std::vector<BigInt> quotients;
  std::vector<Convergent> convergents;
  bool truncated = false;  // precision cap hit before the request was met
  long bits_used = 0;

  std::size_t size() const { return quotients.size(); }
};

// First `count` partial quotients.
CFExpansion expand(const RealSource& tau, std::size_t count, const PrecisionPolicy& policy = {});

// Quotients up to the first index N with q_N > q_bound, then `extra` more.
CFExpansion expand_past(const RealSource& tau, const BigInt& q_bound, std::size_t extra,
                        const PrecisionPolicy& policy = {});

struct AofM {
  std::size_t N = 0;  // minimal index with q_N > M
  BigInt q_N;
  BigInt a_M;  // max{a_0, ..., a_N}
};

AofM a_of_M(const RealSource& tau, const BigInt& M, const PrecisionPolicy& policy = {});
// Same statistic read off an existing expansion (which must reach q > M).
AofM a_of_M(const CFExpansion& cf, const BigInt& M);

// ||x||, the distance to the nearest integer. The result is always a valid
// enclosure; it is wide when x straddles a half-integer.
CertifiedReal nearest_int_distance(const CertifiedReal& x);
// Refinable variant: escalates until the nearest integer is unambiguous.
CertifiedReal nearest_int_distance(const RealSource& x, const PrecisionPolicy& policy = {});

// Common sources.
RealSource log_ratio_source(unsigned long numerator_log_arg, unsigned long denominator_log_arg);
RealSource sqrt_source(const BigInt& d);
RealSource golden_ratio_source();
// log 3 / log(X1 + √(X1² − 1)).
RealSource pell_unit_tau_source(const BigInt& x1);
// "log2log3", "golden", "sqrt:D", "pell-unit:X1".
RealSource parse_tau(std::string_view label);

}  // namespace pellsu::cfrac
