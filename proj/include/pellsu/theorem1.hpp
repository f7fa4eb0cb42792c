#pragma once

#include <string>
#include <vector>

#include "pellsu/numkernel.hpp"
#include "pellsu/pell.hpp"
#include "pellsu/sunit.hpp"

namespace pellsu::theorem1 {

struct Params {
  int s;
  sunit::PrimeSet primes;
  long r;
  Rational epsilon;

  // Validates |primes| = s, the largest prime odd, r ≥ 1 and 0 < ε < 1.
  static Params make(int s, sunit::PrimeSet primes, long r, Rational epsilon);
};

struct LedgerEntry {
  std::string name;
  CertifiedReal value;
  std::string certifies;  // the inequality of the proof this constant makes true
};

struct ConstantsLedger {
  CertifiedReal c1, c2, c3, c4, c5, c6, c7, c8, c9;
  // The threshold p_s^{2c8}·r² is astronomically large; it is kept as a log.
  CertifiedReal log_d_threshold;
  BigInt Td_bound;  // ⌈c9⌉
  long bits = kDefaultPrecisionBits;

  std::vector<LedgerEntry> entries() const;
};

// Lower limit for n and γ used when absorbing 1 + log(k·n) into κ·log n.
// The proof assumes min{γ, n} ≥ 2.5·r·p_s > 7; a fixed limit keeps every
// constant monotone in r and p_s.
inline constexpr long kAbsorptionNMin = 7;

ConstantsLedger constants(const Params& params, long bits = kDefaultPrecisionBits);

enum class DClass { AtMostC9, AtMostOne };
const char* to_string(DClass c);

// AtMostOne iff d ≥ p_s^{2c8}·r², decided by comparing logarithms.
// An undecidable comparison falls back to the weaker AtMostC9.
DClass classify_d(const BigInt& d, const ConstantsLedger& ledger);

struct AuditCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct AuditRecord {
  unsigned long l = 0;
  BigInt X;
  unsigned long n_rs = 0;
  std::vector<AuditCheck> checks;

  bool all_passed() const;
};

// Checks the proof's inequalities on one concrete solution X_l = z_1 + … + z_r
// (terms given as decompositions over params.primes, the last one being z_r).
// Throws InvalidInput if the terms do not sum to X_l.
AuditRecord audit_inequalities(const pell::PellContext& ctx, unsigned long l,
                               const std::vector<sunit::SUnitDecomposition>& terms, const Params& params,
                               const PrecisionPolicy& policy = {});

}  // namespace pellsu::theorem1
