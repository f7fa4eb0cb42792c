#pragma once

// Verification that no d admits two solutions of X_l = 2^{n1}·3^{n2} with
// n1 ≤ n2: Baker bound, reduction chain, the searches for l1 ≥ 2, and the
// reduction-plus-scan over every X1 = 2^{a1}·3^{a2} for l1 = 1.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pellsu/cfrac.hpp"
#include "pellsu/numkernel.hpp"

namespace pellsu::theorem2 {

enum class Mode { Reproduction, Sharp };
enum class Verdict { Holds, CounterexampleFound, Inconclusive };

const char* to_string(Mode m);
const char* to_string(Verdict v);
Mode parse_mode(std::string_view text);

// Published values used verbatim in reproduction mode.
namespace published {
inline constexpr const char* kC10 = "1.33e14";
inline constexpr const char* kC11 = "1.34e14";
inline constexpr long kC12 = 4;
inline constexpr const char* kB2Max = "8.62e28";
inline constexpr const char* kL2Max = "17.2e28";
// The Legendre right-hand side 1824·M³, i.e. C = 32·M² with a(M) + 2 = 57.
inline constexpr long kLegendreCoefficient = 32;
// b2 bounds announced after each chain step; each must dominate the value
// this code derives from the step's a2 bound.
inline const std::vector<const char*> kChainM = {"8.62e28", "1.78e19", "1.2e19", "1.179e19"};
}  // namespace published

struct Constants {
  CertifiedReal c10, c11;
  long c12 = published::kC12;
  CertifiedReal c10_published, c11_published;
  // Own (Matveev plus absorption) values, reported in both modes.
  CertifiedReal c10_own, c11_own;
  CertifiedReal absorption_kappa;
};

struct InitialBounds {
  Constants constants;
  BigInt b2_max;
  BigInt l2_max;
  std::optional<BigInt> a2_initial;  // sharp mode: a2 bound before any reduction
};

struct ChainStep {
  BigInt M;             // b2 bound entering the step
  BigInt M_lemma;       // denominator cap passed to the Legendre estimate
  cfrac::AofM a;        // a(M_lemma) for log2/log3
  CertifiedReal exponent;
  BigInt a2_bound;
  CertifiedReal b2_bound;  // b2 < this, from the step's a2 bound
  BigInt next_M;
};

struct Chain {
  std::vector<ChainStep> steps;
  BigInt a2_max;  // value at the fixpoint
  BigInt M_final;  // b2 bound handed to the final scan
};

struct PolyHit {
  unsigned long l1;
  unsigned long a1, a2;
  BigInt x1;
};

struct PolyTarget {
  unsigned long a1, a2;
  BigInt n;
};

struct PolySearch {
  unsigned long l1_min = 2, l1_max = 0;
  unsigned long a2_max = 0;
  BigInt x1_min;  // hits need X1 ≥ x1_min
  unsigned long long inversions = 0;
  std::vector<PolyHit> hits;
};

struct SmallDHit {
  BigInt d;
  unsigned long l;
  BigInt X;
  unsigned long n1, n2;
};

struct SmallDSearch {
  unsigned long d_max = 0;
  unsigned long d_count = 0;
  unsigned long max_l = 0;  // largest l1 bound used over all d
  std::vector<SmallDHit> hits;
};

struct ScanHit {
  unsigned long a1, a2;
  unsigned long l2;
  unsigned long b1, b2;
};

// Outcome for one X1 = 2^{a1}·3^{a2}.
struct CandidateRecord {
  unsigned long a1 = 0, a2 = 0;
  bool conclusive = true;
  std::vector<unsigned long> failed_j;  // j with no reduction
  long M5 = -1;                         // bound on b2 over every j
  long M5_dp = -1;                      // over j treated by the plain reduction only
  unsigned long degenerate_j = 0;       // j with (a1+1) | j
  CertifiedReal l_bound;                // (2·M5·log3 + log2.5)/log γ
  unsigned long l2_max = 0;
  std::optional<CertifiedReal> eps_binding;  // ε1 at the j attaining M5_dp
  std::optional<CertifiedReal> eps_min;      // smallest accepted ε1 over j
  std::vector<ScanHit> hits;
};

struct Extremum {
  long value = -1;
  unsigned long a1 = 0, a2 = 0;
};

struct RealExtremum {
  std::optional<CertifiedReal> value;
  unsigned long a1 = 0, a2 = 0;
};

struct FinalScan {
  unsigned long a2_max = 0;
  unsigned long j_max = 0;
  BigInt M;
  std::size_t candidate_count = 0;
  std::size_t degenerate_pairs = 0;
  Extremum max_M5;
  Extremum max_M5_dp;
  RealExtremum max_l;
  RealExtremum min_eps1_binding;
  RealExtremum min_eps1_pairs;
  std::vector<std::pair<unsigned long, unsigned long>> inconclusive;
  std::vector<ScanHit> hits;
  bool resumed = false;
};

using XAt = std::function<BigInt(const BigInt& x1, unsigned long l)>;

struct Config {
  Mode mode = Mode::Reproduction;
  PrecisionPolicy policy;
  unsigned workers = 1;
  std::optional<std::string> checkpoint_path;
  std::size_t checkpoint_every = 1000;
  // Empty means run every stage; otherwise only the named stage (after the
  // stages it depends on).
  std::optional<std::string> stage;
  int max_convergents = 26;
  // Overrides used by tests to shrink the search windows.
  std::optional<unsigned long> final_a2_limit;
  std::optional<unsigned long> poly_a2_limit;
  std::optional<unsigned long> small_d_max;
  // Test double for X_l(X1) in the final scan; the recurrence otherwise.
  XAt x_at;
};

inline const std::vector<std::string> kStages = {"constants", "chain", "poly", "small-d", "final"};

struct Report {
  Mode mode = Mode::Reproduction;
  std::vector<std::string> stages_run;
  std::optional<InitialBounds> initial;
  std::optional<Chain> chain;
  std::optional<PolySearch> poly;
  std::optional<SmallDSearch> small_d;
  std::optional<FinalScan> final_scan;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<std::string> failing_stage;
  std::optional<std::string> error;
  std::string verdict_reason;
};

InitialBounds initial_bounds(Mode mode, long bits = kDefaultPrecisionBits);

Chain reduce_chain(Mode mode, const InitialBounds& initial, const PrecisionPolicy& policy = {});

// Every polynomial target n with l1 ∈ [l1_min, l1_max] is inverted through
// P_{l1}(X1) = n; roots X1 ≥ x1_min are hits.
PolySearch poly_sweep(const std::vector<PolyTarget>& targets, unsigned long l1_min, unsigned long l1_max,
                      const BigInt& x1_min, unsigned workers = 1, const PrecisionPolicy& policy = {});
// Targets 2^{a1}·3^{a2} with a1 ≤ a2 ≤ a2_max, d > d_max (so X1 > √d_max).
PolySearch search_l1_ge2(unsigned long a2_max, unsigned long d_max = 401, unsigned workers = 1,
                         const PrecisionPolicy& policy = {});

SmallDSearch search_small_d(unsigned long d_max, unsigned long a2_max, const PrecisionPolicy& policy = {});

// One candidate of the final scan.
CandidateRecord scan_candidate(unsigned long a1, unsigned long a2, const BigInt& M, unsigned long j_max,
                               int max_convergents, const PrecisionPolicy& policy, const XAt& x_at = {});

FinalScan final_scan_l1_eq_1(unsigned long a2_max, const BigInt& M, const Config& config);

Report verify(const Config& config);

}  // namespace pellsu::theorem2
