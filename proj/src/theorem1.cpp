#include "pellsu/theorem1.hpp"

#include <algorithm>

#include "pellsu/baker.hpp"

namespace pellsu::theorem1 {

Params Params::make(int s, sunit::PrimeSet primes, long r, Rational epsilon) {
  epsilon.canonicalize();
  if (s < 1) throw InvalidInput("s must be positive");
  if (static_cast<int>(primes.size()) != s) throw InvalidInput("prime set must have exactly s primes");
  if (primes.largest() % 2 == 0) throw InvalidInput("largest prime p_s must be odd");
  if (r < 1) throw InvalidInput("r must be positive");
  if (epsilon <= 0 || epsilon >= 1) throw InvalidInput("epsilon must lie in (0, 1)");
  return {s, std::move(primes), r, std::move(epsilon)};
}

std::vector<LedgerEntry> ConstantsLedger::entries() const {
  return {
      {"c1", c1, "sum of the r-1 smaller terms over |z_r| is at most c1*gamma^(-(n_rs/log gamma)*eps/(1+eps))"},
      {"c2", c2, "|Lambda| <= c2*max{gamma^(-eps/(1+eps)), eta/gamma}^(n_rs/log gamma)"},
      {"c3", c3, "log|Lambda| > -c3*(log n_rs)*(log gamma), Matveev with t=s+2, dL=2"},
      {"c4", c4, "n_rs < c4*(log n_rs)*(log gamma)"},
      {"c5", c5, "|Gamma_2| <= l2*c5*max{...}^(a_rs/log gamma)"},
      {"c6", c6, "log|Lambda_2| > -c6*log n_rs, Matveev with t=s+1, dL=1"},
      {"c7", c7, "a_rs < c7"},
      {"c8", c8, "d < p_s^(2*c8)*r^2"},
      {"c9", c9, "l2 < c9"},
      {"log_d_threshold", log_d_threshold, "log(p_s^(2*c8)*r^2)"},
  };
}

ConstantsLedger constants(const Params& params, long bits) {
  auto c = [bits](long v) { return CertifiedReal::exact(v, bits); };
  const long s = params.s;
  const long r = params.r;
  CertifiedReal eps = CertifiedReal::exact(params.epsilon, bits);
  CertifiedReal one = c(1);
  CertifiedReal E = (one + eps) / eps;  // (1+ε)/ε
  CertifiedReal log_ps = log_of(params.primes.largest(), bits);
  CertifiedReal log2 = log_of(2, bits);
  CertifiedReal n_min = c(kAbsorptionNMin);
  CertifiedReal log_nmin = log(n_min);

  CertifiedReal prod_2logp = one;
  for (std::uint64_t p : params.primes.primes()) prod_2logp = prod_2logp * (c(2) * log_of(p, bits));

  ConstantsLedger L;
  L.bits = bits;
  // c1 = max(r−1, 1)(4r)^{ε/(1+ε)}; for r = 1 the tail is empty and any
  // positive c1 bounds it.
  L.c1 = c(std::max(r - 1, 1L)) * pow(c(4 * r), eps / (one + eps));
  // Sum of the two tails: c1·x + 2r·y ≤ (c1 + 2r)·max{x, y}.
  L.c2 = L.c1 + c(2 * r);

  // Matveev on Λ = ½γ^l z_r^{-1} − 1: t = s+2, dL = 2, B = s·n_rs, A_1 = 2 log 2
  // (A_1 must dominate dL·h(2) = 2 log 2), A_2 = log γ kept symbolic.
  CertifiedReal kappa3 = baker::absorption_factor(c(s), n_min);
  L.c3 = baker::matveev_prefactor(static_cast<int>(s + 2), 2, bits) * kappa3 * (c(2) * log2) * prod_2logp;

  // n < E(log c2 + c3 log n log γ) and log n·log γ ≥ log²(n_min).
  CertifiedReal log_c2 = log(L.c2);
  CertifiedReal zero = c(0);
  L.c4 = E * (L.c3 + max(zero, log_c2) / (log_nmin * log_nmin));

  // 1 + max{...}^{(b−a)/log γ} ≤ 2.
  L.c5 = c(2) * L.c2;

  // Matveev on Λ_2: t = s+1, dL = 1, B = 2s·n², 1 + log(2s n²) ≤ κ6·log n.
  CertifiedReal kappa6 = c(2) + (one + log(c(2 * s))) / log_nmin;
  L.c6 = baker::matveev_prefactor(static_cast<int>(s + 1), 1, bits) * kappa6 * (c(2) * log2) * prod_2logp;

  // a < E(log(2s·c5) + (1 + c6)·log b) with b < 2α log α, α = 2s·c4·log p_s·a.
  // log b ≤ log 2 + 2 log α, so a < R + Q log a.
  CertifiedReal k_alpha = c(2 * s) * L.c4 * log_ps;
  CertifiedReal Q = c(2) * E * (one + L.c6);
  CertifiedReal R = E * (log(c(2 * s) * L.c5) + (one + L.c6) * (log2 + c(2) * log(k_alpha)));
  L.c7 = baker::shrink_bound(one, Q, R);

  // γ < 2.5r·p_s^{s·c7} and d < γ²/4 + 2, so d < p_s^{2c8} r² with the
  // extra 1 in c8 covering the additive 2 and the factor 2.5².
  L.c8 = c(s) * L.c7 + log(CertifiedReal::from_decimal("2.5", bits)) / log_ps + one;
  L.log_d_threshold = c(2) * L.c8 * log_ps + c(2) * log(c(r));

  // l2 < s·b < 2s·α log α with α = c4·2c7·s·log p_s.
  CertifiedReal alpha9 = L.c4 * c(2) * L.c7 * c(s) * log_ps;
  L.c9 = c(2 * s) * alpha9 * log(alpha9);
  L.Td_bound = L.c9.ceil_of_upper();
  return L;
}

const char* to_string(DClass c) { return c == DClass::AtMostOne ? "AtMostOne" : "AtMostC9"; }

DClass classify_d(const BigInt& d, const ConstantsLedger& ledger) {
  if (d <= 1) throw InvalidInput("d must be greater than 1");
  if (is_perfect_square(d)) throw InvalidInput("d is a perfect square");
  CertifiedReal log_d = certified_log(d, ledger.bits);
  return mpfr_cmp(log_d.lower().get(), ledger.log_d_threshold.upper().get()) >= 0 ? DClass::AtMostOne
                                                                                 : DClass::AtMostC9;
}

bool AuditRecord::all_passed() const {
  for (const AuditCheck& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

// Certified a < b, escalating precision while undecided.
template <class F>
bool certainly_less_refined(F make_pair, const PrecisionPolicy& policy) {
  for (long bits = policy.bits;; bits = std::min(bits * 2, policy.cap_bits)) {
    auto [a, b] = make_pair(bits);
    Ordering o = certified_compare(a, b);
    if (o != Ordering::Indeterminate) return o == Ordering::Less;
    if (bits >= policy.cap_bits) return false;
  }
}

}  // namespace

AuditRecord audit_inequalities(const pell::PellContext& ctx, unsigned long l,
                               const std::vector<sunit::SUnitDecomposition>& terms, const Params& params,
                               const PrecisionPolicy& policy) {
  if (l < 1) throw InvalidInput("l must be positive");
  if (terms.empty()) throw InvalidInput("solution needs at least one term");
  const sunit::PrimeSet& S = params.primes;
  for (const auto& t : terms)
    if (t.exponents.size() != S.size()) throw InvalidInput("term exponents do not match the prime set");
  BigInt X = pell::x_at(ctx, l);
  BigInt sum = 0;
  for (const auto& t : terms) sum += t.value(S);
  if (sum != X) throw InvalidInput("terms do not sum to X_l: not a solution");

  AuditRecord rec;
  rec.l = l;
  rec.X = X;
  const sunit::SUnitDecomposition& zr = terms.back();
  rec.n_rs = zr.exponents.back();
  const std::size_t s = S.size();
  const long r = static_cast<long>(terms.size());
  const unsigned long ps = S.largest();
  const unsigned long n = rec.n_rs;

  rec.checks.push_back({"max-exponent", sunit::max_exponent(terms) == n,
                        "n_rs is the largest exponent over all terms"});

  bool dominance = true;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    BigInt zi = abs(terms[i].value(S));
    BigInt zr_abs = abs(zr.value(S));
    bool ok = certainly_less_refined(
        [&](long bits) {
          CertifiedReal lhs = pow(CertifiedReal::exact(zi, bits),
                                  CertifiedReal::exact(Rational(1) + params.epsilon, bits));
          return std::pair{lhs, CertifiedReal::exact(zr_abs, bits)};
        },
        policy);
    dominance = dominance && ok;
  }
  rec.checks.push_back({"eps-dominance", dominance, "|z_i|^(1+eps) < |z_r| for i < r"});

  QuadraticSurd gamma_l = surd_pow(ctx.gamma, l);
  bool g_lo = certainly_less_refined(
      [&](long bits) {
        return std::pair{to_certified(gamma_l, bits) / CertifiedReal::from_decimal("2.5", bits),
                         CertifiedReal::exact(X, bits)};
      },
      policy);
  bool g_hi = certainly_less_refined(
      [&](long bits) { return std::pair{CertifiedReal::exact(X, bits), to_certified(gamma_l, bits)}; }, policy);
  rec.checks.push_back({"growth", g_lo && g_hi, "gamma^l/2.5 < X_l < gamma^l"});

  // Lower end is an equality when X_l = z_r = p_s^{n_rs}, so it is checked as ≤.
  BigInt ps_n = ipow(ps, n);
  bool e_lo = ps_n <= X;
  bool e_hi = X < r * ipow(ps, s * n);
  rec.checks.push_back({"sunit-size", e_lo && e_hi, "p_s^n_rs <= X_l < r*p_s^(s*n_rs)"});

  // With l1 = l2 the ordering bound a_rs ≤ s·b_rs + log r/log p_s reads
  // n ≤ s·n + log r/log p_s, and log r/log p_s ≥ 0.
  bool e107 = s * n >= n;
  rec.checks.push_back({"exponent-order", e107, "n_rs <= s*n_rs + log r/log p_s"});

  bool l_lo = certainly_less_refined(
      [&](long bits) {
        return std::pair{CertifiedReal::exact(BigInt(n), bits) * log_of(ps, bits),
                         certified_log(ctx.gamma, bits) * static_cast<long>(l)};
      },
      policy);
  bool l_hi = certainly_less_refined(
      [&](long bits) {
        CertifiedReal rhs = CertifiedReal::exact(BigInt(s * n), bits) * log_of(ps, bits) +
                            log(CertifiedReal::from_decimal("2.5", bits) * CertifiedReal::exact(r, bits));
        return std::pair{certified_log(ctx.gamma, bits) * static_cast<long>(l), rhs};
      },
      policy);
  rec.checks.push_back({"log-sandwich", l_lo && l_hi, "n_rs*log p_s < l*log gamma < s*n_rs*log p_s + log(2.5r)"});
  return rec;
}

}  // namespace pellsu::theorem1
