#include "pellsu/cfrac.hpp"

#include <algorithm>
#include <string>

namespace pellsu::cfrac {

namespace {

// As many certified quotients as `bits` allows, stopping at `limit` or when
// `done` reports that enough have been produced.
template <class Done>
std::vector<BigInt> quotients_at(const RealSource& tau, long bits, std::size_t limit, Done done) {
  std::vector<BigInt> out;
  CertifiedReal x = tau(bits);
  while (out.size() < limit) {
    auto a = x.floor_if_certain();
    if (!a) break;
    CertifiedReal frac = x - CertifiedReal::exact(*a, bits);
    if (!frac.certainly_positive()) break;  // rational within precision
    if (!out.empty() && *a < 1) throw ConsistencyError("partial quotient below 1");
    out.push_back(*a);
    if (done(out)) break;
    x = CertifiedReal::exact(1L, bits) / frac;
  }
  return out;
}

std::vector<Convergent> convergents_of(const std::vector<BigInt>& a) {
  std::vector<Convergent> out;
  out.reserve(a.size());
  BigInt p2 = 0, p1 = 1, q2 = 1, q1 = 0;
  for (const BigInt& at : a) {
    BigInt p = at * p1 + p2;
    BigInt q = at * q1 + q2;
    out.push_back({p, q});
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
  }
  return out;
}

// Doubles precision until `want` quotients are certified; every retry must
// agree with the prefix obtained so far.
template <class Want>
CFExpansion build(const RealSource& tau, const PrecisionPolicy& policy, long start_bits, Want want) {
  long bits = std::max({policy.bits, start_bits, kMinPrecisionBits});
  bits = std::min(bits, policy.cap_bits);
  std::vector<BigInt> best;
  while (true) {
    std::size_t need = 0;
    auto done = [&](const std::vector<BigInt>& qs) {
      need = want(qs);
      return need == 0;
    };
    std::vector<BigInt> qs = quotients_at(tau, bits, static_cast<std::size_t>(-1), done);
    std::size_t common = std::min(qs.size(), best.size());
    if (!std::equal(qs.begin(), qs.begin() + static_cast<std::ptrdiff_t>(common), best.begin()))
      throw ConsistencyError("continued fraction prefix changed under higher precision");
    if (qs.size() > best.size()) best = std::move(qs);
    bool complete = !best.empty() && want(best) == 0;
    if (complete || bits >= policy.cap_bits) {
      CFExpansion cf;
      cf.convergents = convergents_of(best);
      cf.quotients = std::move(best);
      cf.truncated = !complete;
      cf.bits_used = bits;
      return cf;
    }
    bits = std::min(bits * 2, policy.cap_bits);
  }
}

}  // namespace

CFExpansion expand(const RealSource& tau, std::size_t count, const PrecisionPolicy& policy) {
  if (count == 0) throw InvalidInput("count must be positive");
  auto want = [count](const std::vector<BigInt>& qs) { return qs.size() >= count ? 0 : count - qs.size(); };
  // Roughly 3.5 bits per quotient for typical irrationals.
  return build(tau, policy, static_cast<long>(4 * count) + 64, want);
}

CFExpansion expand_past(const RealSource& tau, const BigInt& q_bound, std::size_t extra,
                        const PrecisionPolicy& policy) {
  auto want = [&](const std::vector<BigInt>& qs) -> std::size_t {
    BigInt q2 = 1, q1 = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      BigInt q = qs[i] * q1 + q2;
      q2 = q1;
      q1 = q;
      if (q > q_bound) return i + 1 + extra <= qs.size() ? 0 : i + 1 + extra - qs.size();
    }
    return extra + 1;
  };
  long start = 2 * static_cast<long>(mpz_sizeinbase(q_bound.get_mpz_t(), 2)) + 8 * static_cast<long>(extra) + 64;
  return build(tau, policy, start, want);
}

AofM a_of_M(const CFExpansion& cf, const BigInt& M) {
  if (M < 1) throw InvalidInput("M must be at least 1");
  AofM out;
  for (std::size_t t = 0; t < cf.size(); ++t) {
    if (t == 0 || cf.quotients[t] > out.a_M) out.a_M = cf.quotients[t];
    if (cf.convergents[t].q > M) {
      out.N = t;
      out.q_N = cf.convergents[t].q;
      return out;
    }
  }
  throw PrecisionExhausted("expansion does not reach a denominator above M", cf.bits_used);
}

AofM a_of_M(const RealSource& tau, const BigInt& M, const PrecisionPolicy& policy) {
  if (M < 1) throw InvalidInput("M must be at least 1");
  CFExpansion cf = expand_past(tau, M, 0, policy);
  if (cf.truncated) throw PrecisionExhausted("continued fraction truncated before q > M", cf.bits_used);
  return a_of_M(cf, M);
}

CertifiedReal nearest_int_distance(const CertifiedReal& x) {
  long bits = x.precision_bits();
  CertifiedReal half = CertifiedReal::exact(Rational(1, 2), bits);
  BigInt n_lo = (x - half).floor_of_lower() + 1;  // nearest integer to lower end, ties up
  BigInt n_hi = (x - half).floor_of_upper() + 1;
  if (n_lo == n_hi) return abs(x - CertifiedReal::exact(n_lo, bits));
  // Straddles a half-integer: ||.|| is 1-Lipschitz around the midpoint.
  BigFloat mid = x.midpoint();
  BigFloat rad = x.radius();
  CertifiedReal m = CertifiedReal::from_endpoints(mid, mid, bits);
  BigInt n_mid = (m + half).floor_of_lower();
  CertifiedReal dm = abs(m - CertifiedReal::exact(n_mid, bits));
  CertifiedReal r = CertifiedReal::from_endpoints(rad, rad, bits);
  CertifiedReal zero = CertifiedReal::exact(0L, bits);
  CertifiedReal lo = max(zero, dm - r);
  CertifiedReal hi = min(half, dm + r);
  return CertifiedReal::from_endpoints(lo.lower(), hi.upper(), bits);
}

CertifiedReal nearest_int_distance(const RealSource& x, const PrecisionPolicy& policy) {
  long bits = policy.bits;
  while (true) {
    CertifiedReal v = x(bits);
    long b = v.precision_bits();
    CertifiedReal half = CertifiedReal::exact(Rational(1, 2), b);
    if ((v - half).floor_of_lower() == (v - half).floor_of_upper()) return nearest_int_distance(v);
    if (bits >= policy.cap_bits) throw PrecisionExhausted("value straddles a half-integer", bits);
    bits = std::min(bits * 2, policy.cap_bits);
  }
}

RealSource log_ratio_source(unsigned long numerator_log_arg, unsigned long denominator_log_arg) {
  if (numerator_log_arg < 1 || denominator_log_arg < 2) throw InvalidInput("log ratio needs positive arguments, denominator >= 2");
  return [=](long bits) { return log_of(numerator_log_arg, bits) / log_of(denominator_log_arg, bits); };
}

RealSource sqrt_source(const BigInt& d) {
  if (d < 2 || is_perfect_square(d)) throw InvalidInput("sqrt source needs a non-square d >= 2");
  return [d](long bits) { return sqrt(CertifiedReal::exact(d, bits)); };
}

RealSource golden_ratio_source() {
  return [](long bits) {
    return (CertifiedReal::exact(1L, bits) + sqrt(CertifiedReal::exact(5L, bits))) / CertifiedReal::exact(2L, bits);
  };
}

RealSource pell_unit_tau_source(const BigInt& x1) {
  if (x1 < 2) throw InvalidInput("Pell unit needs X1 >= 2");
  QuadraticSurd gamma(Rational(x1), Rational(1), x1 * x1 - 1);
  return [gamma](long bits) { return log_of(3, bits) / certified_log(gamma, bits); };
}

RealSource parse_tau(std::string_view label) {
  if (label == "log2log3") return log_ratio_source(2, 3);
  if (label == "golden") return golden_ratio_source();
  auto suffix = [&](std::string_view prefix) -> std::optional<BigInt> {
    if (label.substr(0, prefix.size()) != prefix) return std::nullopt;
    return parse_bigint(label.substr(prefix.size()));
  };
  if (auto d = suffix("sqrt:")) return sqrt_source(*d);
  if (auto x = suffix("pell-unit:")) return pell_unit_tau_source(*x);
  throw InvalidInput("unknown tau '" + std::string(label) + "' (expected log2log3, golden, sqrt:D or pell-unit:X1)");
}

}  // namespace pellsu::cfrac
