#include "pellsu/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "pellsu/pell.hpp"

namespace pellsu::oracle {

namespace {

// Positive S-units in [lo, hi], by nested exponent loops.
void units_between(const sunit::PrimeSet& S, const BigInt& lo, const BigInt& hi, std::size_t idx, const BigInt& acc,
                   std::vector<unsigned long>& exps, std::vector<std::pair<BigInt, sunit::SUnitDecomposition>>& out) {
  if (idx == S.size()) {
    if (acc >= lo) out.push_back({acc, sunit::SUnitDecomposition{1, exps}});
    return;
  }
  BigInt v = acc;
  for (unsigned long e = 0; v <= hi; ++e) {
    exps[idx] = e;
    units_between(S, lo, hi, idx + 1, v, exps, out);
    v *= S[idx];
  }
  exps[idx] = 0;
}

std::vector<std::pair<BigInt, sunit::SUnitDecomposition>> units_in(const sunit::PrimeSet& S, const BigInt& lo,
                                                                   const BigInt& hi) {
  std::vector<std::pair<BigInt, sunit::SUnitDecomposition>> out;
  if (hi < 1 || lo > hi) return out;
  std::vector<unsigned long> exps(S.size(), 0);
  units_between(S, lo, hi, 0, BigInt(1), exps, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// X = (r terms, each ≤ cap_term, non-increasing from the end).
void search(const BigInt& X, const sunit::PrimeSet& S, unsigned r, const BigInt& cap_term,
            std::vector<sunit::SUnitDecomposition>& stack, std::vector<std::vector<sunit::SUnitDecomposition>>& out,
            std::size_t cap, unsigned long long& budget) {
  if (out.size() >= cap) return;
  if (r == 1) {
    if (X > cap_term || X < 1) return;
    if (budget-- == 0) throw ResourceExceeded("S-unit sum search budget exceeded", 0);
    if (auto dec = sunit::decompose(X, S); dec && dec->sign > 0) {
      std::vector<sunit::SUnitDecomposition> w{*dec};
      for (auto it = stack.rbegin(); it != stack.rend(); ++it) w.push_back(*it);
      out.push_back(std::move(w));
    }
    return;
  }
  // The largest of r terms lies in [ceil(X/r), min(X − (r−1), cap_term)].
  BigInt lo = (X + r - 1) / r;
  BigInt hi = std::min(cap_term, BigInt(X - (r - 1)));
  for (const auto& [u, dec] : units_in(S, lo, hi)) {
    if (budget-- == 0) throw ResourceExceeded("S-unit sum search budget exceeded", 0);
    stack.push_back(dec);
    search(X - u, S, r - 1, u, stack, out, cap, budget);
    stack.pop_back();
    if (out.size() >= cap) return;
  }
}

bool is_two_three(const sunit::PrimeSet& S) { return S.size() == 2 && S[0] == 2 && S[1] == 3; }

}  // namespace

std::vector<std::vector<sunit::SUnitDecomposition>> sum_witnesses(const BigInt& X, const sunit::PrimeSet& S, unsigned r,
                                                                    std::size_t cap, unsigned long long budget) {
  if (r < 1) throw InvalidInput("r must be positive");
  std::vector<std::vector<sunit::SUnitDecomposition>> out;
  if (X < r) return out;
  std::vector<sunit::SUnitDecomposition> stack;
  search(X, S, r, X, stack, out, std::max<std::size_t>(cap, 1), budget);
  return out;
}

ScanResult scan(unsigned long d_min, unsigned long d_max, unsigned long l_max, const sunit::PrimeSet& S, unsigned r,
                bool ordered_2_3, const ScanOptions& options) {
  if (r < 1) throw InvalidInput("r must be positive");
  if (ordered_2_3 && (!is_two_three(S) || r != 1)) throw InvalidInput("ordered 2-3 form needs S = {2, 3} and r = 1");
  ScanResult result;
  std::vector<unsigned long> ds;
  for (unsigned long d = std::max(d_min, 2UL); d <= d_max; ++d)
    if (!is_perfect_square(BigInt(d))) ds.push_back(d);

  struct PerD {
    std::vector<Finding> findings;
    std::vector<std::pair<BigInt, unsigned long>> skipped;
  };
  std::vector<PerD> per_d(ds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= ds.size()) return;
      try {
        pell::PellContext ctx = pell::fundamental_solution(BigInt(ds[i]));
        BigInt prev = 1, cur = ctx.x1;
        for (unsigned long l = 1; l <= l_max; ++l) {
          if (l > 1) {
            BigInt nx = 2 * ctx.x1 * cur - prev;
            prev = std::move(cur);
            cur = std::move(nx);
          }
          // Re-derive X_l from the surd power as an independent check.
          if (l <= 3 && cur != pell::x_at_binet(ctx, l)) throw ConsistencyError("recurrence and Binet disagree");
          Finding f{BigInt(ds[i]), l, cur, {}};
          if (ordered_2_3) {
            auto dec = sunit::decompose(cur, S);
            if (dec && dec->sign > 0 && dec->exponents[0] <= dec->exponents[1]) f.witnesses.push_back({*dec});
          } else {
            try {
              f.witnesses = sum_witnesses(cur, S, r, options.witness_cap, options.budget_per_value);
            } catch (const ResourceExceeded&) {
              per_d[i].skipped.emplace_back(BigInt(ds[i]), l);
              continue;
            }
          }
          for (const auto& w : f.witnesses) {
            BigInt sum = 0;
            for (const auto& t : w) sum += t.value(S);
            if (sum != cur) throw ConsistencyError("oracle witness does not reconstruct X");
          }
          if (!f.witnesses.empty()) per_d[i].findings.push_back(std::move(f));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = ds.size();
      }
    }
  };
  unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (auto& p : per_d) {
    result.findings.insert(result.findings.end(), p.findings.begin(), p.findings.end());
    result.skipped.insert(result.skipped.end(), p.skipped.begin(), p.skipped.end());
  }
  result.partial = !result.skipped.empty();
  return result;
}

std::vector<BigInt> multi_solution_d(unsigned long d_max, unsigned long l_max, const sunit::PrimeSet& S, unsigned r,
                                     bool ordered_2_3, const ScanOptions& options) {
  ScanResult res = scan(2, d_max, l_max, S, r, ordered_2_3, options);
  if (res.partial) throw ResourceExceeded("oracle scan incomplete; multi-solution list would be partial", res.skipped.size());
  std::map<BigInt, std::size_t> count;
  for (const auto& f : res.findings) ++count[f.d];
  std::vector<BigInt> out;
  for (const auto& [d, c] : count)
    if (c >= 2) out.push_back(d);
  return out;
}

namespace {

CertifiedReal tau_enclosure(const std::string& label, long bits) {
  if (label == "log2log3") return log_of(2, bits) / log_of(3, bits);
  if (label == "golden")
    return (CertifiedReal::exact(1L, bits) + sqrt(CertifiedReal::exact(5L, bits))) / CertifiedReal::exact(2L, bits);
  if (label.rfind("sqrt:", 0) == 0) {
    BigInt d = parse_bigint(label.substr(5));
    if (d < 2 || is_perfect_square(d)) throw InvalidInput("sqrt:D needs a non-square D >= 2");
    return sqrt(CertifiedReal::exact(d, bits));
  }
  throw InvalidInput("oracle supports tau labels log2log3, golden and sqrt:D");
}

BigInt floor_div(const Rational& q) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

Rational to_rational(const BigFloat& x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  return q;
}

// a(M) from an exact-rational quotient list.
BigInt a_of_M_from(const std::vector<BigInt>& a, const BigInt& M) {
  BigInt q2 = 1, q1 = 0, best = 0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (t == 0 || a[t] > best) best = a[t];
    BigInt q = a[t] * q1 + q2;
    q2 = q1;
    q1 = q;
    if (q > M) return best;
  }
  throw PrecisionExhausted("independent expansion too short for a(M)", 0);
}

}  // namespace

std::vector<BigInt> independent_quotients(const std::string& tau_label, std::size_t count, long bits) {
  CertifiedReal t = tau_enclosure(tau_label, bits);
  Rational lo = to_rational(t.lower()), hi = to_rational(t.upper());
  std::vector<BigInt> out;
  while (out.size() < count) {
    BigInt fl_lo = floor_div(lo), fl_hi = floor_div(hi);
    if (fl_lo != fl_hi) break;
    out.push_back(fl_lo);
    Rational f_lo = lo - Rational(fl_lo), f_hi = hi - Rational(fl_hi);
    if (f_lo == 0 || f_hi == 0) break;
    // x ↦ 1/x reverses the order of the endpoints.
    Rational nlo = 1 / f_hi, nhi = 1 / f_lo;
    lo = nlo;
    hi = nhi;
  }
  return out;
}

bool verify_lemma_3_4(const std::string& tau_label, const std::vector<BigInt>& M_values, long bits) {
  for (const BigInt& M : M_values) {
    if (M > 10000) throw InvalidInput("verify_lemma_3_4 enumerates m < M and needs M <= 10^4");
    if (M < 1) throw InvalidInput("M must be positive");
    std::vector<BigInt> a = independent_quotients(tau_label, 64, bits);
    BigInt aM = a_of_M_from(a, M);
    CertifiedReal tau = tau_enclosure(tau_label, bits);
    for (BigInt m = 1; m < M; ++m) {
      CertifiedReal mt = tau * m;
      BigInt n = (mt + CertifiedReal::exact(Rational(1, 2), bits)).floor_of_lower();
      CertifiedReal lhs = abs(mt - CertifiedReal::exact(n, bits));
      CertifiedReal rhs = CertifiedReal::exact(Rational(BigInt(1), (aM + 2) * m), bits);
      if (!rhs.certainly_less(lhs)) return false;
    }
  }
  return true;
}

}  // namespace pellsu::oracle
