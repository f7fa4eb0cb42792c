#include "pellsu/theorem2.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "pellsu/baker.hpp"
#include "pellsu/pell.hpp"
#include "pellsu/reduction.hpp"
#include "pellsu/sunit.hpp"

namespace pellsu::theorem2 {

using nlohmann::json;

const char* to_string(Mode m) { return m == Mode::Sharp ? "sharp" : "reproduction"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::CounterexampleFound: return "CounterexampleFound";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Mode parse_mode(std::string_view text) {
  if (text == "reproduction") return Mode::Reproduction;
  if (text == "sharp") return Mode::Sharp;
  throw InvalidInput("mode must be 'reproduction' or 'sharp'");
}

namespace {

CertifiedReal num(long v, long bits) { return CertifiedReal::exact(v, bits); }
CertifiedReal dec(const char* text, long bits) { return CertifiedReal::from_decimal(text, bits); }
BigInt dec_int(const char* text) { return BigInt(parse_decimal(text)); }

BigInt largest_below(const CertifiedReal& x) {
  BigInt b = x.ceil_of_upper() - 1;
  return b < 0 ? BigInt(0) : b;
}

bool upper_at_most(const CertifiedReal& x, const BigInt& bound) {
  return mpfr_cmp_z(x.upper().get(), bound.get_mpz_t()) <= 0;
}

// Caches a refinable value per precision. Not shared between threads.
RealSource memoized(RealSource f) {
  auto cache = std::make_shared<std::map<long, CertifiedReal>>();
  return [f = std::move(f), cache](long bits) {
    if (auto it = cache->find(bits); it != cache->end()) return it->second;
    CertifiedReal v = f(bits);
    cache->emplace(bits, v);
    return v;
  };
}

// Runs fn(i) for i in [0, n) on `workers` threads; results land by index.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, unsigned workers, F fn) {
  std::vector<R> out(n);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

CertifiedReal log_2_5(long bits) { return log(dec("2.5", bits)); }

// G(a2): b2 < c11·log b2·log γ with log γ < 2·a2·log 3 + log 2.5.
CertifiedReal b2_from_a2_sharp(const CertifiedReal& c11, const BigInt& a2, long bits) {
  CertifiedReal log_gamma_cap = num(2, bits) * CertifiedReal::exact(a2, bits) * log_of(3, bits) + log_2_5(bits);
  return baker::shrink_bound(num(1, bits), c11 * log_gamma_cap, num(0, bits));
}

// The published form 2·α·log α with α = 4·c11·a2·log 3.
CertifiedReal b2_from_a2_published(const CertifiedReal& c11, const BigInt& a2, long bits) {
  CertifiedReal alpha = num(4, bits) * c11 * CertifiedReal::exact(a2, bits) * log_of(3, bits);
  return baker::shrink_bound(num(1, bits), alpha, num(0, bits));
}

Constants own_constants(long bits) {
  Constants c;
  // Matveev with t = 3, dL = 2, A = (2 log 2, log γ, 2 log 3), B = 2·n2;
  // 1 + log(2·n2) ≤ κ·log n2 for n2 ≥ 7.5, and log γ stays symbolic.
  c.absorption_kappa = baker::absorption_factor(num(2, bits), dec("7.5", bits));
  CertifiedReal product = baker::matveev_prefactor(3, 2, bits) * c.absorption_kappa * (num(2, bits) * log_of(2, bits)) *
                          (num(2, bits) * log_of(3, bits));
  c.c10_own = product / log_of(3, bits);
  // |Λ| ≤ 3^{-n2} gives n2·log 3 < c10·log n2·log γ·log 3 with nothing to absorb.
  c.c11_own = c.c10_own;
  c.c10_published = dec(published::kC10, bits);
  c.c11_published = dec(published::kC11, bits);
  return c;
}

}  // namespace

InitialBounds initial_bounds(Mode mode, long bits) {
  InitialBounds ib;
  ib.constants = own_constants(bits);
  Constants& c = ib.constants;
  if (!c.c10_own.certainly_less(c.c10_published) || !c.c11_own.certainly_less(c.c11_published))
    throw ConsistencyError("recomputed Matveev constant exceeds the published one");
  if (mode == Mode::Reproduction) {
    c.c10 = c.c10_published;
    c.c11 = c.c11_published;
    ib.b2_max = dec_int(published::kB2Max);
    ib.l2_max = dec_int(published::kL2Max);
    return ib;
  }
  c.c10 = c.c10_own;
  c.c11 = c.c11_own;
  // Matveev on Λ2 = 2^m 3^{-n} − 1 (t = 2, dL = 1, A = (log 2, log 3)) with
  // |m|, |n| ≤ B' = 2B(2B+1) ≤ 6B² and |Λ2| ≤ 2|Γ2| ≤ 16·B·3^{−a2/2}:
  //   a2 < (2/log 3)(log 16 + L2(1 + log 6) + (1 + 2 L2) log B).
  // With B < G(a2) and log G ≤ log 2 + 2 log(c11(2 log 3 + log 2.5)) + 2 log a2
  // this becomes a2 < R + Q·log a2.
  CertifiedReal one = num(1, bits);
  CertifiedReal L2 = baker::matveev_prefactor(2, 1, bits) * log_of(2, bits) * log_of(3, bits);
  CertifiedReal two_over_log3 = num(2, bits) / log_of(3, bits);
  CertifiedReal slope = one + num(2, bits) * L2;
  CertifiedReal k0 = num(2, bits) * log_of(3, bits) + log_2_5(bits);
  CertifiedReal R = two_over_log3 * (log_of(16, bits) + L2 * (one + log_of(6, bits)) +
                                     slope * (log_of(2, bits) + num(2, bits) * log(c.c11 * k0)));
  CertifiedReal Q = two_over_log3 * slope * num(2, bits);
  BigInt a2 = largest_below(baker::shrink_bound(one, Q, R));
  ib.a2_initial = a2;
  ib.b2_max = b2_from_a2_sharp(c.c11, a2, bits).ceil_of_upper();
  ib.l2_max = 2 * ib.b2_max;
  if (ib.b2_max > dec_int(published::kB2Max)) throw ConsistencyError("sharp b2 bound exceeds the published one");
  return ib;
}

Chain reduce_chain(Mode mode, const InitialBounds& initial, const PrecisionPolicy& policy) {
  const long bits = policy.bits;
  RealSource tau = cfrac::log_ratio_source(2, 3);
  CertifiedReal base = sqrt(num(3, bits));
  const CertifiedReal& c11 = initial.constants.c11;
  Chain chain;
  BigInt M = initial.b2_max;
  std::optional<BigInt> previous;
  for (std::size_t step = 0;; ++step) {
    ChainStep s;
    s.M = M;
    CertifiedReal C;
    if (mode == Mode::Reproduction) {
      // Published right-hand side 1824·M³ = 32·M²·M·57.
      s.M_lemma = M;
      C = num(published::kLegendreCoefficient, bits) * CertifiedReal::exact(BigInt(M * M), bits);
    } else {
      // |mτ − n| ≤ c12·l2·3^{−a2/2}/log 3 with l2 < 2B and 0 < |m| ≤ 2B(2B+1).
      // m = 0 forces 3^{a2/2} ≤ 2·c12·B/log 3, which is weaker than this.
      s.M_lemma = 2 * M * (2 * M + 1) + 1;
      C = num(initial.constants.c12, bits) * num(2, bits) * CertifiedReal::exact(M, bits) / log_of(3, bits);
    }
    cfrac::CFExpansion cf = cfrac::expand_past(tau, s.M_lemma, 0, policy);
    if (cf.truncated) throw PrecisionExhausted("continued fraction of log2/log3 truncated", cf.bits_used);
    reduction::LegendreResult lr = reduction::legendre_exponent_analysis(cf, s.M_lemma, C, base);
    s.a = lr.a;
    s.exponent = lr.exponent;
    s.a2_bound = lr.bound;
    s.b2_bound = mode == Mode::Reproduction ? b2_from_a2_published(c11, s.a2_bound, bits)
                                            : b2_from_a2_sharp(c11, s.a2_bound, bits);
    bool fixpoint = previous && s.a2_bound >= *previous;
    if (mode == Mode::Reproduction && step + 1 < published::kChainM.size()) {
      s.next_M = dec_int(published::kChainM[step + 1]);
      if (!upper_at_most(s.b2_bound, s.next_M))
        throw ConsistencyError("published chain value does not dominate the derived b2 bound");
    } else {
      s.next_M = s.b2_bound.ceil_of_upper();
    }
    if (previous && s.a2_bound > *previous) s.a2_bound = *previous;  // keep the better bound
    chain.steps.push_back(s);
    if (fixpoint) break;
    if (step > 64) throw ConsistencyError("reduction chain did not reach a fixpoint");
    previous = s.a2_bound;
    M = s.next_M;
  }
  chain.a2_max = chain.steps.back().a2_bound;
  chain.M_final = chain.steps.back().M;
  return chain;
}

PolySearch poly_sweep(const std::vector<PolyTarget>& targets, unsigned long l1_min, unsigned long l1_max,
                      const BigInt& x1_min, unsigned workers, const PrecisionPolicy& policy) {
  PolySearch out;
  out.l1_min = l1_min;
  out.l1_max = l1_max;
  out.x1_min = x1_min;
  for (const auto& t : targets) out.a2_max = std::max(out.a2_max, t.a2);
  if (l1_max < l1_min) return out;
  struct PerL {
    unsigned long long inversions = 0;
    std::vector<PolyHit> hits;
  };
  std::size_t n = l1_max - l1_min + 1;
  auto per_l = parallel_map<PerL>(n, workers, [&](std::size_t i) {
    unsigned long l1 = l1_min + i;
    PerL r;
    // P_l is increasing in X1, so smaller targets have a root below x1_min.
    BigInt floor_value = pell::p_poly(x1_min, l1);
    for (const auto& t : targets) {
      if (t.n < floor_value) continue;
      ++r.inversions;
      if (auto x1 = pell::p_poly_invert(t.n, l1, policy); x1 && *x1 >= x1_min)
        r.hits.push_back({l1, t.a1, t.a2, *x1});
    }
    return r;
  });
  for (auto& r : per_l) {
    out.inversions += r.inversions;
    out.hits.insert(out.hits.end(), r.hits.begin(), r.hits.end());
  }
  return out;
}

PolySearch search_l1_ge2(unsigned long a2_max, unsigned long d_max, unsigned workers, const PrecisionPolicy& policy) {
  const long bits = policy.bits;
  // d > d_max: X1² = 1 + d·Y1² ≥ d_max + 2, and γ > 2√(d − 2) ≥ 2√(d_max − 1).
  BigInt x1_min = sqrt(BigInt(d_max + 2));
  if (x1_min * x1_min < d_max + 2) x1_min += 1;
  CertifiedReal log_gamma_min = log(num(2, bits) * sqrt(num(static_cast<long>(d_max) - 1, bits)));
  CertifiedReal l_cap = (num(2, bits) * num(static_cast<long>(a2_max), bits) * log_of(3, bits) + log_2_5(bits)) /
                        log_gamma_min;
  unsigned long l1_max = largest_below(l_cap).get_ui();
  std::vector<PolyTarget> targets;
  for (unsigned long a2 = 0; a2 <= a2_max; ++a2) {
    BigInt p3 = ipow(3, a2);
    for (unsigned long a1 = 0; a1 <= a2; ++a1) targets.push_back({a1, a2, ipow(2, a1) * p3});
  }
  PolySearch out = poly_sweep(targets, 2, l1_max, x1_min, workers, policy);
  out.a2_max = a2_max;
  return out;
}

SmallDSearch search_small_d(unsigned long d_max, unsigned long a2_max, const PrecisionPolicy& policy) {
  const long bits = policy.bits;
  SmallDSearch out;
  out.d_max = d_max;
  CertifiedReal numer = num(2, bits) * num(static_cast<long>(a2_max), bits) * log_of(3, bits) + log_2_5(bits);
  for (unsigned long d = 2; d <= d_max; ++d) {
    if (is_perfect_square(BigInt(d))) continue;
    ++out.d_count;
    pell::PellContext ctx = pell::fundamental_solution(BigInt(d));
    unsigned long l_max = largest_below(numer / certified_log(ctx.gamma, bits)).get_ui();
    out.max_l = std::max(out.max_l, l_max);
    BigInt prev = 1, cur = ctx.x1;
    for (unsigned long l = 2; l <= l_max; ++l) {
      BigInt next = 2 * ctx.x1 * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
      if (auto form = sunit::as_2a3b_ordered(cur)) out.hits.push_back({BigInt(d), l, cur, form->first, form->second});
    }
  }
  return out;
}

CandidateRecord scan_candidate(unsigned long a1, unsigned long a2, const BigInt& M, unsigned long j_max,
                               int max_convergents, const PrecisionPolicy& policy, const XAt& x_at) {
  const long bits = policy.bits;
  CandidateRecord rec;
  rec.a1 = a1;
  rec.a2 = a2;
  const BigInt x1 = ipow(2, a1) * ipow(3, a2);
  if (x1 < 2) throw InvalidInput("candidate X1 must be at least 2");
  const QuadraticSurd gamma(Rational(x1), Rational(1), x1 * x1 - 1);

  RealSource log_gamma = memoized([gamma](long b) { return certified_log(gamma, b); });
  RealSource tau = memoized([log_gamma](long b) { return log_of(3, b) / log_gamma(b); });
  RealSource mu_unit = memoized([log_gamma](long b) { return log_of(2, b) / log_gamma(b); });
  // δ = log(γ/(2X1)) = log1p(−x / (2(1 + √(1 − x)))) with x = X1^{−2}; no cancellation.
  const Rational x_inv2(BigInt(1), x1 * x1);
  RealSource delta = memoized([x_inv2](long b) {
    CertifiedReal x = CertifiedReal::exact(x_inv2, b);
    CertifiedReal one = num(1, b);
    return log1p(-(x / (num(2, b) * (one + sqrt(one - x)))));
  });

  const CertifiedReal A = num(2, bits) / log_gamma(bits);
  const CertifiedReal B = num(3, bits);
  const CertifiedReal log3 = log_of(3, bits);

  cfrac::CFExpansion cf =
      cfrac::expand_past(tau, 6 * M, static_cast<std::size_t>(max_convergents - 1), policy);
  if (cf.truncated) throw PrecisionExhausted("continued fraction of log3/log gamma truncated", cf.bits_used);

  auto note_eps = [&](const CertifiedReal& eps) {
    if (!rec.eps_min || mpfr_cmp(eps.lower().get(), rec.eps_min->lower().get()) < 0) rec.eps_min = eps;
  };
  auto fail = [&](unsigned long j) {
    rec.conclusive = false;
    rec.failed_j.push_back(j);
  };

  long m5 = -1, m5_dp = -1;
  for (unsigned long j = 1; j <= j_max; ++j) {
    if (j % (a1 + 1) != 0) {
      RealSource mu = [mu_unit, j](long b) { return mu_unit(b) * static_cast<long>(j); };
      auto o = reduction::dujella_petho(cf, tau, mu, A, B, M, max_convergents, policy);
      if (!o) {
        fail(j);
        continue;
      }
      long bound = o->bound.get_si();
      m5 = std::max(m5, bound);
      note_eps(o->epsilon1);
      if (bound > m5_dp) {
        m5_dp = bound;
        rec.eps_binding = o->epsilon1;
      }
      continue;
    }
    // (a1+1) | j: with k = j/(a1+1), log(2X1) = (a1+1) log 2 + a2 log 3 turns
    // the form into |v·τ − u + μ'| < A·3^{−n2} with v = n2 − k·a2, u = l − k
    // and the tiny shift μ' = −k·δ/log γ. Bound v = 0, v > 0 and v < 0 apart.
    ++rec.degenerate_j;
    const long k = static_cast<long>(j / (a1 + 1));
    RealSource mu_shift = memoized([delta, log_gamma, k](long b) { return -(num(k, b) * delta(b)) / log_gamma(b); });
    long jb = -1;
    bool ok = true;

    CertifiedReal gap = cfrac::nearest_int_distance(mu_shift, policy);
    if (!gap.certainly_positive()) {
      ok = false;
    } else {
      jb = std::max(jb, largest_below(log(A / gap) / log3).get_si());
    }

    const BigInt ka2 = BigInt(k) * a2;
    for (int side = 0; side < 2 && ok; ++side) {
      const BigInt& Mv = side == 0 ? M : ka2;
      if (Mv < 1) continue;
      cfrac::AofM am = cfrac::a_of_M(cf, Mv + 1);
      // |vτ − u| > 1/((a+2)|v|) ≥ λ = 1/((a+2)·Mv); if μ' ≤ λ/2 then
      // A·3^{−n2} > λ/2.
      CertifiedReal a_plus_2_M = CertifiedReal::exact(BigInt((am.a_M + 2) * Mv), bits);
      CertifiedReal half_lambda = num(1, bits) / (num(2, bits) * a_plus_2_M);
      CertifiedReal shift = mu_shift(bits);
      if (shift.certainly_less(half_lambda)) {
        jb = std::max(jb, largest_below(log(num(2, bits) * A * a_plus_2_M) / log3).get_si());
        continue;
      }
      RealSource mu = side == 0 ? mu_shift : RealSource([mu_shift](long b) { return -mu_shift(b); });
      auto o = reduction::dujella_petho(cf, tau, mu, A, B, Mv, max_convergents, policy);
      if (!o) {
        ok = false;
        break;
      }
      jb = std::max(jb, o->bound.get_si());
    }
    if (!ok) {
      fail(j);
      continue;
    }
    m5 = std::max(m5, jb);
  }
  rec.M5 = m5;
  rec.M5_dp = m5_dp;

  // l2 < (2·M5·log 3 + log 2.5)/log γ; scan inclusively up to the floor of
  // the upper endpoint.
  long m5_used = std::max(m5, 0L);
  rec.l_bound = (num(2, bits) * num(m5_used, bits) * log3 + log_2_5(bits)) / log_gamma(bits);
  rec.l2_max = rec.l_bound.floor_of_upper().get_ui();

  BigInt prev = 1, cur = x1;
  for (unsigned long l = 2; l <= rec.l2_max; ++l) {
    BigInt next;
    if (x_at) {
      cur = x_at(x1, l);
    } else {
      next = 2 * x1 * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    // Any ordered form is recorded, even with b2 above M5.
    if (auto form = sunit::as_2a3b_ordered(cur)) rec.hits.push_back({a1, a2, l, form->first, form->second});
  }
  return rec;
}

namespace {

constexpr const char* kCheckpointFormat = "pellsu-checkpoint/1";

json opt_real(const std::optional<CertifiedReal>& v) { return v ? json(v->serialize()) : json(nullptr); }

std::optional<CertifiedReal> read_opt_real(const json& j) {
  if (j.is_null()) return std::nullopt;
  return CertifiedReal::deserialize(j.get<std::string>());
}

json record_to_json(std::size_t index, const CandidateRecord& r) {
  json hits = json::array();
  for (const auto& h : r.hits) hits.push_back({h.l2, h.b1, h.b2});
  return {{"i", index},
          {"a1", r.a1},
          {"a2", r.a2},
          {"conclusive", r.conclusive},
          {"failed_j", r.failed_j},
          {"M5", r.M5},
          {"M5_dp", r.M5_dp},
          {"degenerate_j", r.degenerate_j},
          {"l_bound", r.l_bound.serialize()},
          {"l2_max", r.l2_max},
          {"eps_binding", opt_real(r.eps_binding)},
          {"eps_min", opt_real(r.eps_min)},
          {"hits", hits}};
}

CandidateRecord record_from_json(const json& j) {
  CandidateRecord r;
  r.a1 = j.at("a1").get<unsigned long>();
  r.a2 = j.at("a2").get<unsigned long>();
  r.conclusive = j.at("conclusive").get<bool>();
  r.failed_j = j.at("failed_j").get<std::vector<unsigned long>>();
  r.M5 = j.at("M5").get<long>();
  r.M5_dp = j.at("M5_dp").get<long>();
  r.degenerate_j = j.at("degenerate_j").get<unsigned long>();
  r.l_bound = CertifiedReal::deserialize(j.at("l_bound").get<std::string>());
  r.l2_max = j.at("l2_max").get<unsigned long>();
  r.eps_binding = read_opt_real(j.at("eps_binding"));
  r.eps_min = read_opt_real(j.at("eps_min"));
  for (const auto& h : j.at("hits"))
    r.hits.push_back({r.a1, r.a2, h.at(0).get<unsigned long>(), h.at(1).get<unsigned long>(), h.at(2).get<unsigned long>()});
  return r;
}

json checkpoint_header(Mode mode, unsigned long a2_max, unsigned long j_max, const BigInt& M, int max_convergents,
                       std::size_t count, long bits) {
  return {{"format", kCheckpointFormat}, {"mode", to_string(mode)}, {"a2_max", a2_max},
          {"j_max", j_max},              {"M", M.get_str()},        {"max_convergents", max_convergents},
          {"candidates", count},         {"precision_bits", bits}};
}

// Valid records already on disk, in candidate order. A torn trailing line
// (interrupted write) is dropped.
std::vector<CandidateRecord> load_checkpoint(const std::string& path, const json& expected_header,
                                             const std::vector<std::pair<unsigned long, unsigned long>>& candidates) {
  std::vector<CandidateRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  if (!std::getline(in, line)) return out;
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || header != expected_header)
    throw InvalidInput("checkpoint file " + path + " does not match this configuration");
  while (std::getline(in, line)) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) break;
    std::size_t i = j.value("i", static_cast<std::size_t>(-1));
    if (i != out.size() || i >= candidates.size()) break;
    CandidateRecord r = record_from_json(j);
    if (r.a1 != candidates[i].first || r.a2 != candidates[i].second) break;
    out.push_back(std::move(r));
  }
  return out;
}

void write_checkpoint(const std::string& path, const json& header, const std::vector<CandidateRecord>& records) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint " + tmp);
    out << header.dump() << '\n';
    for (std::size_t i = 0; i < records.size(); ++i) out << record_to_json(i, records[i]).dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

void append_checkpoint(const std::string& path, std::size_t first_index, const std::vector<CandidateRecord>& records,
                       std::size_t from) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot append to checkpoint " + path);
  for (std::size_t i = from; i < records.size(); ++i) out << record_to_json(first_index + i - from, records[i]).dump() << '\n';
  out.flush();
}

}  // namespace

FinalScan final_scan_l1_eq_1(unsigned long a2_max, const BigInt& M, const Config& config) {
  FinalScan fs;
  fs.a2_max = a2_max;
  fs.j_max = a2_max + 1;
  fs.M = M;
  std::vector<std::pair<unsigned long, unsigned long>> candidates;
  for (unsigned long a2 = 1; a2 <= a2_max; ++a2)
    for (unsigned long a1 = 0; a1 <= a2; ++a1) candidates.emplace_back(a1, a2);
  fs.candidate_count = candidates.size();

  json header = checkpoint_header(config.mode, a2_max, fs.j_max, M, config.max_convergents, candidates.size(),
                                  config.policy.bits);
  std::vector<CandidateRecord> records;
  if (config.checkpoint_path) {
    records = load_checkpoint(*config.checkpoint_path, header, candidates);
    fs.resumed = !records.empty();
    write_checkpoint(*config.checkpoint_path, header, records);
  }
  const std::size_t batch = std::max<std::size_t>(config.checkpoint_every, 1);
  while (records.size() < candidates.size()) {
    std::size_t begin = records.size();
    std::size_t end = std::min(candidates.size(), begin + batch);
    auto chunk = parallel_map<CandidateRecord>(end - begin, config.workers, [&](std::size_t i) {
      auto [a1, a2] = candidates[begin + i];
      return scan_candidate(a1, a2, M, fs.j_max, config.max_convergents, config.policy, config.x_at);
    });
    records.insert(records.end(), std::make_move_iterator(chunk.begin()), std::make_move_iterator(chunk.end()));
    if (config.checkpoint_path) append_checkpoint(*config.checkpoint_path, begin, records, begin);
  }

  for (const CandidateRecord& r : records) {
    fs.degenerate_pairs += r.degenerate_j;
    if (!r.conclusive) fs.inconclusive.emplace_back(r.a1, r.a2);
    fs.hits.insert(fs.hits.end(), r.hits.begin(), r.hits.end());
    if (r.M5 > fs.max_M5.value) fs.max_M5 = {r.M5, r.a1, r.a2};
    if (r.M5_dp > fs.max_M5_dp.value) fs.max_M5_dp = {r.M5_dp, r.a1, r.a2};
    if (!fs.max_l.value || mpfr_cmp(r.l_bound.upper().get(), fs.max_l.value->upper().get()) > 0)
      fs.max_l = {r.l_bound, r.a1, r.a2};
    if (r.eps_binding && (!fs.min_eps1_binding.value ||
                          mpfr_cmp(r.eps_binding->lower().get(), fs.min_eps1_binding.value->lower().get()) < 0))
      fs.min_eps1_binding = {*r.eps_binding, r.a1, r.a2};
    if (r.eps_min && (!fs.min_eps1_pairs.value ||
                      mpfr_cmp(r.eps_min->lower().get(), fs.min_eps1_pairs.value->lower().get()) < 0))
      fs.min_eps1_pairs = {*r.eps_min, r.a1, r.a2};
  }
  return fs;
}

Report verify(const Config& config) {
  Report rep;
  rep.mode = config.mode;
  if (config.stage && std::find(kStages.begin(), kStages.end(), *config.stage) == kStages.end())
    throw InvalidInput("unknown stage '" + *config.stage + "'");
  // Later stages consume the chain, so only a constants-only run skips it.
  auto wanted = [&](const std::string& name) {
    if (!config.stage) return true;
    if (name == "chain") return *config.stage != "constants";
    return *config.stage == name;
  };
  std::string current;
  try {
    current = "constants";
    rep.initial = initial_bounds(config.mode, config.policy.bits);
    rep.stages_run.push_back(current);
    if (wanted("chain")) {
      current = "chain";
      rep.chain = reduce_chain(config.mode, *rep.initial, config.policy);
      rep.stages_run.push_back(current);
    }
    unsigned long a2_max = rep.chain ? rep.chain->a2_max.get_ui() : 0;
    if (wanted("poly")) {
      current = "poly";
      unsigned long a2 = config.poly_a2_limit ? std::min(a2_max, *config.poly_a2_limit) : a2_max;
      rep.poly = search_l1_ge2(a2, 401, config.workers, config.policy);
      rep.stages_run.push_back(current);
    }
    if (wanted("small-d")) {
      current = "small-d";
      rep.small_d = search_small_d(config.small_d_max.value_or(401), a2_max, config.policy);
      rep.stages_run.push_back(current);
    }
    if (wanted("final")) {
      current = "final";
      unsigned long a2 = config.final_a2_limit ? std::min(a2_max, *config.final_a2_limit) : a2_max;
      rep.final_scan = final_scan_l1_eq_1(a2, rep.chain->M_final, config);
      rep.stages_run.push_back(current);
    }
  } catch (const std::exception& e) {
    rep.verdict = Verdict::Inconclusive;
    rep.failing_stage = current;
    rep.error = e.what();
    rep.verdict_reason = "stage '" + current + "' failed";
    return rep;
  }

  bool any_hits = (rep.poly && !rep.poly->hits.empty()) || (rep.small_d && !rep.small_d->hits.empty()) ||
                  (rep.final_scan && !rep.final_scan->hits.empty());
  bool limited = config.final_a2_limit || config.poly_a2_limit || config.small_d_max;
  if (any_hits) {
    rep.verdict = Verdict::CounterexampleFound;
    rep.verdict_reason = "a search stage reported a second solution";
  } else if (rep.final_scan && !rep.final_scan->inconclusive.empty()) {
    rep.verdict = Verdict::Inconclusive;
    rep.verdict_reason = std::to_string(rep.final_scan->inconclusive.size()) + " candidates without a reduction";
  } else if (rep.stages_run.size() != kStages.size() || limited) {
    rep.verdict = Verdict::Inconclusive;
    rep.verdict_reason = "partial run: not every stage covered its full range";
  } else {
    rep.verdict = Verdict::Holds;
    rep.verdict_reason = "every stage completed with no hits";
  }
  return rep;
}

}  // namespace pellsu::theorem2
