#include "pellsu/report.hpp"

#include <chrono>
#include <ctime>

namespace pellsu::report {

Json to_json(const CertifiedReal& x) {
  return Json{{"decimal_midpoint", x.midpoint().to_string(kMidpointDigits)},
              {"decimal_radius", x.radius().to_string(3, MPFR_RNDU)},
              {"bits", x.precision_bits()}};
}

Json to_json(const BigInt& n) { return n.get_str(); }

Json to_json(const sunit::SUnitDecomposition& dec, const sunit::PrimeSet& primes) {
  Json exps = Json::object();
  for (std::size_t i = 0; i < primes.size(); ++i) exps[std::to_string(primes[i])] = dec.exponents[i];
  return Json{{"sign", dec.sign}, {"exponents", exps}, {"value", to_json(dec.value(primes))}};
}

Json to_json(const pell::PellContext& ctx) {
  return Json{{"d", to_json(ctx.d)}, {"x1", to_json(ctx.x1)}, {"y1", to_json(ctx.y1)}};
}

Json to_json(const cfrac::CFExpansion& cf) {
  Json q = Json::array(), conv = Json::array();
  for (const auto& a : cf.quotients) q.push_back(to_json(a));
  for (const auto& c : cf.convergents) conv.push_back(Json{{"p", to_json(c.p)}, {"q", to_json(c.q)}});
  return Json{{"quotients", q}, {"convergents", conv}, {"truncated", cf.truncated}, {"bits_used", cf.bits_used}};
}

Json to_json(const cfrac::AofM& a) {
  return Json{{"N", a.N}, {"q_N", to_json(a.q_N)}, {"a_M", to_json(a.a_M)}};
}

Json to_json(const reduction::ReductionOutcome& r) {
  return Json{{"q_used", to_json(r.q_used)},
              {"epsilon1", to_json(r.epsilon1)},
              {"bound", to_json(r.bound)},
              {"convergent_index", r.convergent_index},
              {"attempts", r.attempts}};
}

Json to_json(const theorem1::ConstantsLedger& ledger) {
  Json entries = Json::array();
  for (const auto& e : ledger.entries())
    entries.push_back(Json{{"name", e.name}, {"value", to_json(e.value)}, {"certifies", e.certifies}});
  return Json{{"constants", entries},
              {"log_d_threshold", to_json(ledger.log_d_threshold)},
              {"Td_bound", to_json(ledger.Td_bound)},
              {"bits", ledger.bits}};
}

Json to_json(const theorem1::AuditRecord& audit) {
  Json checks = Json::array();
  for (const auto& c : audit.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return Json{{"l", audit.l}, {"X", to_json(audit.X)}, {"n_rs", audit.n_rs}, {"checks", checks},
              {"all_passed", audit.all_passed()}};
}

Json to_json(const oracle::ScanResult& res, const sunit::PrimeSet& primes) {
  Json findings = Json::array();
  for (const auto& f : res.findings) {
    Json ws = Json::array();
    for (const auto& w : f.witnesses) {
      Json terms = Json::array();
      for (const auto& t : w) terms.push_back(to_json(t, primes));
      ws.push_back(terms);
    }
    findings.push_back(Json{{"d", to_json(f.d)}, {"l", f.l}, {"X", to_json(f.X)}, {"witnesses", ws}});
  }
  Json skipped = Json::array();
  for (const auto& [d, l] : res.skipped) skipped.push_back(Json{{"d", to_json(d)}, {"l", l}});
  return Json{{"findings", findings}, {"partial", res.partial}, {"skipped", skipped}};
}

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

Json extremum(const theorem2::Extremum& e) {
  if (e.value < 0) return nullptr;
  return Json{{"value", e.value}, {"a1", e.a1}, {"a2", e.a2}};
}

Json extremum(const theorem2::RealExtremum& e) {
  if (!e.value) return nullptr;
  return Json{{"value", to_json(*e.value)}, {"a1", e.a1}, {"a2", e.a2}};
}

Json constants(const theorem2::Constants& c) {
  return Json{{"c10", to_json(c.c10)},
              {"c11", to_json(c.c11)},
              {"c12", c.c12},
              {"c10_published", to_json(c.c10_published)},
              {"c11_published", to_json(c.c11_published)},
              {"c10_own", to_json(c.c10_own)},
              {"c11_own", to_json(c.c11_own)},
              {"absorption_kappa", to_json(c.absorption_kappa)}};
}

Json scan_hits(const std::vector<theorem2::ScanHit>& hits) {
  Json out = Json::array();
  for (const auto& h : hits)
    out.push_back(Json{{"a1", h.a1}, {"a2", h.a2}, {"l2", h.l2}, {"b1", h.b1}, {"b2", h.b2}});
  return out;
}

}  // namespace

Json to_json(const theorem2::Report& rep) {
  Json j;
  j["mode"] = theorem2::to_string(rep.mode);
  j["stages_run"] = rep.stages_run;
  if (rep.initial) {
    j["constants"] = constants(rep.initial->constants);
    j["initial_bounds"] = Json{{"b2_max", to_json(rep.initial->b2_max)},
                               {"l2_max", to_json(rep.initial->l2_max)},
                               {"a2_initial", opt(rep.initial->a2_initial)}};
  } else {
    j["constants"] = nullptr;
    j["initial_bounds"] = nullptr;
  }
  if (rep.chain) {
    Json steps = Json::array();
    for (const auto& s : rep.chain->steps)
      steps.push_back(Json{{"M", to_json(s.M)},
                           {"M_lemma", to_json(s.M_lemma)},
                           {"a_of_M", to_json(s.a)},
                           {"exponent", to_json(s.exponent)},
                           {"a2_bound", to_json(s.a2_bound)},
                           {"b2_bound", to_json(s.b2_bound)},
                           {"next_M", to_json(s.next_M)}});
    j["chain"] = Json{{"steps", steps}, {"a2_max", to_json(rep.chain->a2_max)}, {"M_final", to_json(rep.chain->M_final)}};
  } else {
    j["chain"] = nullptr;
  }
  if (rep.poly) {
    Json hits = Json::array();
    for (const auto& h : rep.poly->hits)
      hits.push_back(Json{{"l1", h.l1}, {"a1", h.a1}, {"a2", h.a2}, {"x1", to_json(h.x1)}});
    j["poly_search"] = Json{{"ranges", Json{{"l1_min", rep.poly->l1_min},
                                            {"l1_max", rep.poly->l1_max},
                                            {"a2_max", rep.poly->a2_max},
                                            {"x1_min", to_json(rep.poly->x1_min)}}},
                            {"inversions", rep.poly->inversions},
                            {"hits", hits}};
  } else {
    j["poly_search"] = nullptr;
  }
  if (rep.small_d) {
    Json hits = Json::array();
    for (const auto& h : rep.small_d->hits)
      hits.push_back(Json{{"d", to_json(h.d)}, {"l", h.l}, {"X", to_json(h.X)}, {"n1", h.n1}, {"n2", h.n2}});
    j["small_d"] = Json{{"d_range", Json{{"min", 2}, {"max", rep.small_d->d_max}}},
                        {"d_count", rep.small_d->d_count},
                        {"max_l1_bound", rep.small_d->max_l},
                        {"hits", hits}};
  } else {
    j["small_d"] = nullptr;
  }
  if (rep.final_scan) {
    const auto& f = *rep.final_scan;
    Json inc = Json::array();
    for (const auto& [a1, a2] : f.inconclusive) inc.push_back(Json{{"a1", a1}, {"a2", a2}});
    j["final_scan"] = Json{{"a2_max", f.a2_max},
                           {"j_max", f.j_max},
                           {"M", to_json(f.M)},
                           {"candidate_count", f.candidate_count},
                           {"degenerate_pairs", f.degenerate_pairs},
                           {"max_M5", extremum(f.max_M5)},
                           {"max_M5_plain", extremum(f.max_M5_dp)},
                           // First excluded b2 (bound + 1), the "b2 < M5" reading.
                           {"max_M5_plain_exclusive", f.max_M5_dp.value < 0 ? Json(nullptr) : Json(f.max_M5_dp.value + 1)},
                           {"max_lX1", extremum(f.max_l)},
                           {"min_eps1", Json{{"binding", extremum(f.min_eps1_binding)},
                                             {"all_pairs", extremum(f.min_eps1_pairs)}}},
                           {"inconclusive", inc},
                           {"hits", scan_hits(f.hits)},
                           {"resumed", f.resumed}};
  } else {
    j["final_scan"] = nullptr;
  }
  j["verdict"] = theorem2::to_string(rep.verdict);
  j["verdict_reason"] = rep.verdict_reason;
  j["failing_stage"] = rep.failing_stage ? Json(*rep.failing_stage) : Json(nullptr);
  j["error"] = rep.error ? Json(*rep.error) : Json(nullptr);
  return j;
}

Json envelope(const std::string& command, Json result, bool timestamps) {
  Json j{{"schema", kSchema}, {"command", command}};
  if (timestamps) {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["generated_at"] = buf;
  }
  j["result"] = std::move(result);
  return j;
}

}  // namespace pellsu::report
