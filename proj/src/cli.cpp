#include "pellsu/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pellsu/baker.hpp"
#include "pellsu/report.hpp"

namespace pellsu::cli {

namespace {

using report::Json;

struct Globals {
  bool json = false;
  bool timestamps = true;
  std::optional<long> precision_bits;
  long cap_bits = kDefaultEscalationCapBits;

  PrecisionPolicy policy() const {
    PrecisionPolicy p = PrecisionPolicy::from_env();
    if (precision_bits) p.bits = *precision_bits;
    p.cap_bits = cap_bits;
    if (p.bits < kMinPrecisionBits) throw InvalidInput("precision must be at least 64 bits");
    if (p.cap_bits < p.bits) throw InvalidInput("escalation cap is below the working precision");
    return p;
  }
};

std::string show(const CertifiedReal& x, int digits = 12) { return x.midpoint().to_string(digits); }

// Real expressions for `reduce dp`: factors joined by '*' and '/', left to
// right. A factor is a rational literal, log:F, sqrt:N or unit:X1 (the Pell
// unit X1 + √(X1² − 1)); log:F takes a log of any non-log factor.
RealSource parse_factor(const std::string& text) {
  if (text.rfind("log:", 0) == 0) {
    RealSource inner = parse_factor(text.substr(4));
    return [inner](long bits) { return log(inner(bits)); };
  }
  if (text.rfind("sqrt:", 0) == 0) {
    Rational v = parse_decimal(text.substr(5));
    if (v <= 0) throw InvalidInput("sqrt: needs a positive argument");
    return [v](long bits) { return sqrt(CertifiedReal::exact(v, bits)); };
  }
  if (text.rfind("unit:", 0) == 0) {
    BigInt x1 = parse_bigint(text.substr(5));
    if (x1 < 2) throw InvalidInput("unit: needs X1 >= 2");
    return [x1](long bits) {
      return to_certified(QuadraticSurd(Rational(x1), Rational(1), BigInt(x1 * x1 - 1)), bits);
    };
  }
  if (text.empty()) throw InvalidInput("empty factor in expression");
  Rational v = parse_decimal(text);
  return [v](long bits) { return CertifiedReal::exact(v, bits); };
}

RealSource parse_expression(const std::string& text) {
  RealSource acc;
  char op = '*';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != '*' && text[i] != '/') continue;
    RealSource f = parse_factor(text.substr(start, i - start));
    if (!acc) {
      acc = f;
    } else if (op == '*') {
      acc = [acc, f](long bits) { return acc(bits) * f(bits); };
    } else {
      acc = [acc, f](long bits) { return acc(bits) / f(bits); };
    }
    if (i < text.size()) op = text[i];
    start = i + 1;
  }
  return acc;
}

std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InvalidInput("empty entry in prime list");
    out.push_back(std::stoull(item));
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

void emit(std::ostream& out, const Globals& g, const std::string& command, Json result, const std::string& text) {
  if (g.json)
    out << report::envelope(command, std::move(result), g.timestamps).dump(2) << "\n";
  else
    out << text;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified computations for Pell equations whose X-coordinates are S-unit sums", "pellsu"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file");
  Globals g;
  app.add_flag("--json", g.json, "Emit one JSON document (schema pellsu/1)");
  app.add_flag("!--no-timestamps", g.timestamps, "Omit generated_at from JSON output");
  app.add_option("--precision-bits", g.precision_bits, "Working precision (default 256, or PELLSU_PREC_BITS)")
      ->check(CLI::Range(kMinPrecisionBits, kDefaultEscalationCapBits * 64));
  app.add_option("--escalation-cap", g.cap_bits, "Precision ceiling for automatic escalation")
      ->check(CLI::PositiveNumber);

  int code = kOk;
  std::function<void()> action;

  // pell
  auto* pell_cmd = app.add_subcommand("pell", "Pell equation X^2 - dY^2 = 1")->require_subcommand(1);
  std::string d_text;
  unsigned long count = 10;
  auto* fund = pell_cmd->add_subcommand("fund", "Fundamental solution");
  fund->add_option("--d", d_text, "Non-square d > 1")->required();
  fund->callback([&] {
    action = [&] {
      auto ctx = pell::fundamental_solution(parse_bigint(d_text));
      emit(out, g, "pell fund", report::to_json(ctx), "X1=" + ctx.x1.get_str() + " Y1=" + ctx.y1.get_str() + "\n");
    };
  });
  auto* xseq = pell_cmd->add_subcommand("xseq", "X_1, ..., X_K");
  xseq->add_option("--d", d_text, "Non-square d > 1")->required();
  xseq->add_option("--count", count, "K")->required()->check(CLI::PositiveNumber);
  xseq->callback([&] {
    action = [&] {
      auto ctx = pell::fundamental_solution(parse_bigint(d_text));
      Json xs = Json::array();
      std::string text;
      BigInt prev = 1, cur = ctx.x1;
      for (unsigned long l = 1; l <= count; ++l) {
        if (l > 1) {
          BigInt next = 2 * ctx.x1 * cur - prev;
          prev = cur;
          cur = next;
        }
        xs.push_back(Json{{"l", l}, {"X", cur.get_str()}});
        text += "X_" + std::to_string(l) + "=" + cur.get_str() + "\n";
      }
      emit(out, g, "pell xseq", Json{{"context", report::to_json(ctx)}, {"x", xs}}, text);
    };
  });

  // sunit
  auto* sunit_cmd = app.add_subcommand("sunit", "S-units")->require_subcommand(1);
  std::string primes_text = "2,3", value_text;
  auto* check = sunit_cmd->add_subcommand("check", "Decompose a value over S");
  check->add_option("--primes", primes_text, "Comma-separated primes")->required();
  check->add_option("--value", value_text, "Non-zero integer")->required();
  check->callback([&] {
    action = [&] {
      sunit::PrimeSet S(parse_primes(primes_text));
      BigInt n = parse_bigint(value_text);
      auto dec = sunit::decompose(n, S);
      std::string text = n.get_str();
      if (dec) {
        text += " = " + std::string(dec->sign < 0 ? "-" : "");
        for (std::size_t i = 0; i < S.size(); ++i)
          text += (i ? "*" : "") + std::to_string(S[i]) + "^" + std::to_string(dec->exponents[i]);
      } else {
        text += " is not an S-unit";
      }
      emit(out, g, "sunit check",
           Json{{"value", n.get_str()}, {"is_sunit", dec.has_value()},
                {"decomposition", dec ? report::to_json(*dec, S) : Json(nullptr)}},
           text + "\n");
    };
  });

  // cf
  auto* cf_cmd = app.add_subcommand("cf", "Continued fractions")->require_subcommand(1);
  std::string tau_text, M_text;
  auto* expand = cf_cmd->add_subcommand("expand", "Certified partial quotients");
  expand->add_option("--tau", tau_text, "log2log3 | golden | sqrt:D | pell-unit:X1")->required();
  expand->add_option("--count", count, "Number of quotients")->required()->check(CLI::PositiveNumber);
  expand->callback([&] {
    action = [&] {
      auto cf = cfrac::expand(cfrac::parse_tau(tau_text), count, g.policy());
      std::string text = "[";
      for (std::size_t i = 0; i < cf.size(); ++i) text += (i == 0 ? "" : i == 1 ? "; " : ", ") + cf.quotients[i].get_str();
      text += "]\n";
      if (cf.truncated) text += "truncated at " + std::to_string(cf.bits_used) + " bits\n";
      emit(out, g, "cf expand", report::to_json(cf), text);
    };
  });
  auto* aofm = cf_cmd->add_subcommand("a-of-m", "a(M): largest quotient up to the first q > M");
  aofm->add_option("--tau", tau_text, "log2log3 | golden | sqrt:D | pell-unit:X1")->required();
  aofm->add_option("--M", M_text, "M >= 1 (decimal literals such as 8.62e28 allowed)")->required();
  aofm->callback([&] {
    action = [&] {
      auto a = cfrac::a_of_M(cfrac::parse_tau(tau_text), parse_bigint(M_text), g.policy());
      emit(out, g, "cf a-of-m", report::to_json(a),
           "a(M)=" + a.a_M.get_str() + " N=" + std::to_string(a.N) + " q_N=" + a.q_N.get_str() + "\n");
    };
  });

  // matveev
  auto* mat = app.add_subcommand("matveev", "Matveev lower bound for a linear form in logarithms");
  int t = 2, dL = 2;
  std::string a_text, b_text;
  mat->add_option("--t", t, "Number of logarithms")->required()->check(CLI::PositiveNumber);
  mat->add_option("--dl", dL, "Degree of the field")->required()->check(CLI::PositiveNumber);
  mat->add_option("--a", a_text, "Comma-separated A_j (each >= 0.16)")->required();
  mat->add_option("--b", b_text, "B >= max |b_j|")->required();
  mat->callback([&] {
    action = [&] {
      long bits = g.policy().bits;
      std::vector<CertifiedReal> A;
      for (const auto& s : split_list(a_text)) A.push_back(parse_expression(s)(bits));
      auto inst = baker::MatveevInstance::make(t, dL, A, parse_expression(b_text)(bits));
      CertifiedReal L = baker::matveev_lower_bound(inst), pre = baker::matveev_prefactor(t, dL, bits);
      emit(out, g, "matveev", Json{{"prefactor", report::to_json(pre)}, {"L", report::to_json(L)}},
           "log|Lambda| > -" + show(L) + "\nprefactor=" + show(pre) + "\n");
    };
  });

  // reduce
  auto* red = app.add_subcommand("reduce", "Reduction of large bounds")->require_subcommand(1);
  std::string mu_num = "1", mu_den_log = "e", A_text, B_text;
  int max_conv = reduction::kDefaultMaxConvergents;
  auto* dp = red->add_subcommand("dp", "Dujella-Petho step: |m tau - n + mu| < A B^-k, m <= M");
  dp->add_option("--tau", tau_text, "log2log3 | golden | sqrt:D | pell-unit:X1")->required();
  dp->add_option("--mu-num", mu_num, "Numerator of mu, e.g. 5*log:2");
  dp->add_option("--mu-den-log", mu_den_log, "mu = num / log(this), e.g. unit:6 (default: e, i.e. no division)");
  dp->add_option("--A", A_text, "A, e.g. 2/log:unit:6")->required();
  dp->add_option("--B", B_text, "B > 1")->required();
  dp->add_option("--M", M_text, "M >= 1")->required();
  dp->add_option("--max-convergents", max_conv, "Denominators to try past the first q > 6M")
      ->check(CLI::PositiveNumber);
  dp->callback([&] {
    action = [&] {
      PrecisionPolicy p = g.policy();
      RealSource num = parse_expression(mu_num);
      RealSource mu = mu_den_log == "e" ? num : [num, den = parse_factor(mu_den_log)](long bits) {
        return num(bits) / log(den(bits));
      };
      auto res = reduction::dujella_petho(cfrac::parse_tau(tau_text), mu, parse_expression(A_text)(p.bits),
                                          parse_expression(B_text)(p.bits), parse_bigint(M_text), max_conv, p);
      if (!res) {
        emit(out, g, "reduce dp", Json{{"outcome", nullptr}}, "no convergent gave epsilon > 0\n");
        code = kFindings;
        return;
      }
      emit(out, g, "reduce dp", Json{{"outcome", report::to_json(*res)}},
           "k <= " + res->bound.get_str() + " (q=" + res->q_used.get_str() + " eps=" + show(res->epsilon1, 6) + ")\n");
    };
  });

  // thm1
  auto* thm1 = app.add_subcommand("thm1", "Effective constants for the general finiteness result")
                   ->require_subcommand(1);
  int s = 2;
  long r = 1;
  std::string eps_text = "1/2";
  auto* consts = thm1->add_subcommand("constants", "Constants ledger c1..c9");
  consts->add_option("--s", s, "Number of primes")->required()->check(CLI::PositiveNumber);
  consts->add_option("--primes", primes_text, "Comma-separated primes, largest odd")->required();
  consts->add_option("--r", r, "Number of S-unit terms")->required()->check(CLI::PositiveNumber);
  consts->add_option("--eps", eps_text, "0 < eps < 1");
  consts->callback([&] {
    action = [&] {
      auto params = theorem1::Params::make(s, sunit::PrimeSet(parse_primes(primes_text)), r, parse_decimal(eps_text));
      auto ledger = theorem1::constants(params, g.policy().bits);
      std::string text;
      for (const auto& e : ledger.entries()) text += e.name + " = " + show(e.value) + "  (" + e.certifies + ")\n";
      text += "log d threshold = " + show(ledger.log_d_threshold) + "\nT(d) <= " + ledger.Td_bound.get_str() + "\n";
      emit(out, g, "thm1 constants", report::to_json(ledger), text);
    };
  });

  // thm2
  auto* thm2 = app.add_subcommand("thm2", "Two-solution verification for S = {2, 3}")->require_subcommand(1);
  std::string mode_text = "reproduction";
  std::optional<std::string> stage, report_path, checkpoint;
  unsigned workers = 1;
  std::optional<unsigned long> final_limit;
  auto* ver = thm2->add_subcommand("verify", "Run every stage and report the verdict");
  ver->add_option("--mode", mode_text, "reproduction | sharp")->check(CLI::IsMember({"reproduction", "sharp"}));
  ver->add_option("--stage", stage, "Run only this stage")
      ->check(CLI::IsMember(theorem2::kStages));
  ver->add_option("--report", report_path, "Write the JSON report here");
  ver->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  ver->add_option("--checkpoint", checkpoint, "Resumable progress file for the final scan");
  ver->add_option("--final-a2-limit", final_limit, "Restrict the final scan to a2 <= this (partial run)");
  ver->callback([&] {
    action = [&] {
      theorem2::Config cfg;
      cfg.mode = theorem2::parse_mode(mode_text);
      cfg.policy = g.policy();
      cfg.workers = workers;
      cfg.stage = stage;
      cfg.checkpoint_path = checkpoint;
      cfg.final_a2_limit = final_limit;
      auto rep = theorem2::verify(cfg);
      Json doc = report::envelope("thm2 verify", report::to_json(rep), g.timestamps);
      if (report_path) {
        std::ofstream f(*report_path);
        if (!f) throw InvalidInput("cannot write report to " + *report_path);
        f << doc.dump(2) << "\n";
      }
      if (g.json) {
        out << doc.dump(2) << "\n";
      } else {
        out << "mode: " << theorem2::to_string(rep.mode) << "\n";
        if (rep.initial) {
          const auto& c = rep.initial->constants;
          out << "c10=" << show(c.c10, 4) << " c11=" << show(c.c11, 4) << " c12=" << c.c12
              << " (own c10=" << show(c.c10_own, 4) << ")\n";
          out << "b2 < " << rep.initial->b2_max << ", l2 < " << rep.initial->l2_max << "\n";
        }
        if (rep.chain)
          for (const auto& st : rep.chain->steps)
            out << "M=" << st.M << " a(M)=" << st.a.a_M << " (N=" << st.a.N << ") a2<=" << st.a2_bound
                << " b2<" << show(st.b2_bound, 4) << "\n";
        if (rep.poly) out << "l1>=2 polynomial search: " << rep.poly->hits.size() << " hits\n";
        if (rep.small_d) out << "d<=" << rep.small_d->d_max << " search: " << rep.small_d->hits.size() << " hits\n";
        if (rep.final_scan) {
          const auto& f = *rep.final_scan;
          out << "final scan: " << f.candidate_count << " candidates, max M5=" << f.max_M5.value
              << " (plain reduction " << f.max_M5_dp.value << ", i.e. b2 < " << f.max_M5_dp.value + 1 << ")";
          if (f.max_l.value) out << ", max l(X1)=" << show(*f.max_l.value, 4);
          if (f.min_eps1_binding.value) out << ", min eps1=" << show(*f.min_eps1_binding.value, 3);
          if (f.min_eps1_pairs.value) out << " (all pairs " << show(*f.min_eps1_pairs.value, 3) << ")";
          out << ", " << f.hits.size() << " hits\n";
        }
        out << "verdict: " << theorem2::to_string(rep.verdict) << " (" << rep.verdict_reason << ")\n";
        if (rep.error) out << "error: " << *rep.error << "\n";
      }
      if (rep.verdict == theorem2::Verdict::CounterexampleFound)
        code = kFindings;
      else if (rep.failing_stage || (rep.final_scan && !rep.final_scan->inconclusive.empty()))
        code = kError;
    };
  });

  // oracle
  auto* orc = app.add_subcommand("oracle", "Brute-force ground truth")->require_subcommand(1);
  unsigned long d_min = 2, d_max = 10, l_max = 5;
  unsigned ou = 1;
  bool ordered = false, multi = false;
  auto* oscan = orc->add_subcommand("scan", "All (d, l) with X_l a sum of r S-units");
  oscan->add_option("--d-min", d_min, "Smallest d");
  oscan->add_option("--d-max", d_max, "Largest d")->required();
  oscan->add_option("--l-max", l_max, "Largest l")->required()->check(CLI::PositiveNumber);
  oscan->add_option("--primes", primes_text, "Comma-separated primes");
  oscan->add_option("--r", ou, "Number of terms")->check(CLI::PositiveNumber);
  oscan->add_flag("--ordered23", ordered, "Only X_l = 2^n1 3^n2 with n1 <= n2 (S = {2,3}, r = 1)");
  oscan->add_flag("--multi", multi, "List only d with findings at two or more l");
  oscan->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  oscan->callback([&] {
    action = [&] {
      sunit::PrimeSet S(parse_primes(primes_text));
      oracle::ScanOptions opts;
      opts.workers = workers;
      if (multi) {
        auto ds = oracle::multi_solution_d(d_max, l_max, S, ou, ordered, opts);
        Json arr = Json::array();
        std::string text;
        for (const auto& d : ds) {
          arr.push_back(d.get_str());
          text += d.get_str() + "\n";
        }
        emit(out, g, "oracle scan", Json{{"multi_solution_d", arr}}, text.empty() ? "none\n" : text);
        if (!ds.empty()) code = kFindings;
        return;
      }
      auto res = oracle::scan(d_min, d_max, l_max, S, ou, ordered, opts);
      std::string text;
      for (const auto& f : res.findings)
        text += "d=" + f.d.get_str() + " l=" + std::to_string(f.l) + " X=" + f.X.get_str() + "\n";
      if (res.partial) text += std::to_string(res.skipped.size()) + " (d, l) pairs exceeded the budget\n";
      emit(out, g, "oracle scan", report::to_json(res, S), text.empty() ? "none\n" : text);
      if (!res.findings.empty()) code = kFindings;
      else if (res.partial) code = kError;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kError;
  }
  try {
    if (action) action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return code;
}

}  // namespace pellsu::cli
