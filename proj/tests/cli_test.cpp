#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "pellsu/cli.hpp"

using namespace pellsu;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pellsu");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& piece) { return text.find(piece) != std::string::npos; }

}  // namespace

TEST_CASE("pell") {
  auto r = run({"pell", "fund", "--d", "2"});
  CHECK(r.code == cli::kOk);
  CHECK(has(r.out, "X1=3"));
  CHECK(has(r.out, "Y1=2"));
  auto sq = run({"pell", "fund", "--d", "9"});
  CHECK(sq.code == cli::kError);
  CHECK(has(sq.err, "perfect square"));
  auto xs = run({"pell", "xseq", "--d", "2", "--count", "4"});
  CHECK(xs.code == cli::kOk);
  CHECK(has(xs.out, "577"));
}

TEST_CASE("json envelope") {
  auto r = run({"--json", "--no-timestamps", "pell", "fund", "--d", "661"});
  REQUIRE(r.code == cli::kOk);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema"] == "pellsu/1");
  CHECK(doc["command"] == "pell fund");
  CHECK_FALSE(doc.contains("generated_at"));
  CHECK(has(r.out, "16421658242965910275055840472270471049"));
  auto t = run({"--json", "pell", "fund", "--d", "2"});
  CHECK(nlohmann::json::parse(t.out).contains("generated_at"));
}

TEST_CASE("sunit and cf") {
  auto s = run({"sunit", "check", "--primes", "2,3", "--value", "-72"});
  CHECK(s.code == cli::kOk);
  auto n = run({"sunit", "check", "--primes", "2,3", "--value", "10"});
  CHECK(n.code == cli::kOk);
  auto cf = run({"cf", "expand", "--tau", "sqrt:2", "--count", "5"});
  CHECK(cf.code == cli::kOk);
  CHECK(has(cf.out, "1"));
  auto a = run({"cf", "a-of-m", "--tau", "log2log3", "--M", "8.62e28"});
  CHECK(a.code == cli::kOk);
  CHECK(has(a.out, "55"));
  CHECK(has(a.out, "58"));
  auto bad = run({"cf", "expand", "--tau", "pi", "--count", "5"});
  CHECK(bad.code == cli::kError);
}

TEST_CASE("matveev, reduce, thm1") {
  CHECK(run({"matveev", "--t", "3", "--dl", "2", "--a", "1,1,1", "--b", "100"}).code == cli::kOk);
  CHECK(run({"matveev", "--t", "3", "--dl", "2", "--a", "1,1", "--b", "100"}).code == cli::kError);
  auto dp = run({"reduce", "dp", "--tau", "log2log3", "--mu-num", "1/3", "--A", "10", "--B", "2", "--M", "1e10"});
  CHECK(dp.code == cli::kOk);
  auto t1 = run({"--json", "--no-timestamps", "thm1", "constants", "--s", "2", "--primes", "2,3", "--r", "1"});
  REQUIRE(t1.code == cli::kOk);
  CHECK(nlohmann::json::parse(t1.out)["schema"] == "pellsu/1");
}

TEST_CASE("thm2 stages") {
  auto r = run({"thm2", "verify", "--stage", "chain"});
  CHECK(r.code == cli::kOk);
  CHECK(has(r.out, "a2<=377"));
  CHECK(has(r.out, "a2<=253"));
  CHECK(has(r.out, "Inconclusive"));
  auto j1 = run({"--json", "--no-timestamps", "thm2", "verify", "--stage", "constants", "--mode", "sharp"});
  auto j2 = run({"--json", "--no-timestamps", "thm2", "verify", "--stage", "constants", "--mode", "sharp"});
  CHECK(j1.code == cli::kOk);
  CHECK(j1.out == j2.out);
  auto bad = run({"thm2", "verify", "--stage", "everything"});
  CHECK(bad.code == cli::kError);
}

TEST_CASE("oracle") {
  auto r = run({"oracle", "scan", "--d-max", "10", "--l-max", "5", "--ordered23"});
  CHECK(r.code == cli::kFindings);
  CHECK(has(r.out, "d=5 l=1 X=9"));
  auto m = run({"oracle", "scan", "--d-max", "200", "--l-max", "10", "--ordered23", "--multi"});
  CHECK(m.code == cli::kOk);
  CHECK(has(m.out, "none"));
  auto bad = run({"oracle", "scan", "--d-max", "10", "--l-max", "5", "--primes", "2,5", "--ordered23"});
  CHECK(bad.code == cli::kError);
}

TEST_CASE("parse errors") {
  auto r = run({"pell", "fund", "--d", "2", "--bogus"});
  CHECK(r.code == cli::kError);
  CHECK_FALSE(r.err.empty());
  CHECK(run({}).code == cli::kError);
  CHECK(run({"--help"}).code == cli::kOk);
}
