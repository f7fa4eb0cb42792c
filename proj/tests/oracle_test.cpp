#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "pellsu/oracle.hpp"
#include "pellsu/pell.hpp"

using namespace pellsu;
using Json = nlohmann::json;

namespace {

Json golden(const std::string& name) {
  std::ifstream in(std::string(PELLSU_SOURCE_DIR) + "/tests/golden/" + name);
  REQUIRE(in.good());
  return Json::parse(in);
}

sunit::PrimeSet primes_of(const Json& g) {
  std::vector<std::uint64_t> ps;
  for (const auto& p : g["primes"]) ps.push_back(p.get<std::uint64_t>());
  return sunit::PrimeSet(ps);
}

void check_against_golden(const std::string& name, unsigned workers) {
  Json g = golden(name);
  auto S = primes_of(g);
  unsigned r = g["r"].get<unsigned>();
  oracle::ScanOptions opt;
  opt.workers = workers;
  auto res = oracle::scan(2, g["d_max"].get<unsigned long>(), g["l_max"].get<unsigned long>(), S, r,
                          g["ordered"].get<bool>(), opt);
  CHECK_FALSE(res.partial);
  REQUIRE(res.findings.size() == g["findings"].size());
  for (std::size_t i = 0; i < res.findings.size(); ++i) {
    const auto& f = res.findings[i];
    const auto& e = g["findings"][i];
    INFO(name << " #" << i);
    CHECK(f.d == BigInt(e["d"].get<long>()));
    CHECK(f.l == e["l"].get<unsigned long>());
    CHECK(f.X.get_str() == e["X"].get<std::string>());
    REQUIRE_FALSE(f.witnesses.empty());
    for (const auto& w : f.witnesses) {
      CHECK(w.size() == r);
      BigInt sum = 0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        BigInt v = w[k].value(S);
        CHECK(v > 0);
        if (k > 0) CHECK(w[k - 1].value(S) <= v);
        sum += v;
      }
      CHECK(sum == f.X);
    }
  }
  std::vector<long> multi;
  for (const auto& d : g["multi_solution_d"]) multi.push_back(d.get<long>());
  auto got = oracle::multi_solution_d(g["d_max"].get<unsigned long>(), g["l_max"].get<unsigned long>(), S, r,
                                      g["ordered"].get<bool>(), opt);
  REQUIRE(got.size() == multi.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == BigInt(multi[i]));
}

}  // namespace

TEST_CASE("ordered 2,3 scan for d <= 10 matches the golden file") {
  check_against_golden("oracle_scan_d10_l5.json", 1);
  // X1 = 2 for d = 3 has n1 > n2 and is excluded.
  auto res = oracle::scan(3, 3, 5, sunit::PrimeSet({2, 3}), 1, true);
  CHECK(res.findings.empty());
  auto plain = oracle::scan(3, 3, 5, sunit::PrimeSet({2, 3}), 1, false);
  REQUIRE(plain.findings.size() == 1);
  CHECK(plain.findings[0].X == 2);
}

TEST_CASE("unordered 2,3 scan for d <= 1000 matches the golden file") {
  check_against_golden("oracle_r1_d1000_l6.json", 2);
}

TEST_CASE("two-term 2,3,5 scan for d <= 100 matches the golden file") {
  check_against_golden("oracle_r2_d100_l10.json", 1);
}

TEST_CASE("scan edge cases") {
  sunit::PrimeSet S({2, 3});
  CHECK(oracle::scan(16, 16, 5, S, 1, true).findings.empty());
  CHECK(oracle::scan(10, 5, 5, S, 1, true).findings.empty());
  CHECK(oracle::multi_solution_d(100, 1, S, 1, true).empty());
  CHECK_THROWS_AS(oracle::scan(2, 10, 5, sunit::PrimeSet({2, 5}), 1, true), InvalidInput);
  CHECK_THROWS_AS(oracle::scan(2, 10, 5, S, 2, true), InvalidInput);
  auto a = oracle::scan(2, 300, 4, S, 1, false);
  oracle::ScanOptions four;
  four.workers = 4;
  auto b = oracle::scan(2, 300, 4, S, 1, false, four);
  REQUIRE(a.findings.size() == b.findings.size());
  for (std::size_t i = 0; i < a.findings.size(); ++i) {
    CHECK(a.findings[i].d == b.findings[i].d);
    CHECK(a.findings[i].l == b.findings[i].l);
  }
}

TEST_CASE("no d <= 1000 has two ordered 2,3 solutions") {
  CHECK(oracle::multi_solution_d(1000, 20, sunit::PrimeSet({2, 3}), 1, true).empty());
}

TEST_CASE("sum_witnesses") {
  sunit::PrimeSet S({2, 3, 5});
  auto w = oracle::sum_witnesses(BigInt(17), S, 2, 8, 1000000);
  // 17 = 2 + 15 = 8 + 9 = 12 + 5 = 16 + 1
  CHECK(w.size() == 4);
  CHECK(oracle::sum_witnesses(BigInt(7), sunit::PrimeSet({2}), 2, 8, 1000000).empty());
  CHECK(oracle::sum_witnesses(BigInt(3), sunit::PrimeSet({2}), 2, 8, 1000000).size() == 1);
  CHECK(oracle::sum_witnesses(BigInt(30), S, 1, 8, 1000000).size() == 1);
  CHECK(oracle::sum_witnesses(BigInt(7), S, 1, 8, 1000000).empty());
  CHECK_THROWS_AS(oracle::sum_witnesses(BigInt("1000000000000000000000007"), S, 4, 8, 10), ResourceExceeded);
}

TEST_CASE("independent quotients") {
  auto golden_q = oracle::independent_quotients("golden", 30);
  CHECK(golden_q.size() == 30);
  for (const auto& q : golden_q) CHECK(q == 1);
  auto s2 = oracle::independent_quotients("sqrt:2", 20);
  CHECK(s2.front() == 1);
  for (std::size_t i = 1; i < s2.size(); ++i) CHECK(s2[i] == 2);
  auto l = oracle::independent_quotients("log2log3", 8);
  std::vector<long> expect = {0, 1, 1, 1, 2, 2, 3, 1};
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(l[i] == expect[i]);
  CHECK_THROWS_AS(oracle::independent_quotients("pi", 5), InvalidInput);
}

TEST_CASE("Legendre-type lower bound by enumeration") {
  CHECK(oracle::verify_lemma_3_4("log2log3", {BigInt(200)}));
  CHECK(oracle::verify_lemma_3_4("sqrt:2", {BigInt(100)}));
  CHECK(oracle::verify_lemma_3_4("golden", {BigInt(1), BigInt(2), BigInt(50), BigInt(10000)}));
  CHECK(oracle::verify_lemma_3_4("log2log3", {BigInt(1), BigInt(53), BigInt(665), BigInt(9999)}));
  CHECK_THROWS_AS(oracle::verify_lemma_3_4("log2log3", {BigInt(10001)}), InvalidInput);
}
