#pragma once

// Brute-force ground truth. Depends only on pell, sunit and exact
// arithmetic, never on the reduction machinery it is meant to check.

#include <string>
#include <vector>

#include "pellsu/numkernel.hpp"
#include "pellsu/sunit.hpp"

namespace pellsu::oracle {

struct Finding {
  BigInt d;
  unsigned long l;
  BigInt X;
  // Each witness lists r terms, largest last.
  std::vector<std::vector<sunit::SUnitDecomposition>> witnesses;
};

struct ScanOptions {
  unsigned workers = 1;
  std::size_t witness_cap = 4;
  unsigned long long budget_per_value = 20'000'000;  // combinations tried per X for r ≥ 3
};

struct ScanResult {
  std::vector<Finding> findings;  // ordered by (d, l)
  bool partial = false;           // some X exceeded the budget
  std::vector<std::pair<BigInt, unsigned long>> skipped;  // (d, l) left undecided
};

// Every (d, l) with d_min ≤ d ≤ d_max non-square, 1 ≤ l ≤ l_max and X_l a sum
// of exactly r positive S-units; with ordered_2_3 (needs S = {2, 3}, r = 1)
// only X_l = 2^{n1}·3^{n2}, n1 ≤ n2, counts.
ScanResult scan(unsigned long d_min, unsigned long d_max, unsigned long l_max, const sunit::PrimeSet& S, unsigned r,
                bool ordered_2_3, const ScanOptions& options = {});

// d values with findings at two or more distinct l.
std::vector<BigInt> multi_solution_d(unsigned long d_max, unsigned long l_max, const sunit::PrimeSet& S, unsigned r,
                                     bool ordered_2_3, const ScanOptions& options = {});

// Witnesses that X is a sum of exactly r positive S-units with the largest
// term last; empty when it is not. Throws ResourceExceeded past the budget.
std::vector<std::vector<sunit::SUnitDecomposition>> sum_witnesses(const BigInt& X, const sunit::PrimeSet& S, unsigned r,
                                                                    std::size_t cap, unsigned long long budget);

// Continued-fraction quotients of τ certified by expanding both rational
// endpoints of an enclosure and keeping their common prefix.
std::vector<BigInt> independent_quotients(const std::string& tau_label, std::size_t count, long bits = 1024);

// For each M: every 0 < m < M has |mτ − n| > 1/((a(M)+2)m), n the nearest
// integer to mτ. Requires M ≤ 10⁴.
bool verify_lemma_3_4(const std::string& tau_label, const std::vector<BigInt>& M_values, long bits = 512);

}  // namespace pellsu::oracle
