#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "pellsu/numkernel.hpp"

namespace pellsu::sunit {

// Strictly increasing, non-empty list of primes.
class PrimeSet {
 public:
  PrimeSet(std::vector<std::uint64_t> primes);
  PrimeSet(std::initializer_list<std::uint64_t> primes) : PrimeSet(std::vector<std::uint64_t>(primes)) {}

  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  std::uint64_t largest() const { return primes_.back(); }
  std::uint64_t operator[](std::size_t i) const { return primes_[i]; }

 private:
  std::vector<std::uint64_t> primes_;
};

// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime(std::uint64_t n);

struct SUnitDecomposition {
  int sign = 1;
  std::vector<unsigned long> exponents;  // aligned with the PrimeSet

  BigInt value(const PrimeSet& primes) const;
  friend bool operator==(const SUnitDecomposition&, const SUnitDecomposition&) = default;
};

// Some(decomposition) iff n = ±∏ p_i^{e_i}. Throws InvalidInput for n = 0.
std::optional<SUnitDecomposition> decompose(const BigInt& n, const PrimeSet& primes);

// (n1, n2) with n = 2^{n1}·3^{n2} and n1 ≤ n2, if n has that form.
std::optional<std::pair<unsigned long, unsigned long>> as_2a3b_ordered(const BigInt& n);

// Largest exponent over every term and prime. Throws InvalidInput when empty.
unsigned long max_exponent(const std::vector<SUnitDecomposition>& decompositions);

// All positive S-units ≤ bound, ascending.
std::vector<std::pair<BigInt, SUnitDecomposition>> units_up_to(const PrimeSet& primes, const BigInt& bound);

struct SUnitSum {
  BigInt value;
  std::vector<std::vector<SUnitDecomposition>> witnesses;  // each witness has exactly r terms
};

struct EnumerationOptions {
  std::size_t witness_cap = 8;
  unsigned long long max_combinations = 50'000'000;
  // Admit negative S-units with |z| ≤ r·bound. Without this only positive
  // terms are used, which is exhaustive for positive sums.
  bool allow_negative = false;
};

// Thrown when the combination budget runs out; carries what was found so far.
class EnumerationBudgetExceeded : public ResourceExceeded {
 public:
  EnumerationBudgetExceeded(unsigned long long examined, std::vector<SUnitSum> partial)
      : ResourceExceeded("S-unit sum enumeration budget exceeded", examined), partial_(std::move(partial)) {}
  const std::vector<SUnitSum>& partial() const { return partial_; }

 private:
  std::vector<SUnitSum> partial_;
};

// Every positive integer ≤ bound that is a sum of exactly r S-units, with
// witnesses, ascending by value.
std::vector<SUnitSum> enumerate_sunit_sums(const PrimeSet& primes, unsigned r, const BigInt& bound,
                                           const EnumerationOptions& options = {});

}  // namespace pellsu::sunit
