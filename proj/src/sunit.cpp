#include "pellsu/sunit.hpp"

#include <algorithm>
#include <map>

namespace pellsu::sunit {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a proven witness set for all n < 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeSet::PrimeSet(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
  if (primes_.empty()) throw InvalidInput("prime set must be non-empty");
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (!is_prime(primes_[i])) throw InvalidInput(std::to_string(primes_[i]) + " is not prime");
    if (i > 0 && primes_[i] <= primes_[i - 1]) throw InvalidInput("primes must be strictly increasing");
  }
}

BigInt SUnitDecomposition::value(const PrimeSet& primes) const {
  BigInt out = sign;
  for (std::size_t i = 0; i < exponents.size(); ++i) out *= ipow(primes[i], exponents[i]);
  return out;
}

std::optional<SUnitDecomposition> decompose(const BigInt& n, const PrimeSet& primes) {
  if (n == 0) throw InvalidInput("0 is not an S-unit");
  SUnitDecomposition dec;
  dec.sign = n < 0 ? -1 : 1;
  BigInt rest = abs(n);
  dec.exponents.reserve(primes.size());
  for (std::uint64_t p : primes.primes()) {
    BigInt prime(static_cast<unsigned long>(p));
    dec.exponents.push_back(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t()));
  }
  if (rest != 1) return std::nullopt;
  return dec;
}

std::optional<std::pair<unsigned long, unsigned long>> as_2a3b_ordered(const BigInt& n) {
  if (n < 1) throw InvalidInput("expected a positive integer");
  static const PrimeSet two_three{2, 3};
  auto dec = decompose(n, two_three);
  if (!dec || dec->exponents[0] > dec->exponents[1]) return std::nullopt;
  return std::make_pair(dec->exponents[0], dec->exponents[1]);
}

unsigned long max_exponent(const std::vector<SUnitDecomposition>& decompositions) {
  if (decompositions.empty()) throw InvalidInput("max_exponent of an empty sequence");
  unsigned long best = 0;
  for (const auto& dec : decompositions) {
    for (unsigned long e : dec.exponents) best = std::max(best, e);
  }
  return best;
}

std::vector<std::pair<BigInt, SUnitDecomposition>> units_up_to(const PrimeSet& primes, const BigInt& bound) {
  std::vector<std::pair<BigInt, SUnitDecomposition>> out;
  if (bound < 1) return out;
  SUnitDecomposition current;
  current.exponents.assign(primes.size(), 0);
  // Depth-first over exponent vectors, pruning once the product exceeds bound.
  auto visit = [&](auto&& self, std::size_t index, const BigInt& value) -> void {
    if (index == primes.size()) {
      out.emplace_back(value, current);
      return;
    }
    BigInt v = value;
    unsigned long e = 0;
    while (v <= bound) {
      current.exponents[index] = e;
      self(self, index + 1, v);
      v *= static_cast<unsigned long>(primes[index]);
      ++e;
    }
    current.exponents[index] = 0;
  };
  visit(visit, 0, BigInt(1));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::vector<SUnitSum> enumerate_sunit_sums(const PrimeSet& primes, unsigned r, const BigInt& bound,
                                           const EnumerationOptions& options) {
  if (r < 1) throw InvalidInput("r must be at least 1");
  if (bound < 1) throw InvalidInput("bound must be at least 1");

  // Signed term pool, ascending by value.
  std::vector<std::pair<BigInt, SUnitDecomposition>> pool;
  BigInt magnitude_cap = options.allow_negative ? BigInt(bound * r) : bound;
  for (auto& [value, dec] : units_up_to(primes, magnitude_cap)) {
    if (options.allow_negative) {
      SUnitDecomposition neg = dec;
      neg.sign = -1;
      pool.emplace_back(-value, neg);
    }
    pool.emplace_back(value, dec);
  }
  std::sort(pool.begin(), pool.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  std::map<BigInt, SUnitSum> found;
  unsigned long long examined = 0;
  std::vector<std::size_t> chosen(r);

  auto emit = [&](const BigInt& total) {
    auto [it, inserted] = found.try_emplace(total);
    if (inserted) it->second.value = total;
    if (it->second.witnesses.size() < options.witness_cap) {
      std::vector<SUnitDecomposition> witness;
      witness.reserve(r);
      for (std::size_t idx : chosen) witness.push_back(pool[idx].second);
      it->second.witnesses.push_back(std::move(witness));
    }
  };
  auto partial = [&]() {
    std::vector<SUnitSum> out;
    for (auto& [v, s] : found) out.push_back(s);
    return out;
  };

  // Non-decreasing index tuples, so each multiset of terms is seen once.
  auto recurse = [&](auto&& self, unsigned depth, std::size_t start, const BigInt& partial_sum) -> void {
    if (depth == r) {
      if (++examined > options.max_combinations) throw EnumerationBudgetExceeded(examined, partial());
      if (partial_sum >= 1 && partial_sum <= bound) emit(partial_sum);
      return;
    }
    const unsigned remaining = r - depth;
    for (std::size_t i = start; i < pool.size(); ++i) {
      const BigInt& term = pool[i].first;
      // With non-decreasing terms the sum is at least partial + remaining·term.
      if (partial_sum + term * remaining > bound) break;
      chosen[depth] = i;
      self(self, depth + 1, i, partial_sum + term);
    }
  };
  recurse(recurse, 0, 0, BigInt(0));
  return partial();
}

}  // namespace pellsu::sunit
