#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "hallmark/errors.hpp"

namespace hallmark {

inline bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<unsigned> prime_divisors(std::uint64_t n) {
  std::vector<unsigned> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(static_cast<unsigned>(p));
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(static_cast<unsigned>(n));
  return out;
}

// A sorted set of distinct primes; π′-membership is the negation of
// π-membership.
class PrimeSet {
public:
  PrimeSet() = default;
  PrimeSet(std::initializer_list<unsigned> ps)
      : PrimeSet(std::vector<unsigned>(ps)) {}
  explicit PrimeSet(std::vector<unsigned> ps) : primes_(std::move(ps)) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (unsigned p : primes_)
      if (!is_prime(p))
        throw InvalidInput("PrimeSet: " + std::to_string(p) + " is not prime");
  }

  // π(n): the set of primes dividing n.
  static PrimeSet of_order(std::uint64_t n) {
    if (n == 0) throw InvalidInput("PrimeSet::of_order: n must be positive");
    return PrimeSet(prime_divisors(n));
  }

  const std::vector<unsigned>& primes() const { return primes_; }
  bool empty() const { return primes_.empty(); }
  bool contains(unsigned p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
  }
  bool operator==(const PrimeSet&) const = default;

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(primes_[i]);
    }
    return s + "}";
  }

private:
  std::vector<unsigned> primes_;
};

// The largest divisor m of n with π(m) ⊆ π; n/m is a π′-number.
inline std::uint64_t pi_part(std::uint64_t n, const PrimeSet& pi) {
  if (n == 0) throw InvalidInput("pi_part: n must be positive");
  std::uint64_t m = 1;
  for (unsigned p : pi.primes())
    while (n % p == 0) {
      n /= p;
      m *= p;
    }
  return m;
}

// True iff every prime divisor of n lies in π (1 is a π-number for every π).
inline bool is_pi_number(std::uint64_t n, const PrimeSet& pi) {
  if (n == 0) throw InvalidInput("is_pi_number: n must be positive");
  return pi_part(n, pi) == n;
}

}  // namespace hallmark
