#pragma once

#include <cstdint>
#include <vector>

namespace ratioslab::arith {

// Largest sieve the library will build by default (entry count, not bytes).
inline constexpr std::uint64_t kDefaultSieveBudget = std::uint64_t{1} << 28;

// Primality and Moebius tables on [0, limit].
struct SieveTable {
  std::uint64_t limit = 0;
  std::vector<std::uint8_t> is_prime;  // is_prime[n] != 0 iff n is prime
  std::vector<std::int8_t> mobius;     // mu(n); mu(0) stored as 0
  std::vector<std::uint32_t> primes;   // ascending list of primes <= limit
};

// Eratosthenes + Moebius sieve.  Throws resource_error if limit exceeds the
// budget, argument_error if limit < 2.
SieveTable sieve(std::uint64_t limit, std::uint64_t budget = kDefaultSieveBudget);

// base^exp mod m, 64-bit safe (m < 2^63).  mod_pow(x, 0, m) == 1 mod m.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Smallest prime >= n (n >= 2).
std::uint64_t next_prime(std::uint64_t n);

// Smallest primitive root g >= 2 of the odd prime q.
std::uint32_t primitive_root(std::uint32_t q);

// Discrete-logarithm table for an odd prime q: dlog[g^k mod q] = k for
// k in [0, q-2]; dlog[0] is the npos sentinel.
struct DlogTable {
  static constexpr std::uint32_t npos = ~std::uint32_t{0};
  std::uint32_t q = 0;  // odd prime modulus
  std::uint32_t g = 0;  // smallest primitive root
  std::vector<std::uint32_t> dlog;  // size q
};

DlogTable dlog_table(std::uint32_t q);

}  // namespace ratioslab::arith
