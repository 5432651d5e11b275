#include "ratioslab/arith.hpp"

#include <cmath>
#include <string>

#include "ratioslab/errors.hpp"

namespace ratioslab::arith {

SieveTable sieve(std::uint64_t limit, std::uint64_t budget) {
  if (limit < 2) throw argument_error("sieve: limit must be at least 2");
  if (limit + 1 > budget)
    throw resource_error("sieve: limit " + std::to_string(limit) +
                         " exceeds entry budget " + std::to_string(budget));

  SieveTable t;
  t.limit = limit;
  t.is_prime.assign(limit + 1, 1);
  t.is_prime[0] = t.is_prime[1] = 0;
  for (std::uint64_t p = 2; p * p <= limit; ++p) {
    if (!t.is_prime[p]) continue;
    for (std::uint64_t m = p * p; m <= limit; m += p) t.is_prime[m] = 0;
  }

  // mu(n) by divisor passes: flip the sign once per prime divisor, then kill
  // multiples of squares.
  t.mobius.assign(limit + 1, 1);
  t.mobius[0] = 0;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (!t.is_prime[p]) continue;
    for (std::uint64_t m = p; m <= limit; m += p) t.mobius[m] = -t.mobius[m];
    const std::uint64_t p2 = p * p;
    if (p2 > limit) continue;
    for (std::uint64_t m = p2; m <= limit; m += p2) t.mobius[m] = 0;
  }

  std::size_t count = 0;
  for (std::uint64_t n = 2; n <= limit; ++n) count += t.is_prime[n];
  t.primes.reserve(count);
  for (std::uint64_t n = 2; n <= limit; ++n)
    if (t.is_prime[n]) t.primes.push_back(static_cast<std::uint32_t>(n));
  return t;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 0) throw argument_error("mod_pow: zero modulus");
  if (mod == 1) return 0;
  unsigned __int128 acc = 1;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) acc = acc * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(acc);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // Miller-Rabin with the first twelve primes as bases is exact below 3.3e24.
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  if ((n & 1) == 0) ++n;
  while (!is_prime_u64(n)) n += 2;
  return n;
}

std::uint32_t primitive_root(std::uint32_t q) {
  if (q < 3 || !is_prime_u64(q))
    throw argument_error("primitive_root: modulus " + std::to_string(q) + " is not an odd prime");
  // Distinct prime factors of q-1 by trial division.
  std::uint32_t m = q - 1;
  std::uint32_t factors[32];
  int nf = 0;
  for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= m; ++p) {
    if (m % p) continue;
    factors[nf++] = p;
    while (m % p == 0) m /= p;
  }
  if (m > 1) factors[nf++] = m;

  for (std::uint32_t g = 2; g < q; ++g) {
    bool ok = true;
    for (int i = 0; i < nf && ok; ++i)
      ok = mod_pow(g, (q - 1) / factors[i], q) != 1;
    if (ok) return g;
  }
  throw numeric_error("primitive_root: no generator found");  // unreachable for prime q
}

DlogTable dlog_table(std::uint32_t q) {
  DlogTable t;
  t.q = q;
  t.g = primitive_root(q);
  t.dlog.assign(q, DlogTable::npos);
  std::uint64_t pw = 1;
  for (std::uint32_t k = 0; k + 1 < q; ++k) {
    t.dlog[static_cast<std::size_t>(pw)] = k;
    pw = pw * t.g % q;
  }
  return t;
}

}  // namespace ratioslab::arith
