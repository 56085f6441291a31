#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "iwadec/errors.hpp"

namespace iwadec::nt {

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

inline long pow_mod(long base, long exp, long n) {
  long result = 1 % n;
  base = mod(base, n);
  while (exp > 0) {
    if (exp & 1) result = static_cast<long>((__int128)result * base % n);
    base = static_cast<long>((__int128)base * base % n);
    exp >>= 1;
  }
  return result;
}

/// Distinct prime divisors in increasing order.
inline std::vector<long> prime_divisors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline long euler_phi(long n) {
  long r = n;
  for (long p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

inline std::vector<long> divisors(long n) {
  std::vector<long> ds;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) ds.push_back(d);
  return ds;
}

/// Largest power of p dividing n.
inline long p_part(long n, long p) {
  long r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_power_of(long n, long p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

/// Multiplicative order of a modulo n; a must be a unit.
inline long mult_order(long a, long n) {
  if (n == 1) return 1;
  if (std::gcd(mod(a, n), n) != 1) throw MalformedInput("mult_order of a non-unit");
  long x = mod(a, n), k = 1;
  while (x != 1) {
    x = x * mod(a, n) % n;
    ++k;
  }
  return k;
}

/// Inverse of a modulo n.
inline long inv_mod(long a, long n) {
  long g = n, x = 0, x1 = 1, r = mod(a, n);
  while (r != 0) {
    long q = g / r;
    long t = g - q * r; g = r; r = t;
    t = x - q * x1; x = x1; x1 = t;
  }
  if (g != 1) throw MalformedInput("no inverse modulo n");
  return mod(x, n);
}

inline long isqrt(long n) {
  long r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Smallest primitive root modulo the prime p.
inline long primitive_root(long p) {
  auto fs = prime_divisors(p - 1);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long f : fs)
      if (pow_mod(g, (p - 1) / f, p) == 1) { ok = false; break; }
    if (ok) return g;
  }
  return 1;
}

}  // namespace iwadec::nt
