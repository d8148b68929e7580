#pragma once

// Slow, independent reference implementations used to cross-check the core
// library. Plain 64-bit arithmetic and exhaustive enumeration throughout.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

inline i64 mod(i64 a, i64 m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline i64 power(i64 base, i64 exp, i64 m) {
  i64 r = 1 % m;
  base = mod(base, m);
  for (i64 i = 0; i < exp; ++i) r = static_cast<i64>((static_cast<__int128>(r) * base) % m);
  return r;
}

inline std::vector<i64> sieve(i64 limit) {
  std::vector<bool> composite(static_cast<std::size_t>(limit + 1), false);
  std::vector<i64> primes;
  for (i64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (i64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

/// (n/p) for an odd prime p by listing the squares.
inline int legendre_by_squares(i64 n, i64 p) {
  n = mod(n, p);
  if (n == 0) return 0;
  std::set<i64> squares;
  for (i64 x = 1; x < p; ++x) squares.insert(x * x % p);
  return squares.contains(n) ? 1 : -1;
}

/// Jacobi symbol as a product of Legendre symbols over the factorization of m.
inline int jacobi_by_squares(i64 n, i64 m) {
  int result = 1;
  for (i64 q = 3; m > 1; q += 2) {
    while (m % q == 0) {
      result *= legendre_by_squares(n, q);
      m /= q;
    }
  }
  return result;
}

/// Projective point on a x^p + b y^p + c z^p = 0 over F_q, by enumeration.
inline std::optional<std::array<i64, 3>> projective_point(i64 a, i64 b, i64 c, i64 p, i64 q) {
  const auto f = [&](i64 x, i64 y, i64 z) {
    return mod(a * power(x, p, q) + b * power(y, p, q) + c * power(z, p, q), q);
  };
  for (i64 y = 0; y < q; ++y)
    for (i64 z = 0; z < q; ++z)
      if (f(1, y, z) == 0) return std::array<i64, 3>{1, y, z};
  for (i64 z = 0; z < q; ++z)
    if (f(0, 1, z) == 0) return std::array<i64, 3>{0, 1, z};
  if (f(0, 0, 1) == 0) return std::array<i64, 3>{0, 0, 1};
  return std::nullopt;
}

inline unsigned val(i64 n, i64 ell) {
  unsigned v = 0;
  while (n != 0 && n % ell == 0) {
    n /= ell;
    ++v;
  }
  return v;
}

enum class Local { Solvable, Unsolvable, Unknown };

/**
 * Q_ell solvability by enumerating every triple mod ell^n, n = 1..depth:
 * no primitive zero at some level means unsolvable; a zero where some
 * partial derivative has valuation e with 2e + 1 <= n means solvable.
 */
inline Local local_by_enumeration(i64 a, i64 b, i64 c, i64 p, i64 ell, unsigned depth) {
  const std::array<i64, 3> coeff{a, b, c};
  i64 m = 1;
  for (unsigned n = 1; n <= depth; ++n) {
    m *= ell;
    bool any_zero = false;
    for (i64 x = 0; x < m; ++x)
      for (i64 y = 0; y < m; ++y)
        for (i64 z = 0; z < m; ++z) {
          if (x % ell == 0 && y % ell == 0 && z % ell == 0) continue;
          const std::array<i64, 3> pt{x, y, z};
          i64 f = 0;
          for (int i = 0; i < 3; ++i) f = mod(f + coeff[i] * power(pt[i], p, m), m);
          if (f != 0) continue;
          any_zero = true;
          for (int i = 0; i < 3; ++i) {
            const i64 d = mod(p * coeff[i] % m * power(pt[i], p - 1, m), m);
            if (d == 0) continue;
            if (2 * val(d, ell) + 1 <= n) return Local::Solvable;
          }
        }
    if (!any_zero) return Local::Unsolvable;
  }
  return Local::Unknown;
}

/// Discriminant of the cubic 4x^3 + b2 x^2 + 2 b4 x + b6, divided by 16.
inline i64 delta_from_cubic(i64 a1, i64 a2, i64 a3, i64 a4, i64 a6) {
  const __int128 b2 = a1 * a1 + 4 * a2, b4 = 2 * a4 + a1 * a3, b6 = a3 * a3 + 4 * a6;
  const __int128 A = 4, B = b2, C = 2 * b4, D = b6;
  const __int128 disc = B * B * C * C - 4 * A * C * C * C - 4 * B * B * B * D - 27 * A * A * D * D + 18 * A * B * C * D;
  return static_cast<i64>(disc / 16);
}

/// Deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  i64 range(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng_); }
  i64 nonzero(i64 lo, i64 hi) {
    for (;;) {
      const i64 v = range(lo, hi);
      if (v != 0) return v;
    }
  }
  bool coin() { return range(0, 1) == 1; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
