#include "fermatsym/ntkernel.hpp"

#include <array>
#include <limits>

#include <boost/multiprecision/miller_rabin.hpp>

namespace fermatsym {

namespace {
__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;
}  // namespace

Int FactoredInt::value() const {
  Int out = sign;
  for (const auto& [prime, exp] : factors) out *= boost::multiprecision::pow(prime, exp);
  return out;
}

Int mod_floor(const Int& n, const Int& m) {
  Int r = n % m;
  if (r < 0) r += m;
  return r;
}

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

Int isqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt of a negative number");
  return boost::multiprecision::sqrt(n);
}

std::string to_string(const Int& n) { return n.str(); }

int jacobi(const Int& n, const Int& m) {
  if (m < 1 || (m & 1) == 0)
    throw std::invalid_argument("jacobi: modulus must be odd and positive, got " + m.str());
  Int a = mod_floor(n, m);
  Int b = m;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const unsigned r = static_cast<unsigned>(b % 8);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, b);
    if (a % 4 == 3 && b % 4 == 3) result = -result;
    a %= b;
  }
  return b == 1 ? result : 0;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are deterministic for every n < 2^64.
  for (auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
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

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime_u64(static_cast<std::uint64_t>(n));
  // Outside the deterministic range; nothing in the library reaches here.
  return boost::multiprecision::miller_rabin_test(n, 40);
}

FactoredInt factor_small(const Int& n, std::uint64_t bound) {
  if (n == 0) throw std::invalid_argument("factor_small: cannot factor 0");
  FactoredInt out;
  out.sign = n < 0 ? -1 : 1;
  Int rem = boost::multiprecision::abs(n);
  std::uint64_t d = 2;
  for (; d <= bound && Int(d) * d <= rem; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (rem % d == 0) {
      rem /= d;
      ++e;
    }
    if (e) out.factors[Int(d)] = e;
  }
  if (rem > 1) {
    const bool certified = rem <= std::numeric_limits<std::uint64_t>::max() && is_prime_u64(static_cast<std::uint64_t>(rem));
    if (Int(d) * d <= rem && !certified)
      throw FactorBoundExceeded("factor_small: cofactor " + rem.str() + " exceeds trial-division bound " +
                                std::to_string(bound));
    out.factors[rem] += 1;
  }
  return out;
}

Int squarefree_part(const Int& n) {
  if (n == 0) throw std::invalid_argument("squarefree_part: argument must be nonzero");
  const FactoredInt f = factor_small(n);
  Int s = f.sign;
  for (const auto& [prime, exp] : f.factors) {
    if (exp % 2) s *= prime;
  }
  return s;
}

unsigned valuation(const Int& n, const Int& ell) {
  if (n == 0) throw std::invalid_argument("valuation of 0 is infinite");
  if (ell < 2) throw std::invalid_argument("valuation base must be >= 2");
  Int m = n;
  unsigned v = 0;
  while (m % ell == 0) {
    m /= ell;
    ++v;
  }
  return v;
}

Int euler_phi(const Int& n) {
  if (n < 1) throw std::invalid_argument("euler_phi: argument must be positive");
  Int phi = n;
  for (const auto& [prime, exp] : factor_small(n).factors) phi = phi / prime * (prime - 1);
  return phi;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  Int g = gcd(Int(a), Int(m));
  if (g != 1) throw std::invalid_argument("inv_mod: arguments are not coprime");
  // Extended Euclid on signed 128-bit values.
  i128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const i128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  i128 res = old_s % static_cast<i128>(m);
  if (res < 0) res += m;
  return static_cast<std::uint64_t>(res);
}

std::uint64_t reduce_mod(const Int& n, std::uint64_t m) {
  return static_cast<std::uint64_t>(mod_floor(n, Int(m)));
}

}  // namespace fermatsym
