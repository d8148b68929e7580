#pragma once

/**
 * @file ntkernel.hpp
 * @brief Exact integer and modular arithmetic shared by every other module.
 *
 * All values are arbitrary-precision integers; nothing in the library uses
 * floating point. The machine-word helpers at the bottom are only used in
 * hot finite-field loops where the modulus is known to fit in 32 bits.
 */

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fermatsym {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when trial division cannot finish within its bound.
class FactorBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sign * prod(p^e). An empty factor map with sign +1 represents 1.
struct FactoredInt {
  int sign = 1;
  std::map<Int, unsigned> factors;

  Int value() const;
  bool operator==(const FactoredInt&) const = default;
};

/// Jacobi symbol (n/m) for odd m >= 1. Throws std::invalid_argument otherwise.
int jacobi(const Int& n, const Int& m);

bool is_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);

inline constexpr std::uint64_t kDefaultTrialBound = 1'000'000;

/**
 * Factor by trial division with divisors up to @p bound.
 *
 * A cofactor left over after the loop is accepted when every divisor up to
 * its square root has been tried or when it is below 2^64 and the
 * deterministic Miller-Rabin test certifies it prime; otherwise
 * FactorBoundExceeded is thrown instead of returning a partial answer.
 */
FactoredInt factor_small(const Int& n, std::uint64_t bound = kDefaultTrialBound);

/// The squarefree s with n = s * t^2 and sign(s) = sign(n). Rejects 0.
Int squarefree_part(const Int& n);

/// v_ell(n); n must be nonzero and ell >= 2.
unsigned valuation(const Int& n, const Int& ell);

/// Non-negative remainder of n modulo m > 0.
Int mod_floor(const Int& n, const Int& m);

Int gcd(const Int& a, const Int& b);

/// Largest r with r*r <= n, n >= 0.
Int isqrt(const Int& n);

/// Euler totient via factor_small.
Int euler_phi(const Int& n);

std::string to_string(const Int& n);

// Machine-word modular helpers (modulus < 2^63).
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse of a modulo m; a and m must be coprime.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);
/// Reduce an arbitrary Int into [0, m).
std::uint64_t reduce_mod(const Int& n, std::uint64_t m);

}  // namespace fermatsym
