#pragma once

/**
 * @file symplectic.hpp
 * @brief The two symplectic criteria as decision procedures.
 *
 * Both criteria compare the mod-p torsion of a Frey curve with that of a
 * candidate curve. Their output is either a symplectic type or a
 * Legendre-symbol condition on the exponent p, written (n/p) = +-1 with n
 * squarefree.
 *
 * Valuations enter in two flavours. A valuation known exactly (v_2 of the
 * Frey curve when y is odd) is an ExactValuation; one known only modulo p
 * (anything picking up a (xyz)^{2p} contribution) is a ResidueModP, stored
 * as a fixed integer representative such as -2 for "2p - 2". The criterion
 * at 2 needs the valuation mod 3, so it only accepts exact valuations.
 */

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermatsym/ntkernel.hpp"

namespace fermatsym {

enum class SymplecticType { Symplectic, AntiSymplectic, Unknown };

const char* to_string(SymplecticType type);

/// (n/p) = sign for the exponent prime p.
struct QRConstraint {
  Int n;     ///< squarefree, nonzero
  int sign;  ///< +1 or -1

  /// Reduces @p value to its squarefree part; throws on 0 or a bad sign.
  static QRConstraint of(const Int& value, int sign);

  QRConstraint negated() const { return {n, -sign}; }
  std::string to_string() const;

  bool operator==(const QRConstraint&) const = default;
  std::strong_ordering operator<=>(const QRConstraint& other) const {
    if (n != other.n) return n < other.n ? std::strong_ordering::less : std::strong_ordering::greater;
    return sign <=> other.sign;
  }
};

struct Verdict {
  enum class Kind { Constraint, AlwaysConsistent, Contradiction };

  Kind kind = Kind::AlwaysConsistent;
  std::optional<QRConstraint> constraint;

  bool operator==(const Verdict&) const = default;
};

std::string to_string(const Verdict& verdict);

struct ExactValuation {
  Int value;
};

struct ResidueModP {
  Int value;
};

/// The 2-adic data one curve brings to the criterion at 2.
struct TwoAdicSide {
  std::optional<ExactValuation> v2;
  bool sl2f3_inertia = false;
};

/**
 * Criterion at 2 for curves whose inertia field at 2 has group SL2(F3).
 *
 * (2/p) = 1 always gives Symplectic; (2/p) = -1 gives Symplectic exactly
 * when the two discriminant valuations agree mod 3.
 */
SymplecticType criterion_at_two(ExactValuation v2_frey, ExactValuation v2_candidate, int legendre_2_p);

/// Checked form: throws std::invalid_argument if a side lacks the SL2(F3)
/// flag or its exact valuation.
SymplecticType criterion_at_two(const TwoAdicSide& frey, const TwoAdicSide& candidate, int legendre_2_p);

/**
 * Criterion at a prime of multiplicative reduction: the isomorphism is
 * symplectic iff v/v_cand is a square mod p.
 *
 * Returns nullopt for SymplecticType::Unknown. Throws std::invalid_argument
 * when a residue is 0 (the criterion does not apply).
 */
std::optional<Verdict> criterion_multiplicative(ResidueModP v, ResidueModP v_candidate, SymplecticType type);

using PrimeResidues = std::vector<std::pair<Int, ResidueModP>>;

/**
 * Type-free comparison over pairs of shared multiplicative primes: for each
 * pair the products v_l1 v_l2 and v'_l1 v'_l2 differ by a square mod p.
 *
 * One constraint per unordered pair in increasing prime order; redundant
 * constraints are kept. Throws std::invalid_argument with fewer than two
 * shared primes or a zero residue.
 */
std::vector<QRConstraint> pairwise_consistency(const PrimeResidues& profile, const PrimeResidues& candidate);

}  // namespace fermatsym
