#pragma once

/**
 * @file qrsolver.hpp
 * @brief Legendre-symbol conditions on an exponent prime p, and the
 * congruence classes of p they cut out.
 *
 * Constraint DSL (whitespace insensitive):
 *
 *     expr   := term ('|' term)*
 *     term   := factor ('&' factor)*
 *     factor := '!' factor | '(' expr ')' | atom
 *     atom   := '(' integer ')' '=' ('+1' | '-1' | '1')
 *
 * An atom (n)=s means (n/p) = s; n is replaced by its squarefree part on
 * parse. (1)=+1 and (1)=-1 serve as the constants true and false.
 */

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fermatsym/ntkernel.hpp"
#include "fermatsym/symplectic.hpp"

namespace fermatsym {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t column)
      : std::runtime_error(message + " at column " + std::to_string(column)), column_(column) {}

  /// 1-based column of the offending character (one past the end for EOF).
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Immutable Boolean expression over QRConstraint atoms.
class SignExpr {
 public:
  enum class Op { Atom, Not, And, Or };

  static SignExpr atom(QRConstraint constraint);
  static SignExpr always();  ///< (1)=+1
  static SignExpr never();   ///< (1)=-1
  static SignExpr negate(SignExpr operand);
  /// A single operand is returned unchanged; nested And nodes are flattened.
  static SignExpr all_of(std::vector<SignExpr> operands);
  static SignExpr any_of(std::vector<SignExpr> operands);

  Op op() const;
  const QRConstraint& constraint() const;  ///< Atom only
  const std::vector<SignExpr>& operands() const;

  /// Evaluate with a callback giving (n/p) for squarefree n.
  bool evaluate(const std::function<int(const Int&)>& symbol) const;
  void collect_atoms(std::vector<QRConstraint>& out) const;

  std::string to_string() const;

  bool operator==(const SignExpr& other) const;

 private:
  struct Node;
  explicit SignExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

SignExpr parse(std::string_view text);

/// Residues modulo M coprime to M, sorted ascending.
class CongruenceClassSet {
 public:
  CongruenceClassSet(Int modulus, std::vector<Int> residues);

  static CongruenceClassSet empty(Int modulus = 1);
  static CongruenceClassSet all(Int modulus = 1);

  const Int& modulus() const { return modulus_; }
  const std::vector<Int>& residues() const { return residues_; }
  bool is_empty() const { return residues_.empty(); }
  bool contains(const Int& r) const;

  /// Same set expressed modulo a multiple of the current modulus.
  CongruenceClassSet lift(const Int& new_modulus) const;
  /// Same set expressed modulo the smallest modulus that can express it.
  CongruenceClassSet canonical() const;

  CongruenceClassSet unite(const CongruenceClassSet& other) const;
  CongruenceClassSet intersect(const CongruenceClassSet& other) const;

  /// Disjoint cover by whole classes r mod d, d | M, smallest d first.
  std::vector<std::pair<Int, Int>> decompose() const;  // (residue, modulus)

  /// e.g. "p ≡ 5 (mod 8) or p ≡ 23 (mod 24)".
  std::string to_string() const;

  /// Compares canonical forms.
  bool operator==(const CongruenceClassSet& other) const;

 private:
  Int modulus_;
  std::vector<Int> residues_;
};

/**
 * Value of (q/p) for every prime p = r (mod M), q in {-1, 2} or an odd
 * prime. Needs 8 | M and q | M for odd q; throws std::invalid_argument when
 * the modulus cannot determine the symbol or gcd(r, M) != 1.
 */
int symbol_sign(const Int& q, const Int& r, const Int& modulus);

/// (n/p) for p = r (mod M) by multiplicativity over n's factorization.
int symbol_sign_composite(const Int& n, const Int& r, const Int& modulus);

/// Classes of p satisfying the expression, over M = 8 * (odd primes in atoms).
CongruenceClassSet to_classes(const SignExpr& expr);

/// |residues| / phi(M), exact.
Rational density(const CongruenceClassSet& set);

std::string to_string(const Rational& q);

struct SimplifyResult {
  bool contradiction = false;
  std::vector<QRConstraint> constraints;
};

/**
 * Remove constraints implied multiplicatively by the others and detect
 * inconsistency.
 *
 * Constraints are processed simplest first (fewest prime factors, then
 * smallest |n|), so the surviving set prefers small kernels; the result is
 * sorted by |n|, negative n first.
 */
SimplifyResult simplify(const std::vector<QRConstraint>& constraints);

/// The disjunction of the negated constraints (never() for an empty list).
SignExpr violation_of(const std::vector<QRConstraint>& constraints);

}  // namespace fermatsym
