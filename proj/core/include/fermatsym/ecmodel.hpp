#pragma once

/**
 * @file ecmodel.hpp
 * @brief Weierstrass-model formulary.
 *
 * Invariants, coordinate changes and global minimal models for
 * y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z. This is the oracle
 * layer the curve database is checked against; it is written for clarity
 * over speed.
 */

#include <map>
#include <stdexcept>

#include "fermatsym/ntkernel.hpp"

namespace fermatsym {

class DegenerateModel : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NonIntegralModel : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct WeierstrassModel {
  Int a1, a2, a3, a4, a6;

  bool operator==(const WeierstrassModel&) const = default;
};

std::string to_string(const WeierstrassModel& model);

struct Invariants {
  Int b2, b4, b6, b8;
  Int c4, c6;
  Int delta;
  /// j = j_num / j_den in lowest terms with j_den > 0.
  Int j_num, j_den;
};

/// Throws DegenerateModel when the discriminant vanishes.
Invariants invariants(const WeierstrassModel& model);

/**
 * x = u^2 x' + r,  y = u^3 y' + u^2 s x' + t.
 *
 * Rational so that inverses and scalings by 1/u are representable; the
 * transformed model must still be integral.
 */
struct CoordinateChange {
  Rational u{1}, r{0}, s{0}, t{0};

  /// Applying *this and then @p next equals applying compose(next).
  CoordinateChange compose(const CoordinateChange& next) const;
  CoordinateChange inverse() const;

  bool operator==(const CoordinateChange&) const = default;
};

/// Throws NonIntegralModel if any new coefficient is not an integer.
WeierstrassModel transform(const WeierstrassModel& model, const CoordinateChange& change);

enum class Reduction { Good, Multiplicative, Additive };

struct ReductionType {
  Reduction kind = Reduction::Good;
  bool potentially_good = true;

  bool operator==(const ReductionType&) const = default;
};

const char* to_string(Reduction kind);

struct MinimalModel {
  /// Global minimal model in reduced form (a1, a3 in {0,1}; a2 in {-1,0,1}).
  WeierstrassModel model;
  Invariants inv;
  int disc_sign = 1;
  std::map<Int, unsigned> disc_valuations;
};

/**
 * Global minimal model.
 *
 * A prime can only be non-minimal if ell^12 divides the discriminant. For
 * ell = 2, 3 the reducing transform is found by exhaustive search over
 * r mod ell^2, s mod ell, t mod ell^3; for ell >= 5 it is constructed
 * directly from the completed-square normal form.
 */
MinimalModel minimal_model(const WeierstrassModel& model);

/// Classification at ell; @p minimal must be minimal at ell.
ReductionType reduction_type(const WeierstrassModel& minimal, const Int& ell);

}  // namespace fermatsym
