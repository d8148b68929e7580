#pragma once

/**
 * @file freypipe.hpp
 * @brief End-to-end elimination engine for a x^p + b y^p + c z^p = 0.
 *
 * For each parity case of a putative primitive solution the Frey curve has
 * a known discriminant profile and its mod-p representation lowers to a
 * known level. Every candidate curve at that level is compared with the
 * Frey curve through the symplectic criteria; the conditions on p under
 * which all candidates are contradicted, in every parity case, give the
 * exponents for which the equation has no nontrivial solution.
 *
 * Level lowering and the discriminant profiles are data. Two equations are
 * embedded; others come from a scenario file, one case per line:
 *
 *     a,b,c | parity | level | profile | two | candidates | floor
 *     3,8,21 | y_odd | 168 | 2:=10,3:-2,7:2 | sl2f3 | 168a1,168b1 | >7
 *
 * parity is `y_odd` or `y_even`. A profile entry `ell:=v` is an exact
 * valuation v, `ell:r` a valuation known only as r mod p. `two` describes
 * the Frey curve at 2: `sl2f3` (additive, SL2(F3) inertia) or `mult`.
 * candidates must be the curves of conductor `level` in the curve database.
 * floor is the exponent bound of the statement, `>N` or `>=N`.
 */

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fermatsym/curvedb.hpp"
#include "fermatsym/qrsolver.hpp"
#include "fermatsym/symplectic.hpp"

namespace fermatsym {

struct ProfileEntry {
  Int residue_mod_p;
  std::optional<Int> exact;
};

using ValuationProfile = std::map<Int, ProfileEntry>;

enum class Parity { YOdd, YEven };
enum class FreyAtTwo { Multiplicative, Sl2f3Additive };

const char* to_string(Parity parity);

struct ExponentFloor {
  Int bound;
  bool strict = true;

  bool admits(const Int& p) const { return strict ? p > bound : p >= bound; }
  std::string to_string() const;
};

struct Equation {
  Int a, b, c;

  bool operator==(const Equation&) const = default;
  std::string to_string() const;
};

struct FreyScenario {
  Equation equation;
  Parity parity = Parity::YOdd;
  ValuationProfile profile;
  FreyAtTwo at_two = FreyAtTwo::Multiplicative;
  Int lowered_level;
  std::vector<std::string> candidates;
  ExponentFloor floor;
};

/// Embedded and file-supplied scenarios, keyed by equation.
class ScenarioBook {
 public:
  static ScenarioBook embedded();

  void load(std::istream& in, std::string_view source = "<scenarios>");
  void load_file(const std::filesystem::path& path);

  /// Throws DataError when the equation has no scenarios.
  std::vector<FreyScenario> for_equation(const Equation& eq) const;
  bool knows(const Equation& eq) const;

 private:
  std::vector<FreyScenario> scenarios_;
};

FreyScenario parse_scenario_line(std::string_view line);

/// Scenarios for (a, b, c); candidates are checked against @p db.
std::vector<FreyScenario> scenarios(const Equation& eq, const ScenarioBook& book, const CurveDatabase& db);

struct PrimeVerdict {
  Int ell;
  Verdict verdict;
};

struct BranchReport {
  int legendre_2 = 1;  ///< the assumed value of (2/p)
  SymplecticType type = SymplecticType::Unknown;
  std::vector<PrimeVerdict> verdicts;
  /// Constraints after substituting the assumed (2/p) and simplifying.
  SimplifyResult residual;
  bool eliminated = false;  ///< residual is contradictory
};

enum class CaseRoute { Sl2f3AtTwo, Pairwise, NoInformation };

const char* to_string(CaseRoute route);

/// Outcome of comparing one scenario with one candidate.
struct CaseReport {
  Parity parity = Parity::YOdd;
  Int level;
  std::string candidate;
  CaseRoute route = CaseRoute::NoInformation;
  std::vector<BranchReport> branches;          ///< Sl2f3AtTwo route
  std::vector<QRConstraint> pairwise;          ///< Pairwise route, raw
  SimplifyResult pairwise_simplified;          ///< Pairwise route
  /// Condition on p under which this candidate is contradicted.
  SignExpr condition = SignExpr::never();
};

/**
 * Compare a scenario with a candidate.
 *
 * SL2(F3) route: for each sign of (2/p) the criterion at 2 fixes the
 * symplectic type and every shared odd multiplicative prime yields a
 * verdict. Pairwise route: both curves multiplicative at every shared prime.
 * The condition is the disjunction, over branches, of constraint violations.
 */
CaseReport run_case(const FreyScenario& scenario, const CurveRecord& candidate);

struct EquationReport {
  Equation equation;
  ExponentFloor floor;
  std::vector<CaseReport> cases;
  SignExpr condition = SignExpr::never();
  CongruenceClassSet classes = CongruenceClassSet::empty();
  Rational density;
};

/// Conjunction over scenarios and candidates of run_case, then to classes.
EquationReport run_equation(const Equation& eq, const ScenarioBook& book, const CurveDatabase& db);

/// Same, over an explicit scenario list (used to study sub-sets of cases).
EquationReport run_scenarios(const Equation& eq, const std::vector<FreyScenario>& list, const CurveDatabase& db);

}  // namespace fermatsym
