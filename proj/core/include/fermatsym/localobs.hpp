#pragma once

/**
 * @file localobs.hpp
 * @brief Local solvability of a x^p + b y^p + c z^p = 0 over Q_ell.
 *
 * Three tools:
 *   - at good primes q = kp + 1 the p-th powers form a subgroup of F_q^x of
 *     order k, so a point over F_q (hence over Q_q) is found in O(k) steps;
 *   - at any prime, a search over primitive triples mod ell^n that stops as
 *     soon as a Hensel certificate holds;
 *   - the Weil bound, which makes every good prime above a cutoff solvable
 *     and turns "no obstruction" into a finite check.
 */

#include <array>
#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fermatsym/ntkernel.hpp"

namespace fermatsym {

struct DiagonalForm {
  Int a, b, c;
  Int p;  ///< the exponent, prime

  std::array<Int, 3> coefficients() const { return {a, b, c}; }
};

enum class LocalMethod { FastSubgroup, HenselDescent, WeilBound };
enum class Solvability { Solvable, Unsolvable, Undecided };

const char* to_string(LocalMethod method);
const char* to_string(Solvability status);

/**
 * A primitive triple with F(x) = 0 mod ell^k and
 * v_ell(dF/dx_i) = derivative_valuation, where 2 * derivative_valuation < k.
 * Hensel's lemma in the variable x_i then gives a point over Z_ell.
 */
struct LocalWitness {
  std::array<Int, 3> point;
  unsigned precision = 1;  ///< k
  unsigned lift_coordinate = 0;
  unsigned derivative_valuation = 0;
};

struct LocalResult {
  Solvability status = Solvability::Undecided;
  std::optional<LocalWitness> witness;
  LocalMethod method = LocalMethod::HenselDescent;
};

/// Independent check of a witness with exact integer arithmetic.
bool check_witness(const DiagonalForm& form, const Int& ell, const LocalWitness& witness);

/**
 * Existence of a projective point over F_q for q prime, q = 1 (mod p),
 * q not dividing p*a*b*c. Throws std::invalid_argument otherwise.
 */
bool solvable_mod_q_fast(const DiagonalForm& form, const Int& q);

/// As above, returning a point when one exists.
std::optional<std::array<Int, 3>> point_mod_q_fast(const DiagonalForm& form, const Int& q);

struct LocalSearchLimits {
  /// Maximum precision ell^k searched; 0 picks 2 * (v_ell(p*a*b*c) + 1) + 1.
  unsigned max_precision = 0;
  /// Budget on candidate triples examined before giving up as undecided.
  std::uint64_t max_work = 200'000'000;
};

/// Decide solvability over Q_ell. Never returns a wrong answer: if the
/// limits are hit the result is Undecided.
LocalResult solvable_over_Ql(const DiagonalForm& form, const Int& ell, const LocalSearchLimits& limits = {});

/// Smallest q0 with q + 1 - (p-1)(p-2) sqrt(q) > 0 for every q >= q0.
Int weil_cutoff(const Int& p);

struct ObstructionReport {
  DiagonalForm form;
  std::map<Int, LocalResult> per_prime;
  std::vector<Int> obstruction_primes;  ///< in the order they were found
  std::optional<Int> first_obstruction;
  LocalMethod method = LocalMethod::HenselDescent;  ///< how first_obstruction (or its absence) was settled
  bool certified_none = false;  ///< no obstruction anywhere, via the Weil cutoff
  Int weil_cutoff;              ///< 0 when the cutoff check was not run
  bool undecided = false;       ///< some prime was left undecided
};

struct ObstructionOptions {
  unsigned k_max = 200;
  /// Run the Weil-cutoff certification only when the cutoff is at most this.
  Int max_certified_cutoff = Int(50'000'000);
  /// Keep scanning after the first obstruction (collects every obstruction prime checked).
  bool collect_all = false;
};

/**
 * First local obstruction: bad primes ell | p*a*b*c, then q = kp + 1 for
 * even k <= k_max, then (if feasible) every good prime q = 1 (mod p) below
 * the Weil cutoff, which certifies that none exists.
 */
ObstructionReport has_local_obstruction(const DiagonalForm& form, const ObstructionOptions& options = {});

struct SweepEntry {
  Int p;
  std::optional<Int> obstruction;
  std::optional<unsigned> k;  ///< set when obstruction = k p + 1
  LocalMethod method = LocalMethod::FastSubgroup;
  bool undecided = false;
  double elapsed_ms = 0;
};

struct SweepOptions {
  unsigned k_max = 200;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

/**
 * For each prime p in [p_min, p_max]: the first prime q = kp + 1 (k even,
 * k <= k_max) with no point over F_q; failing that, the first bad prime
 * ell | p*a*b*c without a Q_ell point. Results are in increasing p order
 * regardless of the thread count.
 */
std::vector<SweepEntry> sweep(const Int& a, const Int& b, const Int& c, const Int& p_min, const Int& p_max,
                              const SweepOptions& options = {});

}  // namespace fermatsym
