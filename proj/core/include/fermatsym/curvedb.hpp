#pragma once

/**
 * @file curvedb.hpp
 * @brief Axiomatized elliptic-curve records indexed by Cremona label.
 *
 * The embedded records are the candidate curves at levels 30, 42, 120 and
 * 168. Discriminant data and Weierstrass models come from published tables;
 * the SL2(F3) inertia flag at 2 is an axiom, not something computed here.
 * verify() recomputes everything that can be recomputed from the model.
 *
 * Override file format, one record per line, `#` starts a comment:
 *
 *     label | conductor | sign | ell:v,ell:v,... | red2 | sl2f3 | [a1,a2,a3,a4,a6]
 *
 * sign is `+`/`-` (or `+1`/`-1`), red2 is one of `good`, `mult`, `add`,
 * `add-pg`, sl2f3 is `yes`/`no`, and the model column may be empty or `-`.
 * Reduction at odd primes follows from the conductor exponent (1 means
 * multiplicative, >= 2 additive); potential good reduction at odd additive
 * primes is taken from the model when one is given.
 */

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermatsym/ecmodel.hpp"

namespace fermatsym {

/// Unknown labels and levels, malformed data files.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CurveRecord {
  std::string label;
  Int conductor;
  int disc_sign = 1;
  std::map<Int, unsigned> disc_valuations;
  std::map<Int, ReductionType> reduction_at;
  bool inertia_sl2f3_at_2 = false;
  std::optional<WeierstrassModel> model;

  /// Throws DataError when the record's own invariants do not hold.
  void validate() const;
  Int discriminant() const;
};

struct VerificationReport {
  enum class Status { Confirmed, Mismatch, Unverifiable };

  Status status = Status::Unverifiable;
  /// Human-readable field names, e.g. "disc_sign", "v_7", "reduction_at_3".
  std::vector<std::string> mismatched_fields;
  /// Primes whose discriminant valuation or reduction type disagree.
  std::vector<Int> mismatched_primes;
};

const char* to_string(VerificationReport::Status status);

/// Diff a record against what ecmodel recomputes from its model.
VerificationReport verify(const CurveRecord& record);

class CurveDatabase {
 public:
  /// The six embedded records.
  static CurveDatabase embedded();

  /// Add or replace records from an override stream; @p source names it in errors.
  void load_overrides(std::istream& in, std::string_view source = "<overrides>");
  void load_override_file(const std::filesystem::path& path);

  const CurveRecord& get(std::string_view label) const;
  bool contains(std::string_view label) const;
  /// Records of conductor N sorted by label; DataError for unknown levels.
  std::vector<CurveRecord> candidates_for_level(const Int& level) const;

  std::vector<std::string> labels() const;

 private:
  void insert(CurveRecord record);

  std::map<std::string, CurveRecord, std::less<>> records_;
};

/// Parse one override line (without comment); exposed for tests.
CurveRecord parse_curve_line(std::string_view line);

}  // namespace fermatsym
