#include "fermatsym/curvedb.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "text_util.hpp"

namespace fermatsym {

namespace {

// Discriminants and conductors as printed in Cremona's tables; the
// SL2(F3)-inertia column is the axiom for the conductor 120 and 168 classes.
constexpr std::string_view kEmbeddedCurves = R"(
# label | N   | sign | disc valuations | red2   | sl2f3 | minimal model
42a1    | 42  | -    | 2:8,3:2,7:1     | mult   | no    | [1,1,1,-4,5]
168a1   | 168 | +    | 2:4,3:1,7:1     | add-pg | yes   | [0,1,0,-7,-10]
168b1   | 168 | -    | 2:4,3:3,7:4     | add-pg | yes   | [0,-1,0,-7,52]
30a1    | 30  | -    | 2:4,3:3,5:1     | mult   | no    | [1,0,1,1,2]
120a1   | 120 | +    | 2:4,3:2,5:1     | add-pg | yes   | [0,1,0,-15,18]
120b1   | 120 | -    | 2:8,3:1,5:1     | add-pg | yes   | [0,1,0,4,0]
)";

ReductionType parse_red2(std::string_view s) {
  if (s == "good") return {Reduction::Good, true};
  if (s == "mult") return {Reduction::Multiplicative, false};
  if (s == "add") return {Reduction::Additive, false};
  if (s == "add-pg") return {Reduction::Additive, true};
  throw DataError("unknown reduction type '" + std::string(s) + "' (expected good, mult, add, add-pg)");
}

bool parse_flag(std::string_view s) {
  if (s == "yes" || s == "true" || s == "1") return true;
  if (s == "no" || s == "false" || s == "0") return false;
  throw DataError("expected yes/no, got '" + std::string(s) + "'");
}

int parse_sign(std::string_view s) {
  if (s == "+" || s == "+1" || s == "1") return 1;
  if (s == "-" || s == "-1") return -1;
  throw DataError("expected a sign (+ or -), got '" + std::string(s) + "'");
}

std::optional<WeierstrassModel> parse_model(std::string_view s) {
  if (s.empty() || s == "-") return std::nullopt;
  if (s.front() != '[' || s.back() != ']') throw DataError("model must be written [a1,a2,a3,a4,a6]");
  const auto parts = detail::split(s.substr(1, s.size() - 2), ',');
  if (parts.size() != 5) throw DataError("model must have exactly five coefficients");
  return WeierstrassModel{detail::parse_int(parts[0]), detail::parse_int(parts[1]), detail::parse_int(parts[2]),
                          detail::parse_int(parts[3]), detail::parse_int(parts[4])};
}

}  // namespace

Int CurveRecord::discriminant() const {
  Int d = disc_sign;
  for (const auto& [ell, v] : disc_valuations) d *= boost::multiprecision::pow(ell, v);
  return d;
}

void CurveRecord::validate() const {
  if (conductor < 1) throw DataError(label + ": conductor must be positive");
  if (disc_sign != 1 && disc_sign != -1) throw DataError(label + ": discriminant sign must be +1 or -1");
  std::set<Int> conductor_primes;
  for (const auto& [prime, e] : factor_small(conductor).factors) conductor_primes.insert(prime);
  std::set<Int> disc_primes;
  for (const auto& [prime, v] : disc_valuations) {
    if (!is_prime(prime)) throw DataError(label + ": " + prime.str() + " is not prime");
    if (v > 0) disc_primes.insert(prime);
  }
  if (disc_primes != conductor_primes)
    throw DataError(label + ": discriminant primes differ from the primes dividing the conductor");
  if (inertia_sl2f3_at_2) {
    const auto it = reduction_at.find(2);
    if (it == reduction_at.end() || it->second.kind != Reduction::Additive || !it->second.potentially_good)
      throw DataError(label + ": SL2(F3) inertia at 2 requires additive, potentially good reduction at 2");
  }
}

const char* to_string(VerificationReport::Status status) {
  switch (status) {
    case VerificationReport::Status::Confirmed:
      return "confirmed";
    case VerificationReport::Status::Mismatch:
      return "mismatch";
    case VerificationReport::Status::Unverifiable:
      return "unverifiable";
  }
  return "?";
}

VerificationReport verify(const CurveRecord& record) {
  VerificationReport report;
  if (!record.model) return report;
  const MinimalModel mm = minimal_model(*record.model);
  std::set<Int> bad;
  if (mm.disc_sign != record.disc_sign) report.mismatched_fields.push_back("disc_sign");
  std::set<Int> primes;
  for (const auto& [ell, v] : mm.disc_valuations) primes.insert(ell);
  for (const auto& [ell, v] : record.disc_valuations) primes.insert(ell);
  for (const Int& ell : primes) {
    const auto computed = mm.disc_valuations.find(ell);
    const auto claimed = record.disc_valuations.find(ell);
    const unsigned vc = computed == mm.disc_valuations.end() ? 0 : computed->second;
    const unsigned vr = claimed == record.disc_valuations.end() ? 0 : claimed->second;
    if (vc != vr) {
      report.mismatched_fields.push_back("v_" + ell.str());
      bad.insert(ell);
    }
  }
  for (const auto& [ell, claimed] : record.reduction_at) {
    if (reduction_type(mm.model, ell) != claimed) {
      report.mismatched_fields.push_back("reduction_at_" + ell.str());
      bad.insert(ell);
    }
  }
  report.mismatched_primes.assign(bad.begin(), bad.end());
  report.status = report.mismatched_fields.empty() ? VerificationReport::Status::Confirmed
                                                   : VerificationReport::Status::Mismatch;
  return report;
}

CurveRecord parse_curve_line(std::string_view line) {
  const auto cols = detail::split(line, '|');
  if (cols.size() != 7) throw DataError("expected 7 '|'-separated columns, got " + std::to_string(cols.size()));
  CurveRecord rec;
  rec.label = std::string(cols[0]);
  if (rec.label.empty()) throw DataError("empty label");
  try {
    rec.conductor = detail::parse_int(cols[1]);
    rec.disc_sign = parse_sign(cols[2]);
    if (!cols[3].empty()) {
      for (auto entry : detail::split(cols[3], ',')) {
        const auto colon = entry.find(':');
        if (colon == std::string_view::npos) throw DataError("valuation entry must be ell:v");
        const Int ell = detail::parse_int(entry.substr(0, colon));
        const Int v = detail::parse_int(entry.substr(colon + 1));
        if (v < 0) throw DataError("negative valuation");
        rec.disc_valuations[ell] = static_cast<unsigned>(v);
      }
    }
    const ReductionType red2 = parse_red2(cols[4]);
    rec.inertia_sl2f3_at_2 = parse_flag(cols[5]);
    rec.model = parse_model(cols[6]);

    for (const auto& [ell, e] : factor_small(rec.conductor).factors) {
      if (ell == 2) {
        rec.reduction_at[ell] = red2;
      } else if (e == 1) {
        rec.reduction_at[ell] = {Reduction::Multiplicative, false};
      } else {
        const bool pg = rec.model ? reduction_type(minimal_model(*rec.model).model, ell).potentially_good : false;
        rec.reduction_at[ell] = {Reduction::Additive, pg};
      }
    }
    const bool bad_at_two = rec.reduction_at.contains(2);
    if (bad_at_two == (red2.kind == Reduction::Good))
      throw DataError("red2 '" + std::string(cols[4]) + "' disagrees with the conductor at 2");
  } catch (const std::invalid_argument& e) {
    throw DataError(rec.label + ": " + e.what());
  }
  rec.validate();
  return rec;
}

CurveDatabase CurveDatabase::embedded() {
  CurveDatabase db;
  std::istringstream in{std::string(kEmbeddedCurves)};
  db.load_overrides(in, "<embedded>");
  return db;
}

void CurveDatabase::insert(CurveRecord record) {
  const std::string label = record.label;
  records_.insert_or_assign(label, std::move(record));
}

void CurveDatabase::load_overrides(std::istream& in, std::string_view source) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::strip_comment(line);
    if (body.empty()) continue;
    try {
      insert(parse_curve_line(body));
    } catch (const DataError& e) {
      throw DataError(std::string(source) + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void CurveDatabase::load_override_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open curve override file " + path.string());
  load_overrides(in, path.string());
}

const CurveRecord& CurveDatabase::get(std::string_view label) const {
  const auto it = records_.find(label);
  if (it == records_.end()) throw DataError("unknown label '" + std::string(label) + "'");
  return it->second;
}

bool CurveDatabase::contains(std::string_view label) const { return records_.find(label) != records_.end(); }

std::vector<CurveRecord> CurveDatabase::candidates_for_level(const Int& level) const {
  std::vector<CurveRecord> out;
  for (const auto& [label, rec] : records_) {
    if (rec.conductor == level) out.push_back(rec);
  }
  if (out.empty()) throw DataError("unknown level " + level.str() + ": no candidate curves recorded");
  return out;
}

std::vector<std::string> CurveDatabase::labels() const {
  std::vector<std::string> out;
  for (const auto& [label, rec] : records_) out.push_back(label);
  return out;
}

}  // namespace fermatsym
