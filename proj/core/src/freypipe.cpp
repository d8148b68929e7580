#include "fermatsym/freypipe.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "text_util.hpp"

namespace fermatsym {

namespace {

// Frey-curve discriminants: 2^10 3^{2p-2} 7^2 (xyz)^{2p} (y odd) and
// 2^{-2} 3^{2p-2} 7^2 (xyz)^{2p} (y even) for 3,8,21; 2^8 3^2 5^2 (xyz)^{2p}
// and 2^{-4} 3^2 5^2 (xyz)^{2p} for 3,4,5. Negative exponents of 2 stand
// for 2p*v_2(y) minus that amount, so only the residue mod p is known.
constexpr std::string_view kEmbeddedScenarios = R"(
3,8,21 | y_odd  | 168 | 2:=10,3:-2,7:2 | sl2f3 | 168a1,168b1 | >7
3,8,21 | y_even | 42  | 2:-2,3:-2,7:2  | mult  | 42a1        | >7
3,4,5  | y_odd  | 120 | 2:=8,3:2,5:2   | sl2f3 | 120a1,120b1 | >=5
3,4,5  | y_even | 30  | 2:-4,3:2,5:2   | mult  | 30a1        | >=5
)";

Equation parse_equation(std::string_view s) {
  const auto parts = detail::split(s, ',');
  if (parts.size() != 3) throw DataError("equation must be written a,b,c");
  Equation eq{detail::parse_int(parts[0]), detail::parse_int(parts[1]), detail::parse_int(parts[2])};
  if (eq.a == 0 || eq.b == 0 || eq.c == 0) throw DataError("equation coefficients must be nonzero");
  return eq;
}

ExponentFloor parse_floor(std::string_view s) {
  if (s.starts_with(">=")) return {detail::parse_int(s.substr(2)), false};
  if (s.starts_with(">")) return {detail::parse_int(s.substr(1)), true};
  throw DataError("floor must be >N or >=N, got '" + std::string(s) + "'");
}

}  // namespace

const char* to_string(Parity parity) { return parity == Parity::YOdd ? "y_odd" : "y_even"; }

const char* to_string(CaseRoute route) {
  switch (route) {
    case CaseRoute::Sl2f3AtTwo:
      return "sl2f3_at_2";
    case CaseRoute::Pairwise:
      return "pairwise";
    case CaseRoute::NoInformation:
      return "no_information";
  }
  return "?";
}

std::string ExponentFloor::to_string() const { return std::string("p ") + (strict ? "> " : "≥ ") + bound.str(); }

std::string Equation::to_string() const { return a.str() + "," + b.str() + "," + c.str(); }

FreyScenario parse_scenario_line(std::string_view line) {
  const auto cols = detail::split(line, '|');
  if (cols.size() != 7) throw DataError("expected 7 '|'-separated columns, got " + std::to_string(cols.size()));
  FreyScenario s;
  try {
    s.equation = parse_equation(cols[0]);
    if (cols[1] == "y_odd") {
      s.parity = Parity::YOdd;
    } else if (cols[1] == "y_even") {
      s.parity = Parity::YEven;
    } else {
      throw DataError("parity must be y_odd or y_even");
    }
    s.lowered_level = detail::parse_int(cols[2]);
    if (s.lowered_level < 1) throw DataError("level must be positive");
    for (auto entry : detail::split(cols[3], ',')) {
      const auto colon = entry.find(':');
      if (colon == std::string_view::npos) throw DataError("profile entry must be ell:r or ell:=v");
      const Int ell = detail::parse_int(entry.substr(0, colon));
      if (!is_prime(ell)) throw DataError("profile prime " + ell.str() + " is not prime");
      auto value = detail::trim(entry.substr(colon + 1));
      ProfileEntry pe;
      if (value.starts_with("=")) {
        pe.exact = detail::parse_int(value.substr(1));
        pe.residue_mod_p = *pe.exact;
      } else {
        pe.residue_mod_p = detail::parse_int(value);
      }
      if (!s.profile.emplace(ell, pe).second) throw DataError("duplicate profile prime " + ell.str());
    }
    if (cols[4] == "sl2f3") {
      s.at_two = FreyAtTwo::Sl2f3Additive;
    } else if (cols[4] == "mult") {
      s.at_two = FreyAtTwo::Multiplicative;
    } else {
      throw DataError("two must be sl2f3 or mult");
    }
    for (auto label : detail::split(cols[5], ',')) {
      if (label.empty()) throw DataError("empty candidate label");
      s.candidates.emplace_back(label);
    }
    s.floor = parse_floor(cols[6]);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  return s;
}

ScenarioBook ScenarioBook::embedded() {
  ScenarioBook book;
  std::istringstream in{std::string(kEmbeddedScenarios)};
  book.load(in, "<embedded>");
  return book;
}

void ScenarioBook::load(std::istream& in, std::string_view source) {
  std::vector<FreyScenario> parsed;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::strip_comment(line);
    if (body.empty()) continue;
    try {
      parsed.push_back(parse_scenario_line(body));
    } catch (const DataError& e) {
      throw DataError(std::string(source) + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  // A file's cases for an equation replace any earlier ones for that equation.
  for (const auto& s : parsed) {
    std::erase_if(scenarios_, [&](const FreyScenario& old) { return old.equation == s.equation; });
  }
  scenarios_.insert(scenarios_.end(), parsed.begin(), parsed.end());
}

void ScenarioBook::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open scenario file " + path.string());
  load(in, path.string());
}

bool ScenarioBook::knows(const Equation& eq) const {
  return std::any_of(scenarios_.begin(), scenarios_.end(), [&](const FreyScenario& s) { return s.equation == eq; });
}

std::vector<FreyScenario> ScenarioBook::for_equation(const Equation& eq) const {
  std::vector<FreyScenario> out;
  for (const auto& s : scenarios_) {
    if (s.equation == eq) out.push_back(s);
  }
  if (out.empty())
    throw DataError("no scenario for equation " + eq.to_string() +
                    "; supply a scenario file (--scenarios) describing its Frey curves");
  return out;
}

std::vector<FreyScenario> scenarios(const Equation& eq, const ScenarioBook& book, const CurveDatabase& db) {
  auto list = book.for_equation(eq);
  for (const auto& s : list) {
    std::set<std::string> expected;
    for (const auto& rec : db.candidates_for_level(s.lowered_level)) expected.insert(rec.label);
    const std::set<std::string> given(s.candidates.begin(), s.candidates.end());
    if (given != expected)
      throw DataError("scenario " + eq.to_string() + " " + to_string(s.parity) + ": candidates differ from the " +
                      "curves of conductor " + s.lowered_level.str() + " in the database");
  }
  return list;
}

CaseReport run_case(const FreyScenario& scenario, const CurveRecord& candidate) {
  CaseReport report;
  report.parity = scenario.parity;
  report.level = scenario.lowered_level;
  report.candidate = candidate.label;

  const bool frey_sl2 = scenario.at_two == FreyAtTwo::Sl2f3Additive;
  const bool cand_sl2 = candidate.inertia_sl2f3_at_2;

  // Odd (and, on the pairwise route, even) primes where both curves are
  // multiplicative and the Frey valuation is a unit mod p.
  PrimeResidues frey_res, cand_res;
  for (const auto& [ell, entry] : scenario.profile) {
    if (ell == 2 && frey_sl2) continue;
    const auto v = candidate.disc_valuations.find(ell);
    const auto red = candidate.reduction_at.find(ell);
    if (v == candidate.disc_valuations.end() || red == candidate.reduction_at.end()) continue;
    if (red->second.kind != Reduction::Multiplicative) continue;
    if (entry.residue_mod_p == 0) continue;
    frey_res.emplace_back(ell, ResidueModP{entry.residue_mod_p});
    cand_res.emplace_back(ell, ResidueModP{Int(v->second)});
  }

  if (frey_sl2 || cand_sl2) {
    if (frey_sl2 != cand_sl2)
      throw DataError("candidate " + candidate.label + " and the Frey curve have incompatible reduction at 2");
    const auto two = scenario.profile.find(2);
    if (two == scenario.profile.end() || !two->second.exact)
      throw DataError("the criterion at 2 needs the exact 2-adic valuation of the Frey discriminant");
    const auto cand_two = candidate.disc_valuations.find(2);
    if (cand_two == candidate.disc_valuations.end())
      throw DataError("candidate " + candidate.label + " has no 2-adic discriminant valuation");
    const TwoAdicSide frey_side{ExactValuation{*two->second.exact}, true};
    const TwoAdicSide cand_side{ExactValuation{Int(cand_two->second)}, true};

    report.route = CaseRoute::Sl2f3AtTwo;
    std::vector<SignExpr> terms;
    for (const int branch : {-1, 1}) {
      BranchReport br;
      br.legendre_2 = branch;
      br.type = criterion_at_two(frey_side, cand_side, branch);
      std::vector<QRConstraint> reduced;
      for (std::size_t i = 0; i < frey_res.size(); ++i) {
        const auto verdict = criterion_multiplicative(frey_res[i].second, cand_res[i].second, br.type);
        br.verdicts.push_back({frey_res[i].first, *verdict});
        QRConstraint c{1, 1};
        if (verdict->kind == Verdict::Kind::Constraint) c = *verdict->constraint;
        if (verdict->kind == Verdict::Kind::Contradiction) c = {1, -1};
        // Substitute the assumed value of (2/p).
        if (c.n % 2 == 0) c = {c.n / 2, c.sign * branch};
        reduced.push_back(c);
      }
      br.residual = simplify(reduced);
      br.eliminated = br.residual.contradiction;
      const SignExpr assumption = SignExpr::atom({2, branch});
      if (br.eliminated) {
        terms.push_back(assumption);
      } else if (!br.residual.constraints.empty()) {
        terms.push_back(SignExpr::all_of({assumption, violation_of(br.residual.constraints)}));
      }
      report.branches.push_back(std::move(br));
    }
    report.condition = SignExpr::any_of(std::move(terms));
    return report;
  }

  if (frey_res.size() < 2) {
    report.route = CaseRoute::NoInformation;
    report.condition = SignExpr::never();
    return report;
  }
  report.route = CaseRoute::Pairwise;
  report.pairwise = pairwise_consistency(frey_res, cand_res);
  report.pairwise_simplified = simplify(report.pairwise);
  report.condition = report.pairwise_simplified.contradiction ? SignExpr::always()
                                                              : violation_of(report.pairwise_simplified.constraints);
  return report;
}

EquationReport run_scenarios(const Equation& eq, const std::vector<FreyScenario>& list, const CurveDatabase& db) {
  EquationReport report;
  report.equation = eq;
  if (!list.empty()) report.floor = list.front().floor;
  std::vector<SignExpr> all;
  for (const auto& s : list) {
    for (const auto& label : s.candidates) {
      CaseReport cr = run_case(s, db.get(label));
      all.push_back(cr.condition);
      report.cases.push_back(std::move(cr));
    }
  }
  report.condition = SignExpr::all_of(std::move(all));
  report.classes = to_classes(report.condition);
  report.density = density(report.classes);
  return report;
}

EquationReport run_equation(const Equation& eq, const ScenarioBook& book, const CurveDatabase& db) {
  return run_scenarios(eq, scenarios(eq, book, db), db);
}

}  // namespace fermatsym
