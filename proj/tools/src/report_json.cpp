#include "report_json.hpp"

#include <limits>

namespace fermatsym::cli {

Json int_json(const Int& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(n);
  return n.str();
}

Json to_json(const QRConstraint& c) { return Json{{"n", int_json(c.n)}, {"sign", c.sign}}; }

Json to_json(const CongruenceClassSet& classes) {
  const auto canon = classes.canonical();
  Json residues = Json::array();
  for (const auto& r : canon.residues()) residues.push_back(int_json(r));
  Json decomposed = Json::array();
  for (const auto& [r, m] : canon.decompose()) decomposed.push_back(Json{{"residue", int_json(r)}, {"modulus", int_json(m)}});
  return Json{{"modulus", int_json(canon.modulus())}, {"residues", residues}, {"classes", decomposed}};
}

namespace {

Json constraints_json(const std::vector<QRConstraint>& list) {
  Json out = Json::array();
  for (const auto& c : list) out.push_back(to_json(c));
  return out;
}

Json verdict_json(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Constraint:
      return Json{{"kind", "constraint"}, {"constraint", to_json(*v.constraint)}};
    case Verdict::Kind::AlwaysConsistent:
      return Json{{"kind", "always_consistent"}};
    case Verdict::Kind::Contradiction:
      return Json{{"kind", "contradiction"}};
  }
  return nullptr;
}

Json witness_json(const LocalWitness& w) {
  Json point = Json::array();
  for (const auto& x : w.point) point.push_back(int_json(x));
  return Json{{"point", point},
              {"precision", w.precision},
              {"lift_coordinate", w.lift_coordinate},
              {"derivative_valuation", w.derivative_valuation}};
}

}  // namespace

Json to_json(const CaseReport& report) {
  Json j{{"parity", to_string(report.parity)},
         {"level", int_json(report.level)},
         {"candidate", report.candidate},
         {"route", to_string(report.route)}};
  if (report.route == CaseRoute::Sl2f3AtTwo) {
    Json branches = Json::array();
    for (const auto& br : report.branches) {
      Json verdicts = Json::array();
      for (const auto& pv : br.verdicts) verdicts.push_back(Json{{"ell", int_json(pv.ell)}, {"verdict", verdict_json(pv.verdict)}});
      branches.push_back(Json{{"legendre_2", br.legendre_2},
                              {"type", to_string(br.type)},
                              {"verdicts", verdicts},
                              {"residual", constraints_json(br.residual.constraints)},
                              {"eliminated", br.eliminated}});
    }
    j["branches"] = branches;
  }
  if (report.route == CaseRoute::Pairwise) {
    j["pairwise"] = constraints_json(report.pairwise);
    j["pairwise_simplified"] = constraints_json(report.pairwise_simplified.constraints);
    j["pairwise_contradiction"] = report.pairwise_simplified.contradiction;
  }
  j["condition"] = report.condition.to_string();
  return j;
}

Json to_json(const EquationReport& report) {
  Json cases = Json::array();
  for (const auto& c : report.cases) cases.push_back(to_json(c));
  return Json{{"equation", {int_json(report.equation.a), int_json(report.equation.b), int_json(report.equation.c)}},
              {"floor", {{"bound", int_json(report.floor.bound)}, {"strict", report.floor.strict}}},
              {"cases", cases},
              {"condition", report.condition.to_string()},
              {"classes", to_json(report.classes)},
              {"density", to_string(report.density)},
              {"summary", report.classes.to_string()}};
}

Json to_json(const CurveRecord& record, const VerificationReport& verification) {
  Json valuations = Json::object();
  for (const auto& [ell, v] : record.disc_valuations) valuations[ell.str()] = v;
  Json reduction = Json::object();
  for (const auto& [ell, r] : record.reduction_at)
    reduction[ell.str()] = Json{{"kind", to_string(r.kind)}, {"potentially_good", r.potentially_good}};
  Json mismatched = Json::array();
  for (const auto& f : verification.mismatched_fields) mismatched.push_back(f);
  return Json{{"label", record.label},
              {"conductor", int_json(record.conductor)},
              {"disc_sign", record.disc_sign},
              {"disc_valuations", valuations},
              {"discriminant", int_json(record.discriminant())},
              {"reduction", reduction},
              {"inertia_sl2f3_at_2", record.inertia_sl2f3_at_2},
              {"model", record.model ? Json(to_string(*record.model)) : Json(nullptr)},
              {"verification", {{"status", to_string(verification.status)}, {"mismatched_fields", mismatched}}}};
}

Json to_json(const LocalResult& result) {
  return Json{{"status", to_string(result.status)},
              {"solvable", result.status == Solvability::Unsolvable ? Json(false)
                           : result.status == Solvability::Solvable ? Json(true)
                                                                    : Json(nullptr)},
              {"method", to_string(result.method)},
              {"witness", result.witness ? witness_json(*result.witness) : Json(nullptr)}};
}

Json to_json(const ObstructionReport& report) {
  Json per_prime = Json::object();
  for (const auto& [ell, r] : report.per_prime) per_prime[ell.str()] = to_json(r);
  Json obstructions = Json::array();
  for (const auto& q : report.obstruction_primes) obstructions.push_back(int_json(q));
  return Json{{"equation", {int_json(report.form.a), int_json(report.form.b), int_json(report.form.c)}},
              {"p", int_json(report.form.p)},
              {"obstruction", report.first_obstruction ? int_json(*report.first_obstruction) : Json(nullptr)},
              {"method", to_string(report.method)},
              {"obstruction_primes", obstructions},
              {"certified_none", report.certified_none},
              {"weil_cutoff", report.weil_cutoff == 0 ? Json(nullptr) : int_json(report.weil_cutoff)},
              {"undecided", report.undecided},
              {"per_prime", per_prime}};
}

Json to_json(const SweepEntry& entry) {
  return Json{{"p", int_json(entry.p)},
              {"obstruction", entry.obstruction ? int_json(*entry.obstruction) : Json(nullptr)},
              {"k", entry.k ? Json(*entry.k) : Json(nullptr)},
              {"method", entry.obstruction ? Json(to_string(entry.method)) : Json(nullptr)},
              {"undecided", entry.undecided},
              {"elapsed_ms", entry.elapsed_ms}};
}

}  // namespace fermatsym::cli
