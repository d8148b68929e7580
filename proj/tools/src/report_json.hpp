#pragma once

// JSON views of core results. Integers that may exceed 64 bits are emitted
// as numbers when they fit and as decimal strings otherwise.

#include <json.hpp>

#include "fermatsym/curvedb.hpp"
#include "fermatsym/freypipe.hpp"
#include "fermatsym/localobs.hpp"

namespace fermatsym::cli {

using Json = nlohmann::ordered_json;

Json int_json(const Int& n);

Json to_json(const QRConstraint& c);
Json to_json(const CongruenceClassSet& classes);
Json to_json(const CaseReport& report);
Json to_json(const EquationReport& report);

Json to_json(const CurveRecord& record, const VerificationReport& verification);

Json to_json(const LocalResult& result);
Json to_json(const ObstructionReport& report);
Json to_json(const SweepEntry& entry);

}  // namespace fermatsym::cli
