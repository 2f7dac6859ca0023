#pragma once

#include "qnk/charvar.hpp"
#include "qnk/eqa.hpp"
#include "qnk/thetag.hpp"
#include "qnk/zlinalg.hpp"

#include <json.hpp>

namespace qnk {

using nlohmann::json;

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
json to_json(const BigInt& x);
json to_json(const NCF& f);
json to_json(cplx z);  // [re, im]
json to_json(const CVector& v);
json to_json(const EPoint& p);  // "a,b" with rational parts
json to_json(const CharVarReport& r);
json to_json(const GLatticeFn& f);
json to_json(const VerificationReport& r);
json to_json(const RelationSet& r);
json to_json(const PhiDescentReport& r);
json to_json(const PointModuleTable& t);

json error_object(const std::string& kind, const std::string& message);

WeightedGraph graph_from_json(const json& j);

}  // namespace qnk
