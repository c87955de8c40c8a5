#pragma once

// JSON encodings shared by the CLI and the golden tests. Doubles are written
// with 17 significant digits so that parsing the output reproduces every value
// bit for bit.

#include <string>
#include <string_view>

#include "json.hpp"

#include "hilproj/bochner.hpp"
#include "hilproj/convex_set.hpp"
#include "hilproj/derivative.hpp"
#include "hilproj/oracle.hpp"

namespace hilproj::json_io {

using json = nlohmann::ordered_json;

/// Compact by default; pretty uses two-space indentation.
std::string dump(const json& j, bool pretty = false);

/// Inline JSON when the argument starts with '{' or '[', otherwise a file
/// path. Throws ParseError.
json load_payload(std::string_view arg);

json to_json(const HilbertPoint& x);
json to_json(const DiscreteProbabilitySpace& space);
json to_json(const BochnerFunction& f);
json to_json(const ConvexSet& set);
json to_json(const DerivativeResult& r);
json to_json(const OracleEstimate& e);
json to_json(const PropertyRecord& r);
json to_json(const BatteryReport& r);
json to_json(const OrthonormalSystemReport& r);

/// {"coeffs":[...], "weights":[...]?}
HilbertPoint point_from_json(const json& j);
DiscreteProbabilitySpace space_from_json(const json& j);
BochnerFunction function_from_json(const json& j);
ConvexSet set_from_json(const json& j);

/// A HilbertPoint, or a Bochner function which is flattened.
HilbertPoint point_or_function_from_json(const json& j);

}  // namespace hilproj::json_io
