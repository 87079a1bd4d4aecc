#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "critexp/bounds.hpp"
#include "critexp/candidates.hpp"
#include "critexp/optimizer.hpp"
#include "critexp/profiles.hpp"
#include "critexp/rearrange.hpp"
#include "critexp/transforms.hpp"

namespace critexp {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Finite doubles as numbers; +-infinity and NaN as the strings "inf", "-inf", "nan".
Json number(double x);

Json to_json(const QuadratureSpec& q);
Json to_json(const OptimizerConfig& cfg);
Json to_json(const RadialProfile& u);
Json to_json(const HalfLineProfile& w);
Json to_json(const FunctionalReport& r);
Json to_json(const IdentityReport& r);
Json to_json(const ScaledSswReport& r);
Json to_json(const ClosedFormValue& r);
Json to_json(const OptimizerResult& r);
Json to_json(const ProbeReport& r);
Json to_json(const RadialIdentityReport& r);
Json to_json(const AlphaStarReport& r);
Json to_json(const ExponentConvexityReport& r);
Json to_json(const PolyaSzegoReport& r);

/// {"schema": 1, "command": ..., "config": ..., "result": ...}
Json envelope(const std::string& command, Json config, Json result);

/// Flat table for CSV output. Cells are JSON scalars.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

void write_csv(std::ostream& out, const Table& t);
/// Two-column key,value table from the scalar leaves of a JSON object
/// (nested keys joined with '.'; arrays are skipped).
Table flatten(const Json& j);

}  // namespace critexp
