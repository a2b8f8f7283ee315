#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "roecalc/almost_isometry.hpp"
#include "roecalc/band.hpp"
#include "roecalc/feasibility.hpp"
#include "roecalc/metric_calculus.hpp"
#include "roecalc/operator.hpp"
#include "roecalc/order.hpp"
#include "roecalc/validation.hpp"

namespace roecalc {

using json = nlohmann::json;

/// Reports carry 12 significant digits so reruns diff cleanly.
double round12(double v);
/// round12 for finite values; null for infinities and NaN.
json number(double v);

// Schemas:
//   space:    {"points": [labels], "dist": [[row-major matrix]]}
//   glue:     {"left": space-or-ref, "right": space-or-ref, "cross": [[matrix]]}
//   map:      {"domain": ref, "codomain": ref, "pairs": [[x, y], ...]}
//   operator: {"source": ref, "target": ref, "entries": [[y, x, re, im], ...]}
// Wherever a space is expected, a catalog reference string is accepted too.
// Labels may be strings or integers. Schema problems throw SchemaError with a
// JSON pointer to the offending field.

json to_json(const FiniteMetricSpace& space);
json to_json(const GlueMetric& glue);
json to_json(const PartialMap& map);
json to_json(const Operator& op);

SpacePtr space_from_json(const json& j, const std::string& where = "");
GlueMetric glue_from_json(const json& j);
PartialMap map_from_json(const json& j);
Operator operator_from_json(const json& j);

/// Parses JSON text; syntax errors become SchemaError naming line and column.
json parse_json(const std::string& text, const std::string& source = "<input>");
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

template <class T>
struct Loaded {
  T value;
  ValidationReport report;
};

/// Loaded objects are re-validated; a failed validation is reported, not thrown.
Loaded<SpacePtr> load_space(const std::filesystem::path& path);
Loaded<GlueMetric> load_glue(const std::filesystem::path& path);
PartialMap load_map(const std::filesystem::path& path);
Operator load_operator(const std::filesystem::path& path);

json to_json(const ValidationReport& r);
json to_json(const DefectReport& r);
json to_json(const SandwichReport& r);
json to_json(const NearIdentityReport& r);
json to_json(const CloseMapFailure& r);
json to_json(const BandDecomposition& d, const GlueMetric* glue);
json to_json(const Factorization& f, const GlueMetric& g_xy, const GlueMetric& g_yz);
json to_json(const PropagationBoundReport& r);
json to_json(const DominationProfile& p);
json to_json(const OrderVerdict& v);
json to_json(const EquivalenceVerdict& v);
json to_json(const InvSemiReport& r);
json to_json(const UniformBoundReport& r);
json to_json(const ObstructionCertificate& c);
json to_json(const ClosePairMatching& m);
json to_json(const MaximalityReport& r);
json to_json(const std::vector<GrowthSample>& g);

/// "n,R,h" lines with a header, for external plotting.
std::string profile_csv(const DominationProfile& p);

}  // namespace roecalc
