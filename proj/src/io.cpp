#include "roecalc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "roecalc/catalog.hpp"
#include "roecalc/errors.hpp"

namespace roecalc {

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

namespace {

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (double v : m.row(r)) row.push_back(number(v));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string pointer(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string pointer(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where.empty() ? "/" : where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(pointer(where, key), "missing field");
  return *it;
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) known = known || it.key() == a;
    if (!known) throw SchemaError(pointer(where, it.key()), "unknown field");
  }
}

Label label_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw SchemaError(where, "label must be a string or an integer");
}

double number_from_json(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(where, "number is not finite");
  return v;
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected an array of rows");
  if (j.size() != rows) {
    throw SchemaError(where, "has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string at = pointer(where, r);
    const json& row = j[r];
    if (!row.is_array()) throw SchemaError(at, "row " + std::to_string(r) + " is not an array");
    if (row.size() != cols) {
      throw SchemaError(at, "row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                " entries, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = number_from_json(row[c], pointer(at, c));
  }
  return m;
}

template <class F>
auto rethrow_structural(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const StructuralError& e) {
    throw SchemaError(where.empty() ? "/" : where, e.what());
  }
}

}  // namespace

json to_json(const FiniteMetricSpace& space) {
  return {{"points", space.labels()}, {"dist", matrix_json(space.dist())}};
}

json to_json(const GlueMetric& glue) {
  return {{"left", to_json(*glue.left())}, {"right", to_json(*glue.right())}, {"cross", matrix_json(glue.cross())}};
}

json to_json(const PartialMap& map) {
  json pairs = json::array();
  for (const auto& [x, y] : map.assignment()) pairs.push_back({map.domain()->label(x), map.codomain()->label(y)});
  return {{"domain", to_json(*map.domain())}, {"codomain", to_json(*map.codomain())}, {"pairs", pairs}};
}

json to_json(const Operator& op) {
  json entries = json::array();
  for (const auto& e : op.entries()) {
    entries.push_back({op.target()->label(e.row), op.source()->label(e.col), number(e.value.real()),
                       number(e.value.imag())});
  }
  return {{"source", to_json(*op.source())}, {"target", to_json(*op.target())}, {"entries", entries}};
}

SpacePtr space_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    return rethrow_structural(where, [&] { return resolve_space(j.get<std::string>()); });
  }
  if (!j.is_object()) throw SchemaError(where.empty() ? "/" : where, "expected a space object or a catalog reference");
  reject_unknown(j, {"points", "dist"}, where);
  const json& pts = field(j, "points", where);
  if (!pts.is_array()) throw SchemaError(pointer(where, "points"), "expected an array of labels");
  std::vector<Label> labels;
  for (std::size_t i = 0; i < pts.size(); ++i) labels.push_back(label_from_json(pts[i], pointer(pointer(where, "points"), i)));
  Matrix dist = matrix_from_json(field(j, "dist", where), labels.size(), labels.size(), pointer(where, "dist"));
  return rethrow_structural(where, [&] { return make_space(std::move(labels), std::move(dist)); });
}

GlueMetric glue_from_json(const json& j) {
  if (j.is_string()) return rethrow_structural("", [&] { return resolve_glue(j.get<std::string>()); });
  if (!j.is_object()) throw SchemaError("/", "expected a glue object or a catalog reference");
  reject_unknown(j, {"left", "right", "cross"}, "");
  SpacePtr left = space_from_json(field(j, "left", ""), "/left");
  SpacePtr right = space_from_json(field(j, "right", ""), "/right");
  Matrix cross = matrix_from_json(field(j, "cross", ""), left->size(), right->size(), "/cross");
  return rethrow_structural("", [&] { return GlueMetric(left, right, std::move(cross)); });
}

PartialMap map_from_json(const json& j) {
  if (j.is_string()) return rethrow_structural("", [&] { return resolve_map(j.get<std::string>()); });
  if (!j.is_object()) throw SchemaError("/", "expected a map object or a catalog reference");
  reject_unknown(j, {"domain", "codomain", "pairs"}, "");
  SpacePtr domain = space_from_json(field(j, "domain", ""), "/domain");
  SpacePtr codomain = space_from_json(field(j, "codomain", ""), "/codomain");
  const json& pairs = field(j, "pairs", "");
  if (!pairs.is_array()) throw SchemaError("/pairs", "expected an array of [x, y] pairs");
  std::vector<std::pair<Label, Label>> assignment;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string at = pointer("/pairs", i);
    if (!pairs[i].is_array() || pairs[i].size() != 2) throw SchemaError(at, "expected [x, y]");
    assignment.emplace_back(label_from_json(pairs[i][0], pointer(at, 0)), label_from_json(pairs[i][1], pointer(at, 1)));
  }
  return rethrow_structural("/pairs", [&] { return PartialMap::from_labels(domain, codomain, assignment); });
}

Operator operator_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("/", "expected an operator object");
  reject_unknown(j, {"source", "target", "entries"}, "");
  SpacePtr source = space_from_json(field(j, "source", ""), "/source");
  SpacePtr target = space_from_json(field(j, "target", ""), "/target");
  const json& entries = field(j, "entries", "");
  if (!entries.is_array()) throw SchemaError("/entries", "expected an array of [y, x, re, im]");
  std::vector<Operator::Entry> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string at = pointer("/entries", i);
    const json& e = entries[i];
    if (!e.is_array() || (e.size() != 4 && e.size() != 3)) throw SchemaError(at, "expected [y, x, re, im]");
    const Label y = label_from_json(e[0], pointer(at, 0));
    const Label x = label_from_json(e[1], pointer(at, 1));
    const double re = number_from_json(e[2], pointer(at, 2));
    const double im = e.size() == 4 ? number_from_json(e[3], pointer(at, 3)) : 0.0;
    out.push_back(rethrow_structural(at, [&] {
      return Operator::Entry{target->index_of(y), source->index_of(x), Complex{re, im}};
    }));
  }
  return rethrow_structural("/entries", [&] { return Operator(source, target, std::move(out)); });
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", source + ": " + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path.string());
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StructuralError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

Loaded<SpacePtr> load_space(const std::filesystem::path& path) {
  SpacePtr s = space_from_json(read_json_file(path));
  ValidationReport report = validate_metric(*s);
  return {std::move(s), std::move(report)};
}

Loaded<GlueMetric> load_glue(const std::filesystem::path& path) {
  GlueMetric g = glue_from_json(read_json_file(path));
  ValidationReport report = validate_glue(g);
  return {std::move(g), std::move(report)};
}

PartialMap load_map(const std::filesystem::path& path) { return map_from_json(read_json_file(path)); }

Operator load_operator(const std::filesystem::path& path) { return operator_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Reports

json to_json(const ValidationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"kind", std::string(to_string(v.kind))},
                          {"witness", v.witness},
                          {"lhs", number(v.lhs)},
                          {"rhs", number(v.rhs)}});
  }
  return {{"ok", r.ok},
          {"violation_count", r.violation_count},
          {"violations", violations},
          {"min_separation", number(r.min_separation)}};
}

json to_json(const DefectReport& r) {
  return {{"defect", number(r.defect)}, {"witness", {r.witness.first, r.witness.second}}};
}

json to_json(const SandwichReport& r) {
  json j = {{"constant_f", number(r.constant_f)},
            {"constant_g", number(r.constant_g)},
            {"constant_gf", number(r.constant_gf)},
            {"lower_gap", number(r.lower_gap)},
            {"upper_gap", number(r.upper_gap)},
            {"upper_gap_min", number(r.upper_gap_min)},
            {"upper_bound", r.upper_bound ? number(*r.upper_bound) : json(nullptr)},
            {"lower_holds", r.lower_holds},
            {"upper_holds", r.upper_holds},
            {"passes", r.passes}};
  if (r.return_distance_x) {
    j["almost_inverse"] = {{"return_distance_x", number(*r.return_distance_x)},
                           {"return_distance_y", number(r.return_distance_y.value_or(0.0))}};
  }
  return j;
}

json to_json(const NearIdentityReport& r) {
  return {{"diagonal_bound", number(r.diagonal_bound)},
          {"upper_offset", number(r.upper_offset)},
          {"lower_offset", number(r.lower_offset)},
          {"upper_slack", number(r.upper_slack)},
          {"lower_slack", number(r.lower_slack)},
          {"upper_holds", r.upper_holds},
          {"lower_holds", r.lower_holds},
          {"bound", r.bound ? number(*r.bound) : json(nullptr)}};
}

json to_json(const CloseMapFailure& r) {
  return {{"failure", true}, {"witness", r.witness}, {"nearest", number(r.nearest)}, {"bound", number(r.bound)}};
}

json to_json(const BandDecomposition& d, const GlueMetric* glue) {
  json bands = json::array();
  for (std::size_t i = 0; i < d.bands.size(); ++i) {
    json b = {{"index", i}, {"support", d.bands[i].size()}};
    if (glue) b["propagation"] = number(propagation(d.bands[i].to_operator(), *glue));
    bands.push_back(std::move(b));
  }
  return {{"band_count", d.bands.size()}, {"max_degree", d.max_degree}, {"bands", bands}};
}

json to_json(const Factorization& f, const GlueMetric& g_xy, const GlueMetric& g_yz) {
  const GlueMetric composed = compose_glue(g_xy, g_yz);
  json factors = json::array();
  for (const auto& factor : f.factors) {
    const Operator product = compose(factor.relay_out, factor.relay_in);
    factors.push_back({{"support", factor.sub_band.size()},
                       {"band_propagation", number(propagation(factor.sub_band.to_operator(), composed))},
                       {"relay_in_propagation", number(propagation(factor.relay_in, g_xy))},
                       {"relay_out_propagation", number(propagation(factor.relay_out, g_yz))},
                       {"exact", product == factor.sub_band.to_operator()}});
  }
  return {{"sub_bands", f.factors.size()}, {"max_fiber", f.max_fiber}, {"factors", factors}};
}

json to_json(const PropagationBoundReport& r) {
  return {{"composite", number(r.composite)}, {"sum", number(r.sum)}, {"holds", r.holds}};
}

json to_json(const DominationProfile& p) {
  json per_index = json::array();
  for (const auto& row : p.rows) {
    for (std::size_t k = 0; k < p.radii.size(); ++k) {
      per_index.push_back({row.index, number(p.radii[k]), number(row.values[k])});
    }
  }
  json probes = json::array();
  for (double r : p.radii) probes.push_back(number(r));
  return {{"direction", p.direction}, {"probes", probes}, {"per_index", per_index}};
}

namespace {

json order_certificate(const OrderVerdict& v) {
  const auto& p = v.profile;
  if (v.relation == Relation::HoldsBounded) {
    double bound = -std::numeric_limits<double>::infinity();
    for (const auto& row : p.rows) {
      for (double h : row.values) bound = std::max(bound, h);
    }
    return {{"kind", "uniform-bound"}, {"bound", number(bound)}};
  }
  if (v.relation == Relation::FailsGrowing) {
    for (std::size_t k = 0; k < v.per_probe.size(); ++k) {
      if (v.per_probe[k] != Relation::FailsGrowing) continue;
      json tail = json::array();
      for (std::size_t i = p.rows.size() - 3; i < p.rows.size(); ++i) {
        tail.push_back({p.rows[i].index, number(p.rows[i].values[k])});
      }
      return {{"kind", "growth"}, {"probe", number(p.radii[k])}, {"tail", tail}};
    }
  }
  return {{"kind", "none"}};
}

}  // namespace

json to_json(const OrderVerdict& v) {
  json j = to_json(v.profile);
  j["relation"] = std::string(to_string(v.relation));
  json per_probe = json::array();
  for (Relation r : v.per_probe) per_probe.push_back(std::string(to_string(r)));
  j["per_probe"] = per_probe;
  j["per_probe_members"] = v.per_probe_members;
  json maxima = json::array();
  for (const auto& [n, m] : v.per_index_max) maxima.push_back({n, number(m)});
  j["per_index_max"] = maxima;
  j["slope"] = number(v.slope);
  j["growth_threshold"] = number(v.growth_threshold);
  j["certificate"] = order_certificate(v);
  return j;
}

json to_json(const EquivalenceVerdict& v) {
  return {{"relation", std::string(to_string(v.relation))},
          {"equivalent", v.relation == Relation::HoldsBounded},
          {"forward", to_json(v.forward)},
          {"backward", to_json(v.backward)}};
}

json to_json(const InvSemiReport& r) {
  return {{"lower_slack", number(r.lower_slack)},
          {"upper_slack", number(r.upper_slack)},
          {"violations", r.violations},
          {"holds", r.holds}};
}

json to_json(const UniformBoundReport& r) {
  json per_index = json::array();
  for (const auto& [n, b] : r.per_index) per_index.push_back({n, number(b)});
  return {{"quantity", r.quantity},
          {"relation", std::string(to_string(r.relation))},
          {"bound", number(r.bound)},
          {"per_index", per_index}};
}

json to_json(const ObstructionCertificate& c) {
  return {{"kind", c.kind},
          {"witness", c.witness},
          {"sides", c.sides},
          {"bound", number(c.bound)},
          {"lhs", number(c.lhs)},
          {"rhs", number(c.rhs)}};
}

json to_json(const ClosePairMatching& m) {
  json pairs = json::array();
  for (const auto& [x, y] : m.pairs) pairs.push_back({x, y});
  return {{"size", m.size}, {"pairs", pairs}};
}

json to_json(const MaximalityReport& r) {
  json radii = json::array(), profile = json::array();
  for (double v : r.radii) radii.push_back(number(v));
  for (double v : r.profile) profile.push_back(number(v));
  return {{"constant", number(r.constant)},
          {"h_at_half", number(r.h_at_half)},
          {"offset", number(r.offset)},
          {"min_slack", number(r.min_slack)},
          {"max_violation", number(r.max_violation)},
          {"holds", r.holds},
          {"probes", radii},
          {"profile", profile}};
}

json to_json(const std::vector<GrowthSample>& g) {
  json out = json::array();
  for (const auto& s : g) out.push_back({number(s.radius), s.max_ball});
  return out;
}

std::string profile_csv(const DominationProfile& p) {
  std::ostringstream out;
  out << "n,R,h\n";
  for (const auto& row : p.rows) {
    for (std::size_t k = 0; k < p.radii.size(); ++k) {
      const json h = number(row.values[k]);
      out << row.index << ',' << number(p.radii[k]).dump() << ',' << (h.is_null() ? "" : h.dump()) << '\n';
    }
  }
  return out.str();
}

}  // namespace roecalc
