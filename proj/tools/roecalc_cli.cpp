#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roecalc/almost_isometry.hpp"
#include "roecalc/band.hpp"
#include "roecalc/catalog.hpp"
#include "roecalc/errors.hpp"
#include "roecalc/feasibility.hpp"
#include "roecalc/io.hpp"
#include "roecalc/metric_calculus.hpp"
#include "roecalc/metric_family.hpp"
#include "roecalc/operator.hpp"
#include "roecalc/order.hpp"
#include "roecalc/parallel.hpp"
#include "roecalc/random.hpp"

namespace fs = std::filesystem;
using namespace roecalc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct Params {
  std::string command;
  std::map<std::string, std::string> inputs;  // flag name without dashes -> path or catalog ref
  std::string scenario;                       // demo name
  std::optional<std::uint64_t> seed;
  std::vector<double> radii;
  std::optional<double> bound;
  double epsilon = 1.0;
  std::optional<int> max_n;
  std::string format;
  std::string output;
};

struct Outcome {
  json report;
  int code = kExitOk;
  std::string text;  // non-empty for csv/text renderings
};

// Raised when an input parses but fails metric validation.
class InvalidInput : public std::runtime_error {
 public:
  InvalidInput(const std::string& flag, ValidationReport report)
      : std::runtime_error("--" + flag + " is not a valid metric"), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

std::string describe(const Violation& v) {
  std::string out = std::string(to_string(v.kind)) + " at (";
  for (std::size_t i = 0; i < v.witness.size(); ++i) out += (i ? ", " : "") + v.witness[i];
  std::ostringstream nums;
  nums.precision(12);
  nums << "): " << v.lhs << " > " << v.rhs;
  return out + nums.str();
}

const std::string& require(const Params& p, const std::string& key) {
  auto it = p.inputs.find(key);
  if (it == p.inputs.end() || it->second.empty()) throw SchemaError("--" + key, "required for '" + p.command + "'");
  return it->second;
}

bool has(const Params& p, const std::string& key) {
  auto it = p.inputs.find(key);
  return it != p.inputs.end() && !it->second.empty();
}

// A value names a file when it exists on disk; otherwise it is a catalog reference.
// "{seed}" inside a reference is replaced by --seed.
json source_json(const Params& p, const std::string& key) {
  std::string value = require(p, key);
  if (fs::exists(value)) return read_json_file(value);
  if (auto at = value.find("{seed}"); at != std::string::npos) {
    if (!p.seed) throw SchemaError("--seed", "required by '" + value + "'");
    value.replace(at, 6, std::to_string(*p.seed));
  }
  return json(value);
}

SpacePtr space_input(const Params& p, const std::string& key) {
  SpacePtr s = space_from_json(source_json(p, key), "--" + key);
  ValidationReport r = validate_metric(*s);
  if (!r.ok) throw InvalidInput(key, std::move(r));
  return s;
}

GlueMetric glue_input(const Params& p, const std::string& key) {
  GlueMetric g = glue_from_json(source_json(p, key));
  ValidationReport r = validate_glue(g);
  if (!r.ok) throw InvalidInput(key, std::move(r));
  return g;
}

PartialMap map_input(const Params& p, const std::string& key) {
  PartialMap f = map_from_json(source_json(p, key));
  for (const SpacePtr& s : {f.domain(), f.codomain()}) {
    ValidationReport r = validate_metric(*s);
    if (!r.ok) throw InvalidInput(key, std::move(r));
  }
  return f;
}

Operator operator_input(const Params& p, const std::string& key) {
  const json j = source_json(p, key);
  if (j.is_string()) throw SchemaError("--" + key, "operators are read from files only");
  return operator_from_json(j);
}

MetricFamily family_input(const Params& p, const std::string& key) {
  const json j = source_json(p, key);
  if (!j.is_string()) throw SchemaError("--" + key, "families are catalog references");
  MetricFamily family = resolve_family(j.get<std::string>(), p.max_n);
  ValidationReport r = check_family_coherence(family);
  if (!r.ok) throw InvalidInput(key, std::move(r));
  return family;
}

double bound_of(const Params& p) {
  if (!p.bound) throw SchemaError("--bound", "required for '" + p.command + "'");
  return *p.bound;
}

std::vector<double> radii_for(const Params& p, const GlueMetric& g) {
  return p.radii.empty() ? default_probe_radii(g) : p.radii;
}

std::vector<double> radii_for(const Params& p, const MetricFamily& f) {
  return radii_for(p, f.at(f.indices().back()));
}

int pass_or_fail(bool ok) { return ok ? kExitOk : kExitCheckFailed; }

// ---------------------------------------------------------------------------

Outcome cmd_validate(const Params& p) {
  ValidationReport r;
  if (has(p, "glue")) {
    r = validate_glue(glue_from_json(source_json(p, "glue")));
  } else {
    r = validate_metric(*space_from_json(source_json(p, "space"), "--space"));
  }
  if (!r.ok) {
    for (const auto& v : r.violations) std::cerr << "violation: " << describe(v) << '\n';
  }
  return {to_json(r), r.ok ? kExitOk : kExitInputError, {}};
}

Outcome cmd_compose(const Params& p) {
  const GlueMetric g = compose_glue(glue_input(p, "g1"), glue_input(p, "g2"));
  const ValidationReport r = validate_glue(g);
  return {{{"glue", to_json(g)}, {"validation", to_json(r)}}, pass_or_fail(r.ok), {}};
}

Outcome cmd_dzero(const Params& p) {
  return {{{"glue", to_json(identity_glue(space_input(p, "space")))}}, kExitOk, {}};
}

Outcome cmd_adjoint(const Params& p) {
  return {{{"glue", to_json(adjoint_glue(glue_input(p, "glue")))}}, kExitOk, {}};
}

Outcome cmd_meet(const Params& p) {
  const GlueMetric g = meet_glue(glue_input(p, "g1"), glue_input(p, "g2"));
  const ValidationReport r = validate_glue(g);
  return {{{"glue", to_json(g)}, {"validation", to_json(r)}}, pass_or_fail(r.ok), {}};
}

Outcome cmd_from_map(const Params& p) {
  const PartialMap f = map_input(p, "map");
  const GlueMetric g = glue_from_map(f, p.epsilon);
  const ValidationReport r = validate_glue(g);
  return {{{"constant", number(effective_constant(f, p.epsilon))},
           {"defect", to_json(defect(f))},
           {"glue", to_json(g)},
           {"validation", to_json(r)}},
          pass_or_fail(r.ok),
          {}};
}

Outcome cmd_defect(const Params& p) {
  const PartialMap f = map_input(p, "map");
  json j = to_json(defect(f));
  j["support"] = f.support_size();
  j["total"] = f.is_total();
  return {j, kExitOk, {}};
}

Outcome cmd_extract_map(const Params& p) {
  auto result = extract_close_map(glue_input(p, "glue"), bound_of(p));
  if (auto* f = std::get_if<PartialMap>(&result)) {
    return {{{"map", to_json(*f)}, {"defect", to_json(defect(*f))}}, kExitOk, {}};
  }
  return {to_json(std::get<CloseMapFailure>(result)), kExitCheckFailed, {}};
}

Outcome cmd_near_identity(const Params& p) {
  const NearIdentityReport r = near_identity_check(glue_input(p, "glue"));
  return {to_json(r), pass_or_fail(r.bound.has_value()), {}};
}

Outcome cmd_band_decompose(const Params& p) {
  const Operator t = operator_input(p, "op");
  std::optional<GlueMetric> glue;
  if (has(p, "glue")) glue = glue_input(p, "glue");
  const BandDecomposition d = band_decompose(t);
  json j = to_json(d, glue ? &*glue : nullptr);
  if (!glue && same_space(t.source(), t.target())) {
    for (std::size_t i = 0; i < d.bands.size(); ++i) {
      j["bands"][i]["propagation"] = number(propagation(d.bands[i].to_operator(), *t.source()));
    }
  }
  const bool exact = d.bands.empty() ? t.nonzeros() == 0 : reassemble(d) == t;
  const bool within = d.bands.size() <= d.max_degree;
  j["exact"] = exact;
  j["within_degree_bound"] = within;

  Outcome out{j, pass_or_fail(exact && within), {}};
  if (p.format == "text" || p.format == "csv") {
    std::ostringstream s;
    if (p.format == "csv") s << "band,support,propagation\n";
    for (const auto& b : j["bands"]) {
      const json prop = b.value("propagation", json(nullptr));
      const std::string ptext = prop.is_null() ? "" : prop.dump();
      if (p.format == "csv") {
        s << b["index"].dump() << ',' << b["support"].dump() << ',' << ptext << '\n';
      } else {
        s << "band " << b["index"].dump() << " support " << b["support"].dump() << " propagation "
          << (ptext.empty() ? "-" : ptext) << '\n';
      }
    }
    out.text = s.str();
  }
  return out;
}

Outcome cmd_factor(const Params& p) {
  const GlueMetric g_xy = glue_input(p, "g1");
  const GlueMetric g_yz = glue_input(p, "g2");
  const WidthOneBand band = WidthOneBand::from_operator(operator_input(p, "op"));
  const Factorization f = factor_through(band, g_xy, g_yz);
  json j = to_json(f, g_xy, g_yz);
  bool ok = true;
  for (const auto& factor : j["factors"]) {
    const double band_prop = factor["band_propagation"].is_null() ? 0.0 : factor["band_propagation"].get<double>();
    ok = ok && factor["exact"].get<bool>();
    for (const char* key : {"relay_in_propagation", "relay_out_propagation"}) {
      if (!factor[key].is_null()) ok = ok && factor[key].get<double>() <= band_prop + 1.0 + kMetricTolerance;
    }
  }
  j["holds"] = ok;
  return {j, pass_or_fail(ok), {}};
}

Outcome cmd_propagation(const Params& p) {
  if (has(p, "s")) {
    const PropagationBoundReport r =
        propagation_bound_check(operator_input(p, "s"), operator_input(p, "t"), glue_input(p, "g1"), glue_input(p, "g2"));
    return {to_json(r), pass_or_fail(r.holds), {}};
  }
  const Operator t = operator_input(p, "op");
  double value = 0.0;
  if (has(p, "glue")) {
    value = propagation(t, glue_input(p, "glue"));
  } else if (same_space(t.source(), t.target())) {
    value = propagation(t, *t.source());
  } else {
    throw SchemaError("--glue", "required when source and target differ");
  }
  return {{{"propagation", number(value)}, {"nonzeros", t.nonzeros()}}, kExitOk, {}};
}

Outcome cmd_norm(const Params& p) {
  const Operator t = operator_input(p, "op");
  return {{{"norm", number(operator_norm(t))},
           {"rows", t.target()->size()},
           {"cols", t.source()->size()},
           {"nonzeros", t.nonzeros()}},
          kExitOk,
          {}};
}

Outcome cmd_profile(const Params& p) {
  DominationProfile profile;
  if (p.max_n) {
    const MetricFamily g = family_input(p, "g1");
    const MetricFamily g_prime = family_input(p, "g2");
    profile = domination_profile(g, g_prime, radii_for(p, g));
  } else {
    const GlueMetric g = glue_input(p, "g1");
    const GlueMetric g_prime = glue_input(p, "g2");
    profile = domination_profile(g, g_prime, radii_for(p, g));
  }
  return {to_json(profile), kExitOk, p.format == "csv" ? profile_csv(profile) : std::string()};
}

Outcome cmd_order_check(const Params& p) {
  const MetricFamily g = family_input(p, "g1");
  const MetricFamily g_prime = family_input(p, "g2");
  const OrderVerdict v = order_check(g, g_prime, radii_for(p, g));
  return {to_json(v), pass_or_fail(v.relation == Relation::HoldsBounded),
          p.format == "csv" ? profile_csv(v.profile) : std::string()};
}

Outcome cmd_equiv_check(const Params& p) {
  const MetricFamily g = family_input(p, "g1");
  const MetricFamily g_prime = family_input(p, "g2");
  std::vector<double> radii = radii_for(p, g);
  const EquivalenceVerdict v = equivalence_check(g, g_prime, radii);
  return {to_json(v), pass_or_fail(v.relation == Relation::HoldsBounded), {}};
}

Outcome cmd_inv_semi(const Params& p) {
  const InvSemiReport r = inv_semi_check(glue_input(p, "glue"));
  return {to_json(r), pass_or_fail(r.holds), {}};
}

Outcome cmd_idempotent(const Params& p) {
  const UniformBoundReport r = idempotent_check(family_input(p, "family"));
  return {to_json(r), pass_or_fail(r.relation == Relation::HoldsBounded), {}};
}

Outcome cmd_selfadjoint(const Params& p) {
  const UniformBoundReport r = selfadjoint_check(family_input(p, "family"));
  return {to_json(r), pass_or_fail(r.relation == Relation::HoldsBounded), {}};
}

Outcome cmd_join_feasible(const Params& p) {
  const FeasibilityResult r = upper_bound_feasibility(glue_input(p, "g1"), glue_input(p, "g2"), bound_of(p));
  if (const auto* g = std::get_if<GlueMetric>(&r)) {
    return {{{"feasible", true}, {"glue", to_json(*g)}, {"validation", to_json(validate_glue(*g))}}, kExitOk, {}};
  }
  return {{{"feasible", false}, {"certificate", to_json(std::get<ObstructionCertificate>(r))}}, kExitCheckFailed, {}};
}

Outcome cmd_close_pairs(const Params& p) {
  const GlueMetric g = glue_input(p, "glue");
  const ClosePairMatching m = close_pair_matching(g, bound_of(p));
  json j = to_json(m);
  j["perfect"] = m.size == g.left()->size() && m.size == g.right()->size();
  return {j, kExitOk, {}};
}

Outcome demo_idem(const Params& p) {
  const int n = p.max_n.value_or(50);
  const MetricFamily df = idem_scenario(n);
  const MetricFamily d0 = dzero_family(n);
  const UniformBoundReport selfadjoint = selfadjoint_check(df);
  const UniformBoundReport idempotent = idempotent_check(df);
  const std::vector<double> radii = p.radii.empty() ? default_probe_radii(df.at(n)) : p.radii;
  const OrderVerdict below = order_check(df, d0, radii);
  const OrderVerdict above = order_check(d0, df, radii);
  const bool reproduced = selfadjoint.bound == 0.0 && selfadjoint.relation == Relation::HoldsBounded &&
                          idempotent.relation == Relation::HoldsBounded &&
                          below.relation == Relation::HoldsBounded && above.relation == Relation::FailsGrowing;
  return {{{"scenario", "idem"},
           {"max_n", n},
           {"selfadjoint", to_json(selfadjoint)},
           {"idempotent", to_json(idempotent)},
           {"df_below_dzero", to_json(below)},
           {"dzero_below_df", to_json(above)},
           {"equivalent_to_dzero", below.relation == Relation::HoldsBounded && above.relation == Relation::HoldsBounded},
           {"reproduced", reproduced}},
          pass_or_fail(reproduced),
          {}};
}

Outcome demo_nonupper(const Params& p) {
  const int n = p.max_n.value_or(10);
  const double bound = p.bound.value_or(3.0);
  const SpacePtr x = z_interval(n);
  const GlueMetric id = glue_from_map(identity_map(x));
  const GlueMetric neg = glue_from_map(reflection_map(x));
  const FeasibilityResult obstructed = upper_bound_feasibility(id, neg, bound);
  const FeasibilityResult control = upper_bound_feasibility(identity_glue(x), identity_glue(x), bound);
  json j = {{"scenario", "nonupper"}, {"max_n", n}, {"bound", number(bound)}};
  bool reproduced = true;
  if (const auto* c = std::get_if<ObstructionCertificate>(&obstructed)) {
    j["certificate"] = to_json(*c);
    reproduced = c->lhs > c->rhs;
  } else {
    j["certificate"] = nullptr;
    reproduced = false;
  }
  if (const auto* g = std::get_if<GlueMetric>(&control)) {
    const ValidationReport r = validate_glue(*g);
    j["control"] = {{"feasible", true}, {"validation", to_json(r)}};
    reproduced = reproduced && r.ok;
  } else {
    j["control"] = {{"feasible", false}, {"certificate", to_json(std::get<ObstructionCertificate>(control))}};
    reproduced = false;
  }
  j["reproduced"] = reproduced;
  return {j, pass_or_fail(reproduced), {}};
}

Outcome cmd_demo(const Params& p) {
  if (p.scenario == "idem") return demo_idem(p);
  if (p.scenario == "nonupper") return demo_nonupper(p);
  throw SchemaError("scenario", "unknown demo '" + p.scenario + "' (expected idem or nonupper)");
}

struct Command {
  const char* name;
  const char* help;
  std::vector<std::string> inputs;
  std::function<Outcome(const Params&)> run;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {"validate", "check a space or glue metric", {"space", "glue"}, cmd_validate},
      {"compose", "compose two glue metrics (min-plus)", {"g1", "g2"}, cmd_compose},
      {"dzero", "canonical glue on two copies of a space", {"space"}, cmd_dzero},
      {"adjoint", "swap the two sides of a glue", {"glue"}, cmd_adjoint},
      {"meet", "pointwise maximum of two glues", {"g1", "g2"}, cmd_meet},
      {"from-map", "glue induced by a partial almost isometry", {"map"}, cmd_from_map},
      {"defect", "additive distortion of a partial map", {"map"}, cmd_defect},
      {"extract-map", "recover a close map from a glue", {"glue"}, cmd_extract_map},
      {"near-identity", "compare a glue on X+X with d0", {"glue"}, cmd_near_identity},
      {"band-decompose", "split an operator into width-one bands", {"op", "glue"}, cmd_band_decompose},
      {"factor", "factor a width-one band through a middle space", {"op", "g1", "g2"}, cmd_factor},
      {"propagation", "propagation of an operator, or the composition bound", {"op", "glue", "s", "t", "g1", "g2"},
       cmd_propagation},
      {"norm", "operator norm", {"op"}, cmd_norm},
      {"profile", "domination profile of g1 against g2", {"g1", "g2"}, cmd_profile},
      {"order-check", "decide g1 below g2 across a family", {"g1", "g2"}, cmd_order_check},
      {"equiv-check", "order check in both directions", {"g1", "g2"}, cmd_equiv_check},
      {"inv-semi", "check g <= g g* g <= 3g", {"glue"}, cmd_inv_semi},
      {"idempotent", "uniform bound on |g g - g| across a family", {"family"}, cmd_idempotent},
      {"selfadjoint", "uniform bound on |g* - g| across a family", {"family"}, cmd_selfadjoint},
      {"join-feasible", "common upper bound of two glues, or an obstruction", {"g1", "g2"}, cmd_join_feasible},
      {"close-pairs", "maximum matching of pairs within a bound", {"glue"}, cmd_close_pairs},
      {"demo", "run a built-in scenario (idem, nonupper)", {}, cmd_demo},
  };
  return table;
}

const Command& find_command(const std::string& name) {
  for (const auto& c : commands()) {
    if (name == c.name) return c;
  }
  throw SchemaError("operation", "unknown operation '" + name + "'");
}

// ---------------------------------------------------------------------------
// Scenario files: {"name", "operation", "inputs", "parameters", "output"}.

Params scenario_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("/", "scenario must be an object");
  Params p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "name") {
      if (!v.is_string()) throw SchemaError("/name", "expected a string");
    } else if (key == "operation") {
      if (!v.is_string()) throw SchemaError("/operation", "expected a string");
      p.command = v.get<std::string>();
    } else if (key == "output") {
      if (!v.is_string()) throw SchemaError("/output", "expected a path");
      p.output = v.get<std::string>();
    } else if (key == "inputs") {
      if (!v.is_object()) throw SchemaError("/inputs", "expected an object");
      for (auto in = v.begin(); in != v.end(); ++in) {
        if (!in.value().is_string()) throw SchemaError("/inputs/" + in.key(), "expected a path or catalog reference");
        p.inputs[in.key()] = in.value().get<std::string>();
      }
    } else if (key == "parameters") {
      if (!v.is_object()) throw SchemaError("/parameters", "expected an object");
      for (auto pa = v.begin(); pa != v.end(); ++pa) {
        const std::string at = "/parameters/" + pa.key();
        const json& x = pa.value();
        auto need_number = [&] {
          if (!x.is_number()) throw SchemaError(at, "expected a number");
        };
        if (pa.key() == "seed") {
          if (!x.is_number_unsigned()) throw SchemaError(at, "expected a non-negative integer");
          p.seed = x.get<std::uint64_t>();
        } else if (pa.key() == "radii") {
          if (!x.is_array()) throw SchemaError(at, "expected an array of numbers");
          for (const auto& r : x) {
            if (!r.is_number()) throw SchemaError(at, "expected an array of numbers");
            p.radii.push_back(r.get<double>());
          }
        } else if (pa.key() == "bound") {
          need_number();
          p.bound = x.get<double>();
        } else if (pa.key() == "epsilon") {
          need_number();
          p.epsilon = x.get<double>();
        } else if (pa.key() == "max_n") {
          if (!x.is_number_integer()) throw SchemaError(at, "expected an integer");
          p.max_n = x.get<int>();
        } else if (pa.key() == "format") {
          if (!x.is_string()) throw SchemaError(at, "expected a string");
          p.format = x.get<std::string>();
        } else if (pa.key() == "scenario") {
          if (!x.is_string()) throw SchemaError(at, "expected a string");
          p.scenario = x.get<std::string>();
        } else {
          throw SchemaError(at, "unknown parameter");
        }
      }
    } else {
      throw SchemaError("/" + key, "unknown field");
    }
  }
  if (p.command.empty()) throw SchemaError("/operation", "missing field");
  if (p.command == "run") throw SchemaError("/operation", "scenarios cannot nest");
  const Command& c = find_command(p.command);
  for (const auto& [name, value] : p.inputs) {
    if (std::find(c.inputs.begin(), c.inputs.end(), name) == c.inputs.end()) {
      throw SchemaError("/inputs/" + name, "not an input of '" + p.command + "'");
    }
  }
  return p;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

void emit(const Params& p, const Outcome& out) {
  const std::string body = out.text.empty() ? out.report.dump(2) + "\n" : out.text;
  if (p.output.empty()) {
    std::cout << body;
    return;
  }
  {
    std::ofstream f(p.output, std::ios::binary | std::ios::trunc);
    if (!f) throw StructuralError("cannot write '" + p.output + "'");
    f << body;
  }
  json meta = {{"command", p.command},
               {"exit_code", out.code},
               {"rng", std::string(Rng::kName)},
               {"seed", p.seed ? json(*p.seed) : json(nullptr)},
               {"threads", worker_count()},
               {"timestamp", timestamp()}};
  write_json_file(p.output + ".meta.json", meta);
}

int execute(Params p) {
  if (!p.format.empty() && p.format != "json" && p.format != "csv" && p.format != "text") {
    throw SchemaError("--format", "expected json, csv or text");
  }
  if (p.format.empty()) p.format = p.command == "band-decompose" ? "text" : "json";
  const Outcome out = find_command(p.command).run(p);
  emit(p, out);
  return out.code;
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw SchemaError("--radii", "'" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw SchemaError("--radii", "expected a comma-separated list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"roecalc: glue metrics, almost isometries and finite-propagation operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "roecalc 0.1.0");

  Params p;
  std::string radii_text;
  std::string scenario_path;
  std::map<std::string, CLI::App*> subs;

  for (const auto& c : commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    subs[c.name] = sub;
    for (const auto& in : c.inputs) sub->add_option("--" + in, p.inputs[in], "file path or catalog reference");
    if (!c.inputs.empty()) {
      sub->add_option("--input", p.inputs[c.inputs.front()], "alias for --" + c.inputs.front());
    }
    if (std::string(c.name) == "demo") sub->add_option("scenario", p.scenario, "idem or nonupper")->required();
    sub->add_option("--output,-o", p.output, "write the report here; metadata goes to <output>.meta.json");
    sub->add_option("--format", p.format, "json, csv or text");
    sub->add_option("--seed", p.seed, "substituted for {seed} in catalog references");
    sub->add_option("--radii", radii_text, "comma-separated probe radii");
    sub->add_option("--bound", p.bound);
    sub->add_option("--epsilon", p.epsilon, "floor for the constant of induced glues")->capture_default_str();
    sub->add_option("--max-n", p.max_n, "largest family index");
  }
  CLI::App* run = app.add_subcommand("run", "execute a JSON scenario file");
  run->add_option("--input,scenario", scenario_path, "scenario file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (run->parsed()) return execute(scenario_from_json(read_json_file(scenario_path)));
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) p.command = name;
    }
    if (!radii_text.empty()) p.radii = parse_radii(radii_text);
    return execute(p);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (const auto& v : e.report().violations) std::cerr << "  " << describe(v) << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}
