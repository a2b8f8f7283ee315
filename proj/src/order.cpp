#include "roecalc/order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "roecalc/errors.hpp"
#include "roecalc/matching.hpp"
#include "roecalc/metric_calculus.hpp"
#include "roecalc/parallel.hpp"

namespace roecalc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_same_spaces(const GlueMetric& a, const GlueMetric& b, const char* what) {
  if (!a.shares_spaces_with(b)) throw StructuralError(std::string(what) + ": glues live on different spaces");
}

void require_same_indices(const MetricFamily& a, const MetricFamily& b) {
  if (a.indices() != b.indices()) throw StructuralError("families do not share an index set");
}

bool nearly_equal(double a, double b) {
  if (a == b) return true;  // covers matching infinities
  return std::abs(a - b) <= kMetricTolerance;
}

}  // namespace

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::HoldsBounded: return "holds-bounded";
    case Relation::FailsGrowing: return "fails-growing";
    case Relation::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<double> domination_values(const GlueMetric& g, const GlueMetric& g_prime,
                                      std::span<const double> radii) {
  require_same_spaces(g, g_prime, "domination_profile");
  std::vector<double> out(radii.size(), kNegInf);
  const auto base = g.cross().values();
  const auto other = g_prime.cross().values();
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t k = 0; k < radii.size(); ++k) {
      if (base[i] <= radii[k] + kMetricTolerance) out[k] = std::max(out[k], other[i]);
    }
  }
  return out;
}

DominationProfile domination_profile(const GlueMetric& g, const GlueMetric& g_prime,
                                     std::span<const double> radii) {
  DominationProfile p;
  p.direction = "g -> g'";
  p.radii.assign(radii.begin(), radii.end());
  p.rows.push_back({0, domination_values(g, g_prime, radii)});
  return p;
}

DominationProfile domination_profile(const MetricFamily& g, const MetricFamily& g_prime,
                                     std::span<const double> radii) {
  require_same_indices(g, g_prime);
  DominationProfile p;
  p.direction = g.tag() + " -> " + g_prime.tag();
  p.radii.assign(radii.begin(), radii.end());
  const auto& idx = g.indices();
  p.rows.resize(idx.size());
  parallel_for(idx.size(), [&](std::size_t i) {
    p.rows[i] = {idx[i], domination_values(g.at(idx[i]), g_prime.at(idx[i]), radii)};
  });
  return p;
}

std::vector<double> default_probe_radii(const GlueMetric& g) {
  const auto values = g.cross().values();
  const double top = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  std::vector<double> out;
  for (double r : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    if (out.empty() || r <= top) out.push_back(r);
  }
  return out;
}

Relation classify_sequence(std::span<const double> v, double growth_threshold) {
  const std::size_t n = v.size();
  if (n < 3) return Relation::Inconclusive;
  const double a = v[n - 3], b = v[n - 2], c = v[n - 1];
  if (nearly_equal(a, b) && nearly_equal(b, c)) return Relation::HoldsBounded;
  const bool increasing = b > a + kMetricTolerance && c > b + kMetricTolerance;
  if (!increasing) return Relation::Inconclusive;
  const auto first = std::find_if(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  if (first == v.end()) return Relation::Inconclusive;
  const double limit = *first > 0.0 ? growth_threshold * *first : *first;
  return c > limit + kMetricTolerance ? Relation::FailsGrowing : Relation::Inconclusive;
}

namespace {

double least_squares_slope(const std::vector<std::pair<int, double>>& pts) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    if (!std::isfinite(y)) continue;
    n += 1;
    sx += x;
    sy += y;
    sxx += static_cast<double>(x) * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  return (n < 2 || denom == 0.0) ? 0.0 : (n * sxy - sx * sy) / denom;
}

Relation combine(const std::vector<Relation>& parts) {
  if (parts.empty()) return Relation::Inconclusive;
  if (std::find(parts.begin(), parts.end(), Relation::FailsGrowing) != parts.end()) {
    return Relation::FailsGrowing;
  }
  if (std::all_of(parts.begin(), parts.end(), [](Relation r) { return r == Relation::HoldsBounded; })) {
    return Relation::HoldsBounded;
  }
  return Relation::Inconclusive;
}

}  // namespace

OrderVerdict order_check(const MetricFamily& g, const MetricFamily& g_prime,
                         std::span<const double> radii, double growth_threshold) {
  OrderVerdict v;
  v.growth_threshold = growth_threshold;
  v.profile = domination_profile(g, g_prime, radii);
  for (const auto& row : v.profile.rows) {
    const double m = row.values.empty() ? kNegInf : *std::max_element(row.values.begin(), row.values.end());
    v.per_index_max.emplace_back(row.index, m);
  }
  v.slope = least_squares_slope(v.per_index_max);
  std::vector<double> reach;  // largest cross value of each g_n
  for (const auto& row : v.profile.rows) {
    const auto values = g.at(row.index).cross().values();
    reach.push_back(values.empty() ? kNegInf : *std::max_element(values.begin(), values.end()));
  }
  std::vector<Relation> voting;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    std::vector<double> column;
    for (std::size_t i = 0; i < v.profile.rows.size(); ++i) {
      if (reach[i] > radii[k] + kMetricTolerance) column.push_back(v.profile.rows[i].values[k]);
    }
    const Relation r = classify_sequence(column, growth_threshold);
    v.per_probe.push_back(r);
    v.per_probe_members.push_back(column.size());
    if (column.size() >= 3) voting.push_back(r);
  }
  v.relation = v.profile.rows.size() < 3 ? Relation::Inconclusive : combine(voting);
  return v;
}

EquivalenceVerdict equivalence_check(const MetricFamily& g, const MetricFamily& g_prime,
                                     std::span<const double> radii, double growth_threshold) {
  EquivalenceVerdict e;
  e.forward = order_check(g, g_prime, radii, growth_threshold);
  e.backward = order_check(g_prime, g, radii, growth_threshold);
  e.relation = combine({e.forward.relation, e.backward.relation});
  return e;
}

InvSemiReport inv_semi_check(const GlueMetric& g) {
  const GlueMetric round_trip = compose_glue(g, adjoint_glue(g));  // X -> X
  const GlueMetric triple = compose_glue(round_trip, g);           // X -> Y
  InvSemiReport r;
  r.lower_slack = std::numeric_limits<double>::infinity();
  r.upper_slack = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < g.cross().rows(); ++x) {
    for (std::size_t y = 0; y < g.cross().cols(); ++y) {
      const double lo = triple(x, y) - g(x, y);
      const double hi = 3.0 * g(x, y) - triple(x, y);
      r.lower_slack = std::min(r.lower_slack, lo);
      r.upper_slack = std::min(r.upper_slack, hi);
      if (lo < -kMetricTolerance || hi < -kMetricTolerance) ++r.violations;
    }
  }
  r.holds = r.violations == 0;
  r.triple = triple.cross();
  return r;
}

namespace {

UniformBoundReport uniform_bound(const MetricFamily& family, std::string quantity,
                                 double growth_threshold, double (*measure)(const GlueMetric&)) {
  UniformBoundReport r;
  r.quantity = std::move(quantity);
  const auto& idx = family.indices();
  std::vector<double> values(idx.size());
  parallel_for(idx.size(), [&](std::size_t i) { values[i] = measure(family.at(idx[i])); });
  for (std::size_t i = 0; i < idx.size(); ++i) {
    r.per_index.emplace_back(idx[i], values[i]);
    r.bound = std::max(r.bound, values[i]);
  }
  r.relation = classify_sequence(values, growth_threshold);
  return r;
}

void require_square(const GlueMetric& g) {
  if (!same_space(g.left(), g.right())) throw StructuralError("glue must live on two copies of one space");
}

double idempotent_defect(const GlueMetric& g) {
  require_square(g);
  return compose_glue(g, g).cross().max_abs_difference(g.cross());
}

double selfadjoint_defect(const GlueMetric& g) {
  require_square(g);
  return adjoint_glue(g).cross().max_abs_difference(g.cross());
}

}  // namespace

UniformBoundReport idempotent_check(const MetricFamily& family, double growth_threshold) {
  return uniform_bound(family, "max |g∘g - g|", growth_threshold, &idempotent_defect);
}

UniformBoundReport selfadjoint_check(const MetricFamily& family, double growth_threshold) {
  return uniform_bound(family, "max |g* - g|", growth_threshold, &selfadjoint_defect);
}

ClosePairMatching close_pair_matching(const GlueMetric& g, double bound) {
  const auto& X = *g.left();
  const auto& Y = *g.right();
  std::vector<std::vector<std::size_t>> adj(X.size());
  for (std::size_t x = 0; x < X.size(); ++x) {
    for (std::size_t y = 0; y < Y.size(); ++y) {
      if (g(x, y) <= bound + kMetricTolerance) adj[x].push_back(y);
    }
  }
  ClosePairMatching out;
  for (const auto& [x, y] : maximum_bipartite_matching(X.size(), Y.size(), adj)) {
    out.pairs.emplace_back(X.label(x), Y.label(y));
  }
  out.size = out.pairs.size();
  return out;
}

MaximalityReport maximality_inequality_check(const PartialMap& f, const GlueMetric& g,
                                             std::span<const double> radii, double epsilon) {
  MaximalityReport r;
  r.constant = effective_constant(f, epsilon);
  const GlueMetric d_f = glue_from_map_with_constant(f, r.constant);
  require_same_spaces(d_f, g, "maximality_inequality_check");
  const double half = r.constant / 2.0;
  r.h_at_half = domination_values(d_f, g, std::span<const double>(&half, 1)).front();
  r.offset = half + r.h_at_half;
  r.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < g.cross().rows(); ++x) {
    for (std::size_t y = 0; y < g.cross().cols(); ++y) {
      r.min_slack = std::min(r.min_slack, g(x, y) - d_f(x, y) + r.offset);
    }
  }
  r.max_violation = std::max(0.0, -r.min_slack);
  r.holds = r.min_slack >= -kMetricTolerance;
  r.radii.assign(radii.begin(), radii.end());
  r.profile = domination_values(d_f, g, radii);
  return r;
}

}  // namespace roecalc
