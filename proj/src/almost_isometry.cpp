#include "roecalc/almost_isometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "roecalc/errors.hpp"
#include "roecalc/metric_calculus.hpp"

namespace roecalc {

PartialMap::PartialMap(SpacePtr domain, SpacePtr codomain,
                       std::vector<std::pair<std::size_t, std::size_t>> assignment)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), assignment_(std::move(assignment)) {
  if (!domain_ || !codomain_) throw StructuralError("partial map needs both spaces");
  if (assignment_.empty()) throw StructuralError("partial map has an empty support");
  std::sort(assignment_.begin(), assignment_.end());
  lookup_.assign(domain_->size(), -1);
  for (const auto& [x, y] : assignment_) {
    if (x >= domain_->size() || y >= codomain_->size()) {
      throw StructuralError("partial map index out of range");
    }
    if (lookup_[x] >= 0) {
      throw StructuralError("point '" + domain_->label(x) + "' is assigned twice");
    }
    lookup_[x] = static_cast<std::ptrdiff_t>(y);
  }
}

PartialMap PartialMap::from_labels(SpacePtr domain, SpacePtr codomain,
                                   const std::vector<std::pair<Label, Label>>& assignment) {
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  idx.reserve(assignment.size());
  for (const auto& [x, y] : assignment) idx.emplace_back(domain->index_of(x), codomain->index_of(y));
  return PartialMap(std::move(domain), std::move(codomain), std::move(idx));
}

std::optional<std::size_t> PartialMap::image(std::size_t x) const {
  if (x >= lookup_.size() || lookup_[x] < 0) return std::nullopt;
  return static_cast<std::size_t>(lookup_[x]);
}

PartialMap identity_map(const SpacePtr& space) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) pairs.emplace_back(i, i);
  return PartialMap(space, space, std::move(pairs));
}

DefectReport defect(const PartialMap& f) {
  const auto& X = *f.domain();
  const auto& Y = *f.codomain();
  const auto& pairs = f.assignment();
  DefectReport report;
  report.witness = {X.label(pairs.front().first), X.label(pairs.front().first)};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const double distortion = std::abs(Y.distance(pairs[i].second, pairs[j].second) -
                                         X.distance(pairs[i].first, pairs[j].first));
      if (distortion > report.defect) {
        report.defect = distortion;
        report.witness = {X.label(pairs[i].first), X.label(pairs[j].first)};
      }
    }
  }
  return report;
}

double effective_constant(const PartialMap& f, double epsilon) {
  if (!(epsilon > 0.0)) throw StructuralError("epsilon must be positive");
  return std::max(defect(f).defect, epsilon);
}

GlueMetric glue_from_map_with_constant(const PartialMap& f, double constant) {
  if (!(constant > 0.0) || !std::isfinite(constant)) {
    throw StructuralError("glue constant must be positive and finite");
  }
  if (constant + kMetricTolerance < defect(f).defect) {
    throw StructuralError("glue constant is below the defect of the map");
  }
  const auto& X = *f.domain();
  const auto& Y = *f.codomain();
  const auto& pairs = f.assignment();
  Matrix to_support(X.size(), pairs.size());
  Matrix from_image(pairs.size(), Y.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    for (std::size_t x = 0; x < X.size(); ++x) to_support(x, k) = X.distance(x, pairs[k].first);
    for (std::size_t y = 0; y < Y.size(); ++y) from_image(k, y) = Y.distance(pairs[k].second, y);
  }
  Matrix cross = min_plus(to_support, from_image);
  const double half = constant / 2.0;
  for (std::size_t x = 0; x < cross.rows(); ++x) {
    for (std::size_t y = 0; y < cross.cols(); ++y) cross(x, y) += half;
  }
  return GlueMetric(f.domain(), f.codomain(), std::move(cross));
}

GlueMetric glue_from_map(const PartialMap& f, double epsilon) {
  return glue_from_map_with_constant(f, effective_constant(f, epsilon));
}

PartialMap compose_maps(const PartialMap& f, const PartialMap& g) {
  if (!same_space(f.codomain(), g.domain())) {
    throw StructuralError("compose_maps: codomain of f is not the domain of g");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [x, y] : f.assignment()) {
    if (auto z = g.image(y)) pairs.emplace_back(x, *z);
  }
  if (pairs.empty()) throw StructuralError("compose_maps: image of f misses the support of g");
  return PartialMap(f.domain(), g.codomain(), std::move(pairs));
}

namespace {

double max_return_distance(const PartialMap& there, const PartialMap& back) {
  double worst = 0.0;
  const auto& space = *there.domain();
  for (const auto& [x, y] : there.assignment()) {
    if (auto z = back.image(y)) worst = std::max(worst, space.distance(x, *z));
  }
  return worst;
}

}  // namespace

SandwichReport sandwich_check(const PartialMap& f, const PartialMap& g, double epsilon) {
  const PartialMap gf = compose_maps(f, g);
  SandwichReport r;
  r.constant_f = effective_constant(f, epsilon);
  r.constant_g = effective_constant(g, epsilon);
  r.constant_gf = r.constant_f + r.constant_g;

  const GlueMetric through = compose_glue(glue_from_map_with_constant(f, r.constant_f),
                                          glue_from_map_with_constant(g, r.constant_g));
  const GlueMetric direct = glue_from_map_with_constant(gf, r.constant_gf);

  r.lower_gap = -std::numeric_limits<double>::infinity();
  r.upper_gap = -std::numeric_limits<double>::infinity();
  r.upper_gap_min = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < through.cross().rows(); ++x) {
    for (std::size_t z = 0; z < through.cross().cols(); ++z) {
      const double diff = direct(x, z) - through(x, z);
      r.lower_gap = std::max(r.lower_gap, -diff);
      r.upper_gap = std::max(r.upper_gap, diff);
      r.upper_gap_min = std::min(r.upper_gap_min, diff);
    }
  }
  r.lower_holds = r.lower_gap <= kMetricTolerance;

  // Every support point of f survives into g∘f exactly when f's image lies in
  // supp g; then d_Z(gf(a), z) <= d_Y(f(a), b) + defect(g) + d_Z(g(b), z).
  if (gf.support_size() == f.support_size()) r.upper_bound = defect(g).defect;
  r.upper_holds = !r.upper_bound || r.upper_gap <= *r.upper_bound + kMetricTolerance;
  r.passes = r.lower_holds && r.upper_holds;

  if (same_space(g.codomain(), f.domain())) {
    r.return_distance_x = max_return_distance(f, g);
    r.return_distance_y = max_return_distance(g, f);
  }
  return r;
}

std::variant<PartialMap, CloseMapFailure> extract_close_map(const GlueMetric& g, double bound) {
  const auto& X = *g.left();
  const auto& Y = *g.right();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  CloseMapFailure failure{"", std::numeric_limits<double>::infinity(), bound};
  for (std::size_t x = 0; x < X.size(); ++x) {
    const auto row = g.cross().row(x);
    if (row.empty()) break;
    // min_element returns the first minimum, i.e. the earliest point of Y.
    const auto best = static_cast<std::size_t>(std::min_element(row.begin(), row.end()) - row.begin());
    if (row[best] <= bound + kMetricTolerance) {
      pairs.emplace_back(x, best);
    } else if (row[best] < failure.nearest) {
      failure.witness = X.label(x);
      failure.nearest = row[best];
    }
  }
  if (pairs.empty()) {
    if (X.size() == 0 || Y.size() == 0) failure.witness.clear();
    return failure;
  }
  return PartialMap(g.left(), g.right(), std::move(pairs));
}

NearIdentityReport near_identity_check(const GlueMetric& g) {
  if (!same_space(g.left(), g.right())) {
    throw StructuralError("near_identity_check needs a glue on two copies of one space");
  }
  const auto& X = *g.left();
  NearIdentityReport r;
  for (std::size_t x = 0; x < X.size(); ++x) r.diagonal_bound = std::max(r.diagonal_bound, g(x, x));
  const double L = r.diagonal_bound;
  r.upper_offset = L - 1.0;
  r.lower_offset = L + 1.0;
  r.upper_slack = std::numeric_limits<double>::infinity();
  r.lower_slack = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < X.size(); ++a) {
    for (std::size_t b = 0; b < X.size(); ++b) {
      const double d0 = X.distance(a, b) + 1.0;
      r.upper_slack = std::min(r.upper_slack, d0 + r.upper_offset - g(a, b));
      r.lower_slack = std::min(r.lower_slack, g(a, b) + r.lower_offset - d0);
    }
  }
  r.upper_holds = r.upper_slack >= -kMetricTolerance;
  r.lower_holds = r.lower_slack >= -kMetricTolerance;
  if (r.upper_holds && r.lower_holds) r.bound = L;
  return r;
}

}  // namespace roecalc
