#include "roecalc/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roecalc/errors.hpp"

namespace roecalc {

FiniteMetricSpace::FiniteMetricSpace(std::vector<Label> points, Matrix dist)
    : points_(std::move(points)), dist_(std::move(dist)) {
  const std::size_t n = points_.size();
  if (dist_.rows() != n || dist_.cols() != n) {
    throw StructuralError("distance matrix is " + std::to_string(dist_.rows()) + "x" +
                          std::to_string(dist_.cols()) + " but the space has " +
                          std::to_string(n) + " points");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = dist_(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw StructuralError("distance (" + points_[i] + ", " + points_[j] +
                              ") is not a finite non-negative number");
      }
    }
  }
  index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(points_[i], i).second) {
      throw StructuralError("duplicate point label '" + points_[i] + "'");
    }
  }
}

std::optional<std::size_t> FiniteMetricSpace::find(const Label& label) const {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t FiniteMetricSpace::index_of(const Label& label) const {
  if (auto i = find(label)) return *i;
  throw StructuralError("unknown point label '" + label + "'");
}

double FiniteMetricSpace::diameter() const {
  const auto values = dist_.values();
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

SpacePtr make_space(std::vector<Label> points, Matrix dist) {
  return std::make_shared<const FiniteMetricSpace>(std::move(points), std::move(dist));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

GlueMetric::GlueMetric(SpacePtr left, SpacePtr right, Matrix cross)
    : left_(std::move(left)), right_(std::move(right)), cross_(std::move(cross)) {
  if (!left_ || !right_) throw StructuralError("glue metric needs both spaces");
  if (cross_.rows() != left_->size() || cross_.cols() != right_->size()) {
    throw StructuralError("cross matrix is " + std::to_string(cross_.rows()) + "x" +
                          std::to_string(cross_.cols()) + ", expected " +
                          std::to_string(left_->size()) + "x" + std::to_string(right_->size()));
  }
  for (double v : cross_.values()) {
    if (!std::isfinite(v)) throw StructuralError("cross distance is not finite");
  }
}

bool GlueMetric::shares_spaces_with(const GlueMetric& other) const {
  return same_space(left_, other.left_) && same_space(right_, other.right_);
}

}  // namespace roecalc
