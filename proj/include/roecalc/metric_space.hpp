#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "roecalc/matrix.hpp"

namespace roecalc {

using Label = std::string;

/// Absolute tolerance for every metric comparison (triangle checks, bounds).
inline constexpr double kMetricTolerance = 1e-9;

/// A finite truncation of a discrete metric space: ordered labelled points and
/// their pairwise distances.
///
/// Construction only enforces structure (square matrix matching the point
/// list, finite non-negative entries, unique labels). Metric axioms are
/// checked by validate_metric so that broken inputs can be diagnosed rather
/// than rejected outright.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<Label> points, Matrix dist);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Label>& labels() const noexcept { return points_; }
  const Label& label(std::size_t i) const { return points_.at(i); }
  const Matrix& dist() const noexcept { return dist_; }
  double distance(std::size_t i, std::size_t j) const noexcept { return dist_(i, j); }

  std::optional<std::size_t> find(const Label& label) const;
  /// Index of `label`; throws StructuralError when absent.
  std::size_t index_of(const Label& label) const;

  double diameter() const;

  bool operator==(const FiniteMetricSpace& other) const {
    return points_ == other.points_ && dist_ == other.dist_;
  }

 private:
  std::vector<Label> points_;
  Matrix dist_;
  std::unordered_map<Label, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

SpacePtr make_space(std::vector<Label> points, Matrix dist);

/// True when both refer to the same space: identical object, or equal labels
/// and distances.
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// A metric on the disjoint union X ⊔ Y that restricts to d_X and d_Y, stored
/// as the |X|×|Y| table of cross distances.
class GlueMetric {
 public:
  GlueMetric(SpacePtr left, SpacePtr right, Matrix cross);

  const SpacePtr& left() const noexcept { return left_; }
  const SpacePtr& right() const noexcept { return right_; }
  const Matrix& cross() const noexcept { return cross_; }
  double operator()(std::size_t x, std::size_t y) const noexcept { return cross_(x, y); }

  /// Both glues live on the same pair of spaces.
  bool shares_spaces_with(const GlueMetric& other) const;

  bool operator==(const GlueMetric& other) const {
    return same_space(left_, other.left_) && same_space(right_, other.right_) &&
           cross_ == other.cross_;
  }

 private:
  SpacePtr left_;
  SpacePtr right_;
  Matrix cross_;
};

}  // namespace roecalc
