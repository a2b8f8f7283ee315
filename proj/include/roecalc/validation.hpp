#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "roecalc/metric_space.hpp"

namespace roecalc {

enum class ViolationKind {
  NonzeroDiagonal,    // d(p,p) != 0
  Positivity,         // d(p,q) <= 0 for p != q, or cross(x,y) <= 0
  Symmetry,           // d(p,q) != d(q,p)
  Triangle,           // d(p,r) > d(p,q) + d(q,r) inside one space
  LeftThroughRight,   // d_X(x,x') > cross(x,y) + cross(x',y)
  RightThroughLeft,   // d_Y(y,y') > cross(x,y) + cross(x,y')
  CrossViaLeft,       // cross(x,y) > d_X(x,x') + cross(x',y)
  CrossViaRight,      // cross(x,y) > cross(x,y') + d_Y(y',y)
  EmbeddingMismatch,  // family member does not embed isometrically into the next
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<Label> witness;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Outcome of a metric or glue scan. `violations` holds at most
/// kMaxReportedViolations witnesses; `violation_count` counts all of them.
struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  std::size_t violation_count = 0;
  double min_separation = 0.0;  // +inf when fewer than two points
};

inline constexpr std::size_t kMaxReportedViolations = 100;

/// Checks zero diagonal, positivity, symmetry and every triangle.
ValidationReport validate_metric(const FiniteMetricSpace& space);

/// Checks both spaces plus the four mixed conditions that make the cross table
/// a metric on X ⊔ Y.
ValidationReport validate_glue(const GlueMetric& glue);

}  // namespace roecalc
