#pragma once

#include <string>
#include <variant>
#include <vector>

#include "roecalc/metric_space.hpp"

namespace roecalc {

/// Proof that no glue keeps every required pair within the bound: walking the
/// witness through required cross hops (and in-space legs) is shorter than the
/// direct distance between its endpoints. Always lhs > rhs.
struct ObstructionCertificate {
  std::string kind;                // "triangle" (one pivot) or "path"
  std::vector<Label> witness;      // triangle: pivot, then its two partners
  std::vector<std::string> sides;  // "left" / "right" for each witness point
  double lhs = 0.0;                // direct distance between the endpoints
  double rhs = 0.0;                // length of the constrained route
  double bound = 0.0;              // weight of every required cross hop
};

using FeasibilityResult = std::variant<GlueMetric, ObstructionCertificate>;

/// Looks for a glue d with d(x,y) <= bound on every pair where g1 or g2 is
/// within bound. Builds the shortest-path closure of X ⊔ Y with in-space
/// edges d_X, d_Y and cross edges of weight `bound` on the required pairs.
/// If the closure leaves d_X and d_Y intact, its cross block is returned.
/// Otherwise a certificate is returned, preferring a triangle through one
/// pivot built from each pivot's nearest g1 and g2 partners, then any
/// triangle of required pairs, then a general path; the smallest margin
/// lhs - rhs wins within a tier.
FeasibilityResult upper_bound_feasibility(const GlueMetric& g1, const GlueMetric& g2, double bound);

}  // namespace roecalc
