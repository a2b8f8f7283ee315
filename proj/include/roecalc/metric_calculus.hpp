#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "roecalc/metric_space.hpp"

namespace roecalc {

/// Glues X ⊔ Z through a shared middle space Y:
///   cross(x,z) = min_y g_xy(x,y) + g_yz(y,z).
/// Throws StructuralError when g_xy.right() and g_yz.left() differ or Y is empty.
GlueMetric compose_glue(const GlueMetric& g_xy, const GlueMetric& g_yz);

/// The same metric read as a morphism Y -> X (transposed cross table).
GlueMetric adjoint_glue(const GlueMetric& g);

/// d⁰ on two copies of X: cross(x, y') = d_X(x, y) + 1.
GlueMetric identity_glue(const SpacePtr& space);

/// Pointwise maximum of two glues on the same spaces.
GlueMetric meet_glue(const GlueMetric& g1, const GlueMetric& g2);

struct GrowthSample {
  double radius;
  std::size_t max_ball;  // max_x |{p : d(x,p) <= radius}|
};

/// Ball growth of a space at each radius; radii must be strictly increasing.
std::vector<GrowthSample> growth_function(const FiniteMetricSpace& space,
                                          std::span<const double> radii);

}  // namespace roecalc
