#include "roecalc/metric_calculus.hpp"

#include <algorithm>

#include "roecalc/errors.hpp"

namespace roecalc {

GlueMetric compose_glue(const GlueMetric& g_xy, const GlueMetric& g_yz) {
  if (!same_space(g_xy.right(), g_yz.left())) {
    throw StructuralError("compose_glue: middle spaces differ");
  }
  if (g_xy.right()->size() == 0) {
    throw StructuralError("compose_glue: middle space is empty");
  }
  return GlueMetric(g_xy.left(), g_yz.right(), min_plus(g_xy.cross(), g_yz.cross()));
}

GlueMetric adjoint_glue(const GlueMetric& g) {
  return GlueMetric(g.right(), g.left(), g.cross().transposed());
}

GlueMetric identity_glue(const SpacePtr& space) {
  const std::size_t n = space->size();
  Matrix cross(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cross(i, j) = space->distance(i, j) + 1.0;
  }
  return GlueMetric(space, space, std::move(cross));
}

GlueMetric meet_glue(const GlueMetric& g1, const GlueMetric& g2) {
  if (!g1.shares_spaces_with(g2)) throw StructuralError("meet_glue: glues live on different spaces");
  Matrix cross = g1.cross();
  for (std::size_t x = 0; x < cross.rows(); ++x) {
    for (std::size_t y = 0; y < cross.cols(); ++y) cross(x, y) = std::max(cross(x, y), g2(x, y));
  }
  return GlueMetric(g1.left(), g1.right(), std::move(cross));
}

std::vector<GrowthSample> growth_function(const FiniteMetricSpace& space,
                                          std::span<const double> radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw StructuralError("growth_function: radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw StructuralError("growth_function: radii must be strictly increasing");
    }
  }
  std::vector<GrowthSample> out;
  out.reserve(radii.size());
  for (double r : radii) {
    std::size_t best = 0;
    for (std::size_t x = 0; x < space.size(); ++x) {
      const auto row = space.dist().row(x);
      const auto count = static_cast<std::size_t>(std::count_if(
          row.begin(), row.end(), [r](double d) { return d <= r + kMetricTolerance; }));
      best = std::max(best, count);
    }
    out.push_back({r, best});
  }
  return out;
}

}  // namespace roecalc
