#pragma once

// Brute-force oracles and small builders shared by the unit tests. The oracles
// deliberately avoid the library's algorithms: they work on the full distance
// table of the disjoint union and use plain nested loops.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "roecalc/almost_isometry.hpp"
#include "roecalc/catalog.hpp"
#include "roecalc/matrix.hpp"
#include "roecalc/metric_space.hpp"
#include "roecalc/random.hpp"

namespace oracle {

using namespace roecalc;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline SpacePtr line(const std::vector<double>& coords, const std::string& prefix = "p") {
  std::vector<Label> labels;
  Matrix d(coords.size(), coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    labels.push_back(prefix + std::to_string(i));
    for (std::size_t j = 0; j < coords.size(); ++j) d(i, j) = std::abs(coords[i] - coords[j]);
  }
  return make_space(std::move(labels), std::move(d));
}

inline SpacePtr point(const std::string& label = "o") {
  return make_space({label}, Matrix(1, 1, 0.0));
}

// Full (|X|+|Y|)² table of the glued metric.
inline Matrix union_table(const GlueMetric& g) {
  const std::size_t nx = g.left()->size(), ny = g.right()->size();
  Matrix u(nx + ny, nx + ny);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j) u(i, j) = g.left()->distance(i, j);
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = 0; j < ny; ++j) u(nx + i, nx + j) = g.right()->distance(i, j);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) u(x, nx + y) = u(nx + y, x) = g(x, y);
  return u;
}

inline std::size_t triangle_violations(const Matrix& d, double tol = 1e-9) {
  std::size_t count = 0;
  for (std::size_t p = 0; p < d.rows(); ++p)
    for (std::size_t q = 0; q < d.rows(); ++q)
      for (std::size_t r = 0; r < d.rows(); ++r) {
        if (p == q || q == r || p == r) continue;
        if (d(p, r) > d(p, q) + d(q, r) + tol) ++count;
      }
  return count;
}

inline bool is_metric(const Matrix& d, double tol = 1e-9) {
  for (std::size_t p = 0; p < d.rows(); ++p) {
    if (std::abs(d(p, p)) > tol) return false;
    for (std::size_t q = 0; q < d.rows(); ++q) {
      if (p != q && d(p, q) <= tol) return false;
      if (std::abs(d(p, q) - d(q, p)) > tol) return false;
    }
  }
  return triangle_violations(d, tol) == 0;
}

inline bool glue_is_metric(const GlueMetric& g) { return is_metric(union_table(g)); }

inline Matrix min_plus(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols(), kInf);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) out(i, j) = std::min(out(i, j), a(i, k) + b(k, j));
  return out;
}

inline double defect(const PartialMap& f) {
  double worst = 0.0;
  for (const auto& [a, fa] : f.assignment())
    for (const auto& [b, fb] : f.assignment())
      worst = std::max(worst, std::abs(f.codomain()->distance(fa, fb) - f.domain()->distance(a, b)));
  return worst;
}

// d_f(x,y) = min over the support of d_X(x,a) + C/2 + d_Y(f(a),y).
inline Matrix induced_cross(const PartialMap& f, double constant) {
  const auto& X = *f.domain();
  const auto& Y = *f.codomain();
  Matrix out(X.size(), Y.size(), kInf);
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = 0; y < Y.size(); ++y)
      for (const auto& [a, fa] : f.assignment())
        out(x, y) = std::min(out(x, y), X.distance(x, a) + constant / 2 + Y.distance(fa, y));
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

// Random space of 1..max_points points from the catalog generator.
inline SpacePtr random_space(Rng& rng, std::size_t max_points, const std::string& prefix = "") {
  const std::size_t n = 1 + rng.below(max_points);
  SpacePtr s = random_bounded_geometry(n, 4, rng.next());
  if (prefix.empty()) return s;
  std::vector<Label> labels;
  for (const auto& l : s->labels()) labels.push_back(prefix + l);
  return make_space(std::move(labels), s->dist());
}

inline PartialMap random_partial_map(Rng& rng, const SpacePtr& x, const SpacePtr& y) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < x->size(); ++i)
    if (rng.coin()) pairs.emplace_back(i, rng.below(y->size()));
  if (pairs.empty()) pairs.emplace_back(rng.below(x->size()), rng.below(y->size()));
  return PartialMap(x, y, std::move(pairs));
}

// Number of distance-preserving bijections of a finite space, by backtracking
// over point images with every partial assignment checked against the earlier ones.
inline std::size_t isometry_count(const FiniteMetricSpace& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> image(n);
  std::vector<bool> used(n, false);
  std::size_t count = 0;
  auto extend = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      ++count;
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = s.distance(image[j], c) == s.distance(j, k);
      if (!ok) continue;
      used[c] = true;
      image[k] = c;
      self(self, k + 1);
      used[c] = false;
    }
  };
  extend(extend, 0);
  return count;
}

}  // namespace oracle
