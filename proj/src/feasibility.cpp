#include "roecalc/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "roecalc/errors.hpp"

namespace roecalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

struct Candidate {
  ObstructionCertificate cert;
  double margin() const { return cert.lhs - cert.rhs; }
};

void keep_tightest(std::optional<Candidate>& best, Candidate c) {
  if (!best || c.margin() < best->margin() - kMetricTolerance) best = std::move(c);
}

Candidate triangle(const Label& pivot, const char* pivot_side, const Label& a, const Label& b,
                   const char* partner_side, double lhs, double bound) {
  Candidate c;
  c.cert.kind = "triangle";
  c.cert.witness = {pivot, a, b};
  c.cert.sides = {pivot_side, partner_side, partner_side};
  c.cert.lhs = lhs;
  c.cert.rhs = 2.0 * bound;
  c.cert.bound = bound;
  return c;
}

// Pivot-nearest partner, restricted to pairs within the bound.
std::optional<std::size_t> nearest(const Matrix& m, std::size_t pivot, bool pivot_is_row, double bound) {
  std::optional<std::size_t> best;
  double best_value = kInf;
  const std::size_t n = pivot_is_row ? m.cols() : m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const double v = pivot_is_row ? m(pivot, k) : m(k, pivot);
    if (v <= bound + kMetricTolerance && v < best_value) {
      best_value = v;
      best = k;
    }
  }
  return best;
}

}  // namespace

FeasibilityResult upper_bound_feasibility(const GlueMetric& g1, const GlueMetric& g2, double bound) {
  if (!g1.shares_spaces_with(g2)) throw StructuralError("upper_bound_feasibility: glues live on different spaces");
  if (!(bound > 0.0)) throw StructuralError("upper_bound_feasibility: bound must be positive");
  const FiniteMetricSpace& X = *g1.left();
  const FiniteMetricSpace& Y = *g1.right();
  const std::size_t nx = X.size();
  const std::size_t ny = Y.size();

  auto required = [&](std::size_t x, std::size_t y) {
    return g1(x, y) <= bound + kMetricTolerance || g2(x, y) <= bound + kMetricTolerance;
  };
  bool any_required = false;
  for (std::size_t x = 0; x < nx && !any_required; ++x) {
    for (std::size_t y = 0; y < ny && !any_required; ++y) any_required = required(x, y);
  }
  if (!any_required) {
    // Nothing to satisfy: a constant cross distance of at least half of each
    // diameter is a glue.
    const double c = std::max({X.diameter(), Y.diameter(), bound});
    return GlueMetric(g1.left(), g1.right(), Matrix(nx, ny, c));
  }

  // Floyd–Warshall on X ⊔ Y; nodes 0..nx-1 are X, nx.. are Y.
  const std::size_t n = nx + ny;
  Matrix dist(n, n, kInf);
  std::vector<std::size_t> next(n * n, kNoNode);
  auto link = [&](std::size_t a, std::size_t b, double w) {
    dist(a, b) = w;
    next[a * n + b] = b;
  };
  for (std::size_t a = 0; a < nx; ++a) {
    for (std::size_t b = 0; b < nx; ++b) link(a, b, X.distance(a, b));
  }
  for (std::size_t a = 0; a < ny; ++a) {
    for (std::size_t b = 0; b < ny; ++b) link(nx + a, nx + b, Y.distance(a, b));
  }
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (required(x, y)) {
        link(x, nx + y, bound);
        link(nx + y, x, bound);
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = dist(i, k);
      if (dik == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (dik + dist(k, j) < dist(i, j)) {
          dist(i, j) = dik + dist(k, j);
          next[i * n + j] = next[i * n + k];
        }
      }
    }
  }

  std::optional<std::pair<std::size_t, std::size_t>> broken;
  for (std::size_t a = 0; a < n && !broken; ++a) {
    for (std::size_t b = a + 1; b < n && !broken; ++b) {
      const bool both_x = a < nx && b < nx;
      const bool both_y = a >= nx && b >= nx;
      if (!both_x && !both_y) continue;
      const double original = both_x ? X.distance(a, b) : Y.distance(a - nx, b - nx);
      if (dist(a, b) < original - kMetricTolerance) broken = std::pair{a, b};
    }
  }
  if (!broken) {
    Matrix cross(nx, ny);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) cross(x, y) = dist(x, nx + y);
    }
    return GlueMetric(g1.left(), g1.right(), std::move(cross));
  }

  // Tier 1: each pivot with its nearest g1 partner and nearest g2 partner.
  std::optional<Candidate> best;
  for (std::size_t x = 0; x < nx; ++x) {
    auto a = nearest(g1.cross(), x, true, bound);
    auto b = nearest(g2.cross(), x, true, bound);
    if (a && b && Y.distance(*a, *b) > 2.0 * bound + kMetricTolerance) {
      keep_tightest(best, triangle(X.label(x), "left", Y.label(*a), Y.label(*b), "right",
                                   Y.distance(*a, *b), bound));
    }
  }
  for (std::size_t y = 0; y < ny; ++y) {
    auto a = nearest(g1.cross(), y, false, bound);
    auto b = nearest(g2.cross(), y, false, bound);
    if (a && b && X.distance(*a, *b) > 2.0 * bound + kMetricTolerance) {
      keep_tightest(best, triangle(Y.label(y), "right", X.label(*a), X.label(*b), "left",
                                   X.distance(*a, *b), bound));
    }
  }
  if (best) return best->cert;

  // Tier 2: any two required pairs sharing a pivot.
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t a = 0; a < ny; ++a) {
      if (!required(x, a)) continue;
      for (std::size_t b = a + 1; b < ny; ++b) {
        if (required(x, b) && Y.distance(a, b) > 2.0 * bound + kMetricTolerance) {
          keep_tightest(best, triangle(X.label(x), "left", Y.label(a), Y.label(b), "right",
                                       Y.distance(a, b), bound));
        }
      }
    }
  }
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t a = 0; a < nx; ++a) {
      if (!required(a, y)) continue;
      for (std::size_t b = a + 1; b < nx; ++b) {
        if (required(b, y) && X.distance(a, b) > 2.0 * bound + kMetricTolerance) {
          keep_tightest(best, triangle(Y.label(y), "right", X.label(a), X.label(b), "left",
                                       X.distance(a, b), bound));
        }
      }
    }
  }
  if (best) return best->cert;

  // Tier 3: the shortest path that undercuts an in-space distance.
  const auto [from, to] = *broken;
  ObstructionCertificate cert;
  cert.kind = "path";
  cert.bound = bound;
  cert.lhs = from < nx ? X.distance(from, to) : Y.distance(from - nx, to - nx);
  cert.rhs = dist(from, to);
  for (std::size_t v = from;; v = next[v * n + to]) {
    cert.witness.push_back(v < nx ? X.label(v) : Y.label(v - nx));
    cert.sides.emplace_back(v < nx ? "left" : "right");
    if (v == to) break;
  }
  return cert;
}

}  // namespace roecalc
