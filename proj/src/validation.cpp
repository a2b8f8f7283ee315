#include "roecalc/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace roecalc {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonzeroDiagonal: return "nonzero_diagonal";
    case ViolationKind::Positivity: return "positivity";
    case ViolationKind::Symmetry: return "symmetry";
    case ViolationKind::Triangle: return "triangle";
    case ViolationKind::LeftThroughRight: return "left_through_right";
    case ViolationKind::RightThroughLeft: return "right_through_left";
    case ViolationKind::CrossViaLeft: return "cross_via_left";
    case ViolationKind::CrossViaRight: return "cross_via_right";
    case ViolationKind::EmbeddingMismatch: return "embedding_mismatch";
  }
  return "unknown";
}

namespace {

class Collector {
 public:
  explicit Collector(ValidationReport& report) : report_(report) {}

  void add(ViolationKind kind, std::vector<Label> witness, double lhs, double rhs) {
    ++report_.violation_count;
    report_.ok = false;
    if (report_.violations.size() < kMaxReportedViolations) {
      report_.violations.push_back({kind, std::move(witness), lhs, rhs});
    }
  }

 private:
  ValidationReport& report_;
};

void scan_space(const FiniteMetricSpace& s, Collector& out, double& min_sep) {
  const std::size_t n = s.size();
  for (std::size_t p = 0; p < n; ++p) {
    if (std::abs(s.distance(p, p)) > kMetricTolerance) {
      out.add(ViolationKind::NonzeroDiagonal, {s.label(p)}, s.distance(p, p), 0.0);
    }
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      const double d = s.distance(p, q);
      if (p < q) {
        min_sep = std::min(min_sep, d);
        if (std::abs(d - s.distance(q, p)) > kMetricTolerance) {
          out.add(ViolationKind::Symmetry, {s.label(p), s.label(q)}, d, s.distance(q, p));
        }
      }
      if (d <= kMetricTolerance) {
        out.add(ViolationKind::Positivity, {s.label(p), s.label(q)}, d, 0.0);
      }
    }
  }
  // Triangle: d(p,r) <= d(p,q) + d(q,r) over all ordered triples.
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t r = 0; r < n; ++r) {
      if (p == r) continue;
      const double direct = s.distance(p, r);
      for (std::size_t q = 0; q < n; ++q) {
        if (q == p || q == r) continue;
        const double via = s.distance(p, q) + s.distance(q, r);
        if (direct > via + kMetricTolerance) {
          out.add(ViolationKind::Triangle, {s.label(p), s.label(q), s.label(r)}, direct, via);
        }
      }
    }
  }
}

}  // namespace

ValidationReport validate_metric(const FiniteMetricSpace& space) {
  ValidationReport report;
  Collector out(report);
  double min_sep = std::numeric_limits<double>::infinity();
  scan_space(space, out, min_sep);
  report.min_separation = min_sep;
  return report;
}

ValidationReport validate_glue(const GlueMetric& glue) {
  ValidationReport report;
  Collector out(report);
  const FiniteMetricSpace& X = *glue.left();
  const FiniteMetricSpace& Y = *glue.right();
  double min_sep = std::numeric_limits<double>::infinity();
  scan_space(X, out, min_sep);
  scan_space(Y, out, min_sep);

  const std::size_t nx = X.size();
  const std::size_t ny = Y.size();
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      const double c = glue(x, y);
      min_sep = std::min(min_sep, c);
      if (c <= kMetricTolerance) {
        out.add(ViolationKind::Positivity, {X.label(x), Y.label(y)}, c, 0.0);
      }
    }
  }
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t x2 = 0; x2 < nx; ++x2) {
        if (x2 == x) continue;
        if (x < x2) {
          const double via = glue(x, y) + glue(x2, y);
          if (X.distance(x, x2) > via + kMetricTolerance) {
            out.add(ViolationKind::LeftThroughRight, {X.label(x), Y.label(y), X.label(x2)},
                    X.distance(x, x2), via);
          }
        }
        const double via_left = X.distance(x, x2) + glue(x2, y);
        if (glue(x, y) > via_left + kMetricTolerance) {
          out.add(ViolationKind::CrossViaLeft, {X.label(x), X.label(x2), Y.label(y)}, glue(x, y),
                  via_left);
        }
      }
    }
  }
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t y2 = 0; y2 < ny; ++y2) {
        if (y2 == y) continue;
        if (y < y2) {
          const double via = glue(x, y) + glue(x, y2);
          if (Y.distance(y, y2) > via + kMetricTolerance) {
            out.add(ViolationKind::RightThroughLeft, {Y.label(y), X.label(x), Y.label(y2)},
                    Y.distance(y, y2), via);
          }
        }
        const double via_right = glue(x, y2) + Y.distance(y2, y);
        if (glue(x, y) > via_right + kMetricTolerance) {
          out.add(ViolationKind::CrossViaRight, {X.label(x), Y.label(y2), Y.label(y)}, glue(x, y),
                  via_right);
        }
      }
    }
  }
  report.min_separation = min_sep;
  return report;
}

}  // namespace roecalc
