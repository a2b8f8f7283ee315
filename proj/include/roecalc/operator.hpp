#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "roecalc/metric_space.hpp"

namespace roecalc {

using Complex = std::complex<double>;

/// Sparse operator T: l²(X) -> l²(Y). Entry (row y, column x) holds T_{yx},
/// the coefficient of δ_y in T δ_x. No explicit zeros are stored.
class FinitePropagationOperator {
 public:
  struct Entry {
    std::size_t row;  // index in the target space
    std::size_t col;  // index in the source space
    Complex value;

    bool operator==(const Entry&) const = default;
  };

  /// Duplicate positions are summed; exact zeros are dropped; entries are kept
  /// sorted by (row, col).
  FinitePropagationOperator(SpacePtr source, SpacePtr target, std::vector<Entry> entries);

  static FinitePropagationOperator zero(SpacePtr source, SpacePtr target) {
    return {std::move(source), std::move(target), {}};
  }

  const SpacePtr& source() const noexcept { return source_; }
  const SpacePtr& target() const noexcept { return target_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }

  Complex coefficient(std::size_t row, std::size_t col) const;

  /// Applies the operator to a vector indexed by the source space.
  std::vector<Complex> apply(const std::vector<Complex>& v) const;

  bool operator==(const FinitePropagationOperator& other) const {
    return same_space(source_, other.source_) && same_space(target_, other.target_) &&
           entries_ == other.entries_;
  }

 private:
  SpacePtr source_;
  SpacePtr target_;
  std::vector<Entry> entries_;
};

using Operator = FinitePropagationOperator;

/// e_{x,y}: sends δ_x to δ_y.
Operator elementary(const SpacePtr& source, const SpacePtr& target, const Label& x, const Label& y);

/// Largest g(x,y) over nonzero entries T_{yx}; 0 for the zero operator.
/// "T has propagation less than L" iff the result is < L.
double propagation(const Operator& t, const GlueMetric& g);

/// Propagation of an operator on a single space, measured with its own metric.
double propagation(const Operator& t, const FiniteMetricSpace& space);

/// S ∘ T; requires T.target == S.source.
Operator compose(const Operator& s, const Operator& t);
Operator adjoint(const Operator& t);
Operator add(const Operator& a, const Operator& b);
Operator scale(Complex c, const Operator& t);

/// Largest singular value. Dense SVD when min(rows, cols) <= 512, otherwise
/// power iteration on T*T.
double operator_norm(const Operator& t);

/// Power iteration on T*T, stopping when the Rayleigh quotient changes by less
/// than rel_tol relative to its value.
double operator_norm_power_iteration(const Operator& t, double rel_tol = 1e-8, int max_iter = 10000);

struct PropagationBoundReport {
  double composite = 0.0;  // propagation(S∘T, compose_glue(g_xy, g_yz))
  double sum = 0.0;        // propagation(T, g_xy) + propagation(S, g_yz)
  bool holds = false;
};

PropagationBoundReport propagation_bound_check(const Operator& s, const Operator& t,
                                               const GlueMetric& g_xy, const GlueMetric& g_yz);

}  // namespace roecalc
