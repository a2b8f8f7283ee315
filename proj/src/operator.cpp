#include "roecalc/operator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "roecalc/errors.hpp"
#include "roecalc/metric_calculus.hpp"

namespace roecalc {

FinitePropagationOperator::FinitePropagationOperator(SpacePtr source, SpacePtr target,
                                                     std::vector<Entry> entries)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw StructuralError("operator needs source and target spaces");
  std::map<std::pair<std::size_t, std::size_t>, Complex> merged;
  for (const auto& e : entries) {
    if (e.row >= target_->size() || e.col >= source_->size()) {
      throw StructuralError("operator entry index out of range");
    }
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
      throw StructuralError("operator entry is not finite");
    }
    merged[{e.row, e.col}] += e.value;
  }
  entries_.reserve(merged.size());
  for (const auto& [pos, v] : merged) {
    if (v != Complex{}) entries_.push_back({pos.first, pos.second, v});
  }
}

Complex FinitePropagationOperator::coefficient(std::size_t row, std::size_t col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                             [](const Entry& e, const std::pair<std::size_t, std::size_t>& key) {
                               return std::pair{e.row, e.col} < key;
                             });
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return {};
}

std::vector<Complex> FinitePropagationOperator::apply(const std::vector<Complex>& v) const {
  if (v.size() != source_->size()) throw StructuralError("vector length does not match the source");
  std::vector<Complex> out(target_->size());
  for (const auto& e : entries_) out[e.row] += e.value * v[e.col];
  return out;
}

Operator elementary(const SpacePtr& source, const SpacePtr& target, const Label& x, const Label& y) {
  return Operator(source, target, {{target->index_of(y), source->index_of(x), Complex{1.0, 0.0}}});
}

double propagation(const Operator& t, const GlueMetric& g) {
  if (!same_space(t.source(), g.left()) || !same_space(t.target(), g.right())) {
    throw StructuralError("propagation: operator spaces do not match the glue");
  }
  double worst = 0.0;
  for (const auto& e : t.entries()) worst = std::max(worst, g(e.col, e.row));
  return worst;
}

double propagation(const Operator& t, const FiniteMetricSpace& space) {
  if (!(*t.source() == space) || !(*t.target() == space)) {
    throw StructuralError("propagation: operator does not act on this space");
  }
  double worst = 0.0;
  for (const auto& e : t.entries()) worst = std::max(worst, space.distance(e.col, e.row));
  return worst;
}

Operator compose(const Operator& s, const Operator& t) {
  if (!same_space(t.target(), s.source())) {
    throw StructuralError("compose: target of T is not the source of S");
  }
  // Bucket S by its column (the shared middle index).
  std::vector<std::vector<const Operator::Entry*>> s_by_col(s.source()->size());
  for (const auto& e : s.entries()) s_by_col[e.col].push_back(&e);
  std::vector<Operator::Entry> out;
  for (const auto& te : t.entries()) {
    for (const auto* se : s_by_col[te.row]) out.push_back({se->row, te.col, se->value * te.value});
  }
  return Operator(t.source(), s.target(), std::move(out));
}

Operator adjoint(const Operator& t) {
  std::vector<Operator::Entry> out;
  out.reserve(t.nonzeros());
  for (const auto& e : t.entries()) out.push_back({e.col, e.row, std::conj(e.value)});
  return Operator(t.target(), t.source(), std::move(out));
}

Operator add(const Operator& a, const Operator& b) {
  if (!same_space(a.source(), b.source()) || !same_space(a.target(), b.target())) {
    throw StructuralError("add: operators act between different spaces");
  }
  std::vector<Operator::Entry> out(a.entries());
  out.insert(out.end(), b.entries().begin(), b.entries().end());
  return Operator(a.source(), a.target(), std::move(out));
}

Operator scale(Complex c, const Operator& t) {
  std::vector<Operator::Entry> out;
  out.reserve(t.nonzeros());
  for (const auto& e : t.entries()) out.push_back({e.row, e.col, c * e.value});
  return Operator(t.source(), t.target(), std::move(out));
}

double operator_norm(const Operator& t) {
  const std::size_t rows = t.target()->size();
  const std::size_t cols = t.source()->size();
  if (t.nonzeros() == 0) return 0.0;
  if (std::min(rows, cols) > 512) return operator_norm_power_iteration(t);
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows),
                                                  static_cast<Eigen::Index>(cols));
  for (const auto& e : t.entries()) {
    dense(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(dense);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

double operator_norm_power_iteration(const Operator& t, double rel_tol, int max_iter) {
  if (t.nonzeros() == 0) return 0.0;
  const Operator t_adj = adjoint(t);
  const std::size_t n = t.source()->size();
  // Deterministic start with no zero components, so it is not orthogonal to
  // the top singular vector of a nonnegative matrix.
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Complex{1.0 + 0.5 * std::sin(static_cast<double>(i) + 1.0), 0.0};
  auto norm = [](const std::vector<Complex>& u) {
    double s = 0.0;
    for (const auto& c : u) s += std::norm(c);
    return std::sqrt(s);
  };
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const double nv = norm(v);
    if (nv == 0.0) return 0.0;
    for (auto& c : v) c /= nv;
    std::vector<Complex> w = t_adj.apply(t.apply(v));
    double rayleigh = 0.0;
    for (std::size_t i = 0; i < n; ++i) rayleigh += (std::conj(v[i]) * w[i]).real();
    const bool converged = it > 0 && std::abs(rayleigh - lambda) <= rel_tol * std::abs(rayleigh);
    lambda = rayleigh;
    v = std::move(w);
    if (converged) break;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

PropagationBoundReport propagation_bound_check(const Operator& s, const Operator& t,
                                               const GlueMetric& g_xy, const GlueMetric& g_yz) {
  PropagationBoundReport r;
  r.composite = propagation(compose(s, t), compose_glue(g_xy, g_yz));
  r.sum = propagation(t, g_xy) + propagation(s, g_yz);
  r.holds = r.composite <= r.sum + kMetricTolerance;
  return r;
}

}  // namespace roecalc
