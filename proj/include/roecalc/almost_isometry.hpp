#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "roecalc/metric_space.hpp"

namespace roecalc {

/// A map f: A -> Y defined on a nonempty support A ⊆ X.
class PartialMap {
 public:
  /// (support index, image index) pairs; reordered by support index.
  /// Throws StructuralError on an empty support, a repeated support point or an
  /// out-of-range index.
  PartialMap(SpacePtr domain, SpacePtr codomain,
             std::vector<std::pair<std::size_t, std::size_t>> assignment);

  static PartialMap from_labels(SpacePtr domain, SpacePtr codomain,
                                const std::vector<std::pair<Label, Label>>& assignment);

  const SpacePtr& domain() const noexcept { return domain_; }
  const SpacePtr& codomain() const noexcept { return codomain_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& assignment() const noexcept {
    return assignment_;
  }
  std::size_t support_size() const noexcept { return assignment_.size(); }
  bool is_total() const noexcept { return assignment_.size() == domain_->size(); }

  /// Image of domain point x, if x is in the support.
  std::optional<std::size_t> image(std::size_t x) const;

  bool operator==(const PartialMap& other) const {
    return same_space(domain_, other.domain_) && same_space(codomain_, other.codomain_) &&
           assignment_ == other.assignment_;
  }

 private:
  SpacePtr domain_;
  SpacePtr codomain_;
  std::vector<std::pair<std::size_t, std::size_t>> assignment_;
  std::vector<std::ptrdiff_t> lookup_;  // domain index -> image or -1
};

/// Identity of a space, as a total map.
PartialMap identity_map(const SpacePtr& space);

/// Additive distortion C: the least constant with
///   d_X(x,x') - C <= d_Y(f(x),f(x')) <= d_X(x,x') + C on the support.
struct DefectReport {
  double defect = 0.0;
  std::pair<Label, Label> witness;  // attains the defect; (a, a) for a singleton support
};

DefectReport defect(const PartialMap& f);

/// max(defect(f), epsilon): the constant glue_from_map actually uses.
double effective_constant(const PartialMap& f, double epsilon);

/// The metric d_f on X ⊔ Y induced by f with constant C:
///   d_f(x,y) = min_{a in A} d_X(x,a) + C/2 + d_Y(f(a),y).
/// Requires C > 0 and C >= defect(f) (otherwise the result is not a metric).
GlueMetric glue_from_map_with_constant(const PartialMap& f, double constant);

/// d_f with C = max(defect(f), epsilon); epsilon > 0 keeps cross distances positive
/// when f is a genuine isometry.
GlueMetric glue_from_map(const PartialMap& f, double epsilon = 1.0);

/// g ∘ f on {x in supp f : f(x) in supp g}. Throws StructuralError if that set is
/// empty or f's codomain is not g's domain.
PartialMap compose_maps(const PartialMap& f, const PartialMap& g);

/// Two-sided comparison between d_g ∘ d_f and d_{g∘f}.
///
/// d_f and d_g use their effective constants C_f and C_g; d_{g∘f} is built with
/// C_f + C_g, the distortion bound that composition guarantees. With those
/// constants d_g∘d_f <= d_{g∘f} holds pointwise, and when f's image lies in
/// g's support the reverse gap is at most defect(g).
struct SandwichReport {
  double constant_f = 0.0;
  double constant_g = 0.0;
  double constant_gf = 0.0;
  double lower_gap = 0.0;      // max (d_g∘d_f - d_{g∘f}); <= 0 when the lower bound holds
  double upper_gap = 0.0;      // max (d_{g∘f} - d_g∘d_f)
  double upper_gap_min = 0.0;  // min (d_{g∘f} - d_g∘d_f); equals upper_gap for a constant gap
  std::optional<double> upper_bound;  // a-priori bound on upper_gap, when one applies
  bool lower_holds = false;
  bool upper_holds = false;
  bool passes = false;
  // When g maps back into f's domain: how far g∘f and f∘g move points.
  std::optional<double> return_distance_x;
  std::optional<double> return_distance_y;
};

SandwichReport sandwich_check(const PartialMap& f, const PartialMap& g, double epsilon = 1.0);

/// Why extract_close_map found nothing: the point of X whose nearest partner is
/// closest, and that distance.
struct CloseMapFailure {
  Label witness;
  double nearest = 0.0;
  double bound = 0.0;
};

/// Maps each x with some cross(x,y) <= bound to its nearest y (earliest point
/// of Y on ties). Reports a failure when no x qualifies.
std::variant<PartialMap, CloseMapFailure> extract_close_map(const GlueMetric& g, double bound);

/// Compares a glue on X ⊔ X with d⁰. With L = max_x g(x, x'):
///   g(x1,x2') <= d⁰(x1,x2') + (L - 1)   and   d⁰(x1,x2') <= g(x1,x2') + (L + 1).
struct NearIdentityReport {
  double diagonal_bound = 0.0;  // L
  double upper_offset = 0.0;    // L - 1
  double lower_offset = 0.0;    // L + 1
  double upper_slack = 0.0;     // min of d⁰ + (L-1) - g
  double lower_slack = 0.0;     // min of g + (L+1) - d⁰
  bool upper_holds = false;
  bool lower_holds = false;
  std::optional<double> bound;  // L when both inequalities hold
};

NearIdentityReport near_identity_check(const GlueMetric& g);

}  // namespace roecalc
