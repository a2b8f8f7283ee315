#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roecalc/almost_isometry.hpp"
#include "roecalc/metric_family.hpp"

namespace roecalc {

/// h(R) = max{ g'(x,y) : g(x,y) <= R } per family index and probe radius R.
/// Entries are -inf when no pair satisfies g(x,y) <= R.
struct DominationProfile {
  std::string direction;  // "<from> -> <to>"
  std::vector<double> radii;
  struct Row {
    int index = 0;
    std::vector<double> values;  // one per radius
  };
  std::vector<Row> rows;
};

/// Exhaustive h(R) for one pair of glues on the same spaces.
std::vector<double> domination_values(const GlueMetric& g, const GlueMetric& g_prime,
                                      std::span<const double> radii);

/// Single-row profile (index 0).
DominationProfile domination_profile(const GlueMetric& g, const GlueMetric& g_prime,
                                     std::span<const double> radii);

/// Profile across two families sharing an index set.
DominationProfile domination_profile(const MetricFamily& g, const MetricFamily& g_prime,
                                     std::span<const double> radii);

/// {1, 2, 4, 8, 16}, keeping radii no larger than the largest cross distance
/// of g (always at least the first radius).
std::vector<double> default_probe_radii(const GlueMetric& g);

enum class Relation { HoldsBounded, FailsGrowing, Inconclusive };

std::string_view to_string(Relation r);

/// Classifies a per-index sequence:
///  - fewer than 3 values: inconclusive;
///  - the last 3 values equal: bounded;
///  - the last 3 strictly increasing and the last > threshold × first finite
///    value: growing;
///  - otherwise inconclusive.
Relation classify_sequence(std::span<const double> values, double growth_threshold);

/// Finite-scale evidence for g ⪯ g': finite propagation with respect to g gives
/// finite propagation with respect to g' iff h(R) stays bounded over the family
/// for every probe R.
///
/// A probe R only constrains member n when some cross value of g_n exceeds R;
/// below that, h_n(R) is the largest value of g'_n and measures the truncation,
/// not the comparison. Each probe is classified over its constraining members.
/// Probes with fewer than 3 of them stay inconclusive and do not vote.
struct OrderVerdict {
  Relation relation = Relation::Inconclusive;
  DominationProfile profile;
  std::vector<Relation> per_probe;                    // classification of each radius column
  std::vector<std::size_t> per_probe_members;         // constraining members behind each probe
  std::vector<std::pair<int, double>> per_index_max;  // max over probes of h_n(R)
  double slope = 0.0;  // least-squares slope of per_index_max against the index
  double growth_threshold = 2.0;
};

OrderVerdict order_check(const MetricFamily& g, const MetricFamily& g_prime,
                         std::span<const double> radii, double growth_threshold = 2.0);

struct EquivalenceVerdict {
  OrderVerdict forward;   // g ⪯ g'
  OrderVerdict backward;  // g' ⪯ g
  Relation relation = Relation::Inconclusive;  // bounded both ways / growing either way
};

EquivalenceVerdict equivalence_check(const MetricFamily& g, const MetricFamily& g_prime,
                                     std::span<const double> radii, double growth_threshold = 2.0);

/// g <= g∘g*∘g <= 3g entrywise.
struct InvSemiReport {
  double lower_slack = 0.0;  // min (g∘g*∘g - g)
  double upper_slack = 0.0;  // min (3g - g∘g*∘g)
  std::size_t violations = 0;
  bool holds = false;
  Matrix triple;  // cross table of g∘g*∘g
};

InvSemiReport inv_semi_check(const GlueMetric& g);

/// Uniform entrywise bound on a difference (g∘g - g, or g* - g) across a family.
struct UniformBoundReport {
  std::string quantity;
  std::vector<std::pair<int, double>> per_index;
  double bound = 0.0;  // max over the sweep
  Relation relation = Relation::Inconclusive;  // HoldsBounded = uniformly bounded
};

UniformBoundReport idempotent_check(const MetricFamily& family, double growth_threshold = 2.0);
UniformBoundReport selfadjoint_check(const MetricFamily& family, double growth_threshold = 2.0);

/// Largest set of disjoint (x, y) pairs with g(x,y) <= bound.
struct ClosePairMatching {
  std::size_t size = 0;
  std::vector<std::pair<Label, Label>> pairs;
};

ClosePairMatching close_pair_matching(const GlueMetric& g, double bound);

/// For d_f = glue_from_map(f, epsilon) and h the profile from d_f to g, checks
/// g >= d_f - (C/2 + h(C/2)) entrywise, the inequality behind maximality of
/// d_f. Meaningful for total maps.
struct MaximalityReport {
  double constant = 0.0;         // C, the effective constant of d_f
  double h_at_half = 0.0;        // h(C/2)
  double offset = 0.0;           // C/2 + h(C/2)
  double min_slack = 0.0;        // min (g - d_f + offset)
  double max_violation = 0.0;    // max(0, -min_slack)
  bool holds = false;
  std::vector<double> radii;
  std::vector<double> profile;   // h at the requested radii
};

MaximalityReport maximality_inequality_check(const PartialMap& f, const GlueMetric& g,
                                             std::span<const double> radii, double epsilon = 1.0);

}  // namespace roecalc
