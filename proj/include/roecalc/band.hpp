#pragma once

#include <cstddef>
#include <vector>

#include "roecalc/operator.hpp"

namespace roecalc {

/// Width-1 band operator Σ λ_x e_{x,σ(x)} with σ injective: every source
/// column and every target row carries at most one entry.
class WidthOneBand {
 public:
  /// Throws StructuralError if some row or column holds two entries.
  WidthOneBand(SpacePtr source, SpacePtr target, std::vector<Operator::Entry> entries);

  /// Reads a width-1 operator as a band; throws if the operator is wider.
  static WidthOneBand from_operator(const Operator& t);

  const SpacePtr& source() const noexcept { return source_; }
  const SpacePtr& target() const noexcept { return target_; }
  /// Sorted by source column.
  const std::vector<Operator::Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  Operator to_operator() const { return Operator(source_, target_, entries_); }

 private:
  SpacePtr source_;
  SpacePtr target_;
  std::vector<Operator::Entry> entries_;
};

struct BandDecomposition {
  std::vector<WidthOneBand> bands;
  std::size_t max_degree = 0;  // max row/column degree of the support
};

/// Splits T into at most max_degree width-1 bands whose sum is T exactly.
///
/// The bands are the colour classes of a proper edge colouring of the
/// bipartite support graph (rows vs columns) with max_degree colours, built
/// edge by edge in (row, col) order with alternating-path recolouring.
BandDecomposition band_decompose(const Operator& t);

/// Sum of all bands.
Operator reassemble(const BandDecomposition& d);

/// One relay factorisation: the sub-band equals relay_out ∘ relay_in exactly.
struct RelayFactor {
  WidthOneBand sub_band;  // X -> Z
  Operator relay_in;      // R = Σ λ_x e_{x,f(x)}: X -> Y
  Operator relay_out;     // S = Σ e_{f(x),σ(x)}: Y -> Z
};

struct Factorization {
  std::vector<std::size_t> relay;  // f(x) for each band entry, in entry order
  std::size_t max_fiber = 0;       // max |f⁻¹(y)|; the number of sub-bands
  std::vector<RelayFactor> factors;
};

/// Factors a band X -> Z through Y. The relay f(x) minimises
/// g_xy(x,y) + g_yz(y,σ(x)) (earliest y on ties). Where f is not injective
/// the band is split along relay fibres: sub-band k takes the k-th source of
/// every fibre, so f is injective on each sub-band. The sub-bands sum to the
/// input; the factors are only composed per sub-band.
Factorization factor_through(const WidthOneBand& band, const GlueMetric& g_xy, const GlueMetric& g_yz);

}  // namespace roecalc
