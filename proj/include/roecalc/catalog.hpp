#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "roecalc/almost_isometry.hpp"
#include "roecalc/metric_family.hpp"

namespace roecalc {

/// Integers -n..n with |a - b|. Labels are the decimal integers.
SpacePtr z_interval(int n);
/// Integers 0..n with |a - b|.
SpacePtr halfline(int n);
/// Grid {-n..n}² with the ℓ¹ metric; labels "(i,j)".
SpacePtr z2_grid(int n);

/// Coordinate rules for the sparse line {x_k}.
///
/// Positive indices always use x_{2m} = 4m, x_{2m-1} = 4m - 3. For k <= 0 the
/// printed rule x_k = -2k lands on the positive half-axis and coincides with
/// x_{-k} for every even k, so it is kept only as `Literal` for diagnostics.
/// `NegativeHalfAxis` places x_k = 2k for k <= 0: evenly spaced points on the
/// left, gaps alternating 1 and 3 on the right.
enum class SparseLineConvention { NegativeHalfAxis, Literal };

long sparse_line_coordinate(long k, SparseLineConvention convention);

struct SparseLine {
  SpacePtr space;           // points "x_k", |k| <= n, labelled by index
  PartialMap reflection;    // x_k -> x_{-k}
  std::vector<long> coordinates;  // in point order
  bool injective = false;   // k -> x_k injective on |k| <= n
  int injective_through = 0;  // largest m <= n with k -> x_k injective on |k| <= m
  SparseLineConvention convention = SparseLineConvention::NegativeHalfAxis;
};

SparseLine sparse_line(int n, SparseLineConvention convention = SparseLineConvention::NegativeHalfAxis);

/// k -> -k on an integer-labelled space closed under negation.
PartialMap reflection_map(const SpacePtr& space);
/// k -> k + shift wherever k + shift is a point (integer labels).
PartialMap shift_map(const SpacePtr& space, long shift);
/// Identity restricted to the nonnegative points of an integer-labelled space.
PartialMap nonnegative_identity(const SpacePtr& space);

/// d⁰ on z_interval(n), n = 1..max_n.
MetricFamily dzero_family(int max_n);
/// d_f for f = identity on {0..n} inside z_interval(n), epsilon 1, n = 1..max_n.
MetricFamily idem_scenario(int max_n);
/// (d_{id}, d_{k -> -k}) on z_interval(n), epsilon 1, n = 1..max_n.
std::pair<MetricFamily, MetricFamily> nonupper_scenario(int max_n);

/// Shortest-path metric of a random connected graph with degrees <= max_degree
/// and integer edge weights in {1, 2, 3}. Labels "v0", "v1", ...
SpacePtr random_bounded_geometry(std::size_t n, std::size_t max_degree, std::uint64_t seed);

/// Random valid glue: a few cross edges of weight at least half the larger
/// diameter, closed under shortest paths.
GlueMetric random_glue(const SpacePtr& left, const SpacePtr& right, std::uint64_t seed);

/// Catalog references, e.g. "z_interval:21", "sparse_line:40", "idem:50".
///   spaces:   z_interval:N  halfline:N  z2_grid:N  sparse_line:N
///             sparse_line_literal:N  random_bg:N:DEG:SEED
///   glues:    dzero:N  dzero:<space-ref>  df:id:N  df:neg:N  idem:N
///             random_glue:N:SEED
///   maps:     id:<space-ref>  neg:N  shift:N:S  sparse_line:N  halfline_id:N
///   families: dzero[:N]  idem[:N]  df:id[:N]  df:neg[:N]
/// Unknown or malformed references throw StructuralError.
SpacePtr resolve_space(std::string_view ref);
GlueMetric resolve_glue(std::string_view ref);
PartialMap resolve_map(std::string_view ref);
/// A trailing N in the reference wins over `max_n`.
MetricFamily resolve_family(std::string_view ref, std::optional<int> max_n = std::nullopt);

}  // namespace roecalc
