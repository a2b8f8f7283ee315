#include "roecalc/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "roecalc/errors.hpp"
#include "roecalc/metric_calculus.hpp"
#include "roecalc/random.hpp"

namespace roecalc {

namespace {

void require_size(int n, const char* what) {
  if (n < 1) throw StructuralError(std::string(what) + ": size must be at least 1");
}

SpacePtr integer_line(long lo, long hi) {
  std::vector<Label> labels;
  for (long k = lo; k <= hi; ++k) labels.push_back(std::to_string(k));
  const std::size_t n = labels.size();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d(i, j) = std::abs(static_cast<double>(i) - static_cast<double>(j));
    }
  }
  return make_space(std::move(labels), std::move(d));
}

std::optional<long> parse_integer(std::string_view s) {
  long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

long integer_label(const Label& label) {
  auto v = parse_integer(label);
  if (!v) throw StructuralError("point '" + label + "' is not an integer label");
  return *v;
}

}  // namespace

SpacePtr z_interval(int n) {
  require_size(n, "z_interval");
  return integer_line(-n, n);
}

SpacePtr halfline(int n) {
  require_size(n, "halfline");
  return integer_line(0, n);
}

SpacePtr z2_grid(int n) {
  require_size(n, "z2_grid");
  std::vector<std::pair<int, int>> pts;
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) pts.emplace_back(i, j);
  }
  std::vector<Label> labels;
  labels.reserve(pts.size());
  for (const auto& [i, j] : pts) labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  Matrix d(pts.size(), pts.size());
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = 0; b < pts.size(); ++b) {
      d(a, b) = std::abs(pts[a].first - pts[b].first) + std::abs(pts[a].second - pts[b].second);
    }
  }
  return make_space(std::move(labels), std::move(d));
}

long sparse_line_coordinate(long k, SparseLineConvention convention) {
  if (k <= 0) return convention == SparseLineConvention::Literal ? -2 * k : 2 * k;
  return k % 2 == 0 ? 2 * k : 2 * k - 1;  // x_{2m} = 4m, x_{2m-1} = 4m - 3
}

SparseLine sparse_line(int n, SparseLineConvention convention) {
  require_size(n, "sparse_line");
  std::vector<Label> labels;
  std::vector<long> coords;
  for (long k = -n; k <= n; ++k) {
    labels.push_back("x_" + std::to_string(k));
    coords.push_back(sparse_line_coordinate(k, convention));
  }
  const std::size_t size = labels.size();
  Matrix d(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) d(i, j) = static_cast<double>(std::abs(coords[i] - coords[j]));
  }
  SpacePtr space = make_space(std::move(labels), std::move(d));

  int injective_through = 0;
  for (int m = 0; m <= n; ++m) {
    std::set<long> seen;
    bool ok = true;
    for (long k = -m; k <= m && ok; ++k) ok = seen.insert(sparse_line_coordinate(k, convention)).second;
    if (!ok) break;
    injective_through = m;
  }

  // Point i carries index k = i - n, so x_{-k} sits at size - 1 - i.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < size; ++i) pairs.emplace_back(i, size - 1 - i);
  PartialMap reflection(space, space, std::move(pairs));
  return SparseLine{std::move(space), std::move(reflection), std::move(coords), injective_through == n,
                    injective_through, convention};
}

PartialMap reflection_map(const SpacePtr& space) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < space->size(); ++i) {
    const long k = integer_label(space->label(i));
    auto j = space->find(std::to_string(-k));
    if (!j) throw StructuralError("reflection_map: space is not closed under negation");
    pairs.emplace_back(i, *j);
  }
  return PartialMap(space, space, std::move(pairs));
}

PartialMap shift_map(const SpacePtr& space, long shift) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < space->size(); ++i) {
    if (auto j = space->find(std::to_string(integer_label(space->label(i)) + shift))) {
      pairs.emplace_back(i, *j);
    }
  }
  return PartialMap(space, space, std::move(pairs));
}

PartialMap nonnegative_identity(const SpacePtr& space) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < space->size(); ++i) {
    if (integer_label(space->label(i)) >= 0) pairs.emplace_back(i, i);
  }
  return PartialMap(space, space, std::move(pairs));
}

namespace {

std::vector<int> one_to(int max_n) {
  require_size(max_n, "family");
  std::vector<int> idx(static_cast<std::size_t>(max_n));
  for (int i = 0; i < max_n; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  return idx;
}

}  // namespace

MetricFamily dzero_family(int max_n) {
  return MetricFamily(one_to(max_n), [](int n) { return identity_glue(z_interval(n)); },
                      "dzero: d0 on z_interval(n)");
}

MetricFamily idem_scenario(int max_n) {
  return MetricFamily(one_to(max_n),
                      [](int n) { return glue_from_map(nonnegative_identity(z_interval(n)), 1.0); },
                      "idem: d_f, f = identity on {0..n} inside z_interval(n)");
}

std::pair<MetricFamily, MetricFamily> nonupper_scenario(int max_n) {
  return {MetricFamily(one_to(max_n), [](int n) { return glue_from_map(identity_map(z_interval(n)), 1.0); },
                       "df:id: d_f, f = identity on z_interval(n)"),
          MetricFamily(one_to(max_n), [](int n) { return glue_from_map(reflection_map(z_interval(n)), 1.0); },
                       "df:neg: d_f, f(k) = -k on z_interval(n)")};
}

SpacePtr random_bounded_geometry(std::size_t n, std::size_t max_degree, std::uint64_t seed) {
  if (n == 0) throw StructuralError("random_bounded_geometry: need at least one point");
  if (n > 2 && max_degree < 2) throw StructuralError("random_bounded_geometry: max_degree must be >= 2");
  if (n == 2 && max_degree < 1) throw StructuralError("random_bounded_geometry: max_degree must be >= 1");
  Rng rng(seed);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Matrix w(n, n, kInf);
  std::vector<std::size_t> degree(n, 0);
  auto connect = [&](std::size_t a, std::size_t b) {
    const double weight = static_cast<double>(rng.between(1, 3));
    w(a, b) = w(b, a) = weight;
    ++degree[a];
    ++degree[b];
  };
  // Random tree first (keeps the graph connected), then a few extra edges.
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < i; ++j) {
      if (degree[j] < max_degree) open.push_back(j);
    }
    connect(i, open[rng.below(open.size())]);
  }
  for (std::size_t attempt = 0; attempt < n; ++attempt) {
    const std::size_t a = rng.below(n);
    const std::size_t b = rng.below(n);
    if (a == b || w(a, b) != kInf || degree[a] >= max_degree || degree[b] >= max_degree) continue;
    connect(a, b);
  }
  for (std::size_t i = 0; i < n; ++i) w(i, i) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w(i, j) = std::min(w(i, j), w(i, k) + w(k, j));
    }
  }
  std::vector<Label> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  return make_space(std::move(labels), std::move(w));
}

GlueMetric random_glue(const SpacePtr& left, const SpacePtr& right, std::uint64_t seed) {
  if (left->size() == 0 || right->size() == 0) throw StructuralError("random_glue: spaces must be nonempty");
  Rng rng(seed);
  const double floor = std::max({left->diameter(), right->diameter(), 1.0}) / 2.0;
  const std::size_t edges = 1 + rng.below(6);
  Matrix cross(left->size(), right->size(), std::numeric_limits<double>::infinity());
  for (std::size_t e = 0; e < edges; ++e) {
    const std::size_t a = rng.below(left->size());
    const std::size_t b = rng.below(right->size());
    const double weight = floor + 0.5 * static_cast<double>(rng.below(7));
    for (std::size_t x = 0; x < left->size(); ++x) {
      for (std::size_t y = 0; y < right->size(); ++y) {
        cross(x, y) = std::min(cross(x, y), left->distance(x, a) + weight + right->distance(b, y));
      }
    }
  }
  return GlueMetric(left, right, std::move(cross));
}

// ---------------------------------------------------------------------------
// Reference resolution

namespace {

std::vector<std::string> split(std::string_view ref) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = ref.find(':', start);
    parts.emplace_back(ref.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

int int_part(const std::vector<std::string>& parts, std::size_t i, std::string_view ref) {
  if (i >= parts.size()) throw StructuralError("catalog reference '" + std::string(ref) + "' is missing a number");
  auto v = parse_integer(parts[i]);
  if (!v || *v > std::numeric_limits<int>::max() || *v < std::numeric_limits<int>::min()) {
    throw StructuralError("catalog reference '" + std::string(ref) + "': '" + parts[i] + "' is not an integer");
  }
  return static_cast<int>(*v);
}

std::string join_from(const std::vector<std::string>& parts, std::size_t i) {
  std::string out;
  for (std::size_t k = i; k < parts.size(); ++k) {
    if (k > i) out += ':';
    out += parts[k];
  }
  return out;
}

[[noreturn]] void unknown(std::string_view kind, std::string_view ref) {
  throw StructuralError("unknown " + std::string(kind) + " reference '" + std::string(ref) + "'");
}

void require_arity(const std::vector<std::string>& parts, std::size_t n, std::string_view ref) {
  if (parts.size() != n) throw StructuralError("catalog reference '" + std::string(ref) + "' has the wrong number of fields");
}

}  // namespace

SpacePtr resolve_space(std::string_view ref) {
  const auto parts = split(ref);
  const std::string& name = parts.front();
  if (name == "random_bg") {
    require_arity(parts, 4, ref);
    const int seed = int_part(parts, 3, ref);
    return random_bounded_geometry(static_cast<std::size_t>(std::max(1, int_part(parts, 1, ref))),
                                   static_cast<std::size_t>(std::max(0, int_part(parts, 2, ref))),
                                   static_cast<std::uint64_t>(seed));
  }
  require_arity(parts, 2, ref);
  const int n = int_part(parts, 1, ref);
  if (name == "z_interval") return z_interval(n);
  if (name == "halfline") return halfline(n);
  if (name == "z2_grid") return z2_grid(n);
  if (name == "sparse_line") return sparse_line(n).space;
  if (name == "sparse_line_literal") return sparse_line(n, SparseLineConvention::Literal).space;
  unknown("space", ref);
}

GlueMetric resolve_glue(std::string_view ref) {
  const auto parts = split(ref);
  const std::string& name = parts.front();
  if (name == "dzero") {
    if (parts.size() == 2) return identity_glue(z_interval(int_part(parts, 1, ref)));
    if (parts.size() > 2) return identity_glue(resolve_space(join_from(parts, 1)));
  } else if (name == "df" && parts.size() == 3) {
    const SpacePtr z = z_interval(int_part(parts, 2, ref));
    if (parts[1] == "id") return glue_from_map(identity_map(z), 1.0);
    if (parts[1] == "neg") return glue_from_map(reflection_map(z), 1.0);
  } else if (name == "idem" && parts.size() == 2) {
    return glue_from_map(nonnegative_identity(z_interval(int_part(parts, 1, ref))), 1.0);
  } else if (name == "random_glue" && parts.size() == 3) {
    const auto n = static_cast<std::size_t>(std::max(1, int_part(parts, 1, ref)));
    const auto seed = static_cast<std::uint64_t>(int_part(parts, 2, ref));
    return random_glue(random_bounded_geometry(n, 3, seed), random_bounded_geometry(n, 3, seed + 1), seed);
  }
  unknown("glue", ref);
}

PartialMap resolve_map(std::string_view ref) {
  const auto parts = split(ref);
  const std::string& name = parts.front();
  if (name == "id" && parts.size() >= 2) return identity_map(resolve_space(join_from(parts, 1)));
  if (name == "neg" && parts.size() == 2) return reflection_map(z_interval(int_part(parts, 1, ref)));
  if (name == "shift" && parts.size() == 3) {
    return shift_map(z_interval(int_part(parts, 1, ref)), int_part(parts, 2, ref));
  }
  if (name == "sparse_line" && parts.size() == 2) return sparse_line(int_part(parts, 1, ref)).reflection;
  if (name == "halfline_id" && parts.size() == 2) {
    return nonnegative_identity(z_interval(int_part(parts, 1, ref)));
  }
  unknown("map", ref);
}

MetricFamily resolve_family(std::string_view ref, std::optional<int> max_n) {
  auto parts = split(ref);
  std::optional<int> n = max_n;
  if (parts.size() >= 2 && parse_integer(parts.back())) {
    n = int_part(parts, parts.size() - 1, ref);
    parts.pop_back();
  }
  if (!n) throw StructuralError("family reference '" + std::string(ref) + "' needs a size (--max-n)");
  const std::string name = join_from(parts, 0);
  if (name == "dzero") return dzero_family(*n);
  if (name == "idem") return idem_scenario(*n);
  if (name == "df:id") return nonupper_scenario(*n).first;
  if (name == "df:neg") return nonupper_scenario(*n).second;
  unknown("family", ref);
}

}  // namespace roecalc
