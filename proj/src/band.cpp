#include "roecalc/band.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "roecalc/errors.hpp"

namespace roecalc {

WidthOneBand::WidthOneBand(SpacePtr source, SpacePtr target, std::vector<Operator::Entry> entries)
    : source_(std::move(source)), target_(std::move(target)), entries_(std::move(entries)) {
  if (!source_ || !target_) throw StructuralError("band needs source and target spaces");
  std::vector<bool> row_used(target_->size()), col_used(source_->size());
  for (const auto& e : entries_) {
    if (e.row >= target_->size() || e.col >= source_->size()) {
      throw StructuralError("band entry index out of range");
    }
    if (row_used[e.row] || col_used[e.col]) {
      throw StructuralError("band is not width-1: row '" + target_->label(e.row) + "' or column '" +
                            source_->label(e.col) + "' repeats");
    }
    row_used[e.row] = col_used[e.col] = true;
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.col < b.col; });
}

WidthOneBand WidthOneBand::from_operator(const Operator& t) {
  return WidthOneBand(t.source(), t.target(), t.entries());
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Proper edge colouring of a bipartite graph with Δ colours (König).
// at_row[r][c] / at_col[x][c] hold the edge id coloured c at that vertex.
class BipartiteEdgeColouring {
 public:
  BipartiteEdgeColouring(std::size_t rows, std::size_t cols, std::size_t colours)
      : at_row_(rows, std::vector<std::size_t>(colours, kNone)),
        at_col_(cols, std::vector<std::size_t>(colours, kNone)) {}

  void add(std::size_t edge, std::size_t r, std::size_t x) {
    if (edge >= colour_.size()) {
      colour_.resize(edge + 1, kNone);
      ends_.resize(edge + 1);
    }
    ends_[edge] = {r, x};
    const std::size_t a = first_free(at_row_[r]);
    const std::size_t b = first_free(at_col_[x]);
    if (at_col_[x][a] != kNone) {
      // a is busy at x and b is free there: swap a/b along the alternating path
      // leaving x on colour a. It cannot end at r, since a is free at r.
      flip_path_from_col(x, a, b);
    }
    assign(edge, a);
  }

  std::size_t colour(std::size_t edge) const { return colour_[edge]; }

 private:
  static std::size_t first_free(const std::vector<std::size_t>& slots) {
    for (std::size_t c = 0; c < slots.size(); ++c) {
      if (slots[c] == kNone) return c;
    }
    throw StructuralError("edge colouring ran out of colours");
  }

  void assign(std::size_t edge, std::size_t c) {
    colour_[edge] = c;
    at_row_[ends_[edge].first][c] = edge;
    at_col_[ends_[edge].second][c] = edge;
  }

  void unassign(std::size_t edge) {
    const std::size_t c = colour_[edge];
    at_row_[ends_[edge].first][c] = kNone;
    at_col_[ends_[edge].second][c] = kNone;
    colour_[edge] = kNone;
  }

  void flip_path_from_col(std::size_t x, std::size_t a, std::size_t b) {
    std::vector<std::size_t> path;
    bool on_col = true;
    std::size_t vertex = x;
    std::size_t want = a;
    while (true) {
      const std::size_t e = on_col ? at_col_[vertex][want] : at_row_[vertex][want];
      if (e == kNone) break;
      path.push_back(e);
      vertex = on_col ? ends_[e].first : ends_[e].second;
      on_col = !on_col;
      want = want == a ? b : a;
    }
    for (std::size_t e : path) unassign(e);
    for (std::size_t i = 0; i < path.size(); ++i) assign(path[i], i % 2 == 0 ? b : a);
  }

  std::vector<std::vector<std::size_t>> at_row_;
  std::vector<std::vector<std::size_t>> at_col_;
  std::vector<std::size_t> colour_;
  std::vector<std::pair<std::size_t, std::size_t>> ends_;
};

}  // namespace

BandDecomposition band_decompose(const Operator& t) {
  BandDecomposition out;
  const std::size_t rows = t.target()->size();
  const std::size_t cols = t.source()->size();
  std::vector<std::size_t> row_deg(rows), col_deg(cols);
  for (const auto& e : t.entries()) {
    out.max_degree = std::max({out.max_degree, ++row_deg[e.row], ++col_deg[e.col]});
  }
  if (t.nonzeros() == 0) return out;

  // Entries are already in (row, col) order, which fixes the colouring.
  BipartiteEdgeColouring colouring(rows, cols, out.max_degree);
  const auto& entries = t.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) colouring.add(i, entries[i].row, entries[i].col);

  std::vector<std::vector<Operator::Entry>> classes(out.max_degree);
  for (std::size_t i = 0; i < entries.size(); ++i) classes[colouring.colour(i)].push_back(entries[i]);
  for (auto& cls : classes) {
    if (!cls.empty()) out.bands.emplace_back(t.source(), t.target(), std::move(cls));
  }
  return out;
}

Operator reassemble(const BandDecomposition& d) {
  if (d.bands.empty()) throw StructuralError("cannot reassemble an empty decomposition without spaces");
  std::vector<Operator::Entry> all;
  for (const auto& band : d.bands) all.insert(all.end(), band.entries().begin(), band.entries().end());
  return Operator(d.bands.front().source(), d.bands.front().target(), std::move(all));
}

Factorization factor_through(const WidthOneBand& band, const GlueMetric& g_xy, const GlueMetric& g_yz) {
  if (!same_space(band.source(), g_xy.left()) || !same_space(band.target(), g_yz.right())) {
    throw StructuralError("factor_through: band spaces do not match the glues");
  }
  if (!same_space(g_xy.right(), g_yz.left())) {
    throw StructuralError("factor_through: glues do not share a middle space");
  }
  const SpacePtr& middle = g_xy.right();
  if (middle->size() == 0) throw StructuralError("factor_through: middle space is empty");
  if (band.size() == 0) throw StructuralError("factor_through: band is empty");

  Factorization out;
  const auto& entries = band.entries();
  out.relay.reserve(entries.size());
  std::vector<std::vector<std::size_t>> fibre(middle->size());  // entry positions per relay point
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::size_t x = entries[i].col;
    const std::size_t z = entries[i].row;
    std::size_t best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < middle->size(); ++y) {
      const double cost = g_xy(x, y) + g_yz(y, z);
      if (cost < best_cost) {
        best_cost = cost;
        best = y;
      }
    }
    out.relay.push_back(best);
    fibre[best].push_back(i);
    out.max_fiber = std::max(out.max_fiber, fibre[best].size());
  }

  for (std::size_t k = 0; k < out.max_fiber; ++k) {
    std::vector<Operator::Entry> sub, in, outward;
    for (std::size_t y = 0; y < middle->size(); ++y) {
      if (fibre[y].size() <= k) continue;
      const auto& e = entries[fibre[y][k]];
      sub.push_back(e);
      in.push_back({y, e.col, e.value});
      outward.push_back({e.row, y, Complex{1.0, 0.0}});
    }
    out.factors.push_back({WidthOneBand(band.source(), band.target(), std::move(sub)),
                           Operator(band.source(), middle, std::move(in)),
                           Operator(middle, band.target(), std::move(outward))});
  }
  return out;
}

}  // namespace roecalc
