#include "roecalc/matching.hpp"

#include <limits>
#include <queue>

#include "roecalc/errors.hpp"

namespace roecalc {

namespace {

constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

class HopcroftKarp {
 public:
  HopcroftKarp(std::size_t left, std::size_t right, const std::vector<std::vector<std::size_t>>& adj)
      : adj_(adj), match_left_(left, kFree), match_right_(right, kFree), layer_(left) {}

  void run() {
    while (bfs()) {
      next_.assign(adj_.size(), 0);
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == kFree) dfs(u);
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < match_left_.size(); ++u) {
      if (match_left_[u] != kFree) out.emplace_back(u, match_left_[u]);
    }
    return out;
  }

 private:
  // Layers free left vertices at 0; true if some augmenting path exists.
  bool bfs() {
    std::queue<std::size_t> q;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      layer_[u] = match_left_[u] == kFree ? 0 : kUnreached;
      if (layer_[u] == 0) q.push(u);
    }
    bool found = false;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj_[u]) {
        const std::size_t w = match_right_[v];
        if (w == kFree) {
          found = true;
        } else if (layer_[w] == kUnreached) {
          layer_[w] = layer_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (std::size_t& i = next_[u]; i < adj_[u].size(); ++i) {
      const std::size_t v = adj_[u][i];
      const std::size_t w = match_right_[v];
      if (w == kFree || (layer_[w] == layer_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        ++i;
        return true;
      }
    }
    layer_[u] = kUnreached;
    return false;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> layer_;
  std::vector<std::size_t> next_;
};

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> maximum_bipartite_matching(
    std::size_t left_count, std::size_t right_count,
    const std::vector<std::vector<std::size_t>>& adjacency) {
  if (adjacency.size() != left_count) throw StructuralError("adjacency size does not match left_count");
  for (const auto& row : adjacency) {
    for (std::size_t v : row) {
      if (v >= right_count) throw StructuralError("adjacency refers to a missing right vertex");
    }
  }
  HopcroftKarp hk(left_count, right_count, adjacency);
  hk.run();
  return hk.pairs();
}

}  // namespace roecalc
