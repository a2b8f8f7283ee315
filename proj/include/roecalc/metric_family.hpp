#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "roecalc/metric_space.hpp"
#include "roecalc/validation.hpp"

namespace roecalc {

/// Indexed sequence of glue metrics over growing truncations, standing in for
/// one metric on a countable space. Members are generated on first access and
/// cached; copies share the cache.
class MetricFamily {
 public:
  using Generator = std::function<GlueMetric(int)>;

  /// `indices` must be strictly increasing.
  MetricFamily(std::vector<int> indices, Generator generator, std::string tag);

  const std::vector<int>& indices() const noexcept { return indices_; }
  const std::string& tag() const noexcept { return tag_; }
  std::size_t size() const noexcept { return indices_.size(); }

  /// Member at a listed index. Thread-safe.
  const GlueMetric& at(int index) const;

  /// Generates every member, spreading work over worker_count() threads.
  void materialize() const;

 private:
  struct Cache;
  std::vector<int> indices_;
  Generator generator_;
  std::string tag_;
  std::shared_ptr<Cache> cache_;
};

/// Checks that every member is a valid glue and that the left/right spaces at
/// each index embed isometrically, by label, into those at the next index.
ValidationReport check_family_coherence(const MetricFamily& family);

}  // namespace roecalc
