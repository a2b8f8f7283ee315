#include "roecalc/metric_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include "roecalc/errors.hpp"
#include "roecalc/parallel.hpp"

namespace roecalc {

struct MetricFamily::Cache {
  std::mutex mutex;
  std::map<int, std::shared_ptr<const GlueMetric>> members;
};

MetricFamily::MetricFamily(std::vector<int> indices, Generator generator, std::string tag)
    : indices_(std::move(indices)),
      generator_(std::move(generator)),
      tag_(std::move(tag)),
      cache_(std::make_shared<Cache>()) {
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] <= indices_[i - 1]) {
      throw StructuralError("metric family indices must be strictly increasing");
    }
  }
  if (!generator_) throw StructuralError("metric family needs a generator");
}

const GlueMetric& MetricFamily::at(int index) const {
  if (!std::binary_search(indices_.begin(), indices_.end(), index)) {
    throw StructuralError("index " + std::to_string(index) + " is not part of family '" + tag_ + "'");
  }
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->members.find(index); it != cache_->members.end()) return *it->second;
  }
  // Generate outside the lock; a concurrent duplicate is discarded.
  auto member = std::make_shared<const GlueMetric>(generator_(index));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->members.emplace(index, std::move(member));
  return *it->second;
}

void MetricFamily::materialize() const {
  parallel_for(indices_.size(), [this](std::size_t i) { (void)at(indices_[i]); });
}

namespace {

// Appends an embedding violation when `small` does not sit isometrically in `big`.
void check_embedding(const FiniteMetricSpace& small, const FiniteMetricSpace& big, int index,
                     ValidationReport& report) {
  auto flag = [&](std::vector<Label> witness, double lhs, double rhs) {
    report.ok = false;
    ++report.violation_count;
    if (report.violations.size() < kMaxReportedViolations) {
      report.violations.push_back({ViolationKind::EmbeddingMismatch, std::move(witness), lhs, rhs});
    }
  };
  std::vector<std::size_t> image(small.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    auto j = big.find(small.label(i));
    if (!j) {
      flag({"index " + std::to_string(index), small.label(i)}, 0.0, 0.0);
      return;
    }
    image[i] = *j;
  }
  for (std::size_t i = 0; i < small.size(); ++i) {
    for (std::size_t k = i + 1; k < small.size(); ++k) {
      const double a = small.distance(i, k);
      const double b = big.distance(image[i], image[k]);
      if (std::abs(a - b) > kMetricTolerance) {
        flag({"index " + std::to_string(index), small.label(i), small.label(k)}, a, b);
      }
    }
  }
}

}  // namespace

ValidationReport check_family_coherence(const MetricFamily& family) {
  family.materialize();
  ValidationReport report;
  report.min_separation = std::numeric_limits<double>::infinity();
  const auto& idx = family.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const GlueMetric& g = family.at(idx[i]);
    ValidationReport member = validate_glue(g);
    report.min_separation = std::min(report.min_separation, member.min_separation);
    if (!member.ok) {
      report.ok = false;
      report.violation_count += member.violation_count;
      for (auto& v : member.violations) {
        if (report.violations.size() >= kMaxReportedViolations) break;
        v.witness.insert(v.witness.begin(), "index " + std::to_string(idx[i]));
        report.violations.push_back(std::move(v));
      }
    }
    if (i + 1 < idx.size()) {
      const GlueMetric& next = family.at(idx[i + 1]);
      check_embedding(*g.left(), *next.left(), idx[i], report);
      check_embedding(*g.right(), *next.right(), idx[i], report);
    }
  }
  return report;
}

}  // namespace roecalc
