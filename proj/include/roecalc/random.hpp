#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace roecalc {

/// Seeded generator used for every random construction. Bounded draws are
/// done here rather than through <random> distributions, whose output is
/// implementation-defined, so a seed gives the same object on every platform.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n); n > 0.
  std::size_t below(std::size_t n);

  /// Uniform integer in [lo, hi].
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1))); }

  /// Uniform real in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace roecalc
