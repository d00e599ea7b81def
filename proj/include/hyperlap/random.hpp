#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hyperlap {

/// The single seeded generator all randomness flows through.
///
/// Wraps std::mt19937_64. Uniform draws are built from raw 64-bit words, so
/// sequences match across standard libraries.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform in [lo, hi] (closed). Used where the sampled box is closed.
  double uniform_closed(double lo, double hi);

  /// Uniform integer in [lo, hi], unbiased (rejection sampling).
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace hyperlap
