#pragma once

#include <cstdint>
#include <random>

namespace dlmq {

/// Seeded generator used for every random draw in a run. The engine is
/// std::mt19937_64 and doubles are built from its top 53 bits, so output is
/// identical across standard libraries. Changing either breaks golden files.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next() { return engine_(); }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Default seed when neither a flag nor DLMQ_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20050301;

}  // namespace dlmq
