#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace namefit {

// Seedable stream with a fixed algorithm (mt19937_64) and its own bounded
// and real draws, so sequences are identical across standard libraries.
// Single owner; concurrent work takes child sources.
// Replicated kernels hand out streams per block of this many replicates:
// block b uses child(b) and its replicates draw from it in order. The
// grouping is fixed, so results do not depend on the thread count.
inline constexpr std::uint64_t kReplicateBlock = 256;

class RandomSource {
 public:
  static constexpr std::string_view algorithm = "mt19937_64/splitmix64";

  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  // Independent stream for work item `index`, a pure function of
  // (seed, index) so results do not depend on scheduling.
  RandomSource child(std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on [0, bound), unbiased.
  std::uint64_t below(std::uint64_t bound);

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace namefit
