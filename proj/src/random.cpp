#include "namefit/random.hpp"

namespace namefit {

std::uint64_t RandomSource::mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomSource RandomSource::child(std::uint64_t index) const {
  return RandomSource(mix(seed_ ^ mix(index + 0x632BE59BD9B4E019ULL)));
}

double RandomSource::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
  // Rejection on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= limit) return r % bound;
  }
}

}  // namespace namefit
