#pragma once

#include <cstdint>
#include <random>

namespace vlab {

/// 64-bit linear congruential generator (Knuth's MMIX constants,
/// x' = 6364136223846793005 x + 1442695040888963407 mod 2^64).
/// Doubles use the top 53 bits, so streams are identical on every platform.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi);

 private:
  std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL> engine_;
};

}  // namespace vlab
