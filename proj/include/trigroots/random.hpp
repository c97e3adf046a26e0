#pragma once

#include <cstdint>
#include <random>

namespace trigroots {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the substream identified by (master, stream, index).
///
/// Every Monte Carlo trial draws from its own substream keyed only by the
/// master seed and its coordinates, never by the thread that runs it.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream,
                                       std::uint64_t index) noexcept {
  return mix64(mix64(mix64(master) ^ stream) ^ index);
}

/// A private stream of random variates.
///
/// Bits come from mt19937_64, whose output sequence is fixed by the
/// standard. The conversions to uniforms and normals are written out here
/// (instead of using the implementation-defined <random> distributions) so
/// that a given seed yields the same variates with any standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_left() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller; variates are produced in pairs.
  double normal();

  /// +1 or -1 with equal probability, one engine bit per call.
  double sign();

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
  std::uint64_t sign_bits_ = 0;
  int sign_bits_left_ = 0;
};

}  // namespace trigroots
