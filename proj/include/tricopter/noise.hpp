#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tricopter {

/// SplitMix64 finalizer. Derives independent stream seeds from one user seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

/// Standard-normal generator with a fully specified algorithm, so noise
/// sequences are identical across compilers and standard libraries:
///
///   engine:  std::mt19937_64 seeded with the 64-bit seed
///   uniform: u = ((x >> 11) + 0.5) * 2^-53, always in (0, 1)
///   normal:  Box-Muller cosine branch, sqrt(-2 ln u1) * cos(2 pi u2);
///            each draw consumes exactly two engine outputs
///
/// std::normal_distribution is not used because its algorithm is
/// implementation-defined.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed = 0) : engine_(seed) {}

  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double operator()() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tricopter
