#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace voltroute {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic 64-bit seeded generator.
//
// Engine: std::mt19937_64 seeded with the 64-bit seed. Uniform reals take the
// top 53 bits of one engine output; bounded integers use rejection sampling on
// raw engine output, so streams are reproducible across standard libraries.
// Normal variates go through std::normal_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform01();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform on {0, ..., n-1}; n must be positive.
  std::size_t uniform_index(std::size_t n);

  double normal();

  // Independent stream number `stream` derived from this generator's seed:
  // seed' = splitmix64(seed ^ splitmix64(stream)).
  Rng split(std::uint64_t stream) const;

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace voltroute
