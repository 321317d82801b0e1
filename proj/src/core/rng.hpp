#pragma once

#include <cstdint>
#include <initializer_list>

namespace pmproc {

/// Seedable, splittable pseudorandom generator (xoshiro256++ state,
/// splitmix64 seeding). Every experiment derives its streams from a root
/// seed through derive(), keyed by small integer paths, so results do not
/// depend on scheduling order. Normal variates use Box-Muller; both
/// algorithm names are recorded in experiment reports.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent child stream identified by (this stream's seed, keys).
  /// Derivation only reads the stored seed, never the generator state, so
  /// identical key paths give identical streams regardless of draw order.
  Rng derive(std::initializer_list<std::uint64_t> keys) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1), 53-bit resolution.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer on [0, n), modulo-bias free. Requires n >= 1.
  std::uint64_t uniform_below(std::uint64_t n);
  /// Standard normal via Box-Muller (one variate per call).
  double normal();
  /// Standard Cauchy via inverse CDF tan(pi (u - 1/2)).
  double cauchy();

  std::uint64_t seed() const { return seed_; }

  static constexpr const char* algorithm() { return "xoshiro256++"; }
  static constexpr const char* normal_method() { return "box-muller"; }

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

}  // namespace pmproc
