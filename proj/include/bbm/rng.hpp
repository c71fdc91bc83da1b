#ifndef BBM_RNG_HPP
#define BBM_RNG_HPP

#include <cstdint>

namespace bbm {

/// Splittable deterministic random stream (xoshiro256++ seeded through
/// splitmix64). A given (seed, stream_index) pair always reproduces the same
/// draw sequence; distinct stream indices give statistically independent
/// streams, so replicas can be fanned out over threads deterministically.
///
/// Distribution transforms are implemented here rather than through
/// <random> so that outputs do not depend on the standard library build.
/// Instances are single-owner: never share one across threads.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64();

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform();

  /// Uniform on (0, 1]; safe to pass to log().
  double uniform_pos();

  /// Standard normal (Box-Muller; the spare deviate is cached).
  double normal();

  /// Exponential with the given rate (mean 1/rate).
  double exponential(double rate);

  /// Poisson count via unit-rate arrival spacings; exact for any mean,
  /// O(mean) draws.
  long long poisson(double mean);

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bbm

#endif
