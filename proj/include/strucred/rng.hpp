#pragma once

#include <cstdint>

#include "strucred/normal.hpp"

namespace strucred {

// Per-path random stream fully determined by (seed, path index): the state
// is a splitmix64 walk whose start point is a hash of both, so results never
// depend on which worker drew a path or in what order. Normals come from the
// inverse CDF, one uniform each.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t path)
      : state_(mix(seed + kGamma) ^ mix(path + 0x633EB3B1BCC4CB4FULL)) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform strictly inside (0,1); the half-ulp offset keeps the inverse
  // CDF away from the poles.
  double next_uniform() {
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_normal() { return norm_ppf(next_uniform()); }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace strucred
