#ifndef ALTFP_SAMPLING_HPP_
#define ALTFP_SAMPLING_HPP_

#include <cstdint>
#include <random>

#include "geodesic.hpp"

namespace altfp {

// Seeded point source, deterministic for a fixed seed and call order.
// Euclidean: uniform in the domain Ball/Box, or in [-1,1]^d when the domain
// is the whole space. Disk: uniform in radius^2 and angle with norm <= 0.99.
class PointSampler {
 public:
  PointSampler(const Space& space, std::uint64_t seed)
      : space_(space), rng_(seed) {}

  Point sample();

 private:
  Space space_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

inline constexpr double kDiskSampleNorm = 0.99;

}  // namespace altfp

#endif  // ALTFP_SAMPLING_HPP_
