#include "sampling.hpp"

#include <cmath>
#include <numbers>

namespace altfp {

Point PointSampler::sample() {
  const std::size_t dim = static_cast<std::size_t>(space_.dimension);

  if (space_.kind == SpaceKind::HyperbolicDisk) {
    const double r = kDiskSampleNorm * std::sqrt(unit_(rng_));
    const double theta = 2.0 * std::numbers::pi * unit_(rng_);
    return {r * std::cos(theta), r * std::sin(theta)};
  }

  switch (space_.domain.kind) {
    case ConvexDomain::Kind::Box: {
      Point p(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        p[i] = space_.domain.lower[i] +
               unit_(rng_) * (space_.domain.upper[i] - space_.domain.lower[i]);
      }
      return p;
    }
    case ConvexDomain::Kind::Ball: {
      // Direction from a gaussian, radius from u^(1/d): uniform in the ball.
      std::normal_distribution<double> gauss(0.0, 1.0);
      Point dir(dim);
      double norm2 = 0;
      do {
        norm2 = 0;
        for (std::size_t i = 0; i < dim; ++i) {
          dir[i] = gauss(rng_);
          norm2 += dir[i] * dir[i];
        }
      } while (norm2 == 0.0);
      const double scale =
          space_.domain.radius *
          std::pow(unit_(rng_), 1.0 / static_cast<double>(dim)) /
          std::sqrt(norm2);
      Point p(dim);
      for (std::size_t i = 0; i < dim; ++i)
        p[i] = space_.domain.center[i] + scale * dir[i];
      return p;
    }
    case ConvexDomain::Kind::WholeSpace:
    default: {
      Point p(dim);
      for (std::size_t i = 0; i < dim; ++i) p[i] = 2.0 * unit_(rng_) - 1.0;
      return p;
    }
  }
}

}  // namespace altfp
