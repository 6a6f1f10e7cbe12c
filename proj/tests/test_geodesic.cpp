#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "errors.hpp"
#include "geodesic.hpp"
#include "sampling.hpp"

using namespace altfp;

namespace {

// Independent Poincare-distance route: the textbook arcosh form.
double disk_distance_arcosh(const Point& a, const Point& b) {
  const double diff2 = (a[0] - b[0]) * (a[0] - b[0]) +
                       (a[1] - b[1]) * (a[1] - b[1]);
  const double na2 = a[0] * a[0] + a[1] * a[1];
  const double nb2 = b[0] * b[0] + b[1] * b[1];
  return std::acosh(1.0 + 2.0 * diff2 / ((1.0 - na2) * (1.0 - nb2)));
}

}  // namespace

TEST_CASE("euclidean distance basics") {
  const Space e2 = Space::euclidean(2);
  CHECK(distance(e2, {0, 0}, {3, 4}) == 5.0);
  CHECK(distance(e2, {1.5, -2.0}, {1.5, -2.0}) == 0.0);
  CHECK(distance(e2, {1, 2}, {4, 6}) == distance(e2, {4, 6}, {1, 2}));
}

TEST_CASE("disk distance matches the radial closed form") {
  const Space disk = Space::hyperbolic_disk();
  // d(0, z) = ln((1+|z|)/(1-|z|)); for |z| = 0.8 this is ln 9.
  const double expected = std::log((1.0 + 0.8) / (1.0 - 0.8));
  CHECK(expected == doctest::Approx(std::log(9.0)).epsilon(1e-15));
  CHECK(distance(disk, {0, 0}, {0.8, 0}) ==
        doctest::Approx(expected).epsilon(1e-13));
  CHECK(distance(disk, {0.3, -0.4}, {0.3, -0.4}) == 0.0);
}

TEST_CASE("disk distance agrees with the arcosh route") {
  const Space disk = Space::hyperbolic_disk();
  PointSampler sampler(disk, 41);
  for (int i = 0; i < 2000; ++i) {
    const Point a = sampler.sample();
    const Point b = sampler.sample();
    const double via_atanh = distance(disk, a, b);
    const double via_arcosh = disk_distance_arcosh(a, b);
    CHECK(via_atanh == doctest::Approx(via_arcosh).epsilon(1e-9));
  }
}

TEST_CASE("metric axioms on sampled triples") {
  for (const Space& space : {Space::euclidean(3), Space::hyperbolic_disk()}) {
    PointSampler sampler(space, 7);
    for (int i = 0; i < 2000; ++i) {
      const Point a = sampler.sample();
      const Point b = sampler.sample();
      const Point c = sampler.sample();
      CHECK(distance(space, a, b) == distance(space, b, a));  // exact
      CHECK(distance(space, a, a) == 0.0);
      CHECK(distance(space, a, c) <=
            distance(space, a, b) + distance(space, b, c) + 1e-9);
      CHECK(distance(space, a, b) >= 0.0);
    }
  }
}

TEST_CASE("combine endpoints and linear formula") {
  const Space e2 = Space::euclidean(2);
  const Point u{0, 0};
  const Point x{4, 0};
  CHECK(combine(e2, 0.0, u, x) == x);
  CHECK(combine(e2, 1.0, u, x) == u);
  CHECK(combine(e2, 0.25, u, x) == Point{3, 0});
}

TEST_CASE("euclidean combine is exactly the componentwise affine formula") {
  const Space e3 = Space::euclidean(3);
  PointSampler sampler(e3, 11);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const Point u = sampler.sample();
    const Point x = sampler.sample();
    const double lambda = unit(rng);
    const Point z = combine(e3, lambda, u, x);
    for (std::size_t k = 0; k < 3; ++k) {
      const double direct = lambda * u[k] + (1.0 - lambda) * x[k];
      CHECK(z[k] == direct);  // same arithmetic path, bit for bit
    }
  }
}

TEST_CASE("disk combine: radial midpoint") {
  const Space disk = Space::hyperbolic_disk();
  // Halfway from (0.8, 0) toward the origin: tanh(atanh(0.8)/2) = 1/2.
  const Point z = combine(disk, 0.5, {0, 0}, {0.8, 0});
  CHECK(z[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(z[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("disk combine endpoints are exact") {
  const Space disk = Space::hyperbolic_disk();
  const Point u{0.3, -0.2};
  const Point x{-0.5, 0.1};
  CHECK(combine(disk, 0.0, u, x) == x);
  CHECK(combine(disk, 1.0, u, x) == u);
  CHECK(combine(disk, 0.7, u, u) == u);  // coincident endpoints
}

TEST_CASE("disk combine matches the radial closed form on diameters") {
  // Both endpoints on the horizontal diameter: the geodesic is the diameter
  // itself, parameterized by the signed artanh coordinate.
  const Space disk = Space::hyperbolic_disk();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coord(-0.95, 0.95);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = coord(rng);
    const double b = coord(rng);
    const double lambda = unit(rng);
    const Point z = combine(disk, lambda, {a, 0}, {b, 0});
    const double expected =
        std::tanh(lambda * std::atanh(a) + (1.0 - lambda) * std::atanh(b));
    CHECK(z[0] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(z[1]) <= 1e-15);
  }
}

TEST_CASE("geodesic parameterization property") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const Space& space : {Space::euclidean(2), Space::hyperbolic_disk()}) {
    PointSampler sampler(space, 17);
    for (int i = 0; i < 2000; ++i) {
      const Point u = sampler.sample();
      const Point x = sampler.sample();
      const double lambda = unit(rng);
      const Point z = combine(space, lambda, u, x);
      const double total = distance(space, x, u);
      CHECK(std::abs(distance(space, x, z) - lambda * total) <= 1e-9);
      CHECK(std::abs(distance(space, z, u) - (1.0 - lambda) * total) <= 1e-9);
    }
  }
}

TEST_CASE("validate_point") {
  const Space e2 = Space::euclidean(2);
  CHECK(validate_point(e2, {1, 2}).ok);
  CHECK_FALSE(validate_point(e2, {1}).ok);
  CHECK(validate_point(e2, {1}).reason.find("dimension") != std::string::npos);
  CHECK_FALSE(validate_point(e2, {std::nan(""), 0}).ok);
  CHECK_FALSE(
      validate_point(e2, {std::numeric_limits<double>::infinity(), 0}).ok);

  const Space disk = Space::hyperbolic_disk();
  CHECK(validate_point(disk, {0.5, 0.5}).ok);
  const PointCheck outside = validate_point(disk, {1.5, 0});
  CHECK_FALSE(outside.ok);
  CHECK(outside.reason.find("disk-norm") != std::string::npos);
  CHECK_FALSE(validate_point(disk, {1.0 - 1e-13, 0}).ok);

  const Space ball =
      Space::euclidean(2, ConvexDomain::ball({0, 0}, 1.0));
  CHECK(validate_point(ball, {0.5, 0.5}).ok);
  const PointCheck nonmember = validate_point(ball, {2, 0});
  CHECK_FALSE(nonmember.ok);
  CHECK(nonmember.reason.find("domain membership") != std::string::npos);
}

TEST_CASE("domain membership is closed under combine") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Space ball = Space::euclidean(2, ConvexDomain::ball({1, 1}, 2.0));
  const Space box =
      Space::euclidean(3, ConvexDomain::box({-1, 0, 2}, {1, 3, 5}));
  for (const Space& space : {ball, box}) {
    PointSampler sampler(space, 31);
    for (int i = 0; i < 2000; ++i) {
      const Point a = sampler.sample();
      const Point b = sampler.sample();
      REQUIRE(validate_point(space, a).ok);
      REQUIRE(validate_point(space, b).ok);
      const Point z = combine(space, unit(rng), a, b);
      CHECK(validate_point(space, z).ok);
    }
  }
}

TEST_CASE("errors: bad lambda and invalid points") {
  const Space e1 = Space::euclidean(1);
  CHECK_THROWS_AS(combine(e1, 1.5, {0}, {1}), ParamError);
  CHECK_THROWS_AS(combine(e1, -0.1, {0}, {1}), ParamError);
  CHECK_THROWS_AS(combine(e1, std::nan(""), {0}, {1}), ParamError);
  CHECK_THROWS_AS(distance(e1, {std::nan("")}, {1}), DomainError);
  const Space disk = Space::hyperbolic_disk();
  CHECK_THROWS_AS(distance(disk, {1.1, 0}, {0, 0}), DomainError);

  CHECK_THROWS_AS(Space::euclidean(0), ParamError);
  CHECK_THROWS_AS(ConvexDomain::ball({0, 0}, -1.0), ParamError);
  CHECK_THROWS_AS(ConvexDomain::box({1, 0}, {0, 1}), ParamError);
}
