#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "maps.hpp"
#include "sampling.hpp"

using namespace altfp;

namespace {

const double kHalfPi = std::numbers::pi / 2;

Space e2() { return Space::euclidean(2); }

}  // namespace

TEST_CASE("apply: catalog basics") {
  const Space space = e2();
  const Mapping half = Mapping::scaling(space, 0.5, {0, 0});
  CHECK(apply(half, space, {1, 0}) == Point{0.5, 0});

  const Mapping quarter_turn = Mapping::rotation(space, kHalfPi, {0, 0});
  const Point rotated = apply(quarter_turn, space, {1, 0});
  CHECK(rotated[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rotated[1] == doctest::Approx(1.0).epsilon(1e-15));

  const Mapping proj =
      Mapping::projection(space, ConvexDomain::ball({0, 0}, 1.0));
  CHECK(apply(proj, space, {2, 0}) == Point{1, 0});
  CHECK(apply(proj, space, {0.25, 0.25}) == Point{0.25, 0.25});  // inside

  const Mapping box_proj =
      Mapping::projection(space, ConvexDomain::box({0, 0}, {1, 1}));
  CHECK(apply(box_proj, space, {2, -3}) == Point{1, 0});
}

TEST_CASE("apply: affine, compose, average") {
  const Space space = e2();
  const Mapping shear =
      Mapping::affine(space, {0, -1, 1, 0}, {1, 2});  // rotation + shift
  CHECK(apply(shear, space, {3, 5}) == Point{-4, 5});

  const Mapping half = Mapping::scaling(space, 0.5, {0, 0});
  const Mapping quarter_turn = Mapping::rotation(space, kHalfPi, {0, 0});
  // Right-to-left: rotate first, then scale.
  const Mapping chained = Mapping::compose({half, quarter_turn});
  const Point z = apply(chained, space, {2, 0});
  CHECK(z[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(z[1] == doctest::Approx(1.0).epsilon(1e-15));

  // Average with weight w returns combine(w, first image, second image):
  // w = 1 must give the first image.
  const Mapping avg1 = Mapping::average(1.0, half, quarter_turn);
  CHECK(apply(avg1, space, {2, 0}) == Point{1, 0});
  // Midpoint of (1,0) and (0,2).
  const Mapping avg = Mapping::average(0.5, half, quarter_turn);
  const Point mid = apply(avg, space, {2, 0});
  CHECK(mid[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mid[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hyperbolic rotation fixes its center and is an isometry") {
  const Space disk = Space::hyperbolic_disk();
  const Point center{0.3, -0.2};
  const Mapping rot = Mapping::hyperbolic_rotation(disk, center, 1.0);
  const Point image = apply(rot, disk, center);
  CHECK(distance(disk, image, center) <= 1e-15);

  PointSampler sampler(disk, 3);
  for (int i = 0; i < 2000; ++i) {
    const Point a = sampler.sample();
    const Point b = sampler.sample();
    const double before = distance(disk, a, b);
    const double after =
        distance(disk, apply(rot, disk, a), apply(rot, disk, b));
    CHECK(std::abs(after - before) <= 1e-9);
  }
}

TEST_CASE("euclidean rotation is an isometry on samples") {
  const Space space = e2();
  const Mapping rot = Mapping::rotation(space, 2.31, {0.4, -1.2});
  PointSampler sampler(space, 19);
  for (int i = 0; i < 2000; ++i) {
    const Point a = sampler.sample();
    const Point b = sampler.sample();
    CHECK(std::abs(distance(space, apply(rot, space, a), apply(rot, space, b)) -
                   distance(space, a, b)) <= 1e-9);
  }
}

TEST_CASE("fixed_point_oracle") {
  const Space space = e2();
  const auto rot_witness =
      fixed_point_oracle(Mapping::rotation(space, kHalfPi, {0, 0}));
  REQUIRE(rot_witness.has_value());
  CHECK(rot_witness->point == Point{0, 0});
  CHECK(rot_witness->source == FixedPointWitness::Source::Analytic);

  const auto proj_witness = fixed_point_oracle(
      Mapping::projection(space, ConvexDomain::ball({1, 1}, 2.0)));
  REQUIRE(proj_witness.has_value());
  CHECK(proj_witness->point == Point{1, 1});

  const auto box_witness = fixed_point_oracle(
      Mapping::projection(space, ConvexDomain::box({0, 2}, {4, 8})));
  REQUIRE(box_witness.has_value());
  CHECK(box_witness->point == Point{2, 5});

  const auto compose_witness = fixed_point_oracle(Mapping::compose(
      {Mapping::rotation(space, kHalfPi, {0, 0}),
       Mapping::scaling(space, 0.5, {0, 0})}));
  CHECK_FALSE(compose_witness.has_value());

  const Space disk = Space::hyperbolic_disk();
  const auto hyp_witness = fixed_point_oracle(
      Mapping::hyperbolic_rotation(disk, {0.1, 0.2}, 0.7));
  REQUIRE(hyp_witness.has_value());
  CHECK(hyp_witness->point == Point{0.1, 0.2});
}

TEST_CASE("analytic witnesses have tiny residuals") {
  const Space space = e2();
  const Space disk = Space::hyperbolic_disk();
  const std::vector<std::pair<Mapping, Space>> catalog = {
      {Mapping::scaling(space, 0.5, {0.3, -0.7}), space},
      {Mapping::rotation(space, 1.1, {0.2, 0.4}), space},
      {Mapping::projection(space, ConvexDomain::ball({0.5, 0.5}, 1.5)), space},
      {Mapping::projection(space, ConvexDomain::box({-1, -1}, {1, 1})), space},
      {Mapping::hyperbolic_rotation(disk, {0.25, -0.1}, 2.2), disk},
  };
  for (const auto& [map, sp] : catalog) {
    const auto witness = fixed_point_oracle(map);
    REQUIRE(witness.has_value());
    CHECK(distance(sp, apply(map, sp, witness->point), witness->point) <=
          1e-10);
    // And the numeric certifier agrees.
    const auto certified = certify_fixed_point(map, sp, witness->point);
    REQUIRE(certified.has_value());
    CHECK(certified->residual <= kWitnessResidualBound);
    CHECK(certified->source ==
          FixedPointWitness::Source::CertifiedNumerically);
  }
}

TEST_CASE("certify_fixed_point rejects non-fixed points") {
  const Space space = e2();
  const Mapping half = Mapping::scaling(space, 0.5, {0, 0});
  CHECK_FALSE(certify_fixed_point(half, space, {1, 0}).has_value());
}

TEST_CASE("projection is idempotent") {
  const Space space = e2();
  for (const ConvexDomain& target :
       {ConvexDomain::ball({0.2, -0.3}, 0.8),
        ConvexDomain::box({-1, -2}, {0.5, 0.5})}) {
    const Mapping proj = Mapping::projection(space, target);
    PointSampler sampler(space, 29);
    for (int i = 0; i < 1000; ++i) {
      const Point x = sampler.sample();
      const Point once = apply(proj, space, x);
      const Point twice = apply(proj, space, once);
      CHECK(distance(space, once, twice) <= 1e-12);
    }
  }
}

TEST_CASE("check_nonexpansive on the catalog") {
  const Space space = e2();
  const auto rot = check_nonexpansive(
      Mapping::rotation(space, 1.37, {0, 0}), space, 10000, 7, 1e-9);
  CHECK(rot.pass);
  CHECK(rot.max_ratio == doctest::Approx(1.0).epsilon(1e-9));

  const auto half = check_nonexpansive(
      Mapping::scaling(space, 0.5, {0, 0}), space, 10000, 7, 1e-9);
  CHECK(half.pass);
  CHECK(half.max_ratio == doctest::Approx(0.5).epsilon(1e-12));

  const auto avg = check_nonexpansive(
      Mapping::average(0.3, Mapping::rotation(space, 1.0, {0.5, 0}),
                       Mapping::scaling(space, 0.9, {0, 0})),
      space, 10000, 7, 1e-9);
  CHECK(avg.pass);

  const Space disk = Space::hyperbolic_disk();
  const auto disk_avg = check_nonexpansive(
      Mapping::average(0.5,
                       Mapping::hyperbolic_rotation(disk, {0.2, 0.1}, 0.9),
                       Mapping::hyperbolic_rotation(disk, {-0.3, 0}, -1.4)),
      disk, 10000, 7, 1e-9);
  CHECK(disk_avg.pass);
}

TEST_CASE("expansion map: rejected at construction, caught when forced") {
  const Space space = e2();
  CHECK_THROWS_AS(Mapping::affine(space, {2, 0, 0, 2}, {0, 0}), ParamError);
  CHECK_THROWS_AS(Mapping::scaling(space, 1.5, {0, 0}), ParamError);

  const Mapping forced =
      Mapping::affine(space, {2, 0, 0, 2}, {0, 0}, /*validate=*/false);
  const auto report = check_nonexpansive(forced, space, 10000, 7, 1e-9);
  CHECK_FALSE(report.pass);
  CHECK(report.max_ratio == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(report.worst_pair.has_value());

  // A norm-1 matrix passes the construction guard.
  CHECK_NOTHROW(Mapping::affine(space, {0, -1, 1, 0}, {5, 5}));
}

TEST_CASE("nonexpansiveness check is deterministic in the seed") {
  const Space space = e2();
  const Mapping rot = Mapping::rotation(space, 0.4, {0, 0});
  const auto a = check_nonexpansive(rot, space, 500, 123, 1e-9);
  const auto b = check_nonexpansive(rot, space, 500, 123, 1e-9);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.pairs_used == b.pairs_used);
}

TEST_CASE("construction errors") {
  const Space space = e2();
  CHECK_THROWS_AS(Mapping::rotation(Space::euclidean(3), 1.0, {0, 0, 0}),
                  ParamError);
  CHECK_THROWS_AS(Mapping::affine(space, {1, 0, 0}, {0, 0}), ParamError);
  CHECK_THROWS_AS(Mapping::average(1.5, Mapping::scaling(space, 0.5, {0, 0}),
                                   Mapping::scaling(space, 0.5, {0, 0})),
                  ParamError);
  // Operands on different spaces.
  CHECK_THROWS_AS(
      Mapping::average(0.5, Mapping::scaling(space, 0.5, {0, 0}),
                       Mapping::scaling(Space::euclidean(3), 0.5, {0, 0, 0})),
      ParamError);
  CHECK_THROWS_AS(
      Mapping::hyperbolic_rotation(Space::hyperbolic_disk(), {1.2, 0}, 1.0),
      ParamError);
  CHECK_THROWS_AS(
      Mapping::projection(space, ConvexDomain::whole_space()), ParamError);

  // Space mismatch at apply time.
  const Mapping half = Mapping::scaling(space, 0.5, {0, 0});
  CHECK_THROWS_AS(apply(half, Space::euclidean(3), {0, 0, 0}), ParamError);
  // Invalid point.
  CHECK_THROWS_AS(apply(half, space, {std::nan(""), 0}), DomainError);
}
