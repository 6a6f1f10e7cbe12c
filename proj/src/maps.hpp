#ifndef ALTFP_MAPS_HPP_
#define ALTFP_MAPS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geodesic.hpp"

namespace altfp {

// A known fixed point p of a mapping, with its provenance.
struct FixedPointWitness {
  enum class Source { Analytic, CertifiedNumerically };

  Point point;
  Source source = Source::Analytic;
  double residual = 0.0;  // d(Tp, p); <= 1e-10 when certified numerically
};

inline constexpr double kWitnessResidualBound = 1e-10;
inline constexpr double kSpectralNormSlack = 1e-12;

// Catalog of nonexpansive self-mappings. Instances are immutable and cheap
// to copy (the node tree is shared).
class Mapping {
 public:
  enum class Kind {
    Affine,
    Scaling,
    Rotation,
    Projection,
    HyperbolicRotation,
    Compose,
    Average,
  };

  // Identity on Euclidean(1); placeholder so aggregates holding a Mapping
  // stay default-constructible.
  Mapping();

  // Factories validate operands against the space. `validate = false` skips
  // the nonexpansiveness guards (affine spectral norm, scaling factor range)
  // so that expansion maps can be injected for failure-path testing.
  static Mapping affine(const Space& space, std::vector<double> matrix,
                        Point offset, bool validate = true);
  static Mapping scaling(const Space& space, double factor, Point center,
                         bool validate = true);
  static Mapping rotation(const Space& space, double angle, Point center);
  static Mapping projection(const Space& space, ConvexDomain target);
  static Mapping hyperbolic_rotation(const Space& space, Point center,
                                     double angle);
  static Mapping compose(std::vector<Mapping> stages);
  static Mapping average(double weight, Mapping first, Mapping second);

  Kind kind() const;
  const Space& space() const { return space_; }
  std::string describe() const;

  struct Affine {
    std::vector<double> matrix;  // row-major, dimension x dimension
    Point offset;
  };
  struct Scaling {
    double factor;
    Point center;
  };
  struct Rotation {
    double angle;
    Point center;
  };
  struct Projection {
    ConvexDomain target;
  };
  struct HyperbolicRotation {
    Point center;
    double angle;
  };
  struct Compose {
    std::vector<Mapping> stages;  // applied right-to-left
  };
  struct Average {
    double weight;
    std::shared_ptr<const Mapping> first;
    std::shared_ptr<const Mapping> second;
  };

  using Node = std::variant<Affine, Scaling, Rotation, Projection,
                            HyperbolicRotation, Compose, Average>;

  const Node& node() const { return *node_; }

 private:
  Mapping(Space space, Node node);

  Space space_;
  std::shared_ptr<const Node> node_;
};

// T applied to x. Throws ParamError when the space does not match the one
// the map was built for, DomainError when x is invalid.
Point apply(const Mapping& map, const Space& space, const Point& x);

// Analytic fixed point for catalog entries that expose one:
// scaling/rotation/hyperbolic rotation -> center, projection -> a member of
// the target. Compose/Average expose none.
std::optional<FixedPointWitness> fixed_point_oracle(const Mapping& map);

// Numerically certifies a candidate fixed point: a witness is produced only
// when d(T p, p) <= 1e-10.
std::optional<FixedPointWitness> certify_fixed_point(const Mapping& map,
                                                     const Space& space,
                                                     const Point& candidate);

struct NonexpansiveReport {
  bool pass = true;
  double max_ratio = 0.0;  // max over sampled pairs of d(Tx,Ty)/d(x,y)
  std::int64_t pairs_used = 0;
  std::int64_t pairs_skipped = 0;  // pairs with d(x,y) < 1e-12
  std::optional<std::pair<Point, Point>> worst_pair;
};

// Empirical nonexpansiveness check over seeded sample pairs drawn from the
// domain. Passes iff max_ratio <= 1 + tol.
NonexpansiveReport check_nonexpansive(const Mapping& map, const Space& space,
                                      std::int64_t sample_count,
                                      std::uint64_t seed, double tol);

inline constexpr double kCoincidentPairCutoff = 1e-12;

}  // namespace altfp

#endif  // ALTFP_MAPS_HPP_
