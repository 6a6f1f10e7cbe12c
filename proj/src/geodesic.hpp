#ifndef ALTFP_GEODESIC_HPP_
#define ALTFP_GEODESIC_HPP_

#include <string>
#include <vector>

namespace altfp {

// An element of one of the catalog spaces, stored as raw coordinates.
// Euclidean(d): length d. HyperbolicDisk: length 2 with Euclidean norm < 1.
using Point = std::vector<double>;

enum class SpaceKind { Euclidean, HyperbolicDisk };

// Convex subset C of the ambient space. Ball and Box are Euclidean-only;
// for the disk the whole (open) disk is the domain.
struct ConvexDomain {
  enum class Kind { WholeSpace, Ball, Box };

  Kind kind = Kind::WholeSpace;
  Point center;       // Ball
  double radius = 0;  // Ball
  Point lower;        // Box
  Point upper;        // Box

  static ConvexDomain whole_space() { return {}; }
  static ConvexDomain ball(Point center, double radius);
  static ConvexDomain box(Point lower, Point upper);

  bool operator==(const ConvexDomain&) const = default;
};

// Descriptor of a uniquely geodesic space (X, d) together with the convex
// domain C the iterations live in.
struct Space {
  SpaceKind kind = SpaceKind::Euclidean;
  int dimension = 1;  // disk: always 2
  ConvexDomain domain;

  static Space euclidean(int dimension,
                         ConvexDomain domain = ConvexDomain::whole_space());
  static Space hyperbolic_disk();

  bool operator==(const Space&) const = default;
};

struct PointCheck {
  bool ok = true;
  std::string reason;  // names the violated constraint when !ok
};

// Points are kept strictly inside the disk so that the Mobius formulas
// stay well conditioned.
inline constexpr double kDiskNormGuard = 1e-12;

// Slack for Ball/Box membership; metric projections land on the boundary
// up to rounding.
inline constexpr double kMembershipSlack = 1e-9;

// Metric of the space. Euclidean: l2 norm of a-b. Disk: Poincare distance,
// evaluated as 2*atanh(|a-b| / |1 - conj(a)b|), which equals the textbook
// arcosh(1 + 2|a-b|^2 / ((1-|a|^2)(1-|b|^2))) form but does not lose
// precision for nearby points.
double distance(const Space& space, const Point& a, const Point& b);

// The point z at parameter lambda on the geodesic from x toward u:
// d(x,z) = lambda * d(x,u) and d(z,u) = (1-lambda) * d(x,u).
// Euclidean: componentwise lambda*u + (1-lambda)*x, always evaluated by
// that exact formula. Disk: Mobius translation of x to the origin, radial
// displacement by tanh(lambda * d(x,u) / 2), inverse translation.
Point combine(const Space& space, double lambda, const Point& u,
              const Point& x);

// Checks the point invariants (shape, finiteness, disk norm) and domain
// membership. Never throws; violations are the return value.
PointCheck validate_point(const Space& space, const Point& p);

// True iff p lies in the domain (with kMembershipSlack for Ball/Box).
// Assumes p is already a valid element of the ambient space.
bool domain_contains(const Space& space, const Point& p);

}  // namespace altfp

#endif  // ALTFP_GEODESIC_HPP_
