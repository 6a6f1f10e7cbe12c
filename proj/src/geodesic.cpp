#include "geodesic.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "errors.hpp"

namespace altfp {

namespace {

using Complex = std::complex<double>;

Complex as_complex(const Point& p) { return {p[0], p[1]}; }

Point as_point(Complex z) { return {z.real(), z.imag()}; }

// Disk automorphism taking a to the origin.
Complex mobius_to_origin(Complex a, Complex z) {
  return (z - a) / (1.0 - std::conj(a) * z);
}

// Inverse of the above: takes the origin back to a.
Complex mobius_from_origin(Complex a, Complex w) {
  return (w + a) / (1.0 + std::conj(a) * w);
}

double sq_norm(const Point& p) {
  double s = 0;
  for (double c : p) s += c * c;
  return s;
}

void require_valid(const Space& space, const Point& p, const char* role) {
  PointCheck check = validate_point(space, p);
  if (!check.ok) {
    std::ostringstream msg;
    msg << "invalid " << role << " point: " << check.reason;
    throw DomainError(msg.str());
  }
}

}  // namespace

ConvexDomain ConvexDomain::ball(Point center, double radius) {
  if (!(radius >= 0)) throw ParamError("ball radius must be nonnegative");
  ConvexDomain d;
  d.kind = Kind::Ball;
  d.center = std::move(center);
  d.radius = radius;
  return d;
}

ConvexDomain ConvexDomain::box(Point lower, Point upper) {
  if (lower.size() != upper.size())
    throw ParamError("box lower/upper dimension mismatch");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i]))
      throw ParamError("box lower bound exceeds upper bound");
  }
  ConvexDomain d;
  d.kind = Kind::Box;
  d.lower = std::move(lower);
  d.upper = std::move(upper);
  return d;
}

Space Space::euclidean(int dimension, ConvexDomain domain) {
  if (dimension < 1) throw ParamError("euclidean dimension must be >= 1");
  const std::size_t dim = static_cast<std::size_t>(dimension);
  if (domain.kind == ConvexDomain::Kind::Ball && domain.center.size() != dim)
    throw ParamError("ball center dimension mismatch");
  if (domain.kind == ConvexDomain::Kind::Box && domain.lower.size() != dim)
    throw ParamError("box bound dimension mismatch");
  return Space{SpaceKind::Euclidean, dimension, std::move(domain)};
}

Space Space::hyperbolic_disk() {
  return Space{SpaceKind::HyperbolicDisk, 2, ConvexDomain::whole_space()};
}

bool domain_contains(const Space& space, const Point& p) {
  switch (space.domain.kind) {
    case ConvexDomain::Kind::WholeSpace:
      return true;
    case ConvexDomain::Kind::Ball: {
      double s = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = p[i] - space.domain.center[i];
        s += d * d;
      }
      const double r = space.domain.radius + kMembershipSlack;
      return s <= r * r;
    }
    case ConvexDomain::Kind::Box: {
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < space.domain.lower[i] - kMembershipSlack) return false;
        if (p[i] > space.domain.upper[i] + kMembershipSlack) return false;
      }
      return true;
    }
  }
  return false;
}

PointCheck validate_point(const Space& space, const Point& p) {
  if (p.size() != static_cast<std::size_t>(space.dimension)) {
    std::ostringstream msg;
    msg << "dimension: expected " << space.dimension << " coordinates, got "
        << p.size();
    return {false, msg.str()};
  }
  for (double c : p) {
    if (!std::isfinite(c)) return {false, "non-finite coordinate"};
  }
  if (space.kind == SpaceKind::HyperbolicDisk) {
    if (std::sqrt(sq_norm(p)) >= 1.0 - kDiskNormGuard)
      return {false, "disk-norm: coordinate norm must be < 1 - 1e-12"};
  }
  if (!domain_contains(space, p)) return {false, "domain membership"};
  return {};
}

double distance(const Space& space, const Point& a, const Point& b) {
  require_valid(space, a, "first");
  require_valid(space, b, "second");
  if (space.kind == SpaceKind::Euclidean) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  const Complex za = as_complex(a);
  const Complex zb = as_complex(b);
  const double rho = std::abs(za - zb) / std::abs(1.0 - std::conj(za) * zb);
  return 2.0 * std::atanh(rho);
}

Point combine(const Space& space, double lambda, const Point& u,
              const Point& x) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw ParamError("combine: lambda must lie in [0,1]");
  require_valid(space, u, "anchor");
  require_valid(space, x, "base");

  if (space.kind == SpaceKind::Euclidean) {
    Point z(x.size());
    const double mu = 1.0 - lambda;
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = lambda * u[i] + mu * x[i];
    return z;
  }

  // Geodesic endpoints are returned exactly.
  if (lambda == 0.0) return x;
  if (lambda == 1.0) return u;

  const Complex zx = as_complex(x);
  const Complex zu = as_complex(u);
  const Complex w = mobius_to_origin(zx, zu);
  const double rho = std::abs(w);
  if (rho == 0.0) return x;  // coincident endpoints
  const double dist = 2.0 * std::atanh(rho);
  const double radius = std::tanh(0.5 * lambda * dist);
  const Complex target = (radius / rho) * w;
  return as_point(mobius_from_origin(zx, target));
}

}  // namespace altfp
