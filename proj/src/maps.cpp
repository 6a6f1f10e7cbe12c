#include "maps.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "errors.hpp"
#include "sampling.hpp"

namespace altfp {

namespace {

using Complex = std::complex<double>;

Complex as_complex(const Point& p) { return {p[0], p[1]}; }

void matvec(const std::vector<double>& m, std::size_t dim,
            const std::vector<double>& v, std::vector<double>& out) {
  for (std::size_t r = 0; r < dim; ++r) {
    double s = 0;
    for (std::size_t c = 0; c < dim; ++c) s += m[r * dim + c] * v[c];
    out[r] = s;
  }
}

// Largest singular value of a dim x dim matrix, estimated by power
// iteration on A^T A.
double spectral_norm(const std::vector<double>& m, std::size_t dim) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> v(dim), av(dim), atav(dim);
  for (auto& c : v) c = unit(rng);

  double sigma = 0;
  for (int iter = 0; iter < 200; ++iter) {
    matvec(m, dim, v, av);
    // A^T * av
    for (std::size_t c = 0; c < dim; ++c) {
      double s = 0;
      for (std::size_t r = 0; r < dim; ++r) s += m[r * dim + c] * av[r];
      atav[c] = s;
    }
    double norm = 0;
    for (double c : atav) norm += c * c;
    norm = std::sqrt(norm);
    if (norm == 0) return 0;
    const double next = std::sqrt(norm);  // ||A^T A v|| -> sigma^2
    for (std::size_t i = 0; i < dim; ++i) v[i] = atav[i] / norm;
    if (iter > 4 && std::abs(next - sigma) <= 1e-14 * std::max(1.0, next))
      return next;
    sigma = next;
  }
  return sigma;
}

Point project_onto(const ConvexDomain& target, const Point& x) {
  if (target.kind == ConvexDomain::Kind::Box) {
    Point z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      z[i] = std::clamp(x[i], target.lower[i], target.upper[i]);
    return z;
  }
  // Ball: radial pull toward the center when outside.
  double norm2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - target.center[i];
    norm2 += d * d;
  }
  const double norm = std::sqrt(norm2);
  if (norm <= target.radius) return x;
  const double scale = target.radius / norm;
  Point z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    z[i] = target.center[i] + scale * (x[i] - target.center[i]);
  return z;
}

void require_same_space(const Space& a, const Space& b, const char* what) {
  if (a.kind != b.kind || a.dimension != b.dimension) {
    std::ostringstream msg;
    msg << what << ": space mismatch";
    throw ParamError(msg.str());
  }
}

Point apply_node(const Mapping::Node& node, const Space& space,
                 const Point& x);

struct ApplyVisitor {
  const Space& space;
  const Point& x;

  Point operator()(const Mapping::Affine& m) const {
    const std::size_t dim = x.size();
    Point z(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      double s = m.offset[r];
      for (std::size_t c = 0; c < dim; ++c) s += m.matrix[r * dim + c] * x[c];
      z[r] = s;
    }
    return z;
  }

  Point operator()(const Mapping::Scaling& m) const {
    Point z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      z[i] = m.center[i] + m.factor * (x[i] - m.center[i]);
    return z;
  }

  Point operator()(const Mapping::Rotation& m) const {
    const double c = std::cos(m.angle);
    const double s = std::sin(m.angle);
    const double dx = x[0] - m.center[0];
    const double dy = x[1] - m.center[1];
    return {m.center[0] + c * dx - s * dy, m.center[1] + s * dx + c * dy};
  }

  Point operator()(const Mapping::Projection& m) const {
    return project_onto(m.target, x);
  }

  Point operator()(const Mapping::HyperbolicRotation& m) const {
    // Elliptic Mobius isometry fixing the center: conjugate a rotation
    // about the origin by the translation taking the center there.
    const Complex c = as_complex(m.center);
    const Complex z = as_complex(x);
    const Complex w = (z - c) / (1.0 - std::conj(c) * z);
    const Complex rotated = std::polar(1.0, m.angle) * w;
    const Complex back = (rotated + c) / (1.0 + std::conj(c) * rotated);
    return {back.real(), back.imag()};
  }

  Point operator()(const Mapping::Compose& m) const {
    Point z = x;
    for (auto it = m.stages.rbegin(); it != m.stages.rend(); ++it)
      z = apply_node(it->node(), space, z);
    return z;
  }

  Point operator()(const Mapping::Average& m) const {
    const Point first = apply_node(m.first->node(), space, x);
    const Point second = apply_node(m.second->node(), space, x);
    return combine(space, m.weight, first, second);
  }
};

Point apply_node(const Mapping::Node& node, const Space& space,
                 const Point& x) {
  return std::visit(ApplyVisitor{space, x}, node);
}

}  // namespace

Mapping::Mapping(Space space, Node node)
    : space_(std::move(space)),
      node_(std::make_shared<const Node>(std::move(node))) {}

Mapping::Mapping() : Mapping(Space::euclidean(1), Scaling{1.0, {0.0}}) {}

Mapping Mapping::affine(const Space& space, std::vector<double> matrix,
                        Point offset, bool validate) {
  if (space.kind != SpaceKind::Euclidean)
    throw ParamError("affine: requires a Euclidean space");
  const std::size_t dim = static_cast<std::size_t>(space.dimension);
  if (matrix.size() != dim * dim)
    throw ParamError("affine: matrix must be dimension x dimension");
  if (offset.size() != dim) throw ParamError("affine: offset dimension mismatch");
  for (double c : matrix)
    if (!std::isfinite(c)) throw ParamError("affine: non-finite matrix entry");
  if (validate) {
    const double norm = spectral_norm(matrix, dim);
    if (norm > 1.0 + kSpectralNormSlack) {
      std::ostringstream msg;
      msg << "affine: spectral norm " << norm << " exceeds 1";
      throw ParamError(msg.str());
    }
  }
  return Mapping(space, Affine{std::move(matrix), std::move(offset)});
}

Mapping Mapping::scaling(const Space& space, double factor, Point center,
                         bool validate) {
  if (space.kind != SpaceKind::Euclidean)
    throw ParamError("scaling: requires a Euclidean space");
  if (!std::isfinite(factor)) throw ParamError("scaling: non-finite factor");
  if (validate && !(factor >= 0.0 && factor <= 1.0))
    throw ParamError("scaling: factor must lie in [0,1]");
  if (center.size() != static_cast<std::size_t>(space.dimension))
    throw ParamError("scaling: center dimension mismatch");
  return Mapping(space, Scaling{factor, std::move(center)});
}

Mapping Mapping::rotation(const Space& space, double angle, Point center) {
  if (space.kind != SpaceKind::Euclidean || space.dimension != 2)
    throw ParamError("rotation: requires Euclidean dimension 2");
  if (!std::isfinite(angle)) throw ParamError("rotation: non-finite angle");
  if (center.size() != 2) throw ParamError("rotation: center dimension mismatch");
  return Mapping(space, Rotation{angle, std::move(center)});
}

Mapping Mapping::projection(const Space& space, ConvexDomain target) {
  if (space.kind != SpaceKind::Euclidean)
    throw ParamError("projection: requires a Euclidean space");
  if (target.kind == ConvexDomain::Kind::WholeSpace)
    throw ParamError("projection: target must be a ball or a box");
  const std::size_t dim = static_cast<std::size_t>(space.dimension);
  if (target.kind == ConvexDomain::Kind::Ball && target.center.size() != dim)
    throw ParamError("projection: ball center dimension mismatch");
  if (target.kind == ConvexDomain::Kind::Box && target.lower.size() != dim)
    throw ParamError("projection: box bound dimension mismatch");
  return Mapping(space, Projection{std::move(target)});
}

Mapping Mapping::hyperbolic_rotation(const Space& space, Point center,
                                     double angle) {
  if (space.kind != SpaceKind::HyperbolicDisk)
    throw ParamError("hyperbolic rotation: requires the hyperbolic disk");
  if (!std::isfinite(angle))
    throw ParamError("hyperbolic rotation: non-finite angle");
  PointCheck check = validate_point(space, center);
  if (!check.ok)
    throw ParamError("hyperbolic rotation: invalid center: " + check.reason);
  return Mapping(space, HyperbolicRotation{std::move(center), angle});
}

Mapping Mapping::compose(std::vector<Mapping> stages) {
  if (stages.empty()) throw ParamError("compose: needs at least one stage");
  for (std::size_t i = 1; i < stages.size(); ++i)
    require_same_space(stages[0].space(), stages[i].space(), "compose");
  Space space = stages[0].space();
  return Mapping(std::move(space), Compose{std::move(stages)});
}

Mapping Mapping::average(double weight, Mapping first, Mapping second) {
  if (!(weight >= 0.0 && weight <= 1.0))
    throw ParamError("average: weight must lie in [0,1]");
  require_same_space(first.space(), second.space(), "average");
  Space space = first.space();
  return Mapping(std::move(space),
                 Average{weight, std::make_shared<const Mapping>(std::move(first)),
                         std::make_shared<const Mapping>(std::move(second))});
}

Mapping::Kind Mapping::kind() const {
  return static_cast<Kind>(node_->index());
}

std::string Mapping::describe() const {
  switch (kind()) {
    case Kind::Affine: return "affine";
    case Kind::Scaling: return "scaling";
    case Kind::Rotation: return "rotation";
    case Kind::Projection: return "projection";
    case Kind::HyperbolicRotation: return "hyperbolic_rotation";
    case Kind::Compose: return "compose";
    case Kind::Average: return "average";
  }
  return "unknown";
}

Point apply(const Mapping& map, const Space& space, const Point& x) {
  require_same_space(map.space(), space, "apply");
  PointCheck check = validate_point(space, x);
  if (!check.ok) throw DomainError("apply: invalid point: " + check.reason);
  return apply_node(map.node(), space, x);
}

std::optional<FixedPointWitness> fixed_point_oracle(const Mapping& map) {
  const Mapping::Node& node = map.node();
  if (const auto* s = std::get_if<Mapping::Scaling>(&node))
    return FixedPointWitness{s->center};
  if (const auto* r = std::get_if<Mapping::Rotation>(&node))
    return FixedPointWitness{r->center};
  if (const auto* h = std::get_if<Mapping::HyperbolicRotation>(&node))
    return FixedPointWitness{h->center};
  if (const auto* p = std::get_if<Mapping::Projection>(&node)) {
    if (p->target.kind == ConvexDomain::Kind::Ball)
      return FixedPointWitness{p->target.center};
    Point mid(p->target.lower.size());
    for (std::size_t i = 0; i < mid.size(); ++i)
      mid[i] = 0.5 * (p->target.lower[i] + p->target.upper[i]);
    return FixedPointWitness{std::move(mid)};
  }
  return std::nullopt;
}

std::optional<FixedPointWitness> certify_fixed_point(const Mapping& map,
                                                     const Space& space,
                                                     const Point& candidate) {
  const Point image = apply(map, space, candidate);
  const double residual = distance(space, image, candidate);
  if (residual > kWitnessResidualBound) return std::nullopt;
  return FixedPointWitness{candidate,
                           FixedPointWitness::Source::CertifiedNumerically,
                           residual};
}

NonexpansiveReport check_nonexpansive(const Mapping& map, const Space& space,
                                      std::int64_t sample_count,
                                      std::uint64_t seed, double tol) {
  if (sample_count < 1)
    throw ParamError("check_nonexpansive: sample_count must be >= 1");
  require_same_space(map.space(), space, "check_nonexpansive");

  PointSampler sampler(space, seed);
  NonexpansiveReport report;
  for (std::int64_t i = 0; i < sample_count; ++i) {
    const Point a = sampler.sample();
    const Point b = sampler.sample();
    const double gap = distance(space, a, b);
    if (gap < kCoincidentPairCutoff) {
      ++report.pairs_skipped;
      continue;
    }
    const double image_gap =
        distance(space, apply(map, space, a), apply(map, space, b));
    const double ratio = image_gap / gap;
    ++report.pairs_used;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.worst_pair = std::make_pair(a, b);
    }
  }
  report.pass = report.max_ratio <= 1.0 + tol;
  return report;
}

}  // namespace altfp
