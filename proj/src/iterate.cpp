#include "iterate.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace altfp {

namespace {

void check_weight(double value, const char* what) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": lambda must lie in [0,1], got " << value;
    throw ParamError(msg.str());
  }
}

void validate_run_inputs(const Space& space, const Mapping& map,
                         const Point& anchor, const Point& start,
                         const char* start_role) {
  if (map.space().kind != space.kind ||
      map.space().dimension != space.dimension)
    throw ParamError("iteration: map/space mismatch");
  PointCheck anchor_check = validate_point(space, anchor);
  if (!anchor_check.ok)
    throw DomainError("iteration: invalid anchor: " + anchor_check.reason);
  PointCheck start_check = validate_point(space, start);
  if (!start_check.ok) {
    std::ostringstream msg;
    msg << "iteration: invalid " << start_role << ": " << start_check.reason;
    throw DomainError(msg.str());
  }
}

void check_horizon(std::uint64_t horizon, std::uint64_t cap,
                   const LambdaSchedule& schedule) {
  if (horizon < 1) throw ParamError("iteration: horizon must be >= 1");
  if (horizon > cap) {
    std::ostringstream msg;
    msg << "iteration: horizon " << horizon << " exceeds cap " << cap;
    throw ParamError(msg.str());
  }
  if (!schedule.covers(horizon))
    throw ParamError("iteration: schedule exhausted before the horizon");
}

void validate_iterate(const Space& space, const Point& p, std::uint64_t n,
                      const char* series) {
  PointCheck check = validate_point(space, p);
  if (!check.ok) {
    std::ostringstream msg;
    msg << "iteration left the domain at " << series << "_" << n << ": "
        << check.reason << " (not a self-map configuration?)";
    throw DomainError(msg.str());
  }
}

}  // namespace

LambdaSchedule LambdaSchedule::harmonic() {
  return {Kind::Harmonic, 0.0, {}};
}

LambdaSchedule LambdaSchedule::power(double exponent) {
  if (!(exponent > 0) || !std::isfinite(exponent))
    throw ParamError("schedule: power exponent must be positive");
  return {Kind::Power, exponent, {}};
}

LambdaSchedule LambdaSchedule::constant(double value) {
  check_weight(value, "schedule: constant");
  return {Kind::Constant, value, {}};
}

LambdaSchedule LambdaSchedule::explicit_values(std::vector<double> values) {
  if (values.empty()) throw ParamError("schedule: explicit list is empty");
  for (double v : values) check_weight(v, "schedule: explicit entry");
  return {Kind::Explicit, 0.0, std::move(values)};
}

LambdaSchedule LambdaSchedule::from_shorthand(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (name == "harmonic") {
      if (!arg.empty()) throw ParamError("harmonic takes no parameter");
      return harmonic();
    }
    if (name == "power") return power(std::stod(arg));
    if (name == "constant") return constant(std::stod(arg));
    if (name == "explicit") {
      std::vector<double> values;
      std::stringstream stream(arg);
      std::string item;
      while (std::getline(stream, item, ','))
        values.push_back(std::stod(item));
      return explicit_values(std::move(values));
    }
  } catch (const std::logic_error&) {  // stod failures
    throw ParamError("schedule: bad parameter in '" + text + "'");
  }
  throw ParamError("schedule: unknown shorthand '" + text + "'");
}

double LambdaSchedule::at(std::uint64_t n) const {
  if (n < 1) throw ParamError("schedule: index must be >= 1");
  switch (kind_) {
    case Kind::Harmonic:
      return 1.0 / static_cast<double>(n + 1);
    case Kind::Power:
      return std::pow(static_cast<double>(n + 1), -parameter_);
    case Kind::Constant:
      return parameter_;
    case Kind::Explicit:
      if (n > values_.size())
        throw ParamError("schedule: explicit list exhausted");
      return values_[n - 1];
  }
  throw ParamError("schedule: bad kind");
}

bool LambdaSchedule::covers(std::uint64_t horizon) const {
  return kind_ != Kind::Explicit || values_.size() >= horizon;
}

std::string LambdaSchedule::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Harmonic: out << "harmonic"; break;
    case Kind::Power: out << "power:" << parameter_; break;
    case Kind::Constant: out << "constant:" << parameter_; break;
    case Kind::Explicit: out << "explicit[" << values_.size() << "]"; break;
  }
  return out.str();
}

const Point& CoupledTrajectory::x(std::uint64_t n) const {
  if (n >= xs.size()) throw ParamError("trajectory: x index out of range");
  return xs[n];
}

const Point& CoupledTrajectory::y(std::uint64_t n) const {
  if (n < 1 || n > ys.size())
    throw ParamError("trajectory: y index out of range (y starts at 1)");
  return ys[n - 1];
}

std::vector<Point> iterate_alternative(const IterationConfig& config) {
  validate_run_inputs(config.space, config.map, config.anchor, config.start,
                      "start");
  check_horizon(config.horizon, config.horizon_cap, config.schedule);

  std::vector<Point> xs;
  xs.reserve(config.horizon + 1);
  xs.push_back(config.start);
  for (std::uint64_t n = 0; n < config.horizon; ++n) {
    const double lambda = config.schedule.at(n + 1);
    const Point blend = combine(config.space, lambda, config.anchor, xs.back());
    Point next = apply(config.map, config.space, blend);
    validate_iterate(config.space, next, n + 1, "x");
    xs.push_back(std::move(next));
  }
  return xs;
}

std::vector<Point> iterate_halpern(const Space& space, const Mapping& map,
                                   const Point& anchor, const Point& y1,
                                   const LambdaSchedule& schedule,
                                   std::uint64_t horizon,
                                   std::uint64_t horizon_cap) {
  validate_run_inputs(space, map, anchor, y1, "seed");
  check_horizon(horizon, horizon_cap, schedule);

  std::vector<Point> ys;
  ys.reserve(horizon);
  ys.push_back(y1);
  for (std::uint64_t n = 1; n < horizon; ++n) {
    const double lambda = schedule.at(n + 1);
    const Point mapped = apply(map, space, ys.back());
    Point next = combine(space, lambda, anchor, mapped);
    validate_iterate(space, next, n + 1, "y");
    ys.push_back(std::move(next));
  }
  return ys;
}

CoupledTrajectory iterate_coupled(const IterationConfig& config) {
  validate_run_inputs(config.space, config.map, config.anchor, config.start,
                      "start");
  check_horizon(config.horizon, config.horizon_cap, config.schedule);

  CoupledTrajectory traj;
  traj.config = config;
  traj.xs.reserve(config.horizon + 1);
  traj.ys.reserve(config.horizon);
  traj.lambdas_used.reserve(config.horizon);
  traj.xs.push_back(config.start);

  for (std::uint64_t n = 0; n < config.horizon; ++n) {
    const double lambda = config.schedule.at(n + 1);
    Point blend = combine(config.space, lambda, config.anchor, traj.xs.back());
    validate_iterate(config.space, blend, n + 1, "y");
    Point next = apply(config.map, config.space, blend);
    validate_iterate(config.space, next, n + 1, "x");
    traj.lambdas_used.push_back(lambda);
    traj.ys.push_back(std::move(blend));
    traj.xs.push_back(std::move(next));
  }

  traj.x_steps.reserve(config.horizon);
  for (std::uint64_t n = 0; n < config.horizon; ++n)
    traj.x_steps.push_back(distance(config.space, traj.xs[n], traj.xs[n + 1]));
  if (config.horizon >= 2) {
    traj.y_steps.reserve(config.horizon - 1);
    for (std::uint64_t n = 0; n + 1 < config.horizon; ++n)
      traj.y_steps.push_back(
          distance(config.space, traj.ys[n], traj.ys[n + 1]));
  }
  return traj;
}

CouplingReport verify_coupling(const CoupledTrajectory& traj, double tol) {
  if (tol < 0) throw ParamError("verify_coupling: tol must be >= 0");
  const std::uint64_t horizon = traj.horizon();
  if (traj.xs.size() != horizon + 1 ||
      traj.lambdas_used.size() != horizon || horizon < 1)
    throw ParamError("verify_coupling: inconsistent trajectory");

  const Space& space = traj.config.space;
  const Mapping& map = traj.config.map;
  CouplingReport report;
  report.tol = tol;

  // (a) the coupling identity x_n = T y_n.
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const double dev =
        distance(space, traj.x(n), apply(map, space, traj.y(n)));
    if (dev > report.max_dev_mapped) {
      report.max_dev_mapped = dev;
      report.argmax_mapped = n;
    }
  }

  // (b) the Halpern recurrence on the stored ys.
  for (std::uint64_t n = 1; n < horizon; ++n) {
    const Point expected =
        combine(space, traj.lambdas_used[n], traj.config.anchor,
                apply(map, space, traj.y(n)));
    const double dev = distance(space, traj.y(n + 1), expected);
    if (dev > report.max_dev_recurrence) {
      report.max_dev_recurrence = dev;
      report.argmax_recurrence = n + 1;
    }
  }

  // (c) an independent Halpern replay from the stored y_1.
  const std::vector<Point> replay =
      iterate_halpern(space, map, traj.config.anchor, traj.y(1),
                      traj.config.schedule, horizon, traj.config.horizon_cap);
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const double dev = distance(space, traj.y(n), replay[n - 1]);
    if (dev > report.max_dev_replay) {
      report.max_dev_replay = dev;
      report.argmax_replay = n;
    }
  }

  report.pass = report.max_dev_mapped <= tol &&
                report.max_dev_recurrence <= tol &&
                report.max_dev_replay <= tol;
  return report;
}

}  // namespace altfp
