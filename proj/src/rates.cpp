#include "rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "errors.hpp"

namespace altfp {

RateFunction RateFunction::table(
    std::vector<std::pair<double, std::uint64_t>> entries) {
  if (entries.empty()) throw ParamError("rate table: no entries");
  for (const auto& [eps, n] : entries) {
    if (!(eps > 0) || !std::isfinite(eps))
      throw ParamError("rate table: epsilon must be positive");
    (void)n;
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].first == entries[i - 1].first)
      throw ParamError("rate table: duplicate epsilon");
    if (entries[i].second < entries[i - 1].second)
      throw ParamError("rate table: not monotone (smaller eps needs larger N)");
  }
  RateFunction phi;
  phi.tabulated_ = true;
  phi.entries_ = std::move(entries);
  return phi;
}

RateFunction RateFunction::power_law(double coefficient, double exponent) {
  if (!(coefficient >= 0) || !std::isfinite(coefficient))
    throw ParamError("rate power law: coefficient must be >= 0");
  if (!(exponent >= 0) || !std::isfinite(exponent))
    throw ParamError("rate power law: exponent must be >= 0");
  RateFunction phi;
  phi.coefficient_ = coefficient;
  phi.exponent_ = exponent;
  return phi;
}

std::optional<std::uint64_t> RateFunction::eval(double epsilon) const {
  if (!(epsilon > 0)) throw ParamError("rate function: epsilon must be > 0");
  if (!tabulated_) {
    const double value =
        std::ceil(coefficient_ * std::pow(epsilon, -exponent_));
    if (value >= 1e18) return std::nullopt;  // out of any usable horizon
    return static_cast<std::uint64_t>(value);
  }
  // Entries are sorted by eps descending; the first entry at or below eps
  // gives the tightest tabulated bound valid for eps.
  for (const auto& [eps, n] : entries_) {
    if (eps <= epsilon) return n;
  }
  return std::nullopt;
}

EpsilonGrid EpsilonGrid::decades() {
  return {{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}};
}

EpsilonGrid EpsilonGrid::from_values(std::vector<double> values) {
  if (values.empty()) throw ParamError("epsilon grid: empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0) || !std::isfinite(values[i]))
      throw ParamError("epsilon grid: values must be positive");
    if (i > 0 && !(values[i] < values[i - 1]))
      throw ParamError("epsilon grid: values must be strictly decreasing");
  }
  return {std::move(values)};
}

std::vector<double> step_distances(std::span<const Point> points,
                                   const Space& space) {
  if (points.size() < 2)
    throw ParamError("step_distances: need at least two points");
  std::vector<double> steps;
  steps.reserve(points.size() - 1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    steps.push_back(distance(space, points[i], points[i + 1]));
  return steps;
}

std::optional<std::uint64_t> empirical_rate(std::span<const double> steps,
                                            double epsilon) {
  if (!(epsilon > 0)) throw ParamError("empirical_rate: epsilon must be > 0");
  // Walk backwards to the last index whose step is not < epsilon.
  std::size_t i = steps.size();
  while (i > 0 && steps[i - 1] < epsilon) --i;
  if (i == steps.size() && !steps.empty()) return std::nullopt;
  return static_cast<std::uint64_t>(i);
}

RateCheckReport check_rate(std::span<const double> steps,
                           const RateFunction& phi, const EpsilonGrid& grid) {
  RateCheckReport report;
  report.horizon = steps.size();
  for (double epsilon : grid.values) {
    RateCheckEntry entry;
    entry.epsilon = epsilon;
    entry.phi = phi.eval(epsilon);
    if (!entry.phi || *entry.phi >= steps.size()) {
      entry.status = RateCheckStatus::Unchecked;
      report.entries.push_back(std::move(entry));
      continue;
    }
    entry.status = RateCheckStatus::Pass;
    for (std::size_t n = *entry.phi; n < steps.size(); ++n) {
      if (!(steps[n] < epsilon)) {
        entry.status = RateCheckStatus::Fail;
        entry.first_violation = n;
        report.pass = false;
        break;
      }
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

RateTransferReport check_rate_transfer(const CoupledTrajectory& traj,
                                       const EpsilonGrid& grid, double tol) {
  const std::uint64_t horizon = traj.horizon();
  if (horizon < 3)
    throw ParamError("check_rate_transfer: trajectory horizon must be >= 3");

  RateTransferReport report;
  report.tol = tol;
  report.horizon = horizon;

  // (a) the literal mechanism: step domination from index 1.
  for (std::uint64_t n = 1; n + 1 <= horizon; ++n) {
    const double slack = traj.x_steps[n] - traj.y_steps[n - 1];
    if (slack > report.max_step_slack) {
      report.max_step_slack = slack;
      report.argmax_step = n;
    }
  }
  report.pass = report.max_step_slack <= tol;

  // (b) the rate-level consequence, both series aligned from index 1.
  const std::span<const double> y_steps(traj.y_steps);
  const std::span<const double> x_steps_from_1(traj.x_steps.data() + 1,
                                               traj.x_steps.size() - 1);
  for (double epsilon : grid.values) {
    RateTransferEntry entry;
    entry.epsilon = epsilon;
    entry.y_rate = empirical_rate(y_steps, epsilon);
    entry.x_rate = empirical_rate(x_steps_from_1, epsilon);
    if (entry.y_rate)
      entry.pass = entry.x_rate.has_value() && *entry.x_rate <= *entry.y_rate;
    if (!entry.pass) report.pass = false;
    report.entries.push_back(entry);
  }
  return report;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_index_pairs(
    std::uint64_t horizon, const IndexPairPlan& plan) {
  if (horizon < 1) throw ParamError("sample_index_pairs: horizon must be >= 1");
  std::mt19937_64 rng(plan.seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, horizon);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  pairs.reserve(plan.count);
  for (std::uint64_t i = 0; i < plan.count; ++i)
    pairs.emplace_back(pick(rng), pick(rng));
  return pairs;
}

DominationReport check_domination(
    const CoupledTrajectory& traj,
    const std::optional<FixedPointWitness>& witness,
    std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs,
    double tol) {
  const std::uint64_t horizon = traj.horizon();
  const Space& space = traj.config.space;

  DominationReport report;
  report.tol = tol;
  for (const auto& [m, n] : pairs) {
    if (m < 1 || n < 1)
      throw ParamError("check_domination: indices must be >= 1");
    if (m > horizon || n > horizon)
      throw ParamError("check_domination: index beyond horizon");
    const double x_gap = distance(space, traj.x(m), traj.x(n));
    const double y_gap = distance(space, traj.y(m), traj.y(n));
    const double slack = x_gap - y_gap;
    ++report.pairs_checked;
    if (slack > report.max_pair_slack) {
      report.max_pair_slack = slack;
      report.worst_pair = std::make_pair(m, n);
    }
  }
  report.pass = report.max_pair_slack <= tol;

  if (witness) {
    double max_slack = -std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 1; n <= horizon; ++n) {
      const double slack = distance(space, traj.x(n), witness->point) -
                           distance(space, traj.y(n), witness->point);
      if (slack > max_slack) {
        max_slack = slack;
        report.argmax_witness = n;
      }
    }
    report.max_witness_slack = max_slack;
    if (max_slack > tol) report.pass = false;
  }
  return report;
}

std::vector<double> distance_to_fixed_point_series(
    std::span<const Point> points, const Space& space, const Point& p) {
  PointCheck check = validate_point(space, p);
  if (!check.ok)
    throw DomainError("distance series: invalid reference point: " +
                      check.reason);
  std::vector<double> series;
  series.reserve(points.size());
  for (const Point& z : points) series.push_back(distance(space, z, p));
  return series;
}

}  // namespace altfp
