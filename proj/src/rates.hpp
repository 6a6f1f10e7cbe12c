#ifndef ALTFP_RATES_HPP_
#define ALTFP_RATES_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "geodesic.hpp"
#include "iterate.hpp"
#include "maps.hpp"

namespace altfp {

// A candidate modulus of asymptotic regularity: Phi(eps) = index from which
// all consecutive steps are < eps. Certificates are pluggable data, either
// tabulated or a power-law family.
class RateFunction {
 public:
  // Entries (eps, N); must be monotone (smaller eps -> larger N).
  static RateFunction table(
      std::vector<std::pair<double, std::uint64_t>> entries);
  // Phi(eps) = ceil(coefficient * eps^-exponent).
  static RateFunction power_law(double coefficient, double exponent);

  // nullopt when the table does not cover eps.
  std::optional<std::uint64_t> eval(double epsilon) const;

 private:
  RateFunction() = default;
  bool tabulated_ = false;
  std::vector<std::pair<double, std::uint64_t>> entries_;  // eps descending
  double coefficient_ = 0.0;
  double exponent_ = 0.0;
};

struct EpsilonGrid {
  std::vector<double> values;  // strictly decreasing, all > 0

  static EpsilonGrid decades();  // 1e-1 .. 1e-6
  static EpsilonGrid from_values(std::vector<double> values);
};

// Consecutive distances d(z_k, z_{k+1}) of a point sequence.
std::vector<double> step_distances(std::span<const Point> points,
                                   const Space& space);

// Smallest array index N such that every observed step at index >= N is
// strictly below epsilon; nullopt when the last observed step is >= epsilon.
// This witnesses a rate over the truncated horizon only - it certifies
// nothing beyond the data.
std::optional<std::uint64_t> empirical_rate(std::span<const double> steps,
                                            double epsilon);

enum class RateCheckStatus { Pass, Fail, Unchecked };

struct RateCheckEntry {
  double epsilon = 0.0;
  std::optional<std::uint64_t> phi;
  RateCheckStatus status = RateCheckStatus::Unchecked;
  std::optional<std::uint64_t> first_violation;
};

struct RateCheckReport {
  bool pass = true;  // no Fail entries
  std::uint64_t horizon = 0;
  std::vector<RateCheckEntry> entries;
};

// For each grid epsilon with Phi(eps) inside the horizon: pass iff every
// step at index >= Phi(eps) is < eps. Out-of-horizon (or uncovered) eps are
// reported Unchecked. Indices are positions in `steps`.
RateCheckReport check_rate(std::span<const double> steps,
                           const RateFunction& phi, const EpsilonGrid& grid);

struct RateTransferEntry {
  double epsilon = 0.0;
  std::optional<std::uint64_t> y_rate;
  std::optional<std::uint64_t> x_rate;
  bool pass = true;
};

struct RateTransferReport {
  bool pass = true;
  double tol = 0.0;
  // (a) max over n >= 1 of d(x_n,x_{n+1}) - d(y_n,y_{n+1}).
  double max_step_slack = 0.0;
  std::uint64_t argmax_step = 0;
  // (b) per-epsilon empirical rates, x vs y, aligned from index 1.
  std::vector<RateTransferEntry> entries;
  std::uint64_t horizon = 0;
};

// Verifies the step-domination mechanism d(x_n,x_{n+1}) <= d(y_n,y_{n+1})
// for n >= 1 and its rate-level consequence on the grid.
RateTransferReport check_rate_transfer(const CoupledTrajectory& traj,
                                       const EpsilonGrid& grid, double tol);

struct IndexPairPlan {
  std::uint64_t count = 1000;
  std::uint64_t seed = 1;
};

// Uniform pairs (m, n) with 1 <= m, n <= horizon, deterministic in the seed.
std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_index_pairs(
    std::uint64_t horizon, const IndexPairPlan& plan);

struct DominationReport {
  bool pass = true;
  double tol = 0.0;
  std::uint64_t pairs_checked = 0;
  // max over pairs of d(x_m,x_n) - d(y_m,y_n)
  double max_pair_slack = 0.0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> worst_pair;
  // when a witness is given: max over n of d(x_n,p) - d(y_n,p)
  std::optional<double> max_witness_slack;
  std::uint64_t argmax_witness = 0;
};

// d(x_m,x_n) <= d(y_m,y_n) + tol on the given pairs (indices must be >= 1),
// and d(x_n,p) <= d(y_n,p) + tol for all n = 1..N when a witness is present.
DominationReport check_domination(
    const CoupledTrajectory& traj,
    const std::optional<FixedPointWitness>& witness,
    std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs,
    double tol);

// The series d(z_n, p) for a stored point sequence.
std::vector<double> distance_to_fixed_point_series(
    std::span<const Point> points, const Space& space, const Point& p);

}  // namespace altfp

#endif  // ALTFP_RATES_HPP_
