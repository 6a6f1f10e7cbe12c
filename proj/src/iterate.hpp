#ifndef ALTFP_ITERATE_HPP_
#define ALTFP_ITERATE_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "geodesic.hpp"
#include "maps.hpp"

namespace altfp {

// The anchor weights (lambda_n) in [0,1]. Indexing is 1-based: lambda_1 is
// the first coefficient a run consumes.
class LambdaSchedule {
 public:
  enum class Kind { Harmonic, Power, Constant, Explicit };

  LambdaSchedule() = default;  // harmonic

  static LambdaSchedule harmonic();                 // lambda_n = 1/(n+1)
  static LambdaSchedule power(double exponent);     // lambda_n = 1/(n+1)^a
  static LambdaSchedule constant(double value);
  static LambdaSchedule explicit_values(std::vector<double> values);

  // "harmonic" | "power:0.75" | "constant:0.5" | "explicit:0.5,0.25,..."
  static LambdaSchedule from_shorthand(const std::string& text);

  double at(std::uint64_t n) const;  // lambda_n, n >= 1
  bool covers(std::uint64_t horizon) const;
  Kind kind() const { return kind_; }
  double parameter() const { return parameter_; }
  const std::vector<double>& values() const { return values_; }
  std::string describe() const;

  bool operator==(const LambdaSchedule&) const = default;

 private:
  LambdaSchedule(Kind kind, double parameter, std::vector<double> values)
      : kind_(kind), parameter_(parameter), values_(std::move(values)) {}

  Kind kind_ = Kind::Harmonic;
  double parameter_ = 0.0;      // Power exponent / Constant value
  std::vector<double> values_;  // Explicit
};

inline constexpr std::uint64_t kDefaultHorizonCap = 100000;

// Everything a run needs. `horizon` is the index N of the last produced
// iterate; trajectories are stored densely, capped by horizon_cap.
struct IterationConfig {
  Space space;
  Mapping map;
  Point anchor;  // u
  Point start;   // x_0
  LambdaSchedule schedule;
  std::uint64_t horizon = 0;
  std::uint64_t horizon_cap = kDefaultHorizonCap;
};

// Paired run of the mapped-anchor sequence (x_n) and the anchor blend
// sequence (y_n). ys[k] holds y_{k+1}: the y sequence starts at index 1.
// By construction xs[n] is the bit-identical output of applying the map to
// ys[n] for n >= 1.
struct CoupledTrajectory {
  IterationConfig config;          // echo
  std::vector<Point> xs;           // x_0 .. x_N
  std::vector<Point> ys;           // y_1 .. y_N
  std::vector<double> lambdas_used;  // lambda_1 .. lambda_N
  std::vector<double> x_steps;     // d(x_n, x_{n+1}), n = 0 .. N-1
  std::vector<double> y_steps;     // d(y_n, y_{n+1}), n = 1 .. N-1

  std::uint64_t horizon() const { return ys.size(); }
  const Point& x(std::uint64_t n) const;  // n in [0, N]
  const Point& y(std::uint64_t n) const;  // n in [1, N]
};

// x_{n+1} = T(combine(lambda_{n+1}, u, x_n)), n = 0 .. N-1.
// Returns x_0 .. x_N.
std::vector<Point> iterate_alternative(const IterationConfig& config);

// Halpern scheme y_{n+1} = combine(lambda_{n+1}, u, T y_n), n = 1 .. N-1,
// from a caller-supplied seed y_1. Consumes lambda_2 .. lambda_N.
// Returns y_1 .. y_N.
std::vector<Point> iterate_halpern(const Space& space, const Mapping& map,
                                   const Point& anchor, const Point& y1,
                                   const LambdaSchedule& schedule,
                                   std::uint64_t horizon,
                                   std::uint64_t horizon_cap = kDefaultHorizonCap);

// y_{n+1} = combine(lambda_{n+1}, u, x_n); x_{n+1} = T(y_{n+1}). Records
// both sequences and both step-distance series.
CoupledTrajectory iterate_coupled(const IterationConfig& config);

struct CouplingReport {
  bool pass = true;
  double tol = 0.0;
  // (a) d(x_n, T y_n) over n = 1..N
  double max_dev_mapped = 0.0;
  std::uint64_t argmax_mapped = 0;
  // (b) d(y_{n+1}, combine(lambda_{n+1}, u, T y_n)) over n = 1..N-1
  double max_dev_recurrence = 0.0;
  std::uint64_t argmax_recurrence = 0;
  // (c) replayed Halpern run from y_1 against the stored ys, over n = 1..N
  double max_dev_replay = 0.0;
  std::uint64_t argmax_replay = 0;
};

// Certifies that the stored trajectory satisfies the coupling identity, the
// Halpern recurrence, and agrees with an independently replayed Halpern run.
CouplingReport verify_coupling(const CoupledTrajectory& traj, double tol);

}  // namespace altfp

#endif  // ALTFP_ITERATE_HPP_
