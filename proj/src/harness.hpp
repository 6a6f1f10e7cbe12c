#ifndef ALTFP_HARNESS_HPP_
#define ALTFP_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geodesic.hpp"
#include "iterate.hpp"
#include "maps.hpp"
#include "rates.hpp"

namespace altfp {

using Json = nlohmann::json;

struct CheckSelection {
  bool coupling = true;
  bool domination = true;
  bool rate_transfer = true;
  bool nonexpansiveness = true;
  // Enables the strong-convergence transfer check when set; must be > 0.
  std::optional<double> convergence_threshold;
};

struct Tolerances {
  double euclidean = 1e-12;
  double hyperbolic = 1e-10;
  double nonexpansive = 1e-9;
};

struct OutputPaths {
  std::string dir = ".";
  std::string json = "result.json";
  std::string csv = "series.csv";
};

struct ExperimentConfig {
  Space space = Space::euclidean(1);
  Mapping map;
  Point anchor;
  Point start;
  LambdaSchedule schedule = LambdaSchedule::harmonic();
  std::uint64_t horizon = 2;
  std::uint64_t horizon_cap = kDefaultHorizonCap;
  CheckSelection checks;
  Tolerances tolerances;
  EpsilonGrid grid = EpsilonGrid::decades();
  std::uint64_t seed = 1;
  std::uint64_t domination_pairs = 1000;
  std::int64_t nonexpansive_samples = 10000;
  OutputPaths output;
  bool skip_validation = false;

  // The tolerance the run's space kind calls for.
  double space_tolerance() const {
    return space.kind == SpaceKind::HyperbolicDisk ? tolerances.hyperbolic
                                                   : tolerances.euclidean;
  }
};

enum class CheckStatus { Passed, Failed, Skipped };

struct CheckOutcome {
  std::string name;
  CheckStatus status = CheckStatus::Passed;
  Json details;
};

struct ExperimentResult {
  ExperimentConfig config;
  CoupledTrajectory trajectory;
  std::optional<FixedPointWitness> witness;
  std::vector<CheckOutcome> checks;
  std::vector<std::string> warnings;
  bool pass = true;
  // Wall clock of the run. Deliberately absent from emitted artifacts so
  // repeated runs produce identical bytes.
  double duration_seconds = 0.0;
};

// Strict parse: unknown keys are rejected, violations name the offending
// field, defaults are filled in.
ExperimentConfig parse_config(const std::string& json_text);

// Individual parsers, shared with the C API.
Space parse_space_json(const Json& j);
Mapping parse_map_json(const Space& space, const Json& j,
                       bool skip_validation = false);
LambdaSchedule parse_schedule_json(const Json& j);

// Canonical serialization with every default materialized; parsing it again
// reproduces the config exactly.
Json config_to_json(const ExperimentConfig& config);
Json space_to_json(const Space& space);
Json map_to_json(const Mapping& map);
Json schedule_to_json(const LambdaSchedule& schedule);

// Runs the coupled engine and every enabled check. Deterministic in the
// config (including the seed).
ExperimentResult run_experiment(const ExperimentConfig& config);

// Result document: config echo, trajectory summary, per-check reports,
// verdict. Excludes wall-clock duration (see above).
Json result_to_json(const ExperimentResult& result);

// result.json / series.csv writers. CSV columns: n, x and y coordinates,
// consecutive step distances, and (with a witness) distances to the fixed
// point. All numerics render shortest-round-trip.
void emit_json(const ExperimentResult& result, const std::string& path);
void emit_csv(const ExperimentResult& result, const std::string& path);

// Machine-readable listing of the supported spaces, maps and schedules.
std::string catalog_json();

std::string check_status_name(CheckStatus status);

}  // namespace altfp

#endif  // ALTFP_HARNESS_HPP_
