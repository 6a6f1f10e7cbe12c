#include "harness.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace altfp {

namespace {

// Tracks which keys were consumed so leftovers can be rejected by name.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path)
      : obj_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  const Json* find(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const Json& require(const std::string& key) {
    const Json* j = find(key);
    if (!j) throw ConfigError(path_ + ": missing required key '" + key + "'");
    return *j;
  }

  void done() {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key()))
        throw ConfigError(path_ + ": unknown key '" + it.key() + "'");
    }
  }

  std::string sub(const std::string& key) const { return path_ + "." + key; }

 private:
  const Json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

double get_double(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

std::uint64_t get_uint(const Json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw ConfigError(path + ": expected a nonnegative integer");
  if (j.is_number_integer() && j.get<std::int64_t>() < 0)
    throw ConfigError(path + ": expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path + ": expected a boolean");
  return j.get<bool>();
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

Point get_point(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array of numbers");
  Point p;
  p.reserve(j.size());
  for (const Json& c : j) p.push_back(get_double(c, path));
  return p;
}

ConvexDomain parse_domain_json(const Json& j, const std::string& path) {
  ObjectReader reader(j, path);
  const std::string kind = get_string(reader.require("kind"), reader.sub("kind"));
  ConvexDomain domain;
  if (kind == "whole_space") {
    // nothing else
  } else if (kind == "ball") {
    Point center = get_point(reader.require("center"), reader.sub("center"));
    const double radius =
        get_double(reader.require("radius"), reader.sub("radius"));
    try {
      domain = ConvexDomain::ball(std::move(center), radius);
    } catch (const Error& e) {
      throw ConfigError(path + ": " + e.what());
    }
  } else if (kind == "box") {
    Point lower = get_point(reader.require("lower"), reader.sub("lower"));
    Point upper = get_point(reader.require("upper"), reader.sub("upper"));
    try {
      domain = ConvexDomain::box(std::move(lower), std::move(upper));
    } catch (const Error& e) {
      throw ConfigError(path + ": " + e.what());
    }
  } else {
    throw ConfigError(path + ": unknown domain kind '" + kind + "'");
  }
  reader.done();
  return domain;
}

Mapping parse_map_json_at(const Space& space, const Json& j,
                          const std::string& path, bool skip_validation) {
  ObjectReader reader(j, path);
  const std::string kind = get_string(reader.require("kind"), reader.sub("kind"));
  try {
    if (kind == "affine") {
      const Json& rows = reader.require("matrix");
      if (!rows.is_array())
        throw ConfigError(reader.sub("matrix") + ": expected an array of rows");
      std::vector<double> matrix;
      for (const Json& row : rows) {
        if (!row.is_array())
          throw ConfigError(reader.sub("matrix") + ": expected rows of numbers");
        for (const Json& c : row)
          matrix.push_back(get_double(c, reader.sub("matrix")));
      }
      Point offset(static_cast<std::size_t>(space.dimension), 0.0);
      if (const Json* off = reader.find("offset"))
        offset = get_point(*off, reader.sub("offset"));
      reader.done();
      return Mapping::affine(space, std::move(matrix), std::move(offset),
                             !skip_validation);
    }
    if (kind == "scaling") {
      const double factor =
          get_double(reader.require("factor"), reader.sub("factor"));
      Point center = get_point(reader.require("center"), reader.sub("center"));
      reader.done();
      return Mapping::scaling(space, factor, std::move(center),
                              !skip_validation);
    }
    if (kind == "rotation") {
      const double angle =
          get_double(reader.require("angle"), reader.sub("angle"));
      Point center = get_point(reader.require("center"), reader.sub("center"));
      reader.done();
      return Mapping::rotation(space, angle, std::move(center));
    }
    if (kind == "projection") {
      ConvexDomain target =
          parse_domain_json(reader.require("target"), reader.sub("target"));
      reader.done();
      return Mapping::projection(space, std::move(target));
    }
    if (kind == "hyperbolic_rotation") {
      Point center = get_point(reader.require("center"), reader.sub("center"));
      const double angle =
          get_double(reader.require("angle"), reader.sub("angle"));
      reader.done();
      return Mapping::hyperbolic_rotation(space, std::move(center), angle);
    }
    if (kind == "compose") {
      const Json& stages = reader.require("maps");
      if (!stages.is_array() || stages.empty())
        throw ConfigError(reader.sub("maps") + ": expected a nonempty array");
      std::vector<Mapping> parts;
      std::size_t index = 0;
      for (const Json& stage : stages) {
        parts.push_back(parse_map_json_at(
            space, stage, reader.sub("maps[" + std::to_string(index) + "]"),
            skip_validation));
        ++index;
      }
      reader.done();
      return Mapping::compose(std::move(parts));
    }
    if (kind == "average") {
      const double weight =
          get_double(reader.require("weight"), reader.sub("weight"));
      Mapping first = parse_map_json_at(space, reader.require("first"),
                                        reader.sub("first"), skip_validation);
      Mapping second = parse_map_json_at(space, reader.require("second"),
                                         reader.sub("second"), skip_validation);
      reader.done();
      return Mapping::average(weight, std::move(first), std::move(second));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  throw ConfigError(path + ": unknown map kind '" + kind + "'");
}

std::string render(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json domain_to_json(const ConvexDomain& domain) {
  switch (domain.kind) {
    case ConvexDomain::Kind::WholeSpace:
      return Json{{"kind", "whole_space"}};
    case ConvexDomain::Kind::Ball:
      return Json{{"kind", "ball"},
                  {"center", domain.center},
                  {"radius", domain.radius}};
    case ConvexDomain::Kind::Box:
      return Json{{"kind", "box"},
                  {"lower", domain.lower},
                  {"upper", domain.upper}};
  }
  return {};
}

Json optional_index(const std::optional<std::uint64_t>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

Space parse_space_json(const Json& j) {
  ObjectReader reader(j, "space");
  const std::string kind = get_string(reader.require("kind"), "space.kind");
  if (kind == "hyperbolic_disk") {
    reader.done();
    return Space::hyperbolic_disk();
  }
  if (kind != "euclidean")
    throw ConfigError("space.kind: unknown space kind '" + kind + "'");
  const std::uint64_t dimension =
      get_uint(reader.require("dimension"), "space.dimension");
  if (dimension < 1 || dimension > 1000)
    throw ConfigError("space.dimension: must be in [1, 1000]");
  ConvexDomain domain;
  if (const Json* d = reader.find("domain"))
    domain = parse_domain_json(*d, "space.domain");
  reader.done();
  try {
    return Space::euclidean(static_cast<int>(dimension), std::move(domain));
  } catch (const Error& e) {
    throw ConfigError(std::string("space: ") + e.what());
  }
}

Mapping parse_map_json(const Space& space, const Json& j,
                       bool skip_validation) {
  return parse_map_json_at(space, j, "map", skip_validation);
}

LambdaSchedule parse_schedule_json(const Json& j) {
  ObjectReader reader(j, "schedule");
  const std::string kind = get_string(reader.require("kind"), "schedule.kind");
  try {
    if (kind == "harmonic") {
      reader.done();
      return LambdaSchedule::harmonic();
    }
    if (kind == "power") {
      const double exponent =
          get_double(reader.require("exponent"), "schedule.exponent");
      reader.done();
      return LambdaSchedule::power(exponent);
    }
    if (kind == "constant") {
      const double value =
          get_double(reader.require("value"), "schedule.value");
      reader.done();
      return LambdaSchedule::constant(value);
    }
    if (kind == "explicit") {
      const Json& values = reader.require("values");
      if (!values.is_array())
        throw ConfigError("schedule.values: expected an array of numbers");
      std::vector<double> list;
      for (const Json& v : values)
        list.push_back(get_double(v, "schedule.values"));
      reader.done();
      return LambdaSchedule::explicit_values(std::move(list));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
  throw ConfigError("schedule.kind: unknown schedule kind '" + kind + "'");
}

ExperimentConfig parse_config(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ObjectReader reader(doc, "config");
  ExperimentConfig config;

  if (const Json* flag = reader.find("unsafe_skip_validation"))
    config.skip_validation = get_bool(*flag, "unsafe_skip_validation");

  config.space = parse_space_json(reader.require("space"));
  config.map =
      parse_map_json(config.space, reader.require("map"), config.skip_validation);
  config.anchor = get_point(reader.require("u"), "u");
  config.start = get_point(reader.require("x0"), "x0");
  config.schedule = parse_schedule_json(reader.require("schedule"));
  config.horizon = get_uint(reader.require("horizon"), "horizon");

  if (const Json* cap = reader.find("horizon_cap"))
    config.horizon_cap = get_uint(*cap, "horizon_cap");
  if (const Json* seed = reader.find("seed"))
    config.seed = get_uint(*seed, "seed");
  if (const Json* pairs = reader.find("domination_pairs"))
    config.domination_pairs = get_uint(*pairs, "domination_pairs");
  if (const Json* samples = reader.find("nonexpansive_samples")) {
    config.nonexpansive_samples =
        static_cast<std::int64_t>(get_uint(*samples, "nonexpansive_samples"));
  }

  if (const Json* checks = reader.find("checks")) {
    ObjectReader cr(*checks, "checks");
    if (const Json* v = cr.find("coupling"))
      config.checks.coupling = get_bool(*v, "checks.coupling");
    if (const Json* v = cr.find("domination"))
      config.checks.domination = get_bool(*v, "checks.domination");
    if (const Json* v = cr.find("rate_transfer"))
      config.checks.rate_transfer = get_bool(*v, "checks.rate_transfer");
    if (const Json* v = cr.find("nonexpansiveness"))
      config.checks.nonexpansiveness = get_bool(*v, "checks.nonexpansiveness");
    if (const Json* v = cr.find("convergence_threshold")) {
      const double threshold =
          get_double(*v, "checks.convergence_threshold");
      if (!(threshold > 0))
        throw ConfigError("checks.convergence_threshold: must be > 0");
      config.checks.convergence_threshold = threshold;
    }
    cr.done();
  }

  if (const Json* tol = reader.find("tolerances")) {
    ObjectReader tr(*tol, "tolerances");
    if (const Json* v = tr.find("euclidean"))
      config.tolerances.euclidean = get_double(*v, "tolerances.euclidean");
    if (const Json* v = tr.find("hyperbolic"))
      config.tolerances.hyperbolic = get_double(*v, "tolerances.hyperbolic");
    if (const Json* v = tr.find("nonexpansive"))
      config.tolerances.nonexpansive =
          get_double(*v, "tolerances.nonexpansive");
    tr.done();
    for (double t : {config.tolerances.euclidean, config.tolerances.hyperbolic,
                     config.tolerances.nonexpansive}) {
      if (!(t >= 0) || !std::isfinite(t))
        throw ConfigError("tolerances: must be finite and >= 0");
    }
  }

  if (const Json* grid = reader.find("epsilon_grid")) {
    if (!grid->is_array())
      throw ConfigError("epsilon_grid: expected an array of numbers");
    std::vector<double> values;
    for (const Json& v : *grid)
      values.push_back(get_double(v, "epsilon_grid"));
    try {
      config.grid = EpsilonGrid::from_values(std::move(values));
    } catch (const Error& e) {
      throw ConfigError(std::string("epsilon_grid: ") + e.what());
    }
  }

  if (const Json* output = reader.find("output")) {
    ObjectReader orr(*output, "output");
    if (const Json* v = orr.find("dir"))
      config.output.dir = get_string(*v, "output.dir");
    if (const Json* v = orr.find("json"))
      config.output.json = get_string(*v, "output.json");
    if (const Json* v = orr.find("csv"))
      config.output.csv = get_string(*v, "output.csv");
    orr.done();
  }

  reader.done();

  // Cross-field validation.
  if (config.horizon < 2) throw ConfigError("horizon: must be >= 2");
  if (config.horizon > config.horizon_cap)
    throw ConfigError("horizon: exceeds horizon_cap");
  if (config.checks.rate_transfer && config.horizon < 3)
    throw ConfigError("horizon: must be >= 3 when rate_transfer is enabled");
  if (!config.schedule.covers(config.horizon))
    throw ConfigError("schedule: explicit schedule exhausted before horizon");
  if (config.domination_pairs < 1)
    throw ConfigError("domination_pairs: must be >= 1");
  if (config.nonexpansive_samples < 1)
    throw ConfigError("nonexpansive_samples: must be >= 1");

  PointCheck anchor_check = validate_point(config.space, config.anchor);
  if (!anchor_check.ok) throw ConfigError("u: " + anchor_check.reason);
  PointCheck start_check = validate_point(config.space, config.start);
  if (!start_check.ok) throw ConfigError("x0: " + start_check.reason);

  return config;
}

Json space_to_json(const Space& space) {
  if (space.kind == SpaceKind::HyperbolicDisk)
    return Json{{"kind", "hyperbolic_disk"}};
  return Json{{"kind", "euclidean"},
              {"dimension", space.dimension},
              {"domain", domain_to_json(space.domain)}};
}

Json map_to_json(const Mapping& map) {
  const Mapping::Node& node = map.node();
  if (const auto* m = std::get_if<Mapping::Affine>(&node)) {
    const std::size_t dim = m->offset.size();
    Json rows = Json::array();
    for (std::size_t r = 0; r < dim; ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < dim; ++c) row.push_back(m->matrix[r * dim + c]);
      rows.push_back(std::move(row));
    }
    return Json{{"kind", "affine"}, {"matrix", rows}, {"offset", m->offset}};
  }
  if (const auto* m = std::get_if<Mapping::Scaling>(&node))
    return Json{{"kind", "scaling"}, {"factor", m->factor}, {"center", m->center}};
  if (const auto* m = std::get_if<Mapping::Rotation>(&node))
    return Json{{"kind", "rotation"}, {"angle", m->angle}, {"center", m->center}};
  if (const auto* m = std::get_if<Mapping::Projection>(&node))
    return Json{{"kind", "projection"}, {"target", domain_to_json(m->target)}};
  if (const auto* m = std::get_if<Mapping::HyperbolicRotation>(&node))
    return Json{{"kind", "hyperbolic_rotation"},
                {"center", m->center},
                {"angle", m->angle}};
  if (const auto* m = std::get_if<Mapping::Compose>(&node)) {
    Json stages = Json::array();
    for (const Mapping& stage : m->stages) stages.push_back(map_to_json(stage));
    return Json{{"kind", "compose"}, {"maps", stages}};
  }
  if (const auto* m = std::get_if<Mapping::Average>(&node))
    return Json{{"kind", "average"},
                {"weight", m->weight},
                {"first", map_to_json(*m->first)},
                {"second", map_to_json(*m->second)}};
  return {};
}

Json schedule_to_json(const LambdaSchedule& schedule) {
  switch (schedule.kind()) {
    case LambdaSchedule::Kind::Harmonic:
      return Json{{"kind", "harmonic"}};
    case LambdaSchedule::Kind::Power:
      return Json{{"kind", "power"}, {"exponent", schedule.parameter()}};
    case LambdaSchedule::Kind::Constant:
      return Json{{"kind", "constant"}, {"value", schedule.parameter()}};
    case LambdaSchedule::Kind::Explicit:
      return Json{{"kind", "explicit"}, {"values", schedule.values()}};
  }
  return {};
}

Json config_to_json(const ExperimentConfig& config) {
  Json checks{{"coupling", config.checks.coupling},
              {"domination", config.checks.domination},
              {"rate_transfer", config.checks.rate_transfer},
              {"nonexpansiveness", config.checks.nonexpansiveness}};
  if (config.checks.convergence_threshold)
    checks["convergence_threshold"] = *config.checks.convergence_threshold;
  else
    checks["convergence_threshold"] = nullptr;

  return Json{
      {"space", space_to_json(config.space)},
      {"map", map_to_json(config.map)},
      {"u", config.anchor},
      {"x0", config.start},
      {"schedule", schedule_to_json(config.schedule)},
      {"horizon", config.horizon},
      {"horizon_cap", config.horizon_cap},
      {"checks", checks},
      {"tolerances",
       {{"euclidean", config.tolerances.euclidean},
        {"hyperbolic", config.tolerances.hyperbolic},
        {"nonexpansive", config.tolerances.nonexpansive}}},
      {"epsilon_grid", config.grid.values},
      {"seed", config.seed},
      {"domination_pairs", config.domination_pairs},
      {"nonexpansive_samples", config.nonexpansive_samples},
      {"output",
       {{"dir", config.output.dir},
        {"json", config.output.json},
        {"csv", config.output.csv}}},
      {"unsafe_skip_validation", config.skip_validation},
  };
}

std::string check_status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::Passed: return "passed";
    case CheckStatus::Failed: return "failed";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.config = config;
  const double tol = config.space_tolerance();

  if (config.checks.nonexpansiveness) {
    const NonexpansiveReport report = check_nonexpansive(
        config.map, config.space, config.nonexpansive_samples, config.seed,
        config.tolerances.nonexpansive);
    CheckOutcome outcome;
    outcome.name = "nonexpansiveness";
    outcome.status = report.pass ? CheckStatus::Passed : CheckStatus::Failed;
    outcome.details = Json{{"tol", config.tolerances.nonexpansive},
                           {"samples", config.nonexpansive_samples},
                           {"pairs_used", report.pairs_used},
                           {"pairs_skipped", report.pairs_skipped},
                           {"max_ratio", report.max_ratio}};
    result.checks.push_back(std::move(outcome));
  }

  IterationConfig run{config.space,    config.map,
                      config.anchor,   config.start,
                      config.schedule, config.horizon,
                      config.horizon_cap};
  result.trajectory = iterate_coupled(run);
  result.witness = fixed_point_oracle(config.map);

  if (config.checks.coupling) {
    const CouplingReport report = verify_coupling(result.trajectory, tol);
    CheckOutcome outcome;
    outcome.name = "coupling";
    outcome.status = report.pass ? CheckStatus::Passed : CheckStatus::Failed;
    outcome.details = Json{{"tol", report.tol},
                           {"max_dev_mapped", report.max_dev_mapped},
                           {"max_dev_recurrence", report.max_dev_recurrence},
                           {"max_dev_replay", report.max_dev_replay}};
    result.checks.push_back(std::move(outcome));
  }

  if (config.checks.domination) {
    const auto pairs = sample_index_pairs(
        config.horizon, IndexPairPlan{config.domination_pairs, config.seed});
    const DominationReport report =
        check_domination(result.trajectory, result.witness, pairs, tol);
    CheckOutcome outcome;
    outcome.name = "domination";
    outcome.status = report.pass ? CheckStatus::Passed : CheckStatus::Failed;
    outcome.details = Json{{"tol", report.tol},
                           {"pairs_checked", report.pairs_checked},
                           {"max_pair_slack", report.max_pair_slack},
                           {"witness_present", result.witness.has_value()}};
    if (report.worst_pair)
      outcome.details["worst_pair"] =
          Json::array({report.worst_pair->first, report.worst_pair->second});
    if (report.max_witness_slack) {
      outcome.details["max_witness_slack"] = *report.max_witness_slack;
      outcome.details["argmax_witness"] = report.argmax_witness;
    }
    result.checks.push_back(std::move(outcome));
  }

  if (config.checks.rate_transfer) {
    const RateTransferReport report =
        check_rate_transfer(result.trajectory, config.grid, tol);
    CheckOutcome outcome;
    outcome.name = "rate_transfer";
    outcome.status = report.pass ? CheckStatus::Passed : CheckStatus::Failed;
    Json entries = Json::array();
    for (const RateTransferEntry& entry : report.entries) {
      entries.push_back(Json{{"epsilon", entry.epsilon},
                             {"y_rate", optional_index(entry.y_rate)},
                             {"x_rate", optional_index(entry.x_rate)},
                             {"pass", entry.pass}});
    }
    outcome.details = Json{{"tol", report.tol},
                           {"horizon", report.horizon},
                           {"max_step_slack", report.max_step_slack},
                           {"per_epsilon", std::move(entries)}};
    result.checks.push_back(std::move(outcome));
  }

  if (config.checks.convergence_threshold) {
    const double threshold = *config.checks.convergence_threshold;
    CheckOutcome outcome;
    outcome.name = "convergence";
    if (config.schedule.kind() == LambdaSchedule::Kind::Constant &&
        config.schedule.parameter() > 0) {
      result.warnings.push_back(
          "convergence check with a constant schedule lambda > 0: the anchored "
          "iteration stalls at a positive distance from the fixed point");
    }
    if (!result.witness) {
      outcome.status = CheckStatus::Skipped;
      outcome.details = Json{{"threshold", threshold},
                             {"note", "no fixed-point witness for this map"}};
    } else {
      const Point& p = result.witness->point;
      std::vector<double> y_series = distance_to_fixed_point_series(
          result.trajectory.ys, config.space, p);
      std::vector<double> x_series;
      x_series.reserve(result.trajectory.horizon());
      for (std::uint64_t n = 1; n <= result.trajectory.horizon(); ++n)
        x_series.push_back(distance(config.space, result.trajectory.x(n), p));

      const auto settle = empirical_rate(y_series, threshold);
      outcome.details = Json{{"threshold", threshold},
                             {"final_x_dist", x_series.back()},
                             {"final_y_dist", y_series.back()},
                             {"y_settle_index", nullptr},
                             {"x_first_violation", nullptr}};
      outcome.status = CheckStatus::Passed;
      if (settle) {
        outcome.details["y_settle_index"] = *settle + 1;  // trajectory index
        for (std::size_t k = *settle; k < x_series.size(); ++k) {
          if (!(x_series[k] < threshold)) {
            outcome.status = CheckStatus::Failed;
            outcome.details["x_first_violation"] = k + 1;
            break;
          }
        }
      }
    }
    result.checks.push_back(std::move(outcome));
  }

  result.pass = true;
  for (const CheckOutcome& outcome : result.checks)
    if (outcome.status == CheckStatus::Failed) result.pass = false;

  result.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

Json result_to_json(const ExperimentResult& result) {
  const CoupledTrajectory& traj = result.trajectory;
  const std::uint64_t horizon = traj.horizon();

  Json summary{{"horizon", horizon},
               {"final_x", traj.xs.back()},
               {"final_y", traj.ys.back()},
               {"final_x_step", traj.x_steps.back()}};
  summary["final_y_step"] =
      traj.y_steps.empty() ? Json(nullptr) : Json(traj.y_steps.back());
  if (result.witness) {
    summary["fixed_point"] = result.witness->point;
    summary["final_x_dist"] = distance(result.config.space, traj.xs.back(),
                                       result.witness->point);
    summary["final_y_dist"] = distance(result.config.space, traj.ys.back(),
                                       result.witness->point);
  } else {
    summary["fixed_point"] = nullptr;
  }

  Json checks = Json::array();
  for (const CheckOutcome& outcome : result.checks) {
    checks.push_back(Json{{"name", outcome.name},
                          {"status", check_status_name(outcome.status)},
                          {"details", outcome.details}});
  }

  return Json{{"config", config_to_json(result.config)},
              {"summary", std::move(summary)},
              {"checks", std::move(checks)},
              {"warnings", result.warnings},
              {"verdict", result.pass ? "pass" : "fail"}};
}

void emit_json(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << result_to_json(result).dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);

  const CoupledTrajectory& traj = result.trajectory;
  const std::uint64_t horizon = traj.horizon();
  const std::size_t dim = traj.xs[0].size();
  const bool with_witness = result.witness.has_value();

  out << "n";
  for (std::size_t i = 0; i < dim; ++i) out << ",x" << i;
  for (std::size_t i = 0; i < dim; ++i) out << ",y" << i;
  out << ",step_x,step_y";
  if (with_witness) out << ",dist_x_p,dist_y_p";
  out << '\n';

  for (std::uint64_t n = 0; n <= horizon; ++n) {
    out << n;
    for (std::size_t i = 0; i < dim; ++i) out << ',' << render(traj.xs[n][i]);
    for (std::size_t i = 0; i < dim; ++i) {
      out << ',';
      if (n >= 1) out << render(traj.y(n)[i]);
    }
    out << ',';
    if (n < horizon) out << render(traj.x_steps[n]);
    out << ',';
    if (n >= 1 && n <= horizon - 1 && !traj.y_steps.empty())
      out << render(traj.y_steps[n - 1]);
    if (with_witness) {
      const Point& p = result.witness->point;
      out << ',' << render(distance(result.config.space, traj.xs[n], p));
      out << ',';
      if (n >= 1) out << render(distance(result.config.space, traj.y(n), p));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::string catalog_json() {
  Json catalog{
      {"spaces",
       Json::array(
           {Json{{"kind", "euclidean"},
                 {"params",
                  {{"dimension", "positive integer"},
                   {"domain",
                    "optional: whole_space | ball{center,radius} | "
                    "box{lower,upper}"}}}},
            Json{{"kind", "hyperbolic_disk"},
                 {"params",
                  {{"note", "Poincare disk; points have norm < 1"}}}}})},
      {"maps",
       Json::array(
           {Json{{"kind", "affine"},
                 {"spaces", "euclidean"},
                 {"params",
                  {{"matrix", "row-major square, spectral norm <= 1"},
                   {"offset", "optional vector, default 0"}}}},
            Json{{"kind", "scaling"},
                 {"spaces", "euclidean"},
                 {"params",
                  {{"factor", "in [0,1]"}, {"center", "vector"}}}},
            Json{{"kind", "rotation"},
                 {"spaces", "euclidean, dimension 2"},
                 {"params",
                  {{"angle", "radians"}, {"center", "vector"}}}},
            Json{{"kind", "projection"},
                 {"spaces", "euclidean"},
                 {"params", {{"target", "ball or box domain"}}}},
            Json{{"kind", "hyperbolic_rotation"},
                 {"spaces", "hyperbolic_disk"},
                 {"params",
                  {{"center", "point in the disk"}, {"angle", "radians"}}}},
            Json{{"kind", "compose"},
                 {"spaces", "any (stages on one space)"},
                 {"params", {{"maps", "applied right-to-left"}}}},
            Json{{"kind", "average"},
                 {"spaces", "any (operands on one space)"},
                 {"params",
                  {{"weight", "in [0,1]"},
                   {"first", "map"},
                   {"second", "map"}}}}})},
      {"schedules",
       Json::array(
           {Json{{"kind", "harmonic"}, {"lambda_n", "1/(n+1)"}},
            Json{{"kind", "power"},
                 {"lambda_n", "1/(n+1)^exponent"},
                 {"params", {{"exponent", "positive real"}}}},
            Json{{"kind", "constant"},
                 {"params", {{"value", "in [0,1]"}}}},
            Json{{"kind", "explicit"},
                 {"params",
                  {{"values", "list in [0,1], at least horizon entries"}}}}})},
  };
  return catalog.dump(2);
}

}  // namespace altfp
