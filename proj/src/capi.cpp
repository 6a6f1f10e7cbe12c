#include "altfp/altfp.h"

#include <cstring>
#include <string>

#include "errors.hpp"
#include "geodesic.hpp"
#include "harness.hpp"
#include "iterate.hpp"
#include "maps.hpp"
#include "rates.hpp"

struct altfp_space {
  altfp::Space impl;
};
struct altfp_map {
  altfp::Mapping impl;
};
struct altfp_schedule {
  altfp::LambdaSchedule impl;
};
struct altfp_trajectory {
  altfp::CoupledTrajectory impl;
};
struct altfp_config {
  altfp::ExperimentConfig impl;
};
struct altfp_result {
  altfp::ExperimentResult impl;
};

namespace {

thread_local std::string g_last_error;

altfp_status fail(altfp_status code, const char* message) {
  g_last_error = message;
  return code;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
altfp_status guarded(Fn&& fn) {
  try {
    fn();
    return ALTFP_OK;
  } catch (const altfp::ParamError& e) {
    return fail(ALTFP_ERROR_PARAM, e.what());
  } catch (const altfp::DomainError& e) {
    return fail(ALTFP_ERROR_DOMAIN, e.what());
  } catch (const altfp::ConfigError& e) {
    return fail(ALTFP_ERROR_CONFIG, e.what());
  } catch (const altfp::IoError& e) {
    return fail(ALTFP_ERROR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(ALTFP_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(ALTFP_ERROR_INTERNAL, "unknown error");
  }
}

altfp_status require(bool ok, const char* message) {
  return ok ? ALTFP_OK : fail(ALTFP_ERROR_PARAM, message);
}

altfp::Point to_point(const double* data, std::size_t dim) {
  return altfp::Point(data, data + dim);
}

void from_point(const altfp::Point& p, double* out) {
  std::memcpy(out, p.data(), p.size() * sizeof(double));
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::size_t dim_of(const altfp_space* space) {
  return static_cast<std::size_t>(space->impl.dimension);
}

}  // namespace

extern "C" {

const char* altfp_version(void) { return "0.1.0"; }

const char* altfp_last_error(void) { return g_last_error.c_str(); }

void altfp_string_destroy(char* s) { delete[] s; }

/* ---- spaces ---- */

altfp_status altfp_space_create_euclidean(int32_t dimension,
                                          altfp_space** out) {
  if (altfp_status s = require(out != nullptr, "out is null")) return s;
  return guarded([&] {
    *out = new altfp_space{altfp::Space::euclidean(dimension)};
  });
}

altfp_status altfp_space_create_hyperbolic_disk(altfp_space** out) {
  if (altfp_status s = require(out != nullptr, "out is null")) return s;
  return guarded([&] {
    *out = new altfp_space{altfp::Space::hyperbolic_disk()};
  });
}

altfp_status altfp_space_set_ball_domain(altfp_space* space,
                                         const double* center, double radius) {
  if (altfp_status s =
          require(space && center, "space/center is null"))
    return s;
  return guarded([&] {
    if (space->impl.kind != altfp::SpaceKind::Euclidean)
      throw altfp::ParamError("ball domain: requires a Euclidean space");
    altfp::ConvexDomain domain =
        altfp::ConvexDomain::ball(to_point(center, dim_of(space)), radius);
    space->impl =
        altfp::Space::euclidean(space->impl.dimension, std::move(domain));
  });
}

altfp_status altfp_space_set_box_domain(altfp_space* space,
                                        const double* lower,
                                        const double* upper) {
  if (altfp_status s =
          require(space && lower && upper, "space/bounds is null"))
    return s;
  return guarded([&] {
    if (space->impl.kind != altfp::SpaceKind::Euclidean)
      throw altfp::ParamError("box domain: requires a Euclidean space");
    altfp::ConvexDomain domain = altfp::ConvexDomain::box(
        to_point(lower, dim_of(space)), to_point(upper, dim_of(space)));
    space->impl =
        altfp::Space::euclidean(space->impl.dimension, std::move(domain));
  });
}

int32_t altfp_space_dimension(const altfp_space* space) {
  return space ? space->impl.dimension : 0;
}

void altfp_space_destroy(altfp_space* space) { delete space; }

altfp_status altfp_distance(const altfp_space* space, const double* a,
                            const double* b, double* out) {
  if (altfp_status s =
          require(space && a && b && out, "space/points/out is null"))
    return s;
  return guarded([&] {
    *out = altfp::distance(space->impl, to_point(a, dim_of(space)),
                           to_point(b, dim_of(space)));
  });
}

altfp_status altfp_combine(const altfp_space* space, double lambda,
                           const double* u, const double* x, double* out) {
  if (altfp_status s =
          require(space && u && x && out, "space/points/out is null"))
    return s;
  return guarded([&] {
    const altfp::Point z =
        altfp::combine(space->impl, lambda, to_point(u, dim_of(space)),
                       to_point(x, dim_of(space)));
    from_point(z, out);
  });
}

altfp_status altfp_validate_point(const altfp_space* space,
                                  const double* point, int* ok_out,
                                  char* reason, size_t reason_len) {
  if (altfp_status s =
          require(space && point && ok_out, "space/point/ok_out is null"))
    return s;
  return guarded([&] {
    const altfp::PointCheck check =
        altfp::validate_point(space->impl, to_point(point, dim_of(space)));
    *ok_out = check.ok ? 1 : 0;
    if (reason && reason_len > 0) {
      std::strncpy(reason, check.reason.c_str(), reason_len - 1);
      reason[reason_len - 1] = '\0';
    }
  });
}

/* ---- mappings ---- */

altfp_status altfp_map_create(const altfp_space* space, const char* spec_json,
                              int skip_validation, altfp_map** out) {
  if (altfp_status s =
          require(space && spec_json && out, "space/spec/out is null"))
    return s;
  return guarded([&] {
    const altfp::Json doc = altfp::Json::parse(spec_json);
    *out = new altfp_map{
        altfp::parse_map_json(space->impl, doc, skip_validation != 0)};
  });
}

altfp_status altfp_map_apply(const altfp_map* map, const double* x,
                             double* out) {
  if (altfp_status s = require(map && x && out, "map/x/out is null")) return s;
  return guarded([&] {
    const altfp::Space& space = map->impl.space();
    const altfp::Point z = altfp::apply(
        map->impl, space,
        to_point(x, static_cast<std::size_t>(space.dimension)));
    from_point(z, out);
  });
}

altfp_status altfp_map_fixed_point(const altfp_map* map, double* point_out,
                                   int* has_out) {
  if (altfp_status s =
          require(map && point_out && has_out, "map/out is null"))
    return s;
  return guarded([&] {
    const auto witness = altfp::fixed_point_oracle(map->impl);
    *has_out = witness.has_value() ? 1 : 0;
    if (witness) from_point(witness->point, point_out);
  });
}

altfp_status altfp_map_check_nonexpansive(const altfp_map* map,
                                          int64_t sample_count, uint64_t seed,
                                          double tol, double* max_ratio_out,
                                          int* pass_out) {
  if (altfp_status s = require(map && max_ratio_out && pass_out,
                               "map/out is null"))
    return s;
  return guarded([&] {
    const altfp::NonexpansiveReport report = altfp::check_nonexpansive(
        map->impl, map->impl.space(), sample_count, seed, tol);
    *max_ratio_out = report.max_ratio;
    *pass_out = report.pass ? 1 : 0;
  });
}

void altfp_map_destroy(altfp_map* map) { delete map; }

/* ---- schedules ---- */

altfp_status altfp_schedule_create(const char* spec_json,
                                   altfp_schedule** out) {
  if (altfp_status s = require(spec_json && out, "spec/out is null")) return s;
  return guarded([&] {
    const altfp::Json doc = altfp::Json::parse(spec_json);
    *out = new altfp_schedule{altfp::parse_schedule_json(doc)};
  });
}

altfp_status altfp_schedule_create_shorthand(const char* text,
                                             altfp_schedule** out) {
  if (altfp_status s = require(text && out, "text/out is null")) return s;
  return guarded([&] {
    *out = new altfp_schedule{altfp::LambdaSchedule::from_shorthand(text)};
  });
}

altfp_status altfp_schedule_value(const altfp_schedule* schedule, uint64_t n,
                                  double* out) {
  if (altfp_status s = require(schedule && out, "schedule/out is null"))
    return s;
  return guarded([&] { *out = schedule->impl.at(n); });
}

void altfp_schedule_destroy(altfp_schedule* schedule) { delete schedule; }

/* ---- iteration ---- */

altfp_status altfp_iterate_alternative(const altfp_space* space,
                                       const altfp_map* map, const double* u,
                                       const double* x0,
                                       const altfp_schedule* schedule,
                                       uint64_t horizon, double* xs_out) {
  if (altfp_status s = require(space && map && u && x0 && schedule && xs_out,
                               "null argument"))
    return s;
  return guarded([&] {
    const std::size_t dim = dim_of(space);
    altfp::IterationConfig config{space->impl,     map->impl,
                                  to_point(u, dim), to_point(x0, dim),
                                  schedule->impl,  horizon};
    const std::vector<altfp::Point> xs = altfp::iterate_alternative(config);
    for (std::size_t n = 0; n < xs.size(); ++n)
      from_point(xs[n], xs_out + n * dim);
  });
}

altfp_status altfp_iterate_halpern(const altfp_space* space,
                                   const altfp_map* map, const double* u,
                                   const double* y1,
                                   const altfp_schedule* schedule,
                                   uint64_t horizon, double* ys_out) {
  if (altfp_status s = require(space && map && u && y1 && schedule && ys_out,
                               "null argument"))
    return s;
  return guarded([&] {
    const std::size_t dim = dim_of(space);
    const std::vector<altfp::Point> ys = altfp::iterate_halpern(
        space->impl, map->impl, to_point(u, dim), to_point(y1, dim),
        schedule->impl, horizon);
    for (std::size_t n = 0; n < ys.size(); ++n)
      from_point(ys[n], ys_out + n * dim);
  });
}

altfp_status altfp_iterate_coupled(const altfp_space* space,
                                   const altfp_map* map, const double* u,
                                   const double* x0,
                                   const altfp_schedule* schedule,
                                   uint64_t horizon, altfp_trajectory** out) {
  if (altfp_status s = require(space && map && u && x0 && schedule && out,
                               "null argument"))
    return s;
  return guarded([&] {
    const std::size_t dim = dim_of(space);
    altfp::IterationConfig config{space->impl,     map->impl,
                                  to_point(u, dim), to_point(x0, dim),
                                  schedule->impl,  horizon};
    *out = new altfp_trajectory{altfp::iterate_coupled(config)};
  });
}

uint64_t altfp_trajectory_horizon(const altfp_trajectory* traj) {
  return traj ? traj->impl.horizon() : 0;
}

altfp_status altfp_trajectory_point(const altfp_trajectory* traj, int which,
                                    uint64_t n, double* out) {
  if (altfp_status s = require(traj && out, "trajectory/out is null"))
    return s;
  return guarded([&] {
    const altfp::Point& p = which == 0 ? traj->impl.x(n) : traj->impl.y(n);
    from_point(p, out);
  });
}

altfp_status altfp_trajectory_steps(const altfp_trajectory* traj, int which,
                                    double* out) {
  if (altfp_status s = require(traj && out, "trajectory/out is null"))
    return s;
  return guarded([&] {
    const std::vector<double>& steps =
        which == 0 ? traj->impl.x_steps : traj->impl.y_steps;
    std::memcpy(out, steps.data(), steps.size() * sizeof(double));
  });
}

altfp_status altfp_trajectory_verify_coupling(const altfp_trajectory* traj,
                                              double tol,
                                              double deviations_out[3],
                                              int* pass_out) {
  if (altfp_status s = require(traj && deviations_out && pass_out,
                               "trajectory/out is null"))
    return s;
  return guarded([&] {
    const altfp::CouplingReport report =
        altfp::verify_coupling(traj->impl, tol);
    deviations_out[0] = report.max_dev_mapped;
    deviations_out[1] = report.max_dev_recurrence;
    deviations_out[2] = report.max_dev_replay;
    *pass_out = report.pass ? 1 : 0;
  });
}

altfp_status altfp_trajectory_check_domination(const altfp_trajectory* traj,
                                               uint64_t pair_count,
                                               uint64_t seed,
                                               const double* fixed_point,
                                               double tol,
                                               double* max_slack_out,
                                               int* pass_out) {
  if (altfp_status s = require(traj && max_slack_out && pass_out,
                               "trajectory/out is null"))
    return s;
  return guarded([&] {
    std::optional<altfp::FixedPointWitness> witness;
    if (fixed_point) {
      const std::size_t dim = static_cast<std::size_t>(
          traj->impl.config.space.dimension);
      witness = altfp::FixedPointWitness{to_point(fixed_point, dim)};
    }
    const auto pairs = altfp::sample_index_pairs(
        traj->impl.horizon(), altfp::IndexPairPlan{pair_count, seed});
    const altfp::DominationReport report =
        altfp::check_domination(traj->impl, witness, pairs, tol);
    double max_slack = report.max_pair_slack;
    if (report.max_witness_slack && *report.max_witness_slack > max_slack)
      max_slack = *report.max_witness_slack;
    *max_slack_out = max_slack;
    *pass_out = report.pass ? 1 : 0;
  });
}

altfp_status altfp_trajectory_check_rate_transfer(const altfp_trajectory* traj,
                                                  const double* grid,
                                                  size_t grid_len, double tol,
                                                  int* pass_out) {
  if (altfp_status s =
          require(traj && grid && pass_out, "trajectory/grid/out is null"))
    return s;
  return guarded([&] {
    const altfp::EpsilonGrid eps =
        altfp::EpsilonGrid::from_values({grid, grid + grid_len});
    const altfp::RateTransferReport report =
        altfp::check_rate_transfer(traj->impl, eps, tol);
    *pass_out = report.pass ? 1 : 0;
  });
}

void altfp_trajectory_destroy(altfp_trajectory* traj) { delete traj; }

/* ---- rates on raw series ---- */

altfp_status altfp_step_distances(const altfp_space* space,
                                  const double* points, uint64_t count,
                                  double* steps_out) {
  if (altfp_status s =
          require(space && points && steps_out, "space/points/out is null"))
    return s;
  return guarded([&] {
    const std::size_t dim = dim_of(space);
    std::vector<altfp::Point> series;
    series.reserve(count);
    for (uint64_t i = 0; i < count; ++i)
      series.push_back(to_point(points + i * dim, dim));
    const std::vector<double> steps =
        altfp::step_distances(series, space->impl);
    std::memcpy(steps_out, steps.data(), steps.size() * sizeof(double));
  });
}

altfp_status altfp_empirical_rate(const double* steps, uint64_t count,
                                  double epsilon, int* attained_out,
                                  uint64_t* index_out) {
  if (altfp_status s = require(steps && attained_out && index_out,
                               "steps/out is null"))
    return s;
  return guarded([&] {
    const auto rate =
        altfp::empirical_rate({steps, steps + count}, epsilon);
    *attained_out = rate.has_value() ? 1 : 0;
    *index_out = rate.value_or(0);
  });
}

altfp_status altfp_check_rate_table(const double* steps, uint64_t count,
                                    const double* table_eps,
                                    const uint64_t* table_index,
                                    size_t table_len, const double* grid,
                                    size_t grid_len, int32_t* status_out) {
  if (altfp_status s = require(
          steps && table_eps && table_index && grid && status_out,
          "null argument"))
    return s;
  return guarded([&] {
    std::vector<std::pair<double, std::uint64_t>> entries;
    entries.reserve(table_len);
    for (size_t i = 0; i < table_len; ++i)
      entries.emplace_back(table_eps[i], table_index[i]);
    const altfp::RateFunction phi = altfp::RateFunction::table(entries);
    const altfp::EpsilonGrid eps =
        altfp::EpsilonGrid::from_values({grid, grid + grid_len});
    const altfp::RateCheckReport report =
        altfp::check_rate({steps, steps + count}, phi, eps);
    for (size_t i = 0; i < report.entries.size(); ++i) {
      switch (report.entries[i].status) {
        case altfp::RateCheckStatus::Pass: status_out[i] = 1; break;
        case altfp::RateCheckStatus::Fail: status_out[i] = 0; break;
        case altfp::RateCheckStatus::Unchecked: status_out[i] = -1; break;
      }
    }
  });
}

/* ---- harness ---- */

altfp_status altfp_config_parse(const char* json_text, altfp_config** out) {
  if (altfp_status s = require(json_text && out, "text/out is null")) return s;
  return guarded([&] {
    *out = new altfp_config{altfp::parse_config(json_text)};
  });
}

altfp_status altfp_config_clone(const altfp_config* config,
                                altfp_config** out) {
  if (altfp_status s = require(config && out, "config/out is null")) return s;
  return guarded([&] { *out = new altfp_config{config->impl}; });
}

altfp_status altfp_config_set_schedule(altfp_config* config,
                                       const char* shorthand) {
  if (altfp_status s =
          require(config && shorthand, "config/shorthand is null"))
    return s;
  return guarded([&] {
    altfp::LambdaSchedule schedule =
        altfp::LambdaSchedule::from_shorthand(shorthand);
    if (!schedule.covers(config->impl.horizon))
      throw altfp::ConfigError(
          "schedule: explicit schedule exhausted before horizon");
    config->impl.schedule = std::move(schedule);
  });
}

altfp_status altfp_config_set_seed(altfp_config* config, uint64_t seed) {
  if (altfp_status s = require(config != nullptr, "config is null")) return s;
  config->impl.seed = seed;
  return ALTFP_OK;
}

altfp_status altfp_config_set_horizon(altfp_config* config, uint64_t horizon) {
  if (altfp_status s = require(config != nullptr, "config is null")) return s;
  return guarded([&] {
    if (horizon < 2) throw altfp::ConfigError("horizon: must be >= 2");
    if (config->impl.checks.rate_transfer && horizon < 3)
      throw altfp::ConfigError(
          "horizon: must be >= 3 when rate_transfer is enabled");
    if (horizon > config->impl.horizon_cap)
      throw altfp::ConfigError("horizon: exceeds horizon_cap");
    if (!config->impl.schedule.covers(horizon))
      throw altfp::ConfigError(
          "horizon: explicit schedule exhausted before horizon");
    config->impl.horizon = horizon;
  });
}

altfp_status altfp_config_set_tolerance(altfp_config* config,
                                        const char* which, double tol) {
  if (altfp_status s = require(config && which, "config/which is null"))
    return s;
  return guarded([&] {
    if (!(tol >= 0))
      throw altfp::ConfigError("tolerance: must be >= 0");
    const std::string name = which;
    if (name == "euclidean")
      config->impl.tolerances.euclidean = tol;
    else if (name == "hyperbolic")
      config->impl.tolerances.hyperbolic = tol;
    else if (name == "nonexpansive")
      config->impl.tolerances.nonexpansive = tol;
    else
      throw altfp::ParamError("tolerance: unknown name '" + name + "'");
  });
}

altfp_status altfp_config_set_epsilon_grid(altfp_config* config,
                                           const double* values,
                                           size_t count) {
  if (altfp_status s = require(config && values, "config/values is null"))
    return s;
  return guarded([&] {
    config->impl.grid =
        altfp::EpsilonGrid::from_values({values, values + count});
  });
}

altfp_status altfp_config_set_output_dir(altfp_config* config,
                                         const char* dir) {
  if (altfp_status s = require(config && dir, "config/dir is null")) return s;
  config->impl.output.dir = dir;
  return ALTFP_OK;
}

altfp_status altfp_config_json(const altfp_config* config, char** out) {
  if (altfp_status s = require(config && out, "config/out is null")) return s;
  return guarded([&] {
    *out = dup_string(altfp::config_to_json(config->impl).dump(2));
  });
}

void altfp_config_destroy(altfp_config* config) { delete config; }

altfp_status altfp_run_experiment(const altfp_config* config,
                                  altfp_result** out) {
  if (altfp_status s = require(config && out, "config/out is null")) return s;
  return guarded([&] {
    *out = new altfp_result{altfp::run_experiment(config->impl)};
  });
}

int altfp_result_verdict(const altfp_result* result) {
  return result && result->impl.pass ? 1 : 0;
}

double altfp_result_duration_seconds(const altfp_result* result) {
  return result ? result->impl.duration_seconds : 0.0;
}

altfp_status altfp_result_json(const altfp_result* result, char** out) {
  if (altfp_status s = require(result && out, "result/out is null")) return s;
  return guarded([&] {
    *out = dup_string(altfp::result_to_json(result->impl).dump(2));
  });
}

altfp_status altfp_result_write_json(const altfp_result* result,
                                     const char* path) {
  if (altfp_status s = require(result && path, "result/path is null"))
    return s;
  return guarded([&] { altfp::emit_json(result->impl, path); });
}

altfp_status altfp_result_write_csv(const altfp_result* result,
                                    const char* path) {
  if (altfp_status s = require(result && path, "result/path is null"))
    return s;
  return guarded([&] { altfp::emit_csv(result->impl, path); });
}

void altfp_result_destroy(altfp_result* result) { delete result; }

altfp_status altfp_catalog_json(char** out) {
  if (altfp_status s = require(out != nullptr, "out is null")) return s;
  return guarded([&] { *out = dup_string(altfp::catalog_json()); });
}

}  // extern "C"
