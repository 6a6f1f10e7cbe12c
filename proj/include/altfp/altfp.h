/* altfp - anchored fixed-point iterations on geodesic spaces.
 *
 * C interface of the shared library. All handles are opaque; every function
 * that can fail returns an altfp_status, with a human-readable message
 * available from altfp_last_error() until the next failing call on the same
 * thread. Points travel as plain double buffers whose length is the space
 * dimension (2 for the hyperbolic disk).
 */

#ifndef ALTFP_H
#define ALTFP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ALTFP_API __declspec(dllexport)
#else
#define ALTFP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum altfp_status {
  ALTFP_OK = 0,
  ALTFP_ERROR_PARAM = 1,    /* argument out of range or inconsistent */
  ALTFP_ERROR_DOMAIN = 2,   /* point invalid for the space/domain */
  ALTFP_ERROR_CONFIG = 3,   /* config document malformed or invalid */
  ALTFP_ERROR_IO = 4,       /* file could not be written/read */
  ALTFP_ERROR_INTERNAL = 5, /* unexpected failure */
} altfp_status;

typedef struct altfp_space altfp_space;
typedef struct altfp_map altfp_map;
typedef struct altfp_schedule altfp_schedule;
typedef struct altfp_trajectory altfp_trajectory;
typedef struct altfp_config altfp_config;
typedef struct altfp_result altfp_result;

ALTFP_API const char* altfp_version(void);

/* Message of the last failing call on this thread; empty when none. */
ALTFP_API const char* altfp_last_error(void);

/* Frees strings returned through char** out parameters. */
ALTFP_API void altfp_string_destroy(char* s);

/* ---- geodesic spaces ---------------------------------------------------- */

ALTFP_API altfp_status altfp_space_create_euclidean(int32_t dimension,
                                                    altfp_space** out);
ALTFP_API altfp_status altfp_space_create_hyperbolic_disk(altfp_space** out);

/* Restrict the convex domain (Euclidean spaces only). */
ALTFP_API altfp_status altfp_space_set_ball_domain(altfp_space* space,
                                                   const double* center,
                                                   double radius);
ALTFP_API altfp_status altfp_space_set_box_domain(altfp_space* space,
                                                  const double* lower,
                                                  const double* upper);

ALTFP_API int32_t altfp_space_dimension(const altfp_space* space);
ALTFP_API void altfp_space_destroy(altfp_space* space);

ALTFP_API altfp_status altfp_distance(const altfp_space* space,
                                      const double* a, const double* b,
                                      double* out);

/* Point at parameter lambda on the geodesic from x toward u. */
ALTFP_API altfp_status altfp_combine(const altfp_space* space, double lambda,
                                     const double* u, const double* x,
                                     double* out);

/* ok_out = 1 and empty reason when valid; otherwise ok_out = 0 and the
 * violated constraint is copied into reason (when given). */
ALTFP_API altfp_status altfp_validate_point(const altfp_space* space,
                                            const double* point, int* ok_out,
                                            char* reason, size_t reason_len);

/* ---- mappings ------------------------------------------------------------ */

/* spec_json uses the same schema as the "map" section of a config document,
 * e.g. {"kind":"scaling","factor":0.5,"center":[0,0]}. skip_validation
 * bypasses the nonexpansiveness construction guards (testing only). */
ALTFP_API altfp_status altfp_map_create(const altfp_space* space,
                                        const char* spec_json,
                                        int skip_validation, altfp_map** out);
ALTFP_API altfp_status altfp_map_apply(const altfp_map* map, const double* x,
                                       double* out);

/* has_out = 1 and the analytic fixed point copied into point_out when the
 * catalog exposes one; has_out = 0 otherwise. */
ALTFP_API altfp_status altfp_map_fixed_point(const altfp_map* map,
                                             double* point_out, int* has_out);
ALTFP_API altfp_status altfp_map_check_nonexpansive(
    const altfp_map* map, int64_t sample_count, uint64_t seed, double tol,
    double* max_ratio_out, int* pass_out);
ALTFP_API void altfp_map_destroy(altfp_map* map);

/* ---- lambda schedules ----------------------------------------------------- */

/* spec_json: {"kind":"harmonic"} | {"kind":"power","exponent":a} |
 * {"kind":"constant","value":c} | {"kind":"explicit","values":[...]} */
ALTFP_API altfp_status altfp_schedule_create(const char* spec_json,
                                             altfp_schedule** out);
/* "harmonic" | "power:0.75" | "constant:0.5" | "explicit:0.5,0.25" */
ALTFP_API altfp_status altfp_schedule_create_shorthand(const char* text,
                                                       altfp_schedule** out);
/* lambda_n, 1-based. */
ALTFP_API altfp_status altfp_schedule_value(const altfp_schedule* schedule,
                                            uint64_t n, double* out);
ALTFP_API void altfp_schedule_destroy(altfp_schedule* schedule);

/* ---- iteration engines ---------------------------------------------------- */

/* x_{n+1} = T(combine(lambda_{n+1}, u, x_n)). xs_out holds (horizon+1)*dim
 * doubles: x_0 .. x_N. */
ALTFP_API altfp_status altfp_iterate_alternative(
    const altfp_space* space, const altfp_map* map, const double* u,
    const double* x0, const altfp_schedule* schedule, uint64_t horizon,
    double* xs_out);

/* Halpern run y_{n+1} = combine(lambda_{n+1}, u, T y_n) from seed y_1,
 * consuming lambda_2..lambda_N. ys_out holds horizon*dim doubles:
 * y_1 .. y_N. */
ALTFP_API altfp_status altfp_iterate_halpern(
    const altfp_space* space, const altfp_map* map, const double* u,
    const double* y1, const altfp_schedule* schedule, uint64_t horizon,
    double* ys_out);

/* Coupled run producing both sequences plus step series. */
ALTFP_API altfp_status altfp_iterate_coupled(
    const altfp_space* space, const altfp_map* map, const double* u,
    const double* x0, const altfp_schedule* schedule, uint64_t horizon,
    altfp_trajectory** out);

ALTFP_API uint64_t altfp_trajectory_horizon(const altfp_trajectory* traj);
/* which: 0 = x (n in [0, N]), 1 = y (n in [1, N]). */
ALTFP_API altfp_status altfp_trajectory_point(const altfp_trajectory* traj,
                                              int which, uint64_t n,
                                              double* out);
/* x steps: N values d(x_n, x_{n+1}); y steps: N-1 values d(y_n, y_{n+1}). */
ALTFP_API altfp_status altfp_trajectory_steps(const altfp_trajectory* traj,
                                              int which, double* out);

/* deviations_out[0..2]: coupling identity, Halpern recurrence, independent
 * replay. pass_out = 1 iff all three are <= tol. */
ALTFP_API altfp_status altfp_trajectory_verify_coupling(
    const altfp_trajectory* traj, double tol, double deviations_out[3],
    int* pass_out);

/* Samples pair_count index pairs in [1, N]; fixed_point may be NULL.
 * max_slack_out = worst d(x_m,x_n) - d(y_m,y_n) over pairs and, with a
 * fixed point, worst d(x_n,p) - d(y_n,p). */
ALTFP_API altfp_status altfp_trajectory_check_domination(
    const altfp_trajectory* traj, uint64_t pair_count, uint64_t seed,
    const double* fixed_point, double tol, double* max_slack_out,
    int* pass_out);

/* grid: strictly decreasing positive epsilons. */
ALTFP_API altfp_status altfp_trajectory_check_rate_transfer(
    const altfp_trajectory* traj, const double* grid, size_t grid_len,
    double tol, int* pass_out);

ALTFP_API void altfp_trajectory_destroy(altfp_trajectory* traj);

/* ---- asymptotic regularity on raw series ----------------------------------- */

/* steps_out holds count-1 consecutive distances. */
ALTFP_API altfp_status altfp_step_distances(const altfp_space* space,
                                            const double* points,
                                            uint64_t count, double* steps_out);

/* Smallest index from which all observed steps are < epsilon.
 * attained_out = 0 when the last step is still >= epsilon. */
ALTFP_API altfp_status altfp_empirical_rate(const double* steps,
                                            uint64_t count, double epsilon,
                                            int* attained_out,
                                            uint64_t* index_out);

/* Checks a tabulated rate certificate (pairs eps_i -> index N_i) against a
 * step series on each grid epsilon. status_out per grid entry: 1 pass,
 * 0 fail, -1 unchecked (certificate index beyond the horizon). */
ALTFP_API altfp_status altfp_check_rate_table(
    const double* steps, uint64_t count, const double* table_eps,
    const uint64_t* table_index, size_t table_len, const double* grid,
    size_t grid_len, int32_t* status_out);

/* ---- experiment harness ----------------------------------------------------- */

ALTFP_API altfp_status altfp_config_parse(const char* json_text,
                                          altfp_config** out);
ALTFP_API altfp_status altfp_config_clone(const altfp_config* config,
                                          altfp_config** out);
ALTFP_API altfp_status altfp_config_set_schedule(altfp_config* config,
                                                 const char* shorthand);
ALTFP_API altfp_status altfp_config_set_seed(altfp_config* config,
                                             uint64_t seed);
ALTFP_API altfp_status altfp_config_set_horizon(altfp_config* config,
                                                uint64_t horizon);
/* which: "euclidean" | "hyperbolic" | "nonexpansive" */
ALTFP_API altfp_status altfp_config_set_tolerance(altfp_config* config,
                                                  const char* which,
                                                  double tol);
ALTFP_API altfp_status altfp_config_set_epsilon_grid(altfp_config* config,
                                                     const double* values,
                                                     size_t count);
ALTFP_API altfp_status altfp_config_set_output_dir(altfp_config* config,
                                                   const char* dir);
/* Canonical echo with all defaults materialized. */
ALTFP_API altfp_status altfp_config_json(const altfp_config* config,
                                         char** out);
ALTFP_API void altfp_config_destroy(altfp_config* config);

ALTFP_API altfp_status altfp_run_experiment(const altfp_config* config,
                                            altfp_result** out);
/* 1 = every enabled check passed. */
ALTFP_API int altfp_result_verdict(const altfp_result* result);
ALTFP_API double altfp_result_duration_seconds(const altfp_result* result);
ALTFP_API altfp_status altfp_result_json(const altfp_result* result,
                                         char** out);
ALTFP_API altfp_status altfp_result_write_json(const altfp_result* result,
                                               const char* path);
ALTFP_API altfp_status altfp_result_write_csv(const altfp_result* result,
                                              const char* path);
ALTFP_API void altfp_result_destroy(altfp_result* result);

/* Supported spaces, maps and schedules with their parameter schemas. */
ALTFP_API altfp_status altfp_catalog_json(char** out);

#ifdef __cplusplus
}
#endif

#endif /* ALTFP_H */
