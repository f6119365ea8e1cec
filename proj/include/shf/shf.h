/* C interface to the hover-and-fly planner.
 *
 * Every call returns an shf_status. On failure, shf_last_error() returns a
 * message for the calling thread that stays valid until its next call into
 * the library. Handles are opaque and must be released with their _free
 * function.
 */
#ifndef SHF_SHF_H
#define SHF_SHF_H

#include <stddef.h>
#include <stdint.h>

#if defined(SHF_BUILDING_LIBRARY)
#define SHF_API __attribute__((visibility("default")))
#else
#define SHF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum shf_status {
  SHF_OK = 0,
  SHF_ERR_INVALID_ARGUMENT = 1,
  SHF_ERR_INFEASIBLE = 2,
  SHF_ERR_SOLVER = 3,
  SHF_ERR_IO = 4,
  SHF_ERR_CONFIG = 5,
  SHF_ERR_INTERNAL = 99
} shf_status;

/* Linear SI units: beta0 is the gain at 1 m, power in watts. */
typedef struct shf_params {
  double beta0;
  double power;
  double altitude;
  double max_speed;
  double duration;
} shf_params;

typedef struct shf_config shf_config;
typedef struct shf_report shf_report;

/* One summary row; `algorithm` points into the report. NaN marks an empty
 * field (no sweep value, failed cell, no certificate). */
typedef struct shf_row {
  double sweep_value;
  size_t trial;
  uint64_t seed;
  const char* algorithm;
  double min_energy_j;
  double runtime_s;
  double gap;
  size_t hover_count;
  double x_i;
  double x_f;
} shf_row;

SHF_API const char* shf_version(void);
SHF_API const char* shf_last_error(void);

/* Defaults: beta0 -30 dB, 40 dBm, H 5 m, V 1 m/s, T 20 s. */
SHF_API void shf_params_default(shf_params* out);

SHF_API shf_status shf_config_load(const char* path, shf_config** out);
SHF_API shf_status shf_config_parse(const char* text, shf_config** out);
/* Overrides one key, as if appended to the config file. */
SHF_API shf_status shf_config_set(shf_config* cfg, const char* key,
                                  const char* value);
SHF_API void shf_config_free(shf_config* cfg);

SHF_API shf_status shf_run_solve(const shf_config* cfg, shf_report** out);
SHF_API shf_status shf_run_sweep(const shf_config* cfg, shf_report** out);
SHF_API shf_status shf_run_verify(const shf_config* cfg, shf_report** out);
SHF_API shf_status shf_run_selftest(shf_report** out);

SHF_API size_t shf_report_row_count(const shf_report* rep);
SHF_API shf_status shf_report_row(const shf_report* rep, size_t index,
                                  shf_row* out);
SHF_API const char* shf_report_text(const shf_report* rep);
/* 1 when every check (verify, selftest) or every cell (solve, sweep)
 * succeeded. */
SHF_API int shf_report_passed(const shf_report* rep);
SHF_API void shf_report_free(shf_report* rep);

/* Optimal min-energy for explicit node positions (any order) at window grid
 * step d_min, refinement enabled. */
SHF_API shf_status shf_solve_positions(const shf_params* params,
                                       const double* positions, size_t count,
                                       double d_min, double* min_energy_j);

#ifdef __cplusplus
}
#endif

#endif /* SHF_SHF_H */
