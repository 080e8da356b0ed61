/* C API for the fractional NLS laboratory.
 *
 * Opaque handles + integer status codes.  Every function returns FNLS_OK on
 * success; on failure the thread-local message from fnls_last_error()
 * describes the problem.  Handles are freed with their matching _free call;
 * passing NULL to a _free function is a no-op.
 */
#ifndef FNLSLAB_H
#define FNLSLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fnls_grid fnls_grid;
typedef struct fnls_field fnls_field;
typedef struct fnls_partition fnls_partition;

typedef enum {
    FNLS_OK = 0,
    FNLS_EINVAL = 1,  /* invalid argument / precondition violated */
    FNLS_ERUNTIME = 2,/* numerical failure (non-contraction, etc.) */
    FNLS_EIO = 3,     /* file system problem */
    FNLS_EBUFFER = 4  /* output buffer too small */
} fnls_status;

const char* fnls_version(void);
/* Last error message for the calling thread ("" if none). */
const char* fnls_last_error(void);

/* ---- grids and fields ---- */

fnls_status fnls_grid_create(int dim, double half_extent, int points_per_axis,
                             fnls_grid** out);
void fnls_grid_free(fnls_grid* grid);
fnls_status fnls_grid_info(const fnls_grid* grid, int* dim,
                           double* half_extent, int* points, double* dx);

/* kind: "gaussian" | "sech" | "ring"; params: amplitude, width, radius. */
fnls_status fnls_field_profile(const fnls_grid* grid, const char* kind,
                               double amplitude, double width, double radius,
                               fnls_field** out);
/* interleaved re/im samples, count = 2 * M^n doubles. */
fnls_status fnls_field_from_samples(const fnls_grid* grid,
                                    const double* interleaved, size_t count,
                                    fnls_field** out);
void fnls_field_free(fnls_field* field);
fnls_status fnls_field_samples(const fnls_field* field, double* interleaved,
                               size_t capacity);
fnls_status fnls_field_l2(const fnls_field* field, double* out);
fnls_status fnls_field_lp(const fnls_field* field, double p, double* out);
fnls_status fnls_field_time(const fnls_field* field, double* out);

/* ---- spectral operations ---- */

fnls_status fnls_propagate(const fnls_field* field, double beta, double t,
                           fnls_field** out);
fnls_status fnls_partition_create(const fnls_grid* grid,
                                  fnls_partition** out);
void fnls_partition_free(fnls_partition* partition);
fnls_status fnls_mod_norm(const fnls_field* field,
                          const fnls_partition* partition, double p, double q,
                          double* out);

/* ---- closed-form exponents ----
 * kind: "power" | "hartree"; alpha_or_nu per kind; JSON written to buf.
 */
fnls_status fnls_exponents_json(const char* kind, int dim, double beta,
                                double alpha_or_nu, double p_or_s, char* buf,
                                size_t capacity);

/* ---- evolution ---- */

/* kind: "power" | "hartree"; sign +1/-1; steps Strang steps of length h. */
fnls_status fnls_split_step_evolve(const fnls_field* field, const char* kind,
                                   double beta, double alpha_or_nu, int sign,
                                   double coupling, double h, int steps,
                                   fnls_field** out);

/* ---- batch experiments (the CLI surface) ---- */

/* Runs the scenario described by the config file.  out_dir may be NULL
 * (taken from the config), threads <= 0 means config/env default, seed
 * override applies when has_seed_override != 0.  Returns the scenario's
 * exit status through *scenario_status.
 */
fnls_status fnls_run_config(const char* config_path, const char* out_dir,
                            int threads, uint64_t seed_override,
                            int has_seed_override, int* scenario_status);

/* Runs the built-in property suite; module_filter may be NULL or one of
 * grid|propagator|modulation|nonlinearity|solver|highlow|analysis.
 * *failures receives the number of failed checks.  When report_json is not
 * NULL the full report is written there.
 */
fnls_status fnls_verify(const char* module_filter, int threads,
                        const char* report_json_path, int* failures);

#ifdef __cplusplus
}
#endif

#endif
