/*
 * nprsim C API
 *
 * The library core is C++; this header is the stable ABI surface. Handles
 * are opaque, every fallible call reports a status code, and the last error
 * message is retrievable from the handle. Status codes double as process
 * exit codes for the bundled CLI:
 *
 *   0  success
 *   2  configuration error (unreadable/invalid config, bad parameters)
 *   3  failed verdict (oracle-check inconsistent, efficiency cap violated)
 *   4  runtime error
 */

#ifndef NPRSIM_H
#define NPRSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NPRSIM_API __declspec(dllexport)
#else
#define NPRSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nprsim_status {
  NPRSIM_OK = 0,
  NPRSIM_ERR_CONFIG = 2,
  NPRSIM_ERR_VERDICT = 3,
  NPRSIM_ERR_RUNTIME = 4
} nprsim_status;

NPRSIM_API const char* nprsim_version(void);

/* --- experiment handle --------------------------------------------------- */

typedef struct nprsim_experiment nprsim_experiment;

/* Create from a JSON document / a file path. Always returns a handle unless
 * allocation itself fails; check nprsim_experiment_status before use. */
NPRSIM_API nprsim_experiment* nprsim_experiment_create(const char* config_json);
NPRSIM_API nprsim_experiment* nprsim_experiment_create_from_file(const char* path);
NPRSIM_API void nprsim_experiment_destroy(nprsim_experiment* exp);

NPRSIM_API nprsim_status nprsim_experiment_status(const nprsim_experiment* exp);
/* Last error message; empty string when there is none. Owned by the handle. */
NPRSIM_API const char* nprsim_experiment_error(const nprsim_experiment* exp);

/* Optional overrides applied on top of the parsed configuration. */
NPRSIM_API nprsim_status nprsim_experiment_set_out_dir(nprsim_experiment* exp,
                                                       const char* dir);
NPRSIM_API nprsim_status nprsim_experiment_set_seed(nprsim_experiment* exp,
                                                    uint64_t seed);
NPRSIM_API nprsim_status nprsim_experiment_set_workers(nprsim_experiment* exp,
                                                       int workers);

/* Run one command: "simulate", "select", "risk", "oracle-check",
 * "efficiency" or "lower-bound". Artifacts are written to the output
 * directory; the human-readable summary is available afterwards. */
NPRSIM_API nprsim_status nprsim_experiment_run(nprsim_experiment* exp,
                                               const char* command);
NPRSIM_API const char* nprsim_experiment_summary(const nprsim_experiment* exp);

/* --- stateless numeric entry points --------------------------------------- */

/* Trigonometric basis value phi_j(x). */
NPRSIM_API nprsim_status nprsim_basis_eval(int j, double x, double* out);

/* Sobolev ellipsoid weight a_j for smoothness order k. */
NPRSIM_API nprsim_status nprsim_sobolev_weight(int j, int k, double* out);

/* Pinsker constant for (k, r, sigma_star). */
NPRSIM_API nprsim_status nprsim_pinsker_constant(int k, double r,
                                                 double sigma_star, double* out);

/* Oracle-inequality coefficient (1+3rho-2rho^2)/(1-3rho), rho in (0,1/3). */
NPRSIM_API nprsim_status nprsim_oracle_coefficient(double rho, double* out);

/* van Trees lower bound sigma*B^2/(fisher_energy + sigma*prior_info). */
NPRSIM_API nprsim_status nprsim_van_trees_bound(double fisher_energy, double b,
                                                double prior_info,
                                                double sigma_star, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NPRSIM_H */
