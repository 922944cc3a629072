/* C interface to the sglab core library.
 *
 * Every function that can fail returns a status code:
 *   0  success
 *   2  config/domain error (bad key, value out of range, wrong command args)
 *   3  numerical failure (non-finite result, zero denominator, I/O failure)
 *   4  resource-budget refusal (the request is valid but too large)
 * On failure, sglab_last_error() returns a thread-local message naming the
 * offending config key or numeric stage. Handles are opaque; free them with
 * the matching *_free call. NULL handles are tolerated by the free functions.
 */
#ifndef SGLAB_H
#define SGLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SGLAB_OK 0
#define SGLAB_ERR_CONFIG 2
#define SGLAB_ERR_NUMERICAL 3
#define SGLAB_ERR_RESOURCE 4

typedef struct sglab_config_s sglab_config;
typedef struct sglab_result_s sglab_result;

const char* sglab_version(void);

/* Message from the most recent failing call on this thread ("" if none). */
const char* sglab_last_error(void);

/* --- configuration ----------------------------------------------------- */

/* Parses a JSON experiment description. Unknown keys are rejected. */
int sglab_config_parse(const char* json_text, sglab_config** out);

/* Command-line overrides, applied after parsing. */
int sglab_config_set_seed(sglab_config* cfg, uint64_t master_seed);
int sglab_config_set_workers(sglab_config* cfg, int workers);
int sglab_config_set_out_dir(sglab_config* cfg, const char* dir);

/* Output directory currently in effect (valid until the config is freed). */
const char* sglab_config_out_dir(const sglab_config* cfg);

/* Canonical-form hash: 16 hex characters. buf must hold >= 17 bytes. */
int sglab_config_hash(const sglab_config* cfg, char* buf, size_t buflen);

void sglab_config_free(sglab_config* cfg);

/* --- running ----------------------------------------------------------- */

/* Executes one command against the config. Commands: validate-kernel,
 * cumulants, renorm-flow, onsager-audit, gibbs, fourier-duality,
 * correlations, bracket-scan. Pure: nothing is written to disk; on any
 * failure *out stays NULL and no artifact exists anywhere. */
int sglab_run(const sglab_config* cfg, const char* command, sglab_result** out);

size_t sglab_result_artifact_count(const sglab_result* res);
const char* sglab_result_artifact_name(const sglab_result* res, size_t index);
const char* sglab_result_artifact_content(const sglab_result* res,
                                          size_t index);

/* One-line summaries, newline separated. */
const char* sglab_result_summary(const sglab_result* res);

/* Writes every artifact into dir (created if needed). */
int sglab_result_write(const sglab_result* res, const char* dir);

void sglab_result_free(sglab_result* res);

/* --- small pure primitives --------------------------------------------- */

/* Collapse threshold index for a coupling: smallest n with beta < beta_n,
 * where beta_n = sqrt(2(1 - 1/2n)), and the number of counterterms n-1.
 * Refuses beta >= sqrt(2) with status 4. */
int sglab_threshold_index(double beta, int* index, int* counterterms);

/* beta_n itself; n >= 1. */
int sglab_collapse_threshold(int n, double* beta_n);

#ifdef __cplusplus
}
#endif

#endif /* SGLAB_H */
