/* C API for the quadspec shared library.
 *
 * All functions are thread-compatible: handles are not shared between
 * threads without external synchronization; error messages are per-thread.
 * Returned strings marked "caller frees" must be released with
 * qs_string_free.
 */
#ifndef QUADSPEC_C_H
#define QUADSPEC_C_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qs_status {
  QS_OK = 0,
  QS_CHECK_FAILURES = 1,
  QS_BAD_CONFIG = 2,
  QS_NUMERICAL_ERROR = 3,
  QS_INVALID_HANDLE = 4,
  QS_INTERNAL_ERROR = 5
} qs_status;

const char* qs_version(void);

/* Message for the last failing call on this thread; empty string if none. */
const char* qs_last_error(void);

/* One-shot command runner. command is one of validate | evolve | reconstruct |
 * example | search; config_json is the JSON configuration document text;
 * report files are written under out_dir in the requested format
 * ("json" or "csv"; NULL means json). tol_overrides is an array of
 * "name=value" strings (may be NULL when n_overrides is 0); seed_override < 0
 * leaves the config seed untouched. The return value matches the CLI exit
 * code: 0 ok, 1 check failures, 2 malformed config, 3 numerical failure. */
int qs_run(const char* command, const char* config_json, const char* out_dir, const char* format,
           const char* const* tol_overrides, int n_overrides, long long seed_override);

/* Handle-based embedding API. */
typedef struct qs_quadruple qs_quadruple;
typedef struct qs_checks qs_checks;

/* Builds the quadruple described by config_json ("example" or "foliation"
 * section); NULL on failure (see qs_last_error). */
qs_quadruple* qs_quadruple_build(const char* config_json);
void qs_quadruple_free(qs_quadruple* q);
long long qs_quadruple_hilbert_dim(const qs_quadruple* q);
int qs_quadruple_slice_count(const qs_quadruple* q);

/* Runs the full validation suite; config_json may carry a "validate" section
 * with tolerance overrides and fault fixtures, or be NULL/empty. */
qs_checks* qs_validate(const qs_quadruple* q, const char* config_json);
void qs_checks_free(qs_checks* c);
int qs_checks_count(const qs_checks* c);
/* 1 if every non-advisory check passed. */
int qs_checks_all_passed(const qs_checks* c);
const char* qs_checks_name(const qs_checks* c, int i);
double qs_checks_residual(const qs_checks* c, int i);
double qs_checks_tolerance(const qs_checks* c, int i);
int qs_checks_passed(const qs_checks* c, int i);
int qs_checks_advisory(const qs_checks* c, int i);

/* Serialized reports; caller frees. */
char* qs_checks_to_json(const qs_checks* c);
char* qs_checks_to_csv(const qs_checks* c);

void qs_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* QUADSPEC_C_H */
