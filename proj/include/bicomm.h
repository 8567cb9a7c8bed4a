#ifndef BICOMM_H
#define BICOMM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BICOMM_API __declspec(dllexport)
#else
#define BICOMM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bicomm_status {
  BICOMM_OK = 0,
  BICOMM_ERR_INVALID_ARGUMENT = 1,
  BICOMM_ERR_DIMENSION_MISMATCH = 2,
  BICOMM_ERR_DOMAIN = 3,
  BICOMM_ERR_NOT_CONVERGED = 4,
  BICOMM_ERR_IO = 5,
  BICOMM_ERR_CONFIG = 6,
  BICOMM_ERR_INTERNAL = 99
} bicomm_status;

typedef struct bicomm_config bicomm_config;
typedef struct bicomm_report bicomm_report;
typedef struct bicomm_signal bicomm_signal;

/* Library version string, e.g. "0.1.0". */
BICOMM_API const char* bicomm_version(void);

/* Message of the last failure on the calling thread ("" if none). */
BICOMM_API const char* bicomm_last_error(void);

BICOMM_API size_t bicomm_command_count(void);
BICOMM_API const char* bicomm_command_name(size_t index);

/* Loads a JSON configuration. `command` may be NULL; otherwise it fills in a
 * missing "command" key and must agree with a present one. */
BICOMM_API bicomm_status bicomm_config_load(const char* path, const char* command, bicomm_config** out);
BICOMM_API bicomm_status bicomm_config_parse(const char* json, const char* command, bicomm_config** out);
BICOMM_API void bicomm_config_free(bicomm_config* config);

BICOMM_API bicomm_status bicomm_config_set_seed(bicomm_config* config, uint64_t seed);
BICOMM_API bicomm_status bicomm_config_set_jobs(bicomm_config* config, int jobs);
BICOMM_API bicomm_status bicomm_config_set_out_dir(bicomm_config* config, const char* dir);

/* Hex FNV-1a hash of the result-determining settings; `buffer` needs at
 * least 17 bytes. */
BICOMM_API bicomm_status bicomm_config_hash(const bicomm_config* config, char* buffer, size_t size);
BICOMM_API const char* bicomm_config_command(const bicomm_config* config);

BICOMM_API bicomm_status bicomm_run(const bicomm_config* config, bicomm_report** out);
BICOMM_API void bicomm_report_free(bicomm_report* report);

/* Writes the CSV, the summary JSON and any extra files into the configured
 * output directory. */
BICOMM_API bicomm_status bicomm_report_write(const bicomm_report* report, const bicomm_config* config);

/* Pointers returned below stay valid until the report is freed. */
BICOMM_API const char* bicomm_report_csv(const bicomm_report* report);
BICOMM_API size_t bicomm_report_rows(const bicomm_report* report);
BICOMM_API int bicomm_report_passed(const bicomm_report* report);
BICOMM_API double bicomm_report_runtime(const bicomm_report* report);
BICOMM_API size_t bicomm_report_check_count(const bicomm_report* report);
BICOMM_API bicomm_status bicomm_report_check(const bicomm_report* report, size_t index, const char** name,
                                             const char** relation, double* value, double* limit, int* passed);

/* Two-dimensional grid signals (row-major, interleaved re/im). */
BICOMM_API bicomm_status bicomm_signal_create(size_t n, const double* interleaved, bicomm_signal** out);
BICOMM_API bicomm_status bicomm_signal_read(const char* base, bicomm_signal** out);
BICOMM_API bicomm_status bicomm_signal_write(const bicomm_signal* signal, const char* base);
BICOMM_API size_t bicomm_signal_size(const bicomm_signal* signal);
BICOMM_API void bicomm_signal_free(bicomm_signal* signal);

/* Largest singular value of the nested commutator with symbol `signal`. */
BICOMM_API bicomm_status bicomm_operator_norm(const bicomm_signal* signal, double tol, int max_iter, uint64_t seed,
                                              double* norm);
/* Greedy lower bound of the product BMO norm of the wavelet coefficients
 * with scales up to `resolution`. */
BICOMM_API bicomm_status bicomm_product_bmo_lower(const bicomm_signal* signal, int resolution, int budget,
                                                  double* value);

#ifdef __cplusplus
}
#endif

#endif
