/* C API for the dilate-lab library.
 *
 * All heavy functionality goes through dl_run_json: the caller submits a JSON
 * request naming a subcommand and its parameters, and receives an opaque
 * report handle holding the rendered JSON/CSV payload. A handful of scalar
 * helpers are exposed directly for embedding.
 *
 * Status codes mirror the CLI exit codes:
 *   0 ok, 2 usage/domain error, 3 model error, 4 capacity, 5 numeric failure.
 */
#ifndef DILATE_LAB_H
#define DILATE_LAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DILATE_LAB_API __declspec(dllexport)
#else
#define DILATE_LAB_API __attribute__((visibility("default")))
#endif

typedef struct dl_report dl_report;

enum dl_status {
    DL_OK = 0,
    DL_ERR_USAGE = 2,
    DL_ERR_MODEL = 3,
    DL_ERR_CAPACITY = 4,
    DL_ERR_NUMERIC = 5
};

/* Executes one request. Always produces a report handle (unless allocation
 * itself fails, in which case *out is NULL and DL_ERR_USAGE is returned).
 * The return value equals dl_report_status(*out). */
DILATE_LAB_API int dl_run_json(const char* request_json, dl_report** out);

DILATE_LAB_API int dl_report_status(const dl_report* report);
/* Rendered payload (JSON or CSV, NUL-terminated); empty string on error. */
DILATE_LAB_API const char* dl_report_payload(const dl_report* report);
/* Single-line machine-parsable error message; empty string on success. */
DILATE_LAB_API const char* dl_report_error(const dl_report* report);
DILATE_LAB_API void dl_report_free(dl_report* report);

DILATE_LAB_API const char* dl_version(void);

/* Scalar conveniences (return DL_OK or an error status). */
DILATE_LAB_API int dl_gcd_reduce(uint64_t m, uint64_t n, uint64_t* d, uint64_t* m_prime,
                                 uint64_t* n_prime);
/* sigma_s(n) = sum over divisors d of n of d^s. */
DILATE_LAB_API int dl_sigma(double s, uint64_t n, double* value);
/* (1/J) sum_{j<=J} sigma_{-1}(j). */
DILATE_LAB_API int dl_mean_sigma_minus1(uint64_t J, double* value);

#ifdef __cplusplus
}
#endif

#endif /* DILATE_LAB_H */
