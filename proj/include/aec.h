/* C API for the adversarial erasure channel simulator.
 *
 * All functions return an aec_status; AEC_OK is 0. On failure,
 * aec_last_error() returns a thread-local description of what went wrong.
 * Objects are opaque handles owned by the caller and released with the
 * matching _free function.
 */
#ifndef AEC_H
#define AEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AEC_API __declspec(dllexport)
#else
#define AEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aec_status {
  AEC_OK = 0,
  AEC_ERR_ARGUMENT = 1, /* invalid parameter or config value */
  AEC_ERR_IO = 2,       /* file could not be read or written */
  AEC_ERR_PARSE = 3,    /* malformed config, codebook, or csv */
  AEC_ERR_INTERNAL = 4,
} aec_status;

typedef struct aec_codebook aec_codebook;

AEC_API const char* aec_status_name(aec_status status);
AEC_API const char* aec_last_error(void);

/* Random code construction. num_messages 0 derives the default count.
 * The handle is written to *out on success. */
AEC_API aec_status aec_codebook_generate(uint32_t n, double p, double epsilon,
                                         uint64_t num_messages, uint64_t seed,
                                         aec_codebook** out);
AEC_API aec_status aec_codebook_load(const char* path, aec_codebook** out);
AEC_API aec_status aec_codebook_save(const aec_codebook* cb, const char* path);
AEC_API void aec_codebook_free(aec_codebook* cb);

AEC_API aec_status aec_codebook_info(const aec_codebook* cb, uint32_t* n,
                                     uint64_t* num_messages, uint32_t* k);

/* Coherence spot-check: exhaustive below the small-instance cap, otherwise
 * Monte Carlo sampled. *passed is 1 when no violation was found. A short
 * human-readable report is written to report (truncated to report_len). */
AEC_API aec_status aec_codebook_validate(const aec_codebook* cb, double eta1,
                                         double eta2, int exhaustive,
                                         uint64_t samples, uint64_t seed,
                                         int* passed, char* report,
                                         size_t report_len);

/* Runs a Monte Carlo experiment from key=value config text. Records are
 * written to out_csv (and a summary next to it as <out_csv>.summary); the
 * summary text is also copied into summary_buf. */
AEC_API aec_status aec_run_experiment(const char* config_text,
                                      const char* out_csv, char* summary_buf,
                                      size_t summary_len);

/* One experiment per axis value with derived seeds; a combined CSV keyed by
 * the axis value is written to out_csv. */
AEC_API aec_status aec_run_sweep(const char* config_text, const char* axis,
                                 const double* values, size_t num_values,
                                 const char* out_csv);

/* Recomputes summary statistics from a records CSV and compares them with a
 * stored summary file. *ok is 1 when they match. */
AEC_API aec_status aec_verify_summary(const char* csv_path,
                                      const char* summary_path, int* ok,
                                      char* report, size_t report_len);

#ifdef __cplusplus
}
#endif

#endif /* AEC_H */
