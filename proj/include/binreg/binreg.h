/*
 * binreg C API.
 *
 * Binomial regression with logit, probit, cloglog and cauchit links behind
 * opaque handles. Every function that can fail returns a binreg_status; on
 * failure, binreg_last_error() returns a message describing the most recent
 * error on the calling thread. Strings returned through `char** out` are
 * heap-allocated and must be released with binreg_string_free().
 */
#ifndef BINREG_BINREG_H
#define BINREG_BINREG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BINREG_BUILDING)
#    define BINREG_API __declspec(dllexport)
#  else
#    define BINREG_API __declspec(dllimport)
#  endif
#else
#  define BINREG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum binreg_status {
  BINREG_OK = 0,
  BINREG_E_INVALID_ARGUMENT = 1, /* null handle/pointer, unknown enum value */
  BINREG_E_IO = 2,
  BINREG_E_PARSE = 3,            /* malformed config or CSV */
  BINREG_E_VALIDATION = 4,       /* data or config violates an invariant */
  BINREG_E_DOMAIN = 5,           /* argument outside a function's domain */
  BINREG_E_RANK_DEFICIENT = 6,
  BINREG_E_NUMERICAL = 7,        /* no link could be fitted */
  BINREG_E_INTERNAL = 8
} binreg_status;

typedef enum binreg_link {
  BINREG_LINK_LOGIT = 0,
  BINREG_LINK_PROBIT = 1,
  BINREG_LINK_CLOGLOG = 2,
  BINREG_LINK_CAUCHIT = 3
} binreg_link;

typedef enum binreg_format {
  BINREG_FORMAT_TEXT = 0,
  BINREG_FORMAT_CSV = 1,
  BINREG_FORMAT_JSON = 2
} binreg_format;

/* A model configuration plus (optionally) a dataset read against it. */
typedef struct binreg_session binreg_session;
/* A single fitted model. */
typedef struct binreg_fit binreg_fit;

BINREG_API const char* binreg_version(void);
BINREG_API const char* binreg_status_string(binreg_status status);
BINREG_API const char* binreg_last_error(void);
BINREG_API void binreg_string_free(char* s);

/* ---- links ---------------------------------------------------------- */

BINREG_API binreg_status binreg_link_parse(const char* name, binreg_link* out);
BINREG_API const char* binreg_link_name(binreg_link link);
/* g(p) for p in (0, 1). */
BINREG_API binreg_status binreg_link_g(binreg_link link, double p, double* out);
/* g^{-1}(eta) and d mu / d eta. Either output pointer may be NULL. */
BINREG_API binreg_status binreg_link_inverse(binreg_link link, double eta, double* mu,
                                             double* mu_eta);

/* ---- sessions ------------------------------------------------------- */

/* Loads a JSON config and, when data_path is non-NULL, the CSV dataset. */
BINREG_API binreg_status binreg_session_open(const char* config_path, const char* data_path,
                                             binreg_session** out);
BINREG_API binreg_status binreg_session_open_text(const char* config_json, const char* csv_text,
                                                  binreg_session** out);
BINREG_API void binreg_session_free(binreg_session* session);

BINREG_API binreg_status binreg_session_set_max_iter(binreg_session* session, int max_iter);
BINREG_API binreg_status binreg_session_set_seed(binreg_session* session, uint64_t seed);
/* Format named in the config ("text" when absent). */
BINREG_API binreg_status binreg_session_format(const binreg_session* session,
                                               binreg_format* out);
/* Seed named in the config or set explicitly; *has_seed is 0 when neither. */
BINREG_API binreg_status binreg_session_seed(const binreg_session* session, int* has_seed,
                                             uint64_t* seed);
BINREG_API binreg_status binreg_session_num_rows(const binreg_session* session, size_t* out);

/* ---- reports -------------------------------------------------------- */

BINREG_API binreg_status binreg_report_crosstab(const binreg_session* session,
                                                binreg_format format, char** out);
/* Fits the first configured link. */
BINREG_API binreg_status binreg_report_fit(const binreg_session* session, binreg_format format,
                                           char** out);
/* Fits every configured link. Returns BINREG_E_NUMERICAL (with the report
   still written to *out) when no link produced a fit. */
BINREG_API binreg_status binreg_report_compare_links(const binreg_session* session,
                                                     binreg_format format, char** out);

/* Synthetic CSV under the first configured link. truth may be NULL to use
   the config's simulate.truth; rows == 0 and group_size == 0 likewise fall
   back to the config. Requires a seed (config or binreg_session_set_seed). */
BINREG_API binreg_status binreg_simulate_csv(const binreg_session* session, const double* truth,
                                             size_t truth_len, size_t rows, size_t group_size,
                                             char** out);

/* ---- fits ----------------------------------------------------------- */

BINREG_API binreg_status binreg_fit_create(const binreg_session* session, binreg_link link,
                                           binreg_fit** out);
BINREG_API void binreg_fit_free(binreg_fit* fit);
BINREG_API size_t binreg_fit_num_coefficients(const binreg_fit* fit);
/* Term label of coefficient j; valid for the lifetime of the fit. */
BINREG_API const char* binreg_fit_term(const binreg_fit* fit, size_t j);
BINREG_API binreg_status binreg_fit_coefficient(const binreg_fit* fit, size_t j,
                                                double* estimate, double* std_error,
                                                double* p_value);
BINREG_API binreg_status binreg_fit_statistics(const binreg_fit* fit, double* log_likelihood,
                                               double* deviance, double* aic, int* iterations,
                                               int* converged);

#ifdef __cplusplus
}
#endif

#endif /* BINREG_BINREG_H */
