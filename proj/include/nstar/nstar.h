#ifndef NSTAR_NSTAR_H
#define NSTAR_NSTAR_H

/* C interface to the n-ary star product engine.
 *
 * Every fallible call returns an nstar_status; on failure the message and (for
 * parse errors) the 1-based source position are kept per thread and read back
 * with nstar_last_error / nstar_last_error_position. Strings returned through
 * char** are owned by the caller and released with nstar_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NSTAR_BUILDING_LIBRARY)
#    define NSTAR_API __declspec(dllexport)
#  else
#    define NSTAR_API __declspec(dllimport)
#  endif
#else
#  define NSTAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nstar_status {
    NSTAR_OK = 0,
    NSTAR_ERR_DOMAIN = 1,
    NSTAR_ERR_ARITY = 2,
    NSTAR_ERR_PARSE = 3,
    NSTAR_ERR_BUDGET = 4,
    NSTAR_ERR_INVALID_ARGUMENT = 5,
    NSTAR_ERR_IO = 6,
    NSTAR_ERR_INTERNAL = 7
} nstar_status;

typedef enum nstar_format {
    NSTAR_FORMAT_TEXT = 0,
    NSTAR_FORMAT_JSON = 1,
    NSTAR_FORMAT_CSV = 2
} nstar_format;

NSTAR_API const char* nstar_version(void);
/* "NSTAR_ERR_PARSE" etc. */
NSTAR_API const char* nstar_status_name(nstar_status status);
NSTAR_API const char* nstar_last_error(void);
/* Zero when the last error carries no position. */
NSTAR_API void nstar_last_error_position(size_t* line, size_t* column);
NSTAR_API void nstar_string_free(char* s);

/* ---- configuration: dimension n >= 3 and theta ---- */

typedef struct nstar_config nstar_config;

/* theta_csv: comma-separated rationals ("1,1/2,-2"); NULL or "" means all ones. */
NSTAR_API nstar_status nstar_config_create(size_t n, const char* theta_csv, nstar_config** out);
NSTAR_API void nstar_config_destroy(nstar_config* cfg);
NSTAR_API size_t nstar_config_n(const nstar_config* cfg);
NSTAR_API nstar_status nstar_config_theta_text(const nstar_config* cfg, char** out);

/* ---- values: exact polynomials over Q(i, sqrt2), or plane-wave sums ---- */

typedef struct nstar_value nstar_value;

NSTAR_API nstar_status nstar_parse(const nstar_config* cfg, const char* text, nstar_value** out);
/* Parse then print the syntax tree with minimal parentheses. */
NSTAR_API nstar_status nstar_expression_normalize(const nstar_config* cfg, const char* text, char** out);
NSTAR_API void nstar_value_destroy(nstar_value* v);
NSTAR_API int nstar_value_is_wave(const nstar_value* v);
/* Canonical graded-lex text for polynomials; "c*wave(...)" sums for waves. */
NSTAR_API nstar_status nstar_value_to_text(const nstar_value* v, char** out);
NSTAR_API nstar_status nstar_value_to_json(const nstar_value* v, char** out);

/* ---- star products ---- */

/* m[exp(P)(f_1 ... f_n)]; count must equal n and all factors must be of one
 * class (polynomial or wave). */
NSTAR_API nstar_status nstar_star(const nstar_config* cfg, const nstar_value* const* factors, size_t count,
                                  nstar_value** out);
/* m[exp(-P)(f_1 ... f_n)]. */
NSTAR_API nstar_status nstar_conj_star(const nstar_config* cfg, const nstar_value* const* factors, size_t count,
                                       nstar_value** out);
/* star(f, middle..., h) - star(h, middle..., f); middle_count must be n - 2. */
NSTAR_API nstar_status nstar_bracket(const nstar_config* cfg, const nstar_value* f, const nstar_value* h,
                                     const nstar_value* const* middle, size_t middle_count, nstar_value** out);

/* ---- plane-wave kernel ---- */

/* freqs holds count * n doubles, one frequency vector per slot; count == n. */
NSTAR_API nstar_status nstar_kernel_exponent(const nstar_config* cfg, const double* freqs, size_t count,
                                             double* re, double* im);
NSTAR_API nstar_status nstar_omega(const double q[3], const double r[3], double out[3]);

/* Relative deviation between the exact plane-wave product and the lattice
 * (FFT) oracle for wave-valued factors on an N^n lattice of period L. */
NSTAR_API nstar_status nstar_grid_oracle_compare(const nstar_config* cfg, const nstar_value* const* factors,
                                                 size_t count, size_t points_per_axis, double period,
                                                 double budget, double* max_relative_error);
/* Samples a wave value on a lattice and writes it in the lattice file format. */
NSTAR_API nstar_status nstar_lattice_write(const nstar_value* wave, size_t points_per_axis, double period,
                                           const char* path);
/* Reads n lattice files, applies the lattice oracle, writes the result. */
NSTAR_API nstar_status nstar_grid_oracle_files(const nstar_config* cfg, const char* const* input_paths, size_t count,
                                               const char* output_path, double budget);
/* Max relative difference between two lattice files. */
NSTAR_API nstar_status nstar_lattice_compare(const char* path_a, const char* path_b, double* max_relative_error);

/* ---- identity audit ---- */

/* claims == NULL (or count == 0) runs every claim. report_json and
 * report_text may be NULL. *guaranteed_ok is 1 iff no guaranteed claim fails. */
NSTAR_API nstar_status nstar_run_suite(uint64_t seed, unsigned trials, double tolerance,
                                       const char* const* claims, size_t count, char** report_json,
                                       char** report_text, int* guaranteed_ok);
/* Newline separated claim names. */
NSTAR_API nstar_status nstar_claim_names(char** out);

/* ---- coupled oscillators ---- */

/* hamiltonian_json: {"couplings": [{"indices": [..], "lambda": "p/q"}],
 * "diag": {"0": [...], "2": [...]}} or NULL for no couplings. Writes the exact
 * energy as "p/q". */
NSTAR_API nstar_status nstar_energy(const nstar_config* cfg, const char* hamiltonian_json, size_t k,
                                    const unsigned* nbar, size_t nbar_len, char** out);
/* Residual table for the ground-state equations; sample points are generated
 * from seed. coord_i/coord_j select a_ij. */
NSTAR_API nstar_status nstar_residual_report(const nstar_config* cfg, const char* hamiltonian_json, unsigned k,
                                             unsigned order, size_t points, uint64_t seed, size_t coord_i,
                                             size_t coord_j, nstar_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif
