/*
 * mcf: multidimensional continued fraction laboratory.
 *
 * C interface to the shared library. Handles are opaque; every function
 * returns an mcf_status (MCF_OK on success), and thread-local detail for the
 * last failure is available through mcf_last_error_message(). Strings
 * returned through char** are heap-allocated and must be released with
 * mcf_string_free().
 */
#ifndef MCF_H
#define MCF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mcf_system mcf_system;

typedef enum mcf_status {
  MCF_OK = 0,
  MCF_ERR_SINGULAR_POINT = 1,
  MCF_ERR_DIMENSION_MISMATCH = 2,
  MCF_ERR_NOT_UNIMODULAR = 3,
  MCF_ERR_UNKNOWN_ALGORITHM = 4,
  MCF_ERR_UNSUPPORTED_DIMENSION = 5,
  MCF_ERR_OUT_OF_DOMAIN = 6,
  MCF_ERR_BOUNDARY_POINT = 7,
  MCF_ERR_EMPTY_CYLINDER = 8,
  MCF_ERR_NON_FULL_SYSTEM = 9,
  MCF_ERR_DIVERGENT_INTEGRAL = 10,
  MCF_ERR_NO_KNOWN_INTERTWINER = 11,
  MCF_ERR_SEARCH_SPACE_EXHAUSTED = 12,
  MCF_ERR_BAD_DIGIT_STRING = 13,
  MCF_ERR_INVALID_ARGUMENT = 14,
  MCF_ERR_IO = 15,
  MCF_ERR_INTERNAL = 16
} mcf_status;

typedef struct mcf_mc_params {
  uint64_t seed;
  uint64_t samples;
  int32_t workers;
  int32_t method;     /* 0 change-of-variables, 1 direct-polytope */
  int32_t antithetic; /* 0/1 */
  double z_crit;
} mcf_mc_params;

typedef struct mcf_estimate {
  double value;
  double std_error;
  uint64_t samples;
  uint64_t seed;
  int32_t method;
} mcf_estimate;

typedef struct mcf_figure_params {
  int32_t depth;     /* 1..3 */
  int32_t digit_cap; /* per-level cap for unbounded alphabets */
  double frame;      /* clip frame for dual-domain figures */
  int32_t size_px;
  int32_t dual;   /* 0/1 */
  int32_t labels; /* 0/1 */
} mcf_figure_params;

const char* mcf_version(void);
const char* mcf_status_name(mcf_status status);
/* Detail message of the most recent failure on this thread. */
const char* mcf_last_error_message(void);

void mcf_string_free(char* s);
void mcf_mc_params_init(mcf_mc_params* params);
void mcf_figure_params_init(mcf_figure_params* params);

/* ---- systems --------------------------------------------------------- */

/* name: gauss | gs | selmer | brun | brun-mult | poincare | flipflop */
mcf_status mcf_system_open(const char* name, int32_t n, mcf_system** out);
/* The dual system (transposed branch matrices on the dual domain). */
mcf_status mcf_system_open_dual(const char* name, int32_t n, mcf_system** out);
void mcf_system_close(mcf_system* s);

mcf_status mcf_catalogue_json(char** out_json);
mcf_status mcf_system_info_json(const mcf_system* s, char** out_json);

/* Digit expansion of x (n doubles): {"digits": [...], "final": [...],
 * "hit_boundary": bool}. */
mcf_status mcf_expand_json(const mcf_system* s, const double* x, size_t n,
                           int32_t steps, char** out_json);

/* Unnormalized invariant density at x. */
mcf_status mcf_density(const mcf_system* s, const double* x, size_t n,
                       double* out);

/* ---- measures -------------------------------------------------------- */

/* digits: comma-separated tokens per the system's alphabet (integers,
 * "i:N" pairs, or cycle-notation permutations with "e" for the identity);
 * the empty string measures the whole domain. */
mcf_status mcf_cylinder_measure(const mcf_system* s, const char* digits,
                                const mcf_mc_params* params,
                                mcf_estimate* out);
mcf_status mcf_polar_measure(const mcf_system* s, const char* digits,
                             const mcf_mc_params* params, mcf_estimate* out);
/* Full symmetry verdict as JSON. */
mcf_status mcf_symmetry_json(const mcf_system* s, const char* digits,
                             const mcf_mc_params* params, char** out_json);

/* ---- duality --------------------------------------------------------- */

/* Commutation + cell-mapping battery over the self-dual digit set. */
mcf_status mcf_dual_check_json(const mcf_system* s, int32_t digit_bound,
                               uint64_t samples, uint64_t seed,
                               char** out_json);
/* Intertwiner search: symmetric integer matrices, entries within
 * [-entry_bound, entry_bound]. */
mcf_status mcf_dual_search_json(const mcf_system* s, int32_t entry_bound,
                                int32_t digit_bound, uint64_t sample_budget,
                                uint64_t seed, int32_t workers,
                                char** out_json);
/* Involution counts 1..max_m and, optionally, the branch-matrix criterion. */
mcf_status mcf_telephone_json(int32_t max_m, int32_t check_criterion,
                              char** out_json);

/* ---- figures --------------------------------------------------------- */

mcf_status mcf_figure_svg(const mcf_system* s, const mcf_figure_params* params,
                          char** out_svg);

#ifdef __cplusplus
}
#endif

#endif /* MCF_H */
