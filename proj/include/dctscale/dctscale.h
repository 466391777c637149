#ifndef DCTSCALE_DCTSCALE_H
#define DCTSCALE_DCTSCALE_H

/*
 * C interface to the dctscale library. Every function that can fail returns
 * a dcs_status; on failure the thread-local message from dcs_last_error()
 * describes the cause and no output handle is written. Handles are owned by
 * the caller and released with the matching *_free function. Strings
 * returned through char** are released with dcs_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(DCTSCALE_BUILDING_LIBRARY)
#define DCS_API __attribute__((visibility("default")))
#else
#define DCS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dcs_status {
  DCS_OK = 0,
  DCS_ERR_INVALID_ARGUMENT = 1,
  DCS_ERR_DIMENSION_MISMATCH = 2,
  DCS_ERR_SINGULAR = 3,
  DCS_ERR_NOT_FOUND = 4,
  DCS_ERR_CHECKSUM = 5,
  DCS_ERR_PARSE = 6,
  DCS_ERR_OVERFLOW = 7,
  DCS_ERR_IO = 8,
  DCS_ERR_INTERNAL = 9
} dcs_status;

typedef enum dcs_format { DCS_FORMAT_MARKDOWN = 0, DCS_FORMAT_CSV = 1, DCS_FORMAT_JSON = 2 } dcs_format;

typedef struct dcs_matrix dcs_matrix;   /* square real matrix */
typedef struct dcs_catalog dcs_catalog; /* immutable approximation registry */
typedef struct dcs_scaled dcs_scaled;   /* result of one or more doubling steps */

typedef struct dcs_cost {
  uint64_t adds;
  uint64_t shifts;
} dcs_cost;

typedef struct dcs_metrics {
  double d;
  double epsilon;
  double mse;
  double cg;
  double eta;
  double frob;
  uint64_t adds;
  uint64_t shifts;
} dcs_metrics;

typedef struct dcs_orthogonality {
  int cond_i;
  int cond_ii;
  int cond_iii;
  int orthogonal;
} dcs_orthogonality;

DCS_API const char* dcs_version(void);
DCS_API const char* dcs_status_name(dcs_status status);
/* Message for the last failure on the calling thread; "" when none. */
DCS_API const char* dcs_last_error(void);
DCS_API void dcs_string_free(char* s);

/* ------------------------------------------------------------ matrices */

/* kind: dct2 dct4 dst4 A B D G J ibar Z shuffle bitrev butterfly.
 * n is the dimension of the produced matrix (even for shuffle/butterfly,
 * a power of two for bitrev). */
DCS_API dcs_status dcs_matrix_generate(const char* kind, size_t n, dcs_matrix** out);
DCS_API size_t dcs_matrix_size(const dcs_matrix* m);
/* Copies n*n row-major entries into out (len must be >= n*n). */
DCS_API dcs_status dcs_matrix_copy(const dcs_matrix* m, double* out, size_t len);
/* Fixed-decimal CSV (one row per line) or JSON ({"size", "rows"}). */
DCS_API dcs_status dcs_matrix_format(const dcs_matrix* m, dcs_format format, int decimals, char** out);
DCS_API void dcs_matrix_free(dcs_matrix* m);

/* ------------------------------------------------------------- catalog */

/* dir == NULL selects the directory configured at build time. */
DCS_API dcs_status dcs_catalog_open(const char* dir, dcs_catalog** out);
DCS_API void dcs_catalog_free(dcs_catalog* c);
DCS_API size_t dcs_catalog_count(const dcs_catalog* c);
/* NULL when index is out of range; valid while the catalog lives. */
DCS_API const char* dcs_catalog_id(const dcs_catalog* c, size_t index);
DCS_API dcs_status dcs_catalog_matrix(const dcs_catalog* c, const char* id, dcs_matrix** out);
DCS_API dcs_status dcs_catalog_baseline(const dcs_catalog* c, const char* id, dcs_cost* out);

/* ------------------------------------------------------------- scaling */

/* approx: a catalog id, or "exact" for the exact DCT of size base_size
 * (base_size == 0 means target / 2; ignored for catalog ids, which are
 * 8-point). methods: one name (JAM, I..VII, EXACT) or a comma-separated list
 * with one name per doubling step. c may be NULL when approx is "exact". */
DCS_API dcs_status dcs_scale(const dcs_catalog* c, const char* approx, size_t base_size, const char* methods,
                             size_t target, dcs_scaled** out);
DCS_API void dcs_scaled_free(dcs_scaled* s);
DCS_API size_t dcs_scaled_size(const dcs_scaled* s);
/* 1 when the low-complexity matrix is dyadic and carries a factored form. */
DCS_API int dcs_scaled_is_dyadic(const dcs_scaled* s);
DCS_API dcs_status dcs_scaled_low_complexity(const dcs_scaled* s, dcs_matrix** out);
DCS_API dcs_status dcs_scaled_orthogonalized(const dcs_scaled* s, dcs_matrix** out);
/* ||C_hat - C||_F against the exact DCT of the same size. */
DCS_API double dcs_scaled_error(const dcs_scaled* s);
/* Fails with DCS_ERR_INVALID_ARGUMENT when the transform is not dyadic. */
DCS_API dcs_status dcs_scaled_cost(const dcs_scaled* s, dcs_cost* out);
DCS_API dcs_status dcs_scaled_metrics(const dcs_scaled* s, double rho, dcs_metrics* out);
/* y = T x through the factored form (dense product when not dyadic); with
 * orthogonalize != 0, y = C_hat x. */
DCS_API dcs_status dcs_scaled_apply(const dcs_scaled* s, const double* x, size_t n, int orthogonalize, double* y);
/* Exact y = T x for integer x: y[i] = numerator[i] / 2^shift[i]. */
DCS_API dcs_status dcs_scaled_apply_exact(const dcs_scaled* s, const int64_t* x, size_t n, int64_t* numerator,
                                          uint32_t* shift);
DCS_API dcs_status dcs_scaled_factored_json(const dcs_scaled* s, char** out);

/* Sufficient orthogonality conditions for one doubling step of approx;
 * base_size == 0 selects 8 for "exact". */
DCS_API dcs_status dcs_check_orthogonality(const dcs_catalog* c, const char* approx, size_t base_size,
                                           const char* method, dcs_orthogonality* out);

/* ---------------------------------------------------------- identities */

DCS_API size_t dcs_identity_count(void);
DCS_API const char* dcs_identity_name(size_t index);
DCS_API int dcs_identity_requires_power_of_two(size_t index);
/* Max abs residual between both sides; n is the half size for identities
 * that produce a 2N-point matrix. */
DCS_API dcs_status dcs_verify_identity(const char* name, size_t n, double* residual);

/* -------------------------------------------------------------- tables */

/* id: a table id or "all". *all_ok receives 1 when every compared cell is
 * within tolerance. */
DCS_API dcs_status dcs_tables_render(const dcs_catalog* c, const char* id, dcs_format format, char** out,
                                     int* all_ok);
DCS_API size_t dcs_table_count(void);
DCS_API const char* dcs_table_id(size_t index);

#ifdef __cplusplus
}
#endif

#endif /* DCTSCALE_DCTSCALE_H */
