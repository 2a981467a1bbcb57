/* opschur: finite truncations of matrices with operator entries, the
 * noncommutative Schur product, summability-kernel smoothing, Toeplitz symbol
 * calculus and norm estimation.
 *
 * C API over an opaque-handle core. Every function returns an opschur_status;
 * results travel through out-parameters. On failure the out-parameters are
 * untouched and opschur_last_error() describes the problem (thread-local).
 * Objects returned through *_out pointers are owned by the caller and
 * released with the matching *_free function. Handles are immutable after
 * creation, so sharing them across threads is safe.
 *
 * Complex data crosses the boundary as interleaved doubles (re, im). Block
 * and matrix indices are 1-based; block entries are row-major.
 */

#ifndef OPSCHUR_H
#define OPSCHUR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  OPSCHUR_OK = 0,
  OPSCHUR_ERROR_INVALID_ARGUMENT = 1,
  OPSCHUR_ERROR_DIMENSION_MISMATCH = 2,
  OPSCHUR_ERROR_INDEX_OUT_OF_RANGE = 3,
  OPSCHUR_ERROR_PARSE = 4,
  OPSCHUR_ERROR_PRECONDITION = 5,
  OPSCHUR_ERROR_IO = 6,
  OPSCHUR_ERROR_UNSUPPORTED = 7,
  OPSCHUR_ERROR_INTERNAL = 8
} opschur_status;

typedef enum {
  OPSCHUR_SPEC_MATRIX = 0,
  OPSCHUR_SPEC_TOEPLITZ = 1,
  OPSCHUR_SPEC_SYMBOL = 2,
  OPSCHUR_SPEC_KERNEL = 3
} opschur_spec_kind;

typedef enum {
  OPSCHUR_STRUCTURE_DENSE = 0,
  OPSCHUR_STRUCTURE_TOEPLITZ = 1,
  OPSCHUR_STRUCTURE_UPPER_TRIANGULAR = 2,
  OPSCHUR_STRUCTURE_BANDED = 3
} opschur_structure;

typedef enum {
  OPSCHUR_NORM_EXACT_TRUNCATION = 0,
  OPSCHUR_NORM_LOWER_BOUND = 1,
  OPSCHUR_NORM_UPPER_BOUND = 2
} opschur_norm_kind;

typedef enum { OPSCHUR_SIDE_LEFT = 0, OPSCHUR_SIDE_RIGHT = 1 } opschur_side;

typedef enum {
  OPSCHUR_METRIC_OPERATOR_NORM = 0,
  OPSCHUR_METRIC_MULTIPLIER_BOUNDS = 1
} opschur_profile_metric;

typedef enum {
  OPSCHUR_VERDICT_DECREASING_TO_ZERO = 0,
  OPSCHUR_VERDICT_BOUNDED = 1,
  OPSCHUR_VERDICT_INCONCLUSIVE = 2
} opschur_verdict;

typedef enum {
  OPSCHUR_KERNEL_FEJER = 0,
  OPSCHUR_KERNEL_POISSON = 1,
  OPSCHUR_KERNEL_DIRAC = 2
} opschur_kernel_kind;

typedef struct opschur_spec opschur_spec;
typedef struct opschur_matrix opschur_matrix;
typedef struct opschur_hvector opschur_hvector;
typedef struct opschur_symbol opschur_symbol;
typedef struct opschur_profile opschur_profile;
typedef struct opschur_report opschur_report;

typedef struct {
  double value;
  int kind;         /* opschur_norm_kind */
  long iterations;
  double residual;
  char method[48];
} opschur_norm_result;

/* ---- library ---------------------------------------------------------- */

const char* opschur_version(void);
const char* opschur_status_name(opschur_status status);
/* Message for the most recent failure on this thread; empty if none. */
const char* opschur_last_error(void);

/* ---- spec files ------------------------------------------------------- */

opschur_status opschur_spec_load_file(const char* path, opschur_spec** out);
opschur_status opschur_spec_parse(const char* text, opschur_spec** out);
void opschur_spec_free(opschur_spec* spec);
opschur_status opschur_spec_get_kind(const opschur_spec* spec, int* kind_out);
opschur_status opschur_spec_get_dim(const opschur_spec* spec, int* dim_out);
/* Stored N; 0 when the file carries none. */
opschur_status opschur_spec_get_size_hint(const opschur_spec* spec, int* size_out);
/* Realizes the spec as an N x N block matrix. size 0 uses the stored N
 * (mandatory for non-matrix kinds without a hint). For matrices, a smaller
 * size takes the leading corner. */
opschur_status opschur_spec_realize(const opschur_spec* spec, int size,
                                    opschur_matrix** out);
/* Same with an explicit entry dimension: kernels realize at that d, other
 * kinds accept it only when it matches their stored d. dim 0 keeps the
 * stored value. */
opschur_status opschur_spec_realize_dim(const opschur_spec* spec, int size,
                                        int dim, opschur_matrix** out);
/* Symbol polynomial view of a symbol/toeplitz spec, or of a kernel with
 * finite support. */
opschur_status opschur_spec_symbol(const opschur_spec* spec, opschur_symbol** out);
/* Fast Toeplitz matvec straight from the coefficients (toeplitz or symbol
 * specs); x supplies the truncation size. */
opschur_status opschur_spec_apply_fast(const opschur_spec* spec,
                                       const opschur_hvector* x,
                                       opschur_hvector** out);

/* ---- matrices --------------------------------------------------------- */

opschur_status opschur_matrix_create(int dim, int size,
                                     const double* interleaved /* may be NULL */,
                                     opschur_matrix** out);
opschur_status opschur_matrix_identity(int dim, int size, opschur_matrix** out);
opschur_status opschur_matrix_schur_unit(int dim, int size, opschur_matrix** out);
opschur_status opschur_matrix_kernel(int kernel_kind, double parameter, int size,
                                     int dim, opschur_matrix** out);
void opschur_matrix_free(opschur_matrix* m);
opschur_status opschur_matrix_clone(const opschur_matrix* m, opschur_matrix** out);
opschur_status opschur_matrix_get_dim(const opschur_matrix* m, int* out);
opschur_status opschur_matrix_get_size(const opschur_matrix* m, int* out);
opschur_status opschur_matrix_get_structure(const opschur_matrix* m, int* out);
/* 2*d*d doubles, row-major interleaved. */
opschur_status opschur_matrix_get_block(const opschur_matrix* m, int k, int j,
                                        double* interleaved_out);
/* Construction-phase mutation; do not call on matrices already shared
 * across threads. */
opschur_status opschur_matrix_set_block(opschur_matrix* m, int k, int j,
                                        const double* interleaved);
opschur_status opschur_matrix_equal(const opschur_matrix* a, const opschur_matrix* b,
                                    int* equal_out);
opschur_status opschur_matrix_sup_entry_norm(const opschur_matrix* m, double* out);
opschur_status opschur_matrix_write_file(const opschur_matrix* m, const char* path);

opschur_status opschur_schur_product(const opschur_matrix* a, const opschur_matrix* b,
                                     opschur_matrix** out);
opschur_status opschur_matrix_add(const opschur_matrix* a, const opschur_matrix* b,
                                  opschur_matrix** out);
opschur_status opschur_matrix_subtract(const opschur_matrix* a,
                                       const opschur_matrix* b, opschur_matrix** out);
opschur_status opschur_adjoint(const opschur_matrix* a, opschur_matrix** out);
opschur_status opschur_modulate(const opschur_matrix* a, double t,
                                opschur_matrix** out);
opschur_status opschur_extract_diagonal(const opschur_matrix* a, int l,
                                        opschur_matrix** out);
opschur_status opschur_extract_row(const opschur_matrix* a, int k,
                                   opschur_matrix** out);
opschur_status opschur_extract_column(const opschur_matrix* a, int j,
                                      opschur_matrix** out);
opschur_status opschur_smooth_fejer(const opschur_matrix* a, int order,
                                    opschur_matrix** out);
opschur_status opschur_smooth_poisson(const opschur_matrix* a, double radius,
                                      opschur_matrix** out);

/* ---- H-valued sequences ----------------------------------------------- */

opschur_status opschur_hvector_create(int dim, int len,
                                      const double* interleaved /* may be NULL */,
                                      opschur_hvector** out);
/* x (2*dim doubles) placed at 1-based coordinate j of a length-N zero
 * sequence. */
opschur_status opschur_hvector_basis(const double* x, int dim, int j, int len,
                                     opschur_hvector** out);
void opschur_hvector_free(opschur_hvector* v);
opschur_status opschur_hvector_get_dim(const opschur_hvector* v, int* out);
opschur_status opschur_hvector_get_len(const opschur_hvector* v, int* out);
opschur_status opschur_hvector_get_data(const opschur_hvector* v,
                                        double* interleaved_out /* 2*dim*len */);
opschur_status opschur_hvector_norm(const opschur_hvector* v, double* out);
opschur_status opschur_apply(const opschur_matrix* a, const opschur_hvector* x,
                             opschur_hvector** out);
opschur_status opschur_rank_one_matrix(const opschur_hvector* x,
                                       const opschur_hvector* y, opschur_matrix** out);

/* ---- norms ------------------------------------------------------------ */

opschur_status opschur_operator_norm_dense(const opschur_matrix* a, int cap,
                                           opschur_norm_result* out);
opschur_status opschur_operator_norm_iterative(const opschur_matrix* a, double tol,
                                               long max_iter, uint64_t seed,
                                               opschur_norm_result* out);
/* Probe counts < 0 select the defaults (8 each). */
opschur_status opschur_multiplier_lower_bound(const opschur_matrix* a, int side,
                                              int dirac_probes, int gaussian_probes,
                                              int rank_one_probes, uint64_t seed,
                                              opschur_norm_result* out);
opschur_status opschur_multiplier_upper_bound(const opschur_matrix* a,
                                              opschur_norm_result* out);

void opschur_symbol_free(opschur_symbol* s);
opschur_status opschur_symbol_get_dim(const opschur_symbol* s, int* out);
opschur_status opschur_symbol_get_degree(const opschur_symbol* s, int* out);
opschur_status opschur_symbol_sup_norm(const opschur_symbol* s, int grid, double* out);
opschur_status opschur_symbol_l1_norm(const opschur_symbol* s, int grid, double* out);
opschur_status opschur_l1_sot_norm(const opschur_symbol* s, int grid, uint64_t seed,
                                   opschur_norm_result* out);

/* ---- experiments ------------------------------------------------------ */

opschur_status opschur_profile_fejer(const opschur_matrix* a, const int* orders,
                                     int n_orders, int metric, uint64_t seed,
                                     opschur_profile** out);
opschur_status opschur_profile_poisson(const opschur_matrix* a, const double* radii,
                                       int n_radii, int metric, uint64_t seed,
                                       opschur_profile** out);
opschur_status opschur_profile_riemann_lebesgue(const opschur_matrix* a,
                                                opschur_profile** out);
opschur_status opschur_profile_modulation_continuity(const opschur_matrix* a,
                                                     const double* deltas,
                                                     int n_deltas, int metric,
                                                     uint64_t seed,
                                                     opschur_profile** out);
void opschur_profile_free(opschur_profile* p);
opschur_status opschur_profile_get_length(const opschur_profile* p, int* out);
opschur_status opschur_profile_get_parameter(const opschur_profile* p, int i,
                                             double* out);
opschur_status opschur_profile_get_value(const opschur_profile* p, int i, double* out);
/* Lower-bound series; OPSCHUR_ERROR_UNSUPPORTED unless the profile was run in
 * multiplier mode. */
opschur_status opschur_profile_get_lower_value(const opschur_profile* p, int i,
                                               double* out);
opschur_status opschur_profile_has_lower_series(const opschur_profile* p, int* out);
const char* opschur_profile_metric_name(const opschur_profile* p);
opschur_status opschur_profile_get_verdict(const opschur_profile* p, int* out);

opschur_status opschur_l1_membership_verdict(const opschur_matrix* a,
                                             const int* orders, int n_orders,
                                             double threshold, uint64_t seed,
                                             int* verdict_out);
const char* opschur_verdict_name(int verdict);

/* Diagonal power series of an upper-triangular matrix at z, |z| < 1. */
opschur_status opschur_disc_extension(const opschur_matrix* a, double z_re,
                                      double z_im, opschur_matrix** out);
/* Coefficient series of an upper-band toeplitz/symbol spec at z, |z| <= 1;
 * writes one d x d block (2*d*d doubles). */
opschur_status opschur_disc_symbol_value(const opschur_spec* spec, double z_re,
                                         double z_im, double* interleaved_out);
opschur_status opschur_h_infinity_norm(const opschur_spec* spec, int grid,
                                       double* out);
opschur_status opschur_h1_norm(const opschur_spec* spec, const double* radii,
                               int n_radii, int grid, double* out);

/* ---- corpus and verification ------------------------------------------ */

/* Writes the built-in corpus spec files into dir; *count_out files. */
opschur_status opschur_corpus_write(const char* dir, int* count_out);
/* Runs the invariant suites over the built-in corpus (corpus_dir NULL) or
 * over the .spec files in corpus_dir. */
opschur_status opschur_verify_run(const char* corpus_dir, int inject_fault,
                                  uint64_t seed, opschur_report** out);
void opschur_report_free(opschur_report* r);
opschur_status opschur_report_get_count(const opschur_report* r, int* out);
const char* opschur_report_get_name(const opschur_report* r, int i);
opschur_status opschur_report_get_pass(const opschur_report* r, int i, int* out);
opschur_status opschur_report_get_slack(const opschur_report* r, int i, double* out);
const char* opschur_report_get_detail(const opschur_report* r, int i);

#ifdef __cplusplus
}
#endif

#endif /* OPSCHUR_H */
