#ifndef QUDIT_LGT_H
#define QUDIT_LGT_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum QlBoundary {
  QL_BOUNDARY_PERIODIC = 0,
  QL_BOUNDARY_OPEN = 1,
} QlBoundary;

typedef enum QlEncoding {
  QL_ENCODING_PROJECTOR = 0,
  QL_ENCODING_COMPACT = 1,
} QlEncoding;

typedef enum QlForm {
  QL_FORM_BOSONIC = 0,
  QL_FORM_LOGICAL = 1,
} QlForm;

typedef enum QlPauliKind {
  QL_PAULI_KIND_X = 0,
  QL_PAULI_KIND_Z = 1,
  QL_PAULI_KIND_FULL = 2,
} QlPauliKind;

/**
 * Result of every call.
 */
typedef enum QlStatus {
  QL_STATUS_OK = 0,
  QL_STATUS_NULL_POINTER = 1,
  QL_STATUS_INVALID_ARGUMENT = 2,
  QL_STATUS_CAPACITY = 3,
  QL_STATUS_GAUGE_VARIANT = 4,
  QL_STATUS_IO = 5,
  QL_STATUS_BUFFER_TOO_SMALL = 6,
  QL_STATUS_INTERNAL = 7,
  QL_STATUS_PANIC = 8,
} QlStatus;

/**
 * Gauss-law code on a lattice.
 */
typedef struct QlCode QlCode;

/**
 * Dense complex matrix, row-major on export.
 */
typedef struct QlMatrix QlMatrix;

typedef struct QlCouplings {
  double m;
  double eps;
  double lambda_e;
  double lambda_p;
  enum QlEncoding encoding;
} QlCouplings;

typedef struct QlDualityResult {
  double max_matrix_diff;
  /**
   * NaN when the spectral comparison was skipped.
   */
  double max_spectrum_diff;
  int64_t physical_dim;
  uint64_t logical_dim;
  uint64_t gauge_violations;
  bool pass;
} QlDualityResult;

typedef struct QlNogoResult {
  uint64_t total;
  uint64_t txt_clifford;
  uint64_t t_clifford;
  uint64_t consistent;
  uint64_t sum_rule_consistent;
  bool congruent_implies_clifford;
} QlNogoResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error of this thread into `buf` (NUL-terminated).
 *
 * # Safety
 * `buf` must be valid for `len` bytes or null; `needed` must be valid or null.
 */
enum QlStatus ql_last_error(char *buf, size_t len, size_t *needed);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ql_version(void);

/**
 * Builds the Gauss-law code of a `dims`-dimensional lattice.
 *
 * # Safety
 * `extent` must point to `n_extent` values; `out_code` must be valid.
 */
enum QlStatus ql_code_build(size_t dims,
                            const size_t *extent,
                            size_t n_extent,
                            uint32_t levels,
                            enum QlBoundary boundary,
                            struct QlCode **out_code);

/**
 * # Safety
 * `code` must come from [`ql_code_build`] and not be used afterwards.
 */
void ql_code_free(struct QlCode *code);

/**
 * Physical qudits `n` and logical qudits `k`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum QlStatus ql_code_params(const struct QlCode *code, size_t *n, size_t *k);

/**
 * Smallest weight `<= max_weight` of a nontrivial logical of `kind`, or -1.
 *
 * # Safety
 * All pointers must be valid.
 */
enum QlStatus ql_code_distance(const struct QlCode *code,
                               enum QlPauliKind kind,
                               size_t max_weight,
                               uint64_t budget,
                               int64_t *distance);

/**
 * Writes the code in the JSON code-file format.
 *
 * # Safety
 * `code` must be valid and `path` a NUL-terminated string.
 */
enum QlStatus ql_code_write_json(const struct QlCode *code, const char *path_);

/**
 * Dense dual (`QlForm::Bosonic`) or rewritten logical Hamiltonian of `code`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum QlStatus ql_hamiltonian_build(const struct QlCode *code,
                                   const struct QlCouplings *couplings,
                                   enum QlForm form,
                                   struct QlMatrix **out_matrix);

/**
 * # Safety
 * `m` must come from this library and not be used afterwards.
 */
void ql_matrix_free(struct QlMatrix *m);

/**
 * # Safety
 * All pointers must be valid.
 */
enum QlStatus ql_matrix_dim(const struct QlMatrix *m, size_t *dim);

/**
 * Copies entries row-major as interleaved `(re, im)` pairs; `len` counts doubles.
 *
 * # Safety
 * `data` must be valid for `len` doubles.
 */
enum QlStatus ql_matrix_copy(const struct QlMatrix *m, double *data, size_t len);

/**
 * Writes the matrix in the binary matrix format.
 *
 * # Safety
 * `m` must be valid and `path` a NUL-terminated string.
 */
enum QlStatus ql_matrix_write(const struct QlMatrix *m, const char *path_);

/**
 * Compares the physical, logical and bosonic pictures with default tolerances.
 *
 * # Safety
 * `extent` must point to `n_extent` values; the other pointers must be valid.
 */
enum QlStatus ql_duality_check(size_t dims,
                               const size_t *extent,
                               size_t n_extent,
                               uint32_t levels,
                               const struct QlCouplings *couplings,
                               struct QlDualityResult *result);

/**
 * Exhaustive scan of the qutrit diagonal gates with ninth-root phases.
 *
 * # Safety
 * `result` must be valid.
 */
enum QlStatus ql_nogo_qutrit(struct QlNogoResult *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUDIT_LGT_H */
