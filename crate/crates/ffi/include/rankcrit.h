#ifndef RANKCRIT_H
#define RANKCRIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RcStatus {
  RC_STATUS_OK = 0,
  RC_STATUS_INVALID_ARGUMENT = 1,
  RC_STATUS_BUDGET_EXCEEDED = 2,
  RC_STATUS_FIELD_MISMATCH = 3,
  RC_STATUS_FIELD_TOO_LARGE = 4,
  RC_STATUS_PRECONDITION = 5,
  RC_STATUS_NULL_POINTER = 6,
  /**
   * A verification ran and at least one check failed.
   */
  RC_STATUS_VERIFY_FAILED = 7,
  RC_STATUS_PANIC = 8,
} RcStatus;

typedef enum RcFieldOp {
  RC_FIELD_OP_ADD = 0,
  RC_FIELD_OP_SUB = 1,
  RC_FIELD_OP_MUL = 2,
  RC_FIELD_OP_DIV = 3,
} RcFieldOp;

typedef enum RcKind {
  RC_KIND_FULL = 0,
  RC_KIND_SYMMETRIC = 1,
  RC_KIND_ALTERNATING = 2,
  RC_KIND_HERMITIAN = 3,
} RcKind;

/**
 * A finite field F_{q^n}, or F_q when n = 1.
 */
typedef struct RcField RcField;

/**
 * An exact rational number.
 */
typedef struct RcRational RcRational;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. Valid until the next call.
 */
const char *rc_last_error(void);

/**
 * Creates F_{q^n}. `q` must be a prime power.
 */
enum RcStatus rc_field_new(uint64_t q, uint32_t n, struct RcField **field);

void rc_field_free(struct RcField *field);

/**
 * Number of elements; 0 for a null handle.
 */
uint64_t rc_field_order(const struct RcField *field);

/**
 * Elements are indices 0..order, with 0 and 1 the field's zero and one.
 */
enum RcStatus rc_field_op(const struct RcField *field,
                          enum RcFieldOp op,
                          uint32_t a,
                          uint32_t b,
                          uint32_t *result);

/**
 * a^{q^i} over the base field.
 */
enum RcStatus rc_field_frobenius(const struct RcField *field,
                                 uint32_t a,
                                 uint32_t i,
                                 uint32_t *result);

/**
 * Norm and trace down to the base field.
 */
enum RcStatus rc_field_norm_trace(const struct RcField *field,
                                  uint32_t a,
                                  uint32_t *norm,
                                  uint32_t *trace);

void rc_rational_free(struct RcRational *r);

/**
 * Nearest double; NaN for a null handle.
 */
double rc_rational_to_f64(const struct RcRational *r);

/**
 * "num/den", or just "num" for integers. Free with `rc_string_free`.
 */
char *rc_rational_to_string(const struct RcRational *r);

void rc_string_free(char *s);

/**
 * Gaussian binomial [i j]_q.
 */
enum RcStatus rc_qbinom(int64_t i, int64_t j, uint64_t q, struct RcRational **result);

/**
 * Density of full-rank MRD codes in F_q^{3x3}.
 */
enum RcStatus rc_density_3x3(uint64_t q, struct RcRational **result);

/**
 * Lower bound on the number of full-rank MRD codes in F_q^{n x n}.
 */
enum RcStatus rc_mrd_lowerbound_count(uint64_t n, uint64_t q, struct RcRational **result);

/**
 * Average density over point sets of size `ell` in F_q^N.
 */
enum RcStatus rc_avg_density(uint64_t ambient_dim,
                             uint64_t k,
                             uint64_t ell,
                             uint64_t q,
                             struct RcRational **result);

/**
 * Average density over point sets of size `ell` and rank `rho`.
 */
enum RcStatus rc_avg_density_rank(uint64_t ambient_dim,
                                  uint64_t k,
                                  uint64_t ell,
                                  uint64_t rho,
                                  uint64_t q,
                                  struct RcRational **result);

enum RcStatus rc_lambda(uint64_t ambient_dim,
                        uint64_t s,
                        uint64_t ell,
                        uint64_t rho,
                        uint64_t q,
                        struct RcRational **result);

/**
 * Matrices of rank i in the n x n space of the given kind.
 */
enum RcStatus rc_rank_count(enum RcKind kind,
                            uint64_t n,
                            uint64_t i,
                            uint64_t q,
                            struct RcRational **result);

enum RcStatus rc_tensor_ratio(uint64_t r, uint64_t n, uint64_t q, struct RcRational **result);

/**
 * Exhaustive density of k-dimensional codes with minimum rank distance
 * `d` in the n x m space of the given kind (restricted kinds need m = n).
 * `budget` = 0 uses the default step budget.
 */
enum RcStatus rc_density_bruteforce(enum RcKind kind,
                                    uint32_t n,
                                    uint32_t m,
                                    uint32_t k,
                                    uint32_t d,
                                    uint64_t q,
                                    uint64_t budget,
                                    struct RcRational **result);

/**
 * Runs a verification suite ("hejar", "mrd192", "lambda", "carlitz",
 * "tensor", "cw-bridge" or "all") and stores the JSON report in `report`,
 * to be released with `rc_string_free`. Returns `VerifyFailed` when a
 * check failed; the report is written either way.
 */
enum RcStatus rc_verify(const char *suite, uint64_t budget, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RANKCRIT_H */
