#ifndef GAMMA_FOURIER_H
#define GAMMA_FOURIER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which Bernoulli partition formula [`gf_bernoulli`] uses.
 */
typedef enum GfBernoulliVariant {
  /**
   * Index m yields B_{m+1}.
   */
  GF_BERNOULLI_VARIANT_SHIFTED = 0,
  /**
   * Index m yields B_m.
   */
  GF_BERNOULLI_VARIANT_DIRECT = 1,
} GfBernoulliVariant;

/**
 * Result code of every fallible call.
 */
typedef enum GfStatus {
  GF_STATUS_OK = 0,
  GF_STATUS_NULL_POINTER = 1,
  GF_STATUS_DOMAIN = 2,
  GF_STATUS_POLE = 3,
  GF_STATUS_DIVERGENT = 4,
  GF_STATUS_OVERFLOW = 5,
  GF_STATUS_RESOURCE = 6,
  GF_STATUS_INCONSISTENT = 7,
  GF_STATUS_NON_CONVERGENCE = 8,
  GF_STATUS_INVALID_STRING = 9,
  GF_STATUS_OUT_OF_RANGE = 10,
  GF_STATUS_PANIC = 11,
} GfStatus;

/**
 * Opaque list of the partitions of one integer.
 */
typedef struct GfPartitionSet GfPartitionSet;

/**
 * Double-precision complex number.
 */
typedef struct GfComplex {
  double re;
  double im;
} GfComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or null. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *gf_last_error(void);

/**
 * Static description of a status code.
 */
const char *gf_status_name(enum GfStatus status);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer previously returned by this library and not
 * yet freed.
 */
void gf_string_free(char *s);

/**
 * F_m(λ) for α, β > 0.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GfStatus gf_transform(double alpha,
                           double beta,
                           uint32_t m,
                           double lambda,
                           struct GfComplex *out);

/**
 * The α → 0 limit of F_m(λ) at β > 0.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GfStatus gf_transform_alpha_zero(double beta,
                                      uint32_t m,
                                      double lambda,
                                      struct GfComplex *out);

/**
 * The α, β → 0 limit of F_m(λ), m ≥ 1.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GfStatus gf_transform_zero_zero(uint32_t m, double lambda, struct GfComplex *out);

/**
 * F_m(λ) by adaptive quadrature of its defining integral. `error` may be
 * null; otherwise it receives the estimated absolute error.
 *
 * # Safety
 * `out` must be valid for writes; `error` must be null or valid for writes.
 */
enum GfStatus gf_transform_quadrature(double alpha,
                                      double beta,
                                      uint32_t m,
                                      double lambda,
                                      double rel_tol,
                                      struct GfComplex *out,
                                      double *error);

/**
 * Γ(z) for complex z.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GfStatus gf_complex_gamma(struct GfComplex z, struct GfComplex *out);

/**
 * K_ν(x) for complex order ν and x > 0.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GfStatus gf_bessel_k(struct GfComplex nu, double x, struct GfComplex *out);

/**
 * ⟨μ^q⟩ for q ∈ {1, 2}.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GfStatus gf_expectation_mu(uint32_t q, uint32_t n, double l, double *out);

/**
 * ⟨π⟩, which is purely imaginary.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GfStatus gf_expectation_pi(uint32_t n, double l, struct GfComplex *out);

/**
 * ⟨π²⟩.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GfStatus gf_expectation_pi2(uint32_t n, double l, double *out);

/**
 * Δμ·Δπ.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GfStatus gf_uncertainty_product(uint32_t n, double l, double *out);

/**
 * Wigner function W(x, p) of the state (n, l) at inverse width a.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GfStatus gf_wigner(uint32_t n, double l, double a, double x, double p, double *out);

/**
 * Bernoulli number as an exact rational string.
 *
 * # Safety
 * `out` must be valid for writes; free the result with [`gf_string_free`].
 */
enum GfStatus gf_bernoulli(uint32_t m, enum GfBernoulliVariant variant, char **out);

/**
 * Euler number E_m as an exact integer string.
 *
 * # Safety
 * `out` must be valid for writes; free the result with [`gf_string_free`].
 */
enum GfStatus gf_euler_number(uint32_t m, char **out);

/**
 * Euler polynomial E_m(β) for a rational `beta` written "n/d" in (0, 1).
 *
 * # Safety
 * `beta` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum GfStatus gf_euler_polynomial(uint32_t m, const char *beta, char **out);

/**
 * Residue of Γ at -m.
 *
 * # Safety
 * `out` must be valid for writes; free the result with [`gf_string_free`].
 */
enum GfStatus gf_gamma_residue(uint32_t m, char **out);

/**
 * Enumerates the partitions of m into a new set.
 *
 * # Safety
 * `out` must be valid for writes; release the set with
 * [`gf_partitions_free`].
 */
enum GfStatus gf_partitions_new(uint32_t m, struct GfPartitionSet **out);

/**
 * Number of partitions in the set, or 0 for null.
 *
 * # Safety
 * `set` must be null or a live set.
 */
size_t gf_partitions_len(const struct GfPartitionSet *set);

/**
 * Copies the multiplicities (i_1, ..., i_m) of one partition into `buf`,
 * which must hold at least m entries, and writes the part count to `parts`.
 *
 * # Safety
 * `set` must be a live set; `buf` must be valid for `capacity` writes;
 * `parts` must be null or valid for writes.
 */
enum GfStatus gf_partitions_get(const struct GfPartitionSet *set,
                                size_t index,
                                uint32_t *buf,
                                size_t capacity,
                                uint32_t *parts);

/**
 * Faà di Bruno weight 1/∏ i_ν! (ν!)^{i_ν} of one partition as a string.
 *
 * # Safety
 * `set` must be a live set; `out` must be valid for writes.
 */
enum GfStatus gf_partitions_weight(const struct GfPartitionSet *set, size_t index, char **out);

/**
 * Releases a partition set. Null is ignored.
 *
 * # Safety
 * `set` must be null or a set from [`gf_partitions_new`] not yet freed.
 */
void gf_partitions_free(struct GfPartitionSet *set);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAMMA_FOURIER_H */
