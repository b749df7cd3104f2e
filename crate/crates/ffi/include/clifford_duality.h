#ifndef CLIFFORD_DUALITY_H
#define CLIFFORD_DUALITY_H

/* Generated by cbindgen from crates/ffi/src; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call. `CD_STATUS_OK` is zero.
typedef enum CdStatus {
  CD_STATUS_OK = 0,
  CD_STATUS_NULL_POINTER = 1,
  CD_STATUS_INVALID_UTF8 = 2,
  CD_STATUS_INVALID_ARGUMENT = 3,
  CD_STATUS_DIMENSION_MISMATCH = 4,
  CD_STATUS_DIMENSION_TOO_LARGE = 5,
  CD_STATUS_ZERO_DIMENSION = 6,
  CD_STATUS_INVALID_BLADE = 7,
  CD_STATUS_NON_UNIT_VECTOR = 8,
  CD_STATUS_LINEARLY_DEPENDENT = 9,
  CD_STATUS_INVALID_CHAIN = 10,
  CD_STATUS_PARSE = 11,
  CD_STATUS_PANIC = 12,
} CdStatus;

// Element of the complex Clifford algebra over R^n.
typedef struct CdMultivector CdMultivector;

// Linearly independent basis of a subalgebra.
typedef struct CdSubalgebra CdSubalgebra;

// Subspace of R^n held by an orthonormal basis.
typedef struct CdSubspace CdSubspace;

// A complex number laid out as two doubles.
typedef struct CdComplex {
  double re;
  double im;
} CdComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null after a
// successful one. The pointer stays valid until the next library call on
// this thread.
const char *cd_last_error_message(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void cd_string_free(char *s);

// Parses text such as `"1 + 2*e1*e3 - (0,1)*e2"` in dimension `dim`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum CdStatus cd_multivector_parse(const char *text, size_t dim, struct CdMultivector **out);

// Builds a multivector from `len == 2^dim` coefficients indexed by blade
// bitmask (bit `i-1` set means `e_i` is present).
//
// # Safety
// `coeffs` must point to `len` readable values; `out` must be writable.
enum CdStatus cd_multivector_from_dense(size_t dim,
                                        const struct CdComplex *coeffs,
                                        size_t len,
                                        struct CdMultivector **out);

// Writes the canonical text form, e.g. `"1 + e3"`. Free it with
// [`cd_string_free`].
//
// # Safety
// `mv` must be a live handle; `out` must be writable.
enum CdStatus cd_multivector_format(const struct CdMultivector *mv, char **out);

// # Safety
// `mv` must be a live handle; `out` must be writable.
enum CdStatus cd_multivector_clone(const struct CdMultivector *mv, struct CdMultivector **out);

// Releases a multivector handle. Null is ignored.
//
// # Safety
// `mv` must come from this library and not have been freed already.
void cd_multivector_free(struct CdMultivector *mv);

// Ambient dimension `n`, or 0 for a null handle.
//
// # Safety
// `mv` must be null or a live handle.
size_t cd_multivector_dim(const struct CdMultivector *mv);

// Coefficient of the blade with bitmask `mask`.
//
// # Safety
// `mv` must be a live handle; `out` must be writable.
enum CdStatus cd_multivector_coeff(const struct CdMultivector *mv,
                                   uint32_t mask,
                                   struct CdComplex *out);

// Clifford product `a b`.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum CdStatus cd_multivector_mul(const struct CdMultivector *a,
                                 const struct CdMultivector *b,
                                 struct CdMultivector **out);

// Sum `a + b`.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum CdStatus cd_multivector_add(const struct CdMultivector *a,
                                 const struct CdMultivector *b,
                                 struct CdMultivector **out);

// Complex multiple `lambda * mv`.
//
// # Safety
// `mv` must be a live handle; `out` must be writable.
enum CdStatus cd_multivector_scale(const struct CdMultivector *mv,
                                   struct CdComplex lambda,
                                   struct CdMultivector **out);

// Grading automorphism: negates the odd-grade part.
//
// # Safety
// `mv` must be a live handle; `out` must be writable.
enum CdStatus cd_multivector_gamma(const struct CdMultivector *mv, struct CdMultivector **out);

// Star involution: conjugate-linear antiautomorphism fixing real vectors.
//
// # Safety
// `mv` must be a live handle; `out` must be writable.
enum CdStatus cd_multivector_star(const struct CdMultivector *mv, struct CdMultivector **out);

// C* norm.
//
// # Safety
// `mv` must be a live handle; `out` must be writable.
enum CdStatus cd_multivector_norm(const struct CdMultivector *mv, double *out);

// Whether `mv` is positive up to `eps`.
//
// # Safety
// `mv` must be a live handle; `out` must be writable.
enum CdStatus cd_multivector_is_positive(const struct CdMultivector *mv, double eps, bool *out);

// Span of `count` vectors of length `ambient`, stored row after row in
// `vectors`. Dependent vectors are dropped.
//
// # Safety
// `vectors` must point to `count * ambient` readable doubles; `out` must
// be writable.
enum CdStatus cd_subspace_from_spanning(size_t ambient,
                                        const double *vectors,
                                        size_t count,
                                        struct CdSubspace **out);

// Releases a subspace handle. Null is ignored.
//
// # Safety
// `z` must come from this library and not have been freed already.
void cd_subspace_free(struct CdSubspace *z);

// Dimension of the subspace, or 0 for a null handle.
//
// # Safety
// `z` must be null or a live handle.
size_t cd_subspace_dim(const struct CdSubspace *z);

// Dimension of the ambient space, or 0 for a null handle.
//
// # Safety
// `z` must be null or a live handle.
size_t cd_subspace_ambient_dim(const struct CdSubspace *z);

// Copies the orthonormal basis, row after row, into `buf`, which must hold
// `dim * ambient_dim` doubles.
//
// # Safety
// `z` must be a live handle; `buf` must point to `len` writable doubles.
enum CdStatus cd_subspace_basis(const struct CdSubspace *z, double *buf, size_t len);

// Orthogonal complement in the ambient space.
//
// # Safety
// `z` must be a live handle; `out` must be writable.
enum CdStatus cd_subspace_orthocomplement(const struct CdSubspace *z, struct CdSubspace **out);

// Intersection of `count` subspaces of R^`ambient`; the whole space when
// `count` is 0.
//
// # Safety
// `members` must point to `count` live handles; `out` must be writable.
enum CdStatus cd_subspace_intersect(size_t ambient,
                                    const struct CdSubspace *const *members,
                                    size_t count,
                                    struct CdSubspace **out);

// Closed linear span of `count` subspaces; zero when `count` is 0.
//
// # Safety
// `members` must point to `count` live handles; `out` must be writable.
enum CdStatus cd_subspace_sum(size_t ambient,
                              const struct CdSubspace *const *members,
                              size_t count,
                              struct CdSubspace **out);

// Conditional expectation `E_Z(c)`.
//
// # Safety
// `z`, `c` must be live handles; `out` must be writable.
enum CdStatus cd_expect_subspace(const struct CdSubspace *z,
                                 const struct CdMultivector *c,
                                 struct CdMultivector **out);

// Basis of the supercommutant of `C(Z)`.
//
// # Safety
// `z` must be a live handle; `out` must be writable.
enum CdStatus cd_supercommutant(const struct CdSubspace *z, struct CdSubalgebra **out);

// Number of basis elements, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
size_t cd_subalgebra_len(const struct CdSubalgebra *s);

// Copy of basis element `index` as a new multivector handle.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum CdStatus cd_subalgebra_element(const struct CdSubalgebra *s,
                                    size_t index,
                                    struct CdMultivector **out);

// Releases a subalgebra handle. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void cd_subalgebra_free(struct CdSubalgebra *s);

// Runs a verification suite (`"all"`, `"algebra"`, `"duality"`, ...) and
// writes the report as JSON. `passed` receives whether every property
// held. Property failures are not errors: the call still returns
// `CD_STATUS_OK`.
//
// # Safety
// `suite` must be a NUL-terminated string; `json_out` and `passed` must be
// writable.
enum CdStatus cd_verify(const char *suite,
                        size_t dim,
                        size_t trials,
                        uint64_t seed,
                        char **json_out,
                        bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLIFFORD_DUALITY_H */
