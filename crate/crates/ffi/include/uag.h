#ifndef UAG_H
#define UAG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum UagStatus {
  UAG_STATUS_OK = 0,
  UAG_STATUS_NULL_ARGUMENT = 1,
  UAG_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed algebra, system or parameter.
   */
  UAG_STATUS_INVALID_INPUT = 3,
  /**
   * A tuple, element or table cap was hit; the answer is unknown.
   */
  UAG_STATUS_RESOURCE_LIMIT = 4,
  /**
   * The caller's buffer is shorter than required.
   */
  UAG_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * An internal panic was caught at the boundary.
   */
  UAG_STATUS_INTERNAL = 6,
} UagStatus;

/**
 * A finite algebra.
 */
typedef struct UagAlgebra UagAlgebra;

/**
 * A solution set together with its algebra.
 */
typedef struct UagSolutionSet UagSolutionSet;

/**
 * A system of equations in the language of some algebra.
 */
typedef struct UagSystem UagSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *uag_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *uag_version(void);

/**
 * Loads an algebra from a file path or a builtin such as `@Ln(2)`,
 * `@Zn(4)`, `@RBnm(2,2)`, `@Zn_ring1(2)`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum UagStatus uag_algebra_load(const char *spec, struct UagAlgebra **out);

/**
 * Parses an algebra from the text of an algebra file.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` a valid pointer.
 */
enum UagStatus uag_algebra_parse(const char *source, struct UagAlgebra **out);

/**
 * Carrier size, or 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
size_t uag_algebra_size(const struct UagAlgebra *alg);

/**
 * # Safety
 * `alg` must be null or a handle not yet freed.
 */
void uag_algebra_free(struct UagAlgebra *alg);

/**
 * Parses a system (`vars:` and `eq:` lines) in the language of `alg`.
 *
 * # Safety
 * Pointers must be valid; `source` NUL-terminated.
 */
enum UagStatus uag_system_parse(const struct UagAlgebra *alg,
                                const char *source,
                                struct UagSystem **out);

/**
 * Number of declared variables, or 0 for a null handle.
 *
 * # Safety
 * `sys` must be null or a live handle.
 */
size_t uag_system_variable_count(const struct UagSystem *sys);

/**
 * # Safety
 * `sys` must be null or a handle not yet freed.
 */
void uag_system_free(struct UagSystem *sys);

/**
 * Solution set of `sys` over `alg`. A `tuple_cap` of 0 selects the default.
 *
 * # Safety
 * Pointers must be valid.
 */
enum UagStatus uag_solve(const struct UagAlgebra *alg,
                         const struct UagSystem *sys,
                         uint64_t tuple_cap,
                         struct UagSolutionSet **out);

/**
 * Builds a point set from `count` points of dimension `dim`.
 *
 * # Safety
 * `points` must hold `count * dim` elements (it may be null when that is 0).
 */
enum UagStatus uag_set_from_points(const struct UagAlgebra *alg,
                                   const uint32_t *points,
                                   size_t count,
                                   size_t dim,
                                   struct UagSolutionSet **out);

/**
 * Number of points, or 0 for a null handle.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t uag_set_len(const struct UagSolutionSet *set);

/**
 * Dimension, or 0 for a null handle.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t uag_set_dimension(const struct UagSolutionSet *set);

/**
 * Copies the points, sorted lexicographically, into `buf` (row-major).
 * `buf_len` counts elements and must be at least `len * dimension`.
 *
 * # Safety
 * `buf` must be writable for `buf_len` elements.
 */
enum UagStatus uag_set_points(const struct UagSolutionSet *set, uint32_t *buf, size_t buf_len);

/**
 * Whether the set is algebraic over its algebra.
 *
 * # Safety
 * Pointers must be valid.
 */
enum UagStatus uag_set_is_algebraic(const struct UagSolutionSet *set,
                                    uint64_t tuple_cap,
                                    bool *out);

/**
 * Whether the set is irreducible. The set must be nonempty.
 *
 * # Safety
 * Pointers must be valid.
 */
enum UagStatus uag_set_is_irreducible(const struct UagSolutionSet *set,
                                      uint64_t tuple_cap,
                                      bool *out);

/**
 * Number of irreducible components.
 *
 * # Safety
 * Pointers must be valid.
 */
enum UagStatus uag_set_component_count(const struct UagSolutionSet *set,
                                       uint64_t tuple_cap,
                                       size_t *out);

/**
 * Size of the coordinate algebra of the set.
 *
 * # Safety
 * Pointers must be valid.
 */
enum UagStatus uag_set_coordinate_size(const struct UagSolutionSet *set,
                                       uint64_t tuple_cap,
                                       size_t *out);

/**
 * # Safety
 * `set` must be null or a handle not yet freed.
 */
void uag_set_free(struct UagSolutionSet *set);

/**
 * Whether finite unions of algebraic sets over `alg` are algebraic.
 *
 * # Safety
 * Pointers must be valid.
 */
enum UagStatus uag_is_equational_domain(const struct UagAlgebra *alg,
                                        uint64_t tuple_cap,
                                        bool *out);

/**
 * Whether two algebras of the same language have the same algebraic sets.
 *
 * # Safety
 * Pointers must be valid.
 */
enum UagStatus uag_geometrically_equivalent(const struct UagAlgebra *a,
                                            const struct UagAlgebra *b,
                                            uint64_t tuple_cap,
                                            bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UAG_H */
