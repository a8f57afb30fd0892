#ifndef LNS_H
#define LNS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum LnsStatus {
  LNS_STATUS_OK = 0,
  LNS_STATUS_NULL_POINTER = 1,
  /**
   * Bad parameter, node label or shortcut.
   */
  LNS_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Malformed text input (network encoding, parameter line, UTF-8).
   */
  LNS_STATUS_PARSE_ERROR = 3,
  /**
   * Failure while generating or evaluating.
   */
  LNS_STATUS_RUNTIME_ERROR = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  LNS_STATUS_PANIC = 5,
} LnsStatus;

/**
 * Navigation rule for [`lns_navigation_length`] and [`lns_navigate`].
 */
typedef enum LnsPolicy {
  LNS_POLICY_GREEDY = 0,
  /**
   * Two-level, deciding again after every hop.
   */
  LNS_POLICY_TWO_LEVEL = 1,
  /**
   * Two-level, taking both hops of a chosen move.
   */
  LNS_POLICY_TWO_LEVEL_COMMIT = 2,
} LnsPolicy;

/**
 * Opaque network handle.
 */
typedef struct LnsNetwork LnsNetwork;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call on the same thread.
 */
const char *lns_last_error(void);

/**
 * Library version as a static string.
 */
const char *lns_version(void);

/**
 * Plain ring of `size` nodes.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle to.
 */
enum LnsStatus lns_network_ring(size_t size, struct LnsNetwork **out);

/**
 * Builds a network from a parameter line such as `family=d4 L=1024 b=4 k=4`.
 * `seed` only matters for stochastic families.
 *
 * # Safety
 * `params` must be a NUL-terminated string; `out` must be writable.
 */
enum LnsStatus lns_network_generate(const char *params, uint64_t seed, struct LnsNetwork **out);

/**
 * Parses the JSON network encoding `{"L":n,"shortcuts":[[i,j],...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum LnsStatus lns_network_decode(const char *json, struct LnsNetwork **out);

/**
 * Canonical JSON encoding. Release the string with [`lns_string_free`].
 *
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum LnsStatus lns_network_encode(const struct LnsNetwork *net, char **out);

/**
 * Copy of `net` with the shortcut `{i, j}` added.
 *
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum LnsStatus lns_network_add_shortcut(const struct LnsNetwork *net,
                                        size_t i,
                                        size_t j,
                                        struct LnsNetwork **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `net` must come from this library and not be used afterwards.
 */
void lns_network_free(struct LnsNetwork *net);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void lns_string_free(char *s);

/**
 * Node count, or 0 for a null handle.
 *
 * # Safety
 * `net` must be null or a live handle.
 */
size_t lns_network_size(const struct LnsNetwork *net);

/**
 * Shortcut count, or 0 for a null handle.
 *
 * # Safety
 * `net` must be null or a live handle.
 */
size_t lns_network_shortcut_count(const struct LnsNetwork *net);

/**
 * Total lattice length of the shortcuts divided by the node count.
 *
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum LnsStatus lns_unit_cost(const struct LnsNetwork *net, double *out);

/**
 * Mean hop distance over all node pairs.
 *
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum LnsStatus lns_average_distance(const struct LnsNetwork *net, double *out);

/**
 * Largest hop distance.
 *
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum LnsStatus lns_diameter(const struct LnsNetwork *net, uint32_t *out);

/**
 * Average navigation length over ordered pairs under `policy`.
 *
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum LnsStatus lns_navigation_length(const struct LnsNetwork *net,
                                     enum LnsPolicy policy,
                                     double *out);

/**
 * Hops taken from `source` to `target` under `policy`.
 *
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum LnsStatus lns_navigate(const struct LnsNetwork *net,
                            uint32_t source,
                            uint32_t target,
                            enum LnsPolicy policy,
                            size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LNS_H */
