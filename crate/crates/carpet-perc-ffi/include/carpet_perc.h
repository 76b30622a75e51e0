#ifndef CARPET_PERC_H
#define CARPET_PERC_H

/* Generated by cbindgen from carpet-perc-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a fallible call.
 */
typedef enum CpStatus {
  /**
   * Success; any `out` parameters are filled in.
   */
  CP_STATUS_OK = 0,
  /**
   * A parameter violates a documented constraint.
   */
  CP_STATUS_INVALID_PARAMETER = 1,
  /**
   * The requested lattice would exceed the size limit.
   */
  CP_STATUS_TOO_LARGE = 2,
  /**
   * A statistic is undefined for the given input.
   */
  CP_STATUS_UNDEFINED = 3,
  /**
   * Not enough data for the requested estimate or fit.
   */
  CP_STATUS_INSUFFICIENT_DATA = 4,
  /**
   * A fit's normal equations are singular.
   */
  CP_STATUS_SINGULAR_FIT = 5,
  /**
   * A text input failed to parse.
   */
  CP_STATUS_PARSE_ERROR = 6,
  /**
   * An operating-system I/O failure.
   */
  CP_STATUS_IO_ERROR = 7,
  /**
   * A required pointer argument was null.
   */
  CP_STATUS_NULL_POINTER = 8,
  /**
   * A string argument was not valid UTF-8.
   */
  CP_STATUS_INVALID_STRING = 9,
  /**
   * An internal invariant failed; the library state is unchanged.
   */
  CP_STATUS_INTERNAL = 10,
} CpStatus;

/**
 * Generator family of a carpet.
 */
typedef enum CpFamily {
  /**
   * One centred block removed per generator cell.
   */
  CP_FAMILY_CENTRAL = 0,
  /**
   * Removed cells spread evenly across the generator.
   */
  CP_FAMILY_SCATTERED = 1,
} CpFamily;

/**
 * Neighborhood rule for cluster joining.
 */
typedef enum CpConnectivity {
  /**
   * Four axial neighbors.
   */
  CP_CONNECTIVITY_NN4 = 0,
  /**
   * Four axial plus four diagonal neighbors.
   */
  CP_CONNECTIVITY_NNN8 = 1,
} CpConnectivity;

/**
 * Opaque handle to a built site lattice.
 */
typedef struct CpLattice CpLattice;

/**
 * Occupation-probability sweep settings; get defaults from
 * `cp_sweep_grid_default`.
 */
typedef struct CpSweepGrid {
  double p_min;
  double p_max;
  double dp;
  uint32_t runs;
  uint64_t master_seed;
} CpSweepGrid;

/**
 * Critical-threshold estimate.
 */
typedef struct CpEstimate {
  /**
   * Mean of the per-run threshold estimates.
   */
  double pc_mean;
  /**
   * Standard error of that mean.
   */
  double pc_stderr;
  /**
   * Threshold of the run-averaged curve; NaN when undefined.
   */
  double pc_from_averaged_m;
  uint32_t runs;
  double dp;
} CpEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *cp_version(void);

/**
 * Message of the most recent error on the calling thread; empty when no
 * error has occurred. Valid until the thread's next failing call.
 */
const char *cp_last_error_message(void);

/**
 * Build the site lattice of a carpet: subdivision factor `b`, removed
 * block side `l`, generator family, and number of construction stages.
 * On success writes a handle to `*out`; free it with `cp_lattice_free`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CpStatus cp_lattice_build(uint32_t b,
                               uint32_t l,
                               enum CpFamily family,
                               uint32_t stages,
                               struct CpLattice **out);

/**
 * Release a lattice handle. A null handle is ignored.
 *
 * # Safety
 * `lattice` must have come from `cp_lattice_build` and not be freed twice.
 */
void cp_lattice_free(struct CpLattice *lattice);

/**
 * Number of sites along one edge; 0 for a null handle.
 *
 * # Safety
 * `lattice` must be a valid handle or null.
 */
uint64_t cp_lattice_side(const struct CpLattice *lattice);

/**
 * Number of present (non-hole) sites; 0 for a null handle.
 *
 * # Safety
 * `lattice` must be a valid handle or null.
 */
uint64_t cp_lattice_present_count(const struct CpLattice *lattice);

/**
 * Whether the site at (row, col) is part of the carpet. False for a null
 * handle or out-of-range coordinates.
 *
 * # Safety
 * `lattice` must be a valid handle or null.
 */
bool cp_lattice_is_present(const struct CpLattice *lattice, uint64_t row, uint64_t col);

/**
 * Write the lattice mask (text format) to `path`.
 *
 * # Safety
 * `lattice` must be a valid handle; `path` a NUL-terminated string.
 */
enum CpStatus cp_lattice_write_mask(const struct CpLattice *lattice, const char *path);

/**
 * The default sweep settings: p in [0.30, 0.95] at spacing 0.01, 10 runs,
 * master seed 1.
 */
struct CpSweepGrid cp_sweep_grid_default(void);

/**
 * Estimate the critical occupation probability of `lattice` under `conn`
 * by sweeping the grid and locating the steepest rise of the cluster
 * second moment. Deterministic for a fixed grid.
 *
 * # Safety
 * `lattice`, `grid` and `out` must be valid pointers.
 */
enum CpStatus cp_estimate_pc(const struct CpLattice *lattice,
                             enum CpConnectivity conn,
                             const struct CpSweepGrid *grid,
                             struct CpEstimate *out);

/**
 * Fractal dimensionality of the carpet generated by (b, l).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CpStatus cp_dimensionality(uint32_t b, uint32_t l, double *out);

/**
 * Connectivity index of the carpet generated by (b, l).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CpStatus cp_connectivity(uint32_t b, uint32_t l, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARPET_PERC_H */
