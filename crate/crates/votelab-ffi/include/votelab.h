#ifndef VOTELAB_H
#define VOTELAB_H

/* Generated by cbindgen from votelab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call. Anything but `Ok` leaves a message readable
 * through `vl_last_error_message`.
 */
typedef enum {
  VL_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  VL_STATUS_NULL_ARG = 1,
  /**
   * An argument was out of range or otherwise unusable.
   */
  VL_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A panic was caught at the language boundary.
   */
  VL_STATUS_PANIC = 3,
} VlStatus;

/**
 * Grades for one election: a dense voter-by-candidate matrix. Opaque.
 */
typedef struct VlRatings VlRatings;

/**
 * Finished simulation study holding the ten agreement lines. Opaque.
 */
typedef struct VlTable1 VlTable1;

/**
 * Head-to-head record of two dropout strategies over the trials where
 * they picked different winners.
 */
typedef struct {
  uint64_t wins_first;
  uint64_t wins_second;
} VlDuel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *vl_version(void);

/**
 * Message for the most recent failed call on this thread, or null if the
 * last call succeeded. The pointer is valid until the next `vl_` call on
 * the same thread.
 */
const char *vl_last_error_message(void);

/**
 * Builds a ratings handle from `n_voters * n_candidates` grades laid out
 * row per voter. Grades must be finite. The caller keeps ownership of the
 * input buffer; the handle copies it.
 */
VlStatus vl_ratings_new(const double *grades,
                        size_t n_voters,
                        size_t n_candidates,
                        VlRatings **out);

/**
 * Releases a ratings handle. Null is allowed.
 */
void vl_ratings_free(VlRatings *ratings);

/**
 * Writes the matrix shape.
 */
VlStatus vl_ratings_shape(const VlRatings *ratings, size_t *out_voters, size_t *out_candidates);

/**
 * Majority judgment winner over all candidates, by highest lower-median
 * grade with the matrix tiebreaker. Writes the winning candidate index,
 * or -1 when the tiebreaker cannot separate the leaders.
 */
VlStatus vl_mj_winner(const VlRatings *ratings, int32_t *out_winner);

/**
 * Lower-median grade of one candidate.
 */
VlStatus vl_mj_median(const VlRatings *ratings, size_t candidate, double *out_median);

/**
 * Candidate who beats every other head to head, or -1 if none exists.
 */
VlStatus vl_condorcet_winner(const VlRatings *ratings, int32_t *out_winner);

/**
 * Minimax winner: smallest largest loss. Writes -1 when the minimum is
 * shared.
 */
VlStatus vl_minimax_winner(const VlRatings *ratings, int32_t *out_winner);

/**
 * Signed margin of `first` over `second`: voters preferring `first`
 * minus voters preferring `second`.
 */
VlStatus vl_margin(const VlRatings *ratings, size_t first, size_t second, int64_t *out_margin);

/**
 * Runs a full simulation study and returns a handle to its ten lines.
 * `study_type` is 1 to 4: exact closeness grades, rounded grades, noisy
 * grades, or noisy rounded grades. `workers` of 0 means one worker.
 */
VlStatus vl_table1_run(uint8_t study_type,
                       size_t candidates,
                       size_t n_voters,
                       uint64_t kept_trials,
                       uint64_t seed,
                       size_t workers,
                       VlTable1 **out);

/**
 * Releases a study handle. Null is allowed.
 */
void vl_table1_free(VlTable1 *table);

/**
 * Percentage for one line, 1 through 10. Writes NaN when the line's
 * denominator is zero.
 */
VlStatus vl_table1_percent(const VlTable1 *table, uint8_t line, double *out_percent);

/**
 * Numerator and denominator behind one line, 1 through 10.
 */
VlStatus vl_table1_counts(const VlTable1 *table,
                          uint8_t line,
                          uint64_t *out_numerator,
                          uint64_t *out_denominator);

/**
 * Kept and consumed trial counts of a finished study.
 */
VlStatus vl_table1_trials(const VlTable1 *table, uint64_t *out_kept, uint64_t *out_consumed);

/**
 * Dropout study where the Condorcet winner withdraws: duels between the
 * withdrawn-margin, head-to-head, and minimax strategies.
 */
VlStatus vl_dropout1_run(size_t n_voters,
                         uint64_t kept_trials,
                         uint64_t seed,
                         size_t workers,
                         VlDuel *out_wm_hh,
                         VlDuel *out_wm_mm,
                         VlDuel *out_hh_mm,
                         uint64_t *out_kept);

/**
 * Dropout study inside a three-way cycle after the minimax winner
 * withdraws.
 */
VlStatus vl_dropout2_run(size_t n_voters,
                         uint64_t kept_trials,
                         uint64_t seed,
                         size_t workers,
                         VlDuel *out_mm_hh,
                         VlDuel *out_mm_wm,
                         VlDuel *out_hh_wm,
                         uint64_t *out_kept);

/**
 * Dropout study of the minimax winner against its strongest challenger:
 * how often the minimax winner is the more centrist of the two.
 */
VlStatus vl_dropout3_run(size_t n_voters,
                         uint64_t kept_trials,
                         uint64_t seed,
                         size_t workers,
                         uint64_t *out_more_centrist,
                         uint64_t *out_kept);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* VOTELAB_H */
