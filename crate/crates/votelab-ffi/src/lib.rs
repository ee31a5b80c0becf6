//! C interface to the votelab election laboratory.
//!
//! Every entry point returns a [`VlStatus`]; results come back through out
//! pointers. Handles from `vl_ratings_new` and `vl_table1_run` own their
//! data and must be released with the matching `vl_*_free`. All functions
//! catch panics at the boundary, so no Rust unwinding ever crosses into C.
//!
//! The generated header lives in `include/votelab.h` after a build.

use std::cell::RefCell;
use std::ffi::CString;
use std::fmt::Display;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use votelab::{
    condorcet_winner, margin, minimax_winner, mj_winner, run_study1, run_study2, run_study3,
    run_table1_study, CandidateId, PairwiseTally, RatingsMatrix, SortedRatings, StrategyDuel,
    StudyConfig, StudyType, Table1Result,
};

/// Result of every call. Anything but `Ok` leaves a message readable
/// through `vl_last_error_message`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VlStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArg = 1,
    /// An argument was out of range or otherwise unusable.
    InvalidArgument = 2,
    /// A panic was caught at the language boundary.
    Panic = 3,
}

/// Grades for one election: a dense voter-by-candidate matrix. Opaque.
pub struct VlRatings(RatingsMatrix);

/// Finished simulation study holding the ten agreement lines. Opaque.
pub struct VlTable1(Table1Result);

/// Head-to-head record of two dropout strategies over the trials where
/// they picked different winners.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct VlDuel {
    pub wins_first: u64,
    pub wins_second: u64,
}

impl VlDuel {
    fn from_duel(d: StrategyDuel) -> Self {
        Self { wins_first: d.wins_first, wins_second: d.wins_second }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: VlStatus, msg: impl Display) -> VlStatus {
    let text = msg.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
    status
}

fn ok() -> VlStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    VlStatus::Ok
}

fn guarded(f: impl FnOnce() -> VlStatus) -> VlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(VlStatus::Panic, "internal panic"),
    }
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn vl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failed call on this thread, or null if the
/// last call succeeded. The pointer is valid until the next `vl_` call on
/// the same thread.
#[no_mangle]
pub extern "C" fn vl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map_or(std::ptr::null(), |msg| msg.as_ptr())
    })
}

/// Builds a ratings handle from `n_voters * n_candidates` grades laid out
/// row per voter. Grades must be finite. The caller keeps ownership of the
/// input buffer; the handle copies it.
#[no_mangle]
pub extern "C" fn vl_ratings_new(
    grades: *const f64,
    n_voters: usize,
    n_candidates: usize,
    out: *mut *mut VlRatings,
) -> VlStatus {
    guarded(|| {
        if grades.is_null() || out.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        let Some(len) = n_voters.checked_mul(n_candidates) else {
            return fail(VlStatus::InvalidArgument, "grade count overflows");
        };
        if n_candidates > i32::MAX as usize {
            return fail(VlStatus::InvalidArgument, "too many candidates");
        }
        let data = unsafe { slice::from_raw_parts(grades, len) }.to_vec();
        if let Some(bad) = data.iter().position(|g| !g.is_finite()) {
            return fail(VlStatus::InvalidArgument, format!("grade {bad} is not finite"));
        }
        match RatingsMatrix::from_grades(data, n_voters, n_candidates) {
            Ok(matrix) => {
                unsafe { *out = Box::into_raw(Box::new(VlRatings(matrix))) };
                ok()
            }
            Err(e) => fail(VlStatus::InvalidArgument, e),
        }
    })
}

/// Releases a ratings handle. Null is allowed.
#[no_mangle]
pub extern "C" fn vl_ratings_free(ratings: *mut VlRatings) {
    if !ratings.is_null() {
        drop(unsafe { Box::from_raw(ratings) });
    }
}

/// Writes the matrix shape.
#[no_mangle]
pub extern "C" fn vl_ratings_shape(
    ratings: *const VlRatings,
    out_voters: *mut usize,
    out_candidates: *mut usize,
) -> VlStatus {
    guarded(|| {
        if ratings.is_null() || out_voters.is_null() || out_candidates.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        let matrix = unsafe { &(*ratings).0 };
        unsafe {
            *out_voters = matrix.n_voters();
            *out_candidates = matrix.n_candidates();
        }
        ok()
    })
}

/// Majority judgment winner over all candidates, by highest lower-median
/// grade with the matrix tiebreaker. Writes the winning candidate index,
/// or -1 when the tiebreaker cannot separate the leaders.
#[no_mangle]
pub extern "C" fn vl_mj_winner(ratings: *const VlRatings, out_winner: *mut i32) -> VlStatus {
    guarded(|| {
        if ratings.is_null() || out_winner.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        let matrix = unsafe { &(*ratings).0 };
        let all: Vec<CandidateId> = matrix.candidate_ids().collect();
        match mj_winner(matrix, &all) {
            Ok(outcome) => {
                unsafe { *out_winner = outcome.winner.map_or(-1, |w| w.0 as i32) };
                ok()
            }
            Err(e) => fail(VlStatus::InvalidArgument, e),
        }
    })
}

/// Lower-median grade of one candidate.
#[no_mangle]
pub extern "C" fn vl_mj_median(
    ratings: *const VlRatings,
    candidate: usize,
    out_median: *mut f64,
) -> VlStatus {
    guarded(|| {
        if ratings.is_null() || out_median.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        let matrix = unsafe { &(*ratings).0 };
        if candidate >= matrix.n_candidates() {
            return fail(VlStatus::InvalidArgument, "candidate index out of range");
        }
        let sorted = SortedRatings::new(matrix);
        unsafe { *out_median = sorted.median(CandidateId(candidate)) };
        ok()
    })
}

/// Candidate who beats every other head to head, or -1 if none exists.
#[no_mangle]
pub extern "C" fn vl_condorcet_winner(
    ratings: *const VlRatings,
    out_winner: *mut i32,
) -> VlStatus {
    guarded(|| {
        if ratings.is_null() || out_winner.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        let matrix = unsafe { &(*ratings).0 };
        let tally = PairwiseTally::from_ratings(matrix);
        unsafe { *out_winner = condorcet_winner(&tally).map_or(-1, |w| w.0 as i32) };
        ok()
    })
}

/// Minimax winner: smallest largest loss. Writes -1 when the minimum is
/// shared.
#[no_mangle]
pub extern "C" fn vl_minimax_winner(
    ratings: *const VlRatings,
    out_winner: *mut i32,
) -> VlStatus {
    guarded(|| {
        if ratings.is_null() || out_winner.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        let matrix = unsafe { &(*ratings).0 };
        let tally = PairwiseTally::from_ratings(matrix);
        unsafe { *out_winner = minimax_winner(&tally).winner().map_or(-1, |w| w.0 as i32) };
        ok()
    })
}

/// Signed margin of `first` over `second`: voters preferring `first`
/// minus voters preferring `second`.
#[no_mangle]
pub extern "C" fn vl_margin(
    ratings: *const VlRatings,
    first: usize,
    second: usize,
    out_margin: *mut i64,
) -> VlStatus {
    guarded(|| {
        if ratings.is_null() || out_margin.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        let matrix = unsafe { &(*ratings).0 };
        if first >= matrix.n_candidates() || second >= matrix.n_candidates() {
            return fail(VlStatus::InvalidArgument, "candidate index out of range");
        }
        let tally = PairwiseTally::from_ratings(matrix);
        match margin(&tally, CandidateId(first), CandidateId(second)) {
            Ok(value) => {
                unsafe { *out_margin = value };
                ok()
            }
            Err(e) => fail(VlStatus::InvalidArgument, e),
        }
    })
}

/// Runs a full simulation study and returns a handle to its ten lines.
/// `study_type` is 1 to 4: exact closeness grades, rounded grades, noisy
/// grades, or noisy rounded grades. `workers` of 0 means one worker.
#[no_mangle]
pub extern "C" fn vl_table1_run(
    study_type: u8,
    candidates: usize,
    n_voters: usize,
    kept_trials: u64,
    seed: u64,
    workers: usize,
    out: *mut *mut VlTable1,
) -> VlStatus {
    guarded(|| {
        if out.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        let study_type = match StudyType::from_number(study_type) {
            Ok(t) => t,
            Err(e) => return fail(VlStatus::InvalidArgument, e),
        };
        let config = StudyConfig {
            study_type,
            candidates,
            n_voters,
            target_kept_trials: kept_trials,
            master_seed: seed,
            workers: workers.max(1),
        };
        match run_table1_study(&config) {
            Ok(result) => {
                unsafe { *out = Box::into_raw(Box::new(VlTable1(result))) };
                ok()
            }
            Err(e) => fail(VlStatus::InvalidArgument, e),
        }
    })
}

/// Releases a study handle. Null is allowed.
#[no_mangle]
pub extern "C" fn vl_table1_free(table: *mut VlTable1) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Percentage for one line, 1 through 10. Writes NaN when the line's
/// denominator is zero.
#[no_mangle]
pub extern "C" fn vl_table1_percent(
    table: *const VlTable1,
    line: u8,
    out_percent: *mut f64,
) -> VlStatus {
    guarded(|| {
        if table.is_null() || out_percent.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        if !(1..=10).contains(&line) {
            return fail(VlStatus::InvalidArgument, "line must be 1 through 10");
        }
        let stat = unsafe { &(*table).0 }.line(line);
        unsafe { *out_percent = stat.percent.unwrap_or(f64::NAN) };
        ok()
    })
}

/// Numerator and denominator behind one line, 1 through 10.
#[no_mangle]
pub extern "C" fn vl_table1_counts(
    table: *const VlTable1,
    line: u8,
    out_numerator: *mut u64,
    out_denominator: *mut u64,
) -> VlStatus {
    guarded(|| {
        if table.is_null() || out_numerator.is_null() || out_denominator.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        if !(1..=10).contains(&line) {
            return fail(VlStatus::InvalidArgument, "line must be 1 through 10");
        }
        let stat = unsafe { &(*table).0 }.line(line);
        unsafe {
            *out_numerator = stat.numerator;
            *out_denominator = stat.denominator;
        }
        ok()
    })
}

/// Kept and consumed trial counts of a finished study.
#[no_mangle]
pub extern "C" fn vl_table1_trials(
    table: *const VlTable1,
    out_kept: *mut u64,
    out_consumed: *mut u64,
) -> VlStatus {
    guarded(|| {
        if table.is_null() || out_kept.is_null() || out_consumed.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        let result = unsafe { &(*table).0 };
        unsafe {
            *out_kept = result.kept;
            *out_consumed = result.consumed;
        }
        ok()
    })
}

/// Dropout study where the Condorcet winner withdraws: duels between the
/// withdrawn-margin, head-to-head, and minimax strategies.
#[no_mangle]
pub extern "C" fn vl_dropout1_run(
    n_voters: usize,
    kept_trials: u64,
    seed: u64,
    workers: usize,
    out_wm_hh: *mut VlDuel,
    out_wm_mm: *mut VlDuel,
    out_hh_mm: *mut VlDuel,
    out_kept: *mut u64,
) -> VlStatus {
    guarded(|| {
        if out_wm_hh.is_null() || out_wm_mm.is_null() || out_hh_mm.is_null() || out_kept.is_null()
        {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        match run_study1(n_voters, kept_trials, seed, workers.max(1)) {
            Ok(r) => {
                unsafe {
                    *out_wm_hh = VlDuel::from_duel(r.duel_wm_hh);
                    *out_wm_mm = VlDuel::from_duel(r.duel_wm_mm);
                    *out_hh_mm = VlDuel::from_duel(r.duel_hh_mm);
                    *out_kept = r.kept;
                }
                ok()
            }
            Err(e) => fail(VlStatus::InvalidArgument, e),
        }
    })
}

/// Dropout study inside a three-way cycle after the minimax winner
/// withdraws.
#[no_mangle]
pub extern "C" fn vl_dropout2_run(
    n_voters: usize,
    kept_trials: u64,
    seed: u64,
    workers: usize,
    out_mm_hh: *mut VlDuel,
    out_mm_wm: *mut VlDuel,
    out_hh_wm: *mut VlDuel,
    out_kept: *mut u64,
) -> VlStatus {
    guarded(|| {
        if out_mm_hh.is_null() || out_mm_wm.is_null() || out_hh_wm.is_null() || out_kept.is_null()
        {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        match run_study2(n_voters, kept_trials, seed, workers.max(1)) {
            Ok(r) => {
                unsafe {
                    *out_mm_hh = VlDuel::from_duel(r.duel_mm_hh);
                    *out_mm_wm = VlDuel::from_duel(r.duel_mm_wm);
                    *out_hh_wm = VlDuel::from_duel(r.duel_hh_wm);
                    *out_kept = r.kept;
                }
                ok()
            }
            Err(e) => fail(VlStatus::InvalidArgument, e),
        }
    })
}

/// Dropout study of the minimax winner against its strongest challenger:
/// how often the minimax winner is the more centrist of the two.
#[no_mangle]
pub extern "C" fn vl_dropout3_run(
    n_voters: usize,
    kept_trials: u64,
    seed: u64,
    workers: usize,
    out_more_centrist: *mut u64,
    out_kept: *mut u64,
) -> VlStatus {
    guarded(|| {
        if out_more_centrist.is_null() || out_kept.is_null() {
            return fail(VlStatus::NullArg, "null pointer argument");
        }
        match run_study3(n_voters, kept_trials, seed, workers.max(1)) {
            Ok(r) => {
                unsafe {
                    *out_more_centrist = r.minimax_more_centrist;
                    *out_kept = r.kept;
                }
                ok()
            }
            Err(e) => fail(VlStatus::InvalidArgument, e),
        }
    })
}
