//! The voting rules: majority judgment with its matrix tiebreaker, two-way
//! majority rule, minimax, and the two finalist rules driven entirely by
//! races against the losers (mean margin and minimum margin).
//!
//! Rules never discard anything themselves: a tie is reported as a value
//! and the caller decides what to do with the trial.

use crate::error::{Error, Result};
use crate::spatial::{CandidateId, RatingsMatrix};
use crate::tally::{largest_loss, margin, PairwiseTally};

/// Outcome of a rule that can end in an exact tie.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Winner(CandidateId),
    Tie,
}

impl Decision {
    pub fn winner(self) -> Option<CandidateId> {
        match self {
            Decision::Winner(c) => Some(c),
            Decision::Tie => None,
        }
    }
}

/// Result of a majority-judgment election over an eligible set.
#[derive(Debug, Clone, PartialEq)]
pub struct MJOutcome {
    /// `None` only when two top candidates have identical sorted grade
    /// columns (or tie at the top of every row), which the tiebreaker
    /// cannot separate.
    pub winner: Option<CandidateId>,
    /// Median grade per eligible candidate, in the order given.
    pub medians: Vec<(CandidateId, f64)>,
    /// Whether the top median was shared and the matrix procedure ran.
    pub tiebreak_used: bool,
    /// Decisive row of the descending-sorted grade matrix (0-based), when
    /// the tiebreaker resolved the winner.
    pub tiebreak_row: Option<usize>,
}

/// The two candidates a trial is decided between: the MJ winner, and the
/// MJ winner once the first is removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct FinalistPair {
    pub first: CandidateId,
    pub second: CandidateId,
}

impl FinalistPair {
    pub fn contains(&self, c: CandidateId) -> bool {
        self.first == c || self.second == c
    }

    pub fn other(&self, c: CandidateId) -> CandidateId {
        debug_assert!(self.contains(c));
        if c == self.first {
            self.second
        } else {
            self.first
        }
    }
}

/// Per-candidate grade columns sorted from highest to lowest.
///
/// Sorting is the expensive part of majority judgment; building this once
/// lets a caller evaluate MJ over several eligible subsets (finalist
/// selection, candidate-removal checks) without re-sorting.
#[derive(Debug, Clone)]
pub struct SortedRatings {
    cols: Vec<f64>,
    n_voters: usize,
    n_candidates: usize,
}

impl SortedRatings {
    pub fn new(ratings: &RatingsMatrix) -> Self {
        let n = ratings.n_voters();
        let c = ratings.n_candidates();
        let mut cols = vec![0.0; n * c];
        for cand in 0..c {
            let col = &mut cols[cand * n..(cand + 1) * n];
            for (v, slot) in col.iter_mut().enumerate() {
                *slot = ratings.grade(v, CandidateId(cand));
            }
            col.sort_unstable_by(|a, b| b.total_cmp(a));
        }
        Self { cols, n_voters: n, n_candidates: c }
    }

    pub fn n_voters(&self) -> usize {
        self.n_voters
    }

    fn column(&self, c: CandidateId) -> &[f64] {
        &self.cols[c.0 * self.n_voters..(c.0 + 1) * self.n_voters]
    }

    /// Median grade: the grade in the median row of the descending sort.
    /// For even electorates this is the lower of the two middle grades.
    pub fn median(&self, c: CandidateId) -> f64 {
        self.column(c)[median_row(self.n_voters)]
    }
}

/// 0-based index of the median row in a descending-sorted column: row
/// (n+1)/2 for odd n, row n/2 + 1 for even n, counting from 1.
fn median_row(n_voters: usize) -> usize {
    n_voters / 2
}

/// Majority judgment over the eligible candidates.
///
/// The candidate with the highest median grade wins. Candidates tied on
/// the top median go to the matrix procedure: their sorted grade columns
/// are scanned row by row outward from the median row (the row below is
/// tried before the row above at equal distance), and the first row whose
/// maximum grade is held by exactly one tied candidate decides.
pub fn mj_winner(ratings: &RatingsMatrix, eligible: &[CandidateId]) -> Result<MJOutcome> {
    mj_winner_sorted(&SortedRatings::new(ratings), eligible)
}

/// As [`mj_winner`], reusing pre-sorted grade columns.
pub fn mj_winner_sorted(sorted: &SortedRatings, eligible: &[CandidateId]) -> Result<MJOutcome> {
    if eligible.is_empty() {
        return Err(Error::EmptyEligibleSet);
    }
    for &c in eligible {
        if c.0 >= sorted.n_candidates {
            return Err(Error::CandidateOutOfRange { index: c.0, count: sorted.n_candidates });
        }
    }

    let medians: Vec<(CandidateId, f64)> =
        eligible.iter().map(|&c| (c, sorted.median(c))).collect();
    let top = medians
        .iter()
        .map(|&(_, m)| m)
        .fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<CandidateId> =
        medians.iter().filter(|&&(_, m)| m == top).map(|&(c, _)| c).collect();

    if tied.len() == 1 {
        return Ok(MJOutcome {
            winner: Some(tied[0]),
            medians,
            tiebreak_used: false,
            tiebreak_row: None,
        });
    }

    let n = sorted.n_voters;
    let m = median_row(n);
    for row in rows_outward_from(m, n) {
        let mut best = f64::NEG_INFINITY;
        let mut holder = None;
        let mut unique = false;
        for &c in &tied {
            let g = sorted.column(c)[row];
            if g > best {
                best = g;
                holder = Some(c);
                unique = true;
            } else if g == best {
                unique = false;
            }
        }
        if unique {
            return Ok(MJOutcome {
                winner: holder,
                medians,
                tiebreak_used: true,
                tiebreak_row: Some(row),
            });
        }
    }

    Ok(MJOutcome { winner: None, medians, tiebreak_used: true, tiebreak_row: None })
}

/// Rows of the sorted matrix in tiebreak order: the median row, then
/// outward by distance, trying the row below (lower grades) before the row
/// above at each distance.
fn rows_outward_from(m: usize, n: usize) -> impl Iterator<Item = usize> {
    let below = (m + 1)..n;
    let above = (0..m).rev();
    std::iter::once(m).chain(interleave(below, above))
}

fn interleave(
    mut a: impl Iterator<Item = usize>,
    mut b: impl Iterator<Item = usize>,
) -> impl Iterator<Item = usize> {
    let mut take_a = true;
    std::iter::from_fn(move || {
        take_a = !take_a;
        if !take_a {
            a.next().or_else(|| b.next())
        } else {
            b.next().or_else(|| a.next())
        }
    })
}

/// Picks the two finalists: the MJ winner, then the MJ winner of the rest.
/// An unresolved MJ tie at either stage is reported as an error so the
/// caller can discard the trial.
pub fn select_finalists(ratings: &RatingsMatrix) -> Result<FinalistPair> {
    if ratings.n_candidates() < 3 {
        return Err(Error::InvalidCandidateCount { min: 3, got: ratings.n_candidates() });
    }
    let sorted = SortedRatings::new(ratings);
    let all: Vec<CandidateId> = ratings.candidate_ids().collect();
    let first = mj_winner_sorted(&sorted, &all)?
        .winner
        .ok_or(Error::UnresolvedTie("over the full field"))?;
    let rest: Vec<CandidateId> = all.into_iter().filter(|&c| c != first).collect();
    let second = mj_winner_sorted(&sorted, &rest)?
        .winner
        .ok_or(Error::UnresolvedTie("after removing the first finalist"))?;
    Ok(FinalistPair { first, second })
}

/// Simple majority rule between two candidates: the sign of their margin.
pub fn mr_two_way(tally: &PairwiseTally, a: CandidateId, b: CandidateId) -> Result<Decision> {
    let m = margin(tally, a, b)?;
    Ok(match m.cmp(&0) {
        std::cmp::Ordering::Greater => Decision::Winner(a),
        std::cmp::Ordering::Less => Decision::Winner(b),
        std::cmp::Ordering::Equal => Decision::Tie,
    })
}

/// Minimax: the Condorcet winner when one exists, otherwise the candidate
/// whose largest pairwise loss is smallest. A shared minimum is a tie.
pub fn minimax_winner(tally: &PairwiseTally) -> Decision {
    let mut best: Option<(CandidateId, i64)> = None;
    let mut tied = false;
    for c in tally.candidate_ids() {
        let ll = largest_loss(tally, c);
        match best {
            None => best = Some((c, ll)),
            Some((_, b)) if ll < b => {
                best = Some((c, ll));
                tied = false;
            }
            Some((_, b)) if ll == b => tied = true,
            _ => {}
        }
    }
    match best {
        Some((c, _)) if !tied => Decision::Winner(c),
        _ => Decision::Tie,
    }
}

/// Finalist with the larger mean margin of victory in two-way races
/// against the losers. Margins are integers, so means are compared as
/// exact sums.
pub fn qb_winner(
    tally: &PairwiseTally,
    finalists: FinalistPair,
    losers: &[CandidateId],
) -> Decision {
    debug_assert!(!losers.is_empty());
    let sum = |f: CandidateId| -> i64 {
        losers.iter().map(|&l| margin(tally, f, l).expect("finalist vs loser")).sum()
    };
    compare_finalists(finalists, sum(finalists.first), sum(finalists.second))
}

/// Finalist with the larger minimum margin of victory against the losers.
pub fn qm_winner(
    tally: &PairwiseTally,
    finalists: FinalistPair,
    losers: &[CandidateId],
) -> Decision {
    debug_assert!(!losers.is_empty());
    let min = |f: CandidateId| -> i64 {
        losers
            .iter()
            .map(|&l| margin(tally, f, l).expect("finalist vs loser"))
            .min()
            .expect("nonempty losers")
    };
    compare_finalists(finalists, min(finalists.first), min(finalists.second))
}

fn compare_finalists(finalists: FinalistPair, first: i64, second: i64) -> Decision {
    match first.cmp(&second) {
        std::cmp::Ordering::Greater => Decision::Winner(finalists.first),
        std::cmp::Ordering::Less => Decision::Winner(finalists.second),
        std::cmp::Ordering::Equal => Decision::Tie,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(i: usize) -> CandidateId {
        CandidateId(i)
    }

    fn matrix(grades: &[f64], n: usize, c: usize) -> RatingsMatrix {
        RatingsMatrix::from_grades(grades.to_vec(), n, c).unwrap()
    }

    /// Column-major helper: grades given per candidate, stored voter-major.
    fn from_columns(cols: &[&[f64]]) -> RatingsMatrix {
        let c = cols.len();
        let n = cols[0].len();
        let mut grades = vec![0.0; n * c];
        for (ci, col) in cols.iter().enumerate() {
            for (v, &g) in col.iter().enumerate() {
                grades[v * c + ci] = g;
            }
        }
        matrix(&grades, n, c)
    }

    #[test]
    fn median_row_conventions() {
        assert_eq!(median_row(5), 2); // 3rd highest of 5
        assert_eq!(median_row(100), 50); // 51st highest of 100: lower median
        assert_eq!(median_row(1), 0);
        assert_eq!(median_row(2), 1);
    }

    #[test]
    fn tiebreak_row_order_prefers_below() {
        let order: Vec<usize> = rows_outward_from(2, 5).collect();
        assert_eq!(order, vec![2, 3, 1, 4, 0]);
        let order: Vec<usize> = rows_outward_from(1, 2).collect();
        assert_eq!(order, vec![1, 0]);
    }

    #[test]
    fn intro_example_mj_beats_mr_conflict() {
        // A rated 1 2 3 4 4, B rated 2 3 4 1 1 on a 4-point scale
        let m = from_columns(&[
            &[1.0, 2.0, 3.0, 4.0, 4.0],
            &[2.0, 3.0, 4.0, 1.0, 1.0],
        ]);
        let outcome = mj_winner(&m, &[id(0), id(1)]).unwrap();
        assert_eq!(outcome.winner, Some(id(0)), "A's median 3 beats B's 2");
        assert!(!outcome.tiebreak_used);
        assert_eq!(outcome.medians, vec![(id(0), 3.0), (id(1), 2.0)]);

        let tally = PairwiseTally::from_ratings(&m);
        assert_eq!(mr_two_way(&tally, id(0), id(1)).unwrap(), Decision::Winner(id(1)), "B wins by MR");
    }

    #[test]
    fn identical_distributions_are_unresolved() {
        let m = from_columns(&[
            &[4.0, 2.0, 3.0, 1.0],
            &[1.0, 3.0, 2.0, 4.0],
        ]);
        let outcome = mj_winner(&m, &[id(0), id(1)]).unwrap();
        assert_eq!(outcome.winner, None);
        assert!(outcome.tiebreak_used);
        assert_eq!(outcome.tiebreak_row, None);
    }

    #[test]
    fn tiebreak_hand_trace() {
        // Sorted descending: A = (9,7,5,5,1), B = (9,8,5,4,1); medians tie
        // at 5 in row index 2. Rows 1 and 3 are both decisive; the below
        // rule reaches row 3 first, where A's 5 beats B's 4.
        let m = from_columns(&[
            &[9.0, 7.0, 5.0, 5.0, 1.0],
            &[9.0, 8.0, 5.0, 4.0, 1.0],
        ]);
        let outcome = mj_winner(&m, &[id(0), id(1)]).unwrap();
        assert_eq!(outcome.winner, Some(id(0)));
        assert!(outcome.tiebreak_used);
        assert_eq!(outcome.tiebreak_row, Some(3));
    }

    #[test]
    fn empty_eligible_set_rejected() {
        let m = from_columns(&[&[1.0], &[2.0]]);
        assert!(matches!(mj_winner(&m, &[]), Err(Error::EmptyEligibleSet)));
    }

    #[test]
    fn mj_two_candidates_odd_voters_is_higher_lower_median() {
        use crate::rng::TrialRng;
        use rand::Rng;
        let mut rng = TrialRng::new(3).stream(0);
        for _ in 0..200 {
            let n = 2 * rng.gen_range(1..8) + 1;
            let grades: Vec<f64> = (0..2 * n).map(|_| rng.gen::<f64>()).collect();
            let m = matrix(&grades, n, 2);
            let sorted = SortedRatings::new(&m);
            let expected = if sorted.median(id(0)) > sorted.median(id(1)) { id(0) } else { id(1) };
            let outcome = mj_winner(&m, &[id(0), id(1)]).unwrap();
            assert_eq!(outcome.winner, Some(expected));
        }
    }

    #[test]
    fn finalists_with_strictly_ordered_medians() {
        let m = from_columns(&[
            &[9.0, 8.0, 7.0],
            &[6.0, 5.0, 4.0],
            &[3.0, 2.0, 1.0],
        ]);
        let pair = select_finalists(&m).unwrap();
        assert_eq!(pair, FinalistPair { first: id(0), second: id(1) });
    }

    #[test]
    fn select_finalists_requires_three_candidates() {
        let m = from_columns(&[&[1.0], &[2.0]]);
        assert!(select_finalists(&m).is_err());
    }

    #[test]
    fn second_finalist_matches_column_removal() {
        // Removing the first finalist's column and re-running MJ from
        // scratch names the same runner-up as restricting the eligible set.
        use crate::rng::TrialRng;
        use rand::Rng;
        let mut rng = TrialRng::new(17).stream(0);
        for _ in 0..300 {
            let n = rng.gen_range(1..9);
            let c = rng.gen_range(3..6);
            let grades: Vec<f64> = (0..n * c).map(|_| rng.gen::<f64>()).collect();
            let m = matrix(&grades, n, c);
            let pair = select_finalists(&m).unwrap();
            let reduced = m.without_candidate(pair.first);
            let reduced_winner = mj_winner(
                &reduced,
                &(0..c - 1).map(CandidateId).collect::<Vec<_>>(),
            )
            .unwrap()
            .winner
            .unwrap();
            // Renumber back: indices at or above the removed one shift by one.
            let expected =
                if reduced_winner.0 >= pair.first.0 { reduced_winner.0 + 1 } else { reduced_winner.0 };
            assert_eq!(pair.second, id(expected));
        }
    }

    #[test]
    fn mr_unanimous_and_tied() {
        let unanimous = PairwiseTally::from_counts(vec![0, 7, 0, 0], 2, 7).unwrap();
        assert_eq!(mr_two_way(&unanimous, id(0), id(1)).unwrap(), Decision::Winner(id(0)));
        let tied = PairwiseTally::from_counts(vec![0, 3, 3, 0], 2, 6).unwrap();
        assert_eq!(mr_two_way(&tied, id(0), id(1)).unwrap(), Decision::Tie);
    }

    fn sports_tally() -> PairwiseTally {
        #[rustfmt::skip]
        let prefer = vec![
            0, 9, 4,
            0, 0, 9,
            5, 0, 0,
        ];
        PairwiseTally::from_counts(prefer, 3, 9).unwrap()
    }

    #[test]
    fn minimax_on_the_sports_league() {
        assert_eq!(minimax_winner(&sports_tally()), Decision::Winner(id(0)));
    }

    #[test]
    fn minimax_returns_condorcet_winner() {
        #[rustfmt::skip]
        let prefer = vec![
            0, 6, 7,
            3, 0, 8,
            2, 1, 0,
        ];
        let tally = PairwiseTally::from_counts(prefer, 3, 9).unwrap();
        assert_eq!(minimax_winner(&tally), Decision::Winner(id(0)));
    }

    #[test]
    fn minimax_cycle_hand_computed() {
        // A > B by 5, B > C by 15, C > A by 25: losses are 25, 5, 15
        #[rustfmt::skip]
        let prefer = vec![
            0, 40, 25,
            35, 0, 45,
            50, 30, 0,
        ];
        let tally = PairwiseTally::from_counts(prefer, 3, 75).unwrap();
        assert_eq!(minimax_winner(&tally), Decision::Winner(id(1)));
    }

    #[test]
    fn minimax_tied_minimum_is_a_tie() {
        // Perfectly symmetric cycle: all largest losses equal
        #[rustfmt::skip]
        let prefer = vec![
            0, 5, 2,
            2, 0, 5,
            5, 2, 0,
        ];
        let tally = PairwiseTally::from_counts(prefer, 3, 7).unwrap();
        assert_eq!(minimax_winner(&tally), Decision::Tie);
    }

    fn four_candidate_tally(rows: [[u32; 4]; 4], n_voters: usize) -> PairwiseTally {
        PairwiseTally::from_counts(rows.concat(), 4, n_voters).unwrap()
    }

    #[test]
    fn qb_hand_computed() {
        // finalist margins over the two losers: f1 (3, 5), f2 (1, 5)
        let tally = four_candidate_tally(
            [[0, 5, 6, 7], [4, 0, 5, 7], [3, 4, 0, 0], [2, 2, 0, 0]],
            9,
        );
        let pair = FinalistPair { first: id(0), second: id(1) };
        let losers = [id(2), id(3)];
        assert_eq!(qb_winner(&tally, pair, &losers), Decision::Winner(id(0)));
        assert_eq!(qm_winner(&tally, pair, &losers), Decision::Winner(id(0)));
    }

    #[test]
    fn qb_identical_margin_multisets_tie() {
        // f1 margins (3, 5), f2 margins (5, 3)
        let tally = four_candidate_tally(
            [[0, 5, 6, 7], [4, 0, 7, 6], [3, 2, 0, 0], [2, 3, 0, 0]],
            9,
        );
        let pair = FinalistPair { first: id(0), second: id(1) };
        let losers = [id(2), id(3)];
        assert_eq!(qb_winner(&tally, pair, &losers), Decision::Tie);
        assert_eq!(qm_winner(&tally, pair, &losers), Decision::Tie);
    }

    #[test]
    fn qm_hand_computed() {
        // f1 margins (3, 5), f2 margins (1, 7): minima 3 vs 1
        let tally = four_candidate_tally(
            [[0, 5, 6, 7], [4, 0, 5, 8], [3, 4, 0, 0], [2, 1, 0, 0]],
            9,
        );
        let pair = FinalistPair { first: id(0), second: id(1) };
        let losers = [id(2), id(3)];
        assert_eq!(qm_winner(&tally, pair, &losers), Decision::Winner(id(0)));
    }

    #[test]
    fn qm_equal_minima_tie() {
        // f1 margins (3, 9), f2 margins (3, 4)
        let tally = four_candidate_tally(
            [[0, 5, 9, 12], [4, 0, 9, 9], [6, 6, 0, 0], [3, 5, 0, 0]],
            15,
        );
        let pair = FinalistPair { first: id(0), second: id(1) };
        let losers = [id(2), id(3)];
        assert_eq!(qm_winner(&tally, pair, &losers), Decision::Tie);
        assert_eq!(qb_winner(&tally, pair, &losers), Decision::Winner(id(0)));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn integer_matrix() -> impl Strategy<Value = RatingsMatrix> {
            (2usize..=4, 1usize..=7).prop_flat_map(|(c, n)| {
                proptest::collection::vec(1u8..=9, n * c).prop_map(move |raw| {
                    RatingsMatrix::from_grades(raw.into_iter().map(f64::from).collect(), n, c)
                        .unwrap()
                })
            })
        }

        fn continuous_matrix() -> impl Strategy<Value = RatingsMatrix> {
            (3usize..=5, 1usize..=9).prop_flat_map(|(c, n)| {
                proptest::collection::vec(0.0f64..9.0, n * c).prop_map(move |raw| {
                    RatingsMatrix::from_grades(raw, n, c).unwrap()
                })
            })
        }

        proptest! {
            // Applying one strictly increasing function to every grade
            // changes no rule's selected winner.
            #[test]
            fn winners_invariant_under_increasing_transform(m in integer_matrix()) {
                let all: Vec<CandidateId> = m.candidate_ids().collect();
                let t = m.map_grades(|g| (g * 1.5).exp() - 0.25);
                let before = mj_winner(&m, &all).unwrap();
                let after = mj_winner(&t, &all).unwrap();
                prop_assert_eq!(before.winner, after.winner);
                prop_assert_eq!(before.tiebreak_row, after.tiebreak_row);

                let tally_before = PairwiseTally::from_ratings(&m);
                let tally_after = PairwiseTally::from_ratings(&t);
                prop_assert_eq!(
                    minimax_winner(&tally_before),
                    minimax_winner(&tally_after)
                );
            }

            // With continuous grades, medians are almost surely distinct,
            // and deleting any non-winner cannot change the MJ winner.
            #[test]
            fn mj_iia_on_continuous_grades(m in continuous_matrix()) {
                let all: Vec<CandidateId> = m.candidate_ids().collect();
                let winner = mj_winner(&m, &all).unwrap().winner;
                prop_assume!(winner.is_some());
                let w = winner.unwrap();
                for loser in all.iter().copied().filter(|&c| c != w) {
                    let rest: Vec<CandidateId> =
                        all.iter().copied().filter(|&c| c != loser).collect();
                    let again = mj_winner(&m, &rest).unwrap().winner;
                    prop_assert_eq!(again, Some(w));
                }
            }

            // Whenever a Condorcet winner exists, minimax elects them.
            #[test]
            fn minimax_agrees_with_condorcet(m in integer_matrix()) {
                let tally = PairwiseTally::from_ratings(&m);
                if let Some(cw) = crate::tally::condorcet_winner(&tally) {
                    prop_assert_eq!(minimax_winner(&tally), Decision::Winner(cw));
                }
            }

            // QB and QM see the ratings only through the tally.
            #[test]
            fn qb_qm_depend_only_on_tally(m in integer_matrix()) {
                prop_assume!(m.n_candidates() >= 3);
                let tally = PairwiseTally::from_ratings(&m);
                let t = m.map_grades(|g| g * 2.0 + 1.0);
                prop_assert_eq!(&tally, &PairwiseTally::from_ratings(&t));

                let pair = FinalistPair { first: CandidateId(0), second: CandidateId(1) };
                let losers: Vec<CandidateId> =
                    (2..m.n_candidates()).map(CandidateId).collect();
                prop_assert_eq!(
                    qb_winner(&tally, pair, &losers),
                    qb_winner(&PairwiseTally::from_ratings(&t), pair, &losers)
                );
                if m.n_candidates() == 3 {
                    // Single loser: the mean and the minimum are the same margin.
                    prop_assert_eq!(
                        qb_winner(&tally, pair, &losers),
                        qm_winner(&tally, pair, &losers)
                    );
                }
            }
        }
    }
}
