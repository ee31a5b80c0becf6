//! Pairwise-majority structure derived from a ratings matrix.
//!
//! A voter strictly preferring one candidate over another contributes one
//! count to that ordered pair; voters grading both equally abstain from
//! that pair.

use crate::error::{Error, Result};
use crate::spatial::{CandidateId, RatingsMatrix};

/// Candidates x candidates grid of strict pairwise preference counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseTally {
    prefer: Vec<u32>,
    n_candidates: usize,
    n_voters: usize,
}

impl PairwiseTally {
    /// Counts strict preferences per ordered candidate pair.
    pub fn from_ratings(ratings: &RatingsMatrix) -> Self {
        let c = ratings.n_candidates();
        let mut prefer = vec![0u32; c * c];
        for v in 0..ratings.n_voters() {
            let row = ratings.voter_row(v);
            for a in 0..c {
                let ga = row[a];
                for b in (a + 1)..c {
                    let gb = row[b];
                    if ga > gb {
                        prefer[a * c + b] += 1;
                    } else if gb > ga {
                        prefer[b * c + a] += 1;
                    }
                }
            }
        }
        Self { prefer, n_candidates: c, n_voters: ratings.n_voters() }
    }

    /// Builds a tally from raw counts (row-major, diagonal must be zero).
    /// Useful for external data and hand-built fixtures.
    pub fn from_counts(prefer: Vec<u32>, n_candidates: usize, n_voters: usize) -> Result<Self> {
        if n_candidates < 2 {
            return Err(Error::InvalidCandidateCount { min: 2, got: n_candidates });
        }
        assert_eq!(prefer.len(), n_candidates * n_candidates, "count grid shape mismatch");
        for i in 0..n_candidates {
            assert_eq!(prefer[i * n_candidates + i], 0, "diagonal must be zero");
            for j in 0..n_candidates {
                let sum = prefer[i * n_candidates + j] as u64 + prefer[j * n_candidates + i] as u64;
                assert!(sum <= n_voters as u64, "pair counts exceed voter count");
            }
        }
        Ok(Self { prefer, n_candidates, n_voters })
    }

    pub fn n_candidates(&self) -> usize {
        self.n_candidates
    }

    pub fn n_voters(&self) -> usize {
        self.n_voters
    }

    /// Number of voters grading `a` strictly above `b`.
    pub fn prefer(&self, a: CandidateId, b: CandidateId) -> u32 {
        self.prefer[a.0 * self.n_candidates + b.0]
    }

    pub fn candidate_ids(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.n_candidates).map(CandidateId)
    }

    /// Copy with one candidate's row and column removed; the rest are
    /// renumbered 0..c-1 in their original order.
    pub fn without_candidate(&self, removed: CandidateId) -> PairwiseTally {
        assert!(self.n_candidates > 2, "cannot drop below two candidates");
        let keep: Vec<usize> =
            (0..self.n_candidates).filter(|&i| i != removed.0).collect();
        let c = keep.len();
        let mut prefer = vec![0u32; c * c];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                prefer[i * c + j] = self.prefer[a * self.n_candidates + b];
            }
        }
        PairwiseTally { prefer, n_candidates: c, n_voters: self.n_voters }
    }
}

/// Signed margin of `a` over `b`: voters preferring `a` minus voters
/// preferring `b`. Antisymmetric.
pub fn margin(tally: &PairwiseTally, a: CandidateId, b: CandidateId) -> Result<i64> {
    if a == b {
        return Err(Error::SameCandidate);
    }
    Ok(tally.prefer(a, b) as i64 - tally.prefer(b, a) as i64)
}

/// The unique candidate with a positive margin against every opponent, if
/// one exists.
pub fn condorcet_winner(tally: &PairwiseTally) -> Option<CandidateId> {
    tally.candidate_ids().find(|&a| {
        tally
            .candidate_ids()
            .filter(|&b| b != a)
            .all(|b| margin(tally, a, b).expect("distinct pair") > 0)
    })
}

/// Largest loss of candidate `i`: the maximum margin any opponent holds
/// over them. Negative exactly when `i` is a Condorcet winner.
pub fn largest_loss(tally: &PairwiseTally, i: CandidateId) -> i64 {
    tally
        .candidate_ids()
        .filter(|&j| j != i)
        .map(|j| margin(tally, j, i).expect("distinct pair"))
        .max()
        .expect("at least two candidates")
}
