//! Brute-force oracles, written directly from the rule definitions and
//! kept free of the library's evaluation code. Everything here is plain
//! counting over small matrices.

#![allow(dead_code)]

use votelab::{CandidateId, RatingsMatrix};

/// Median grade of one candidate: lower of the two middles for even
/// electorates, computed from an ascending sort.
pub fn brute_median(ratings: &RatingsMatrix, c: usize) -> f64 {
    let n = ratings.n_voters();
    let mut grades: Vec<f64> =
        (0..n).map(|v| ratings.grade(v, CandidateId(c))).collect();
    grades.sort_by(f64::total_cmp);
    grades[(n - 1) / 2]
}

/// Grade of candidate `c` in row `row` of the descending-sorted matrix.
fn sorted_grade(ratings: &RatingsMatrix, c: usize, row: usize) -> f64 {
    let n = ratings.n_voters();
    let mut grades: Vec<f64> =
        (0..n).map(|v| ratings.grade(v, CandidateId(c))).collect();
    grades.sort_by(f64::total_cmp);
    grades[n - 1 - row]
}

/// Majority judgment by direct transcription of the rule: highest median
/// wins; a shared top median goes row by row outward from the median row
/// of the sorted matrix, the row below first at each distance, until some
/// row has a unique maximum among the tied candidates.
pub fn brute_mj(ratings: &RatingsMatrix, eligible: &[usize]) -> Option<usize> {
    assert!(!eligible.is_empty());
    let n = ratings.n_voters();
    let medians: Vec<f64> = eligible.iter().map(|&c| brute_median(ratings, c)).collect();
    let top = medians.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<usize> = eligible
        .iter()
        .zip(&medians)
        .filter(|&(_, &m)| m == top)
        .map(|(&c, _)| c)
        .collect();
    if tied.len() == 1 {
        return Some(tied[0]);
    }

    let m = n / 2;
    let mut rows = vec![m];
    for d in 1..n {
        if m + d < n {
            rows.push(m + d);
        }
        if d <= m {
            rows.push(m - d);
        }
    }
    for row in rows {
        let grades: Vec<f64> =
            tied.iter().map(|&c| sorted_grade(ratings, c, row)).collect();
        let best = grades.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let holders: Vec<usize> = tied
            .iter()
            .zip(&grades)
            .filter(|&(_, &g)| g == best)
            .map(|(&c, _)| c)
            .collect();
        if holders.len() == 1 {
            return Some(holders[0]);
        }
    }
    None
}

/// Two finalists by the rule's own construction: MJ winner, then MJ winner
/// of the remaining field. `None` when either stage is unresolved.
pub fn brute_finalists(ratings: &RatingsMatrix) -> Option<(usize, usize)> {
    let all: Vec<usize> = (0..ratings.n_candidates()).collect();
    let first = brute_mj(ratings, &all)?;
    let rest: Vec<usize> = all.into_iter().filter(|&c| c != first).collect();
    let second = brute_mj(ratings, &rest)?;
    Some((first, second))
}

/// Signed margin of `a` over `b` by counting each ballot.
pub fn brute_margin(ratings: &RatingsMatrix, a: usize, b: usize) -> i64 {
    let mut m = 0i64;
    for v in 0..ratings.n_voters() {
        let ga = ratings.grade(v, CandidateId(a));
        let gb = ratings.grade(v, CandidateId(b));
        if ga > gb {
            m += 1;
        } else if gb > ga {
            m -= 1;
        }
    }
    m
}

pub fn brute_condorcet(ratings: &RatingsMatrix) -> Option<usize> {
    let c = ratings.n_candidates();
    (0..c).find(|&a| (0..c).filter(|&b| b != a).all(|b| brute_margin(ratings, a, b) > 0))
}

pub fn brute_largest_loss(ratings: &RatingsMatrix, a: usize) -> i64 {
    let c = ratings.n_candidates();
    (0..c)
        .filter(|&b| b != a)
        .map(|b| brute_margin(ratings, b, a))
        .max()
        .expect("at least two candidates")
}

/// Minimax: smallest largest loss, `None` on a shared minimum.
pub fn brute_minimax(ratings: &RatingsMatrix) -> Option<usize> {
    let c = ratings.n_candidates();
    let lls: Vec<i64> = (0..c).map(|a| brute_largest_loss(ratings, a)).collect();
    let best = *lls.iter().min().unwrap();
    let holders: Vec<usize> =
        (0..c).filter(|&a| lls[a] == best).collect();
    (holders.len() == 1).then(|| holders[0])
}

pub fn brute_mr(ratings: &RatingsMatrix, a: usize, b: usize) -> Option<usize> {
    match brute_margin(ratings, a, b) {
        m if m > 0 => Some(a),
        m if m < 0 => Some(b),
        _ => None,
    }
}

/// Larger sum of margins against the losers.
pub fn brute_qb(ratings: &RatingsMatrix, first: usize, second: usize) -> Option<usize> {
    let score = |f: usize| -> i64 {
        (0..ratings.n_candidates())
            .filter(|&l| l != first && l != second)
            .map(|l| brute_margin(ratings, f, l))
            .sum()
    };
    match score(first).cmp(&score(second)) {
        std::cmp::Ordering::Greater => Some(first),
        std::cmp::Ordering::Less => Some(second),
        std::cmp::Ordering::Equal => None,
    }
}

/// Larger minimum margin against the losers.
pub fn brute_qm(ratings: &RatingsMatrix, first: usize, second: usize) -> Option<usize> {
    let score = |f: usize| -> i64 {
        (0..ratings.n_candidates())
            .filter(|&l| l != first && l != second)
            .map(|l| brute_margin(ratings, f, l))
            .min()
            .expect("at least one loser")
    };
    match score(first).cmp(&score(second)) {
        std::cmp::Ordering::Greater => Some(first),
        std::cmp::Ordering::Less => Some(second),
        std::cmp::Ordering::Equal => None,
    }
}
