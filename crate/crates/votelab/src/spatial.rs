//! Two-dimensional spatial electorate model.
//!
//! Voters and candidates are points in a 2-D opinion space, sampled
//! independently from a standard bivariate normal distribution. A voter's
//! raw rating of a candidate is `9 - distance`; the four study types apply
//! rounding and/or per-cell normal noise on top of that.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position in opinion space, in standard-normal units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Index of a candidate within one trial's candidate list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateId(pub usize);

impl CandidateId {
    pub fn index(&self) -> usize {
        self.0
    }
}

/// One sampled electorate: voter and candidate positions.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSetup {
    voters: Vec<Point>,
    candidates: Vec<Point>,
    voter_mean: Point,
}

impl TrialSetup {
    /// Builds a setup from explicit positions, recomputing the voter mean.
    pub fn from_positions(voters: Vec<Point>, candidates: Vec<Point>) -> Result<Self> {
        if voters.is_empty() {
            return Err(Error::InvalidVoterCount(0));
        }
        if candidates.len() < 2 {
            return Err(Error::InvalidCandidateCount { min: 2, got: candidates.len() });
        }
        let n = voters.len() as f64;
        let (sx, sy) = voters
            .iter()
            .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
        let voter_mean = Point::new(sx / n, sy / n);
        Ok(Self { voters, candidates, voter_mean })
    }

    pub fn n_voters(&self) -> usize {
        self.voters.len()
    }

    pub fn n_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn voters(&self) -> &[Point] {
        &self.voters
    }

    pub fn candidates(&self) -> &[Point] {
        &self.candidates
    }

    pub fn candidate(&self, id: CandidateId) -> &Point {
        &self.candidates[id.0]
    }

    pub fn voter_mean(&self) -> Point {
        self.voter_mean
    }

    pub fn candidate_ids(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.candidates.len()).map(CandidateId)
    }

    /// Euclidean distance from each candidate to the voter mean.
    pub fn centrism_values(&self) -> Vec<f64> {
        self.candidates.iter().map(|c| c.distance(&self.voter_mean)).collect()
    }

    /// Raw closeness of every voter-candidate pair, voter-major.
    pub fn closeness_matrix(&self) -> ClosenessMatrix {
        let c = self.candidates.len();
        let mut values = Vec::with_capacity(self.voters.len() * c);
        for voter in &self.voters {
            for cand in &self.candidates {
                values.push(closeness(voter, cand));
            }
        }
        ClosenessMatrix { values, n_voters: self.voters.len(), n_candidates: c }
    }
}

/// Samples a fresh electorate; every coordinate is an independent
/// standard-normal draw (voters first, then candidates).
pub fn sample_trial<R: Rng>(n_voters: usize, c: usize, rng: &mut R) -> Result<TrialSetup> {
    if n_voters < 1 {
        return Err(Error::InvalidVoterCount(n_voters));
    }
    if c < 2 {
        return Err(Error::InvalidCandidateCount { min: 2, got: c });
    }
    let draw = |rng: &mut R| Point::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let voters: Vec<Point> = (0..n_voters).map(|_| draw(rng)).collect();
    let candidates: Vec<Point> = (0..c).map(|_| draw(rng)).collect();
    TrialSetup::from_positions(voters, candidates)
}

/// Distance from a candidate to the mean voter position; lower is more
/// centrist.
pub fn centrism(candidate: &Point, setup: &TrialSetup) -> f64 {
    candidate.distance(&setup.voter_mean)
}

/// Raw voter rating of a candidate: `9 - distance`. Strictly decreasing in
/// distance, equal to 9 exactly when the two points coincide.
pub fn closeness(voter: &Point, candidate: &Point) -> f64 {
    9.0 - voter.distance(candidate)
}

/// Closeness of every voter-candidate pair (voter-major grid).
#[derive(Debug, Clone, PartialEq)]
pub struct ClosenessMatrix {
    values: Vec<f64>,
    n_voters: usize,
    n_candidates: usize,
}

impl ClosenessMatrix {
    pub fn value(&self, voter: usize, candidate: CandidateId) -> f64 {
        self.values[voter * self.n_candidates + candidate.0]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// The four rating pipelines: with or without rounding, with or without an
/// extra per-cell normal error term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StudyType {
    /// Raw closeness values.
    Type1,
    /// Closeness rounded to the nearest integer, clamped to [1, 9].
    Type2,
    /// Closeness plus an independent standard-normal error per cell.
    Type3,
    /// Type 3 rounded to the nearest integer, clamped to [1, 9].
    Type4,
}

impl StudyType {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(StudyType::Type1),
            2 => Ok(StudyType::Type2),
            3 => Ok(StudyType::Type3),
            4 => Ok(StudyType::Type4),
            other => Err(Error::InvalidStudyType(other)),
        }
    }

    pub fn number(&self) -> u8 {
        match self {
            StudyType::Type1 => 1,
            StudyType::Type2 => 2,
            StudyType::Type3 => 3,
            StudyType::Type4 => 4,
        }
    }

    fn adds_noise(&self) -> bool {
        matches!(self, StudyType::Type3 | StudyType::Type4)
    }

    fn rounds(&self) -> bool {
        matches!(self, StudyType::Type2 | StudyType::Type4)
    }
}

/// Voters x candidates grid of grades, as consumed by the voting rules.
///
/// `study_type` is `None` for externally supplied ballot files.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingsMatrix {
    grades: Vec<f64>,
    n_voters: usize,
    n_candidates: usize,
    study_type: Option<StudyType>,
}

impl RatingsMatrix {
    /// Wraps a voter-major grade grid. All grades must be finite.
    pub fn from_grades(grades: Vec<f64>, n_voters: usize, n_candidates: usize) -> Result<Self> {
        if n_voters < 1 {
            return Err(Error::InvalidVoterCount(n_voters));
        }
        if n_candidates < 2 {
            return Err(Error::InvalidCandidateCount { min: 2, got: n_candidates });
        }
        assert_eq!(grades.len(), n_voters * n_candidates, "grade grid shape mismatch");
        assert!(grades.iter().all(|g| g.is_finite()), "grades must be finite");
        Ok(Self { grades, n_voters, n_candidates, study_type: None })
    }

    pub fn n_voters(&self) -> usize {
        self.n_voters
    }

    pub fn n_candidates(&self) -> usize {
        self.n_candidates
    }

    pub fn study_type(&self) -> Option<StudyType> {
        self.study_type
    }

    pub fn grade(&self, voter: usize, candidate: CandidateId) -> f64 {
        self.grades[voter * self.n_candidates + candidate.0]
    }

    /// One voter's grades across all candidates.
    pub fn voter_row(&self, voter: usize) -> &[f64] {
        let start = voter * self.n_candidates;
        &self.grades[start..start + self.n_candidates]
    }

    pub fn grades(&self) -> &[f64] {
        &self.grades
    }

    pub fn candidate_ids(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.n_candidates).map(CandidateId)
    }

    /// Applies `f` to every grade, preserving shape. The study-type tag is
    /// dropped since the transform may break its range guarantees.
    pub fn map_grades(&self, f: impl Fn(f64) -> f64) -> RatingsMatrix {
        RatingsMatrix {
            grades: self.grades.iter().map(|&g| f(g)).collect(),
            n_voters: self.n_voters,
            n_candidates: self.n_candidates,
            study_type: None,
        }
    }

    /// Copy with one candidate's column removed. Remaining candidates keep
    /// their relative order and are renumbered 0..c-1.
    pub fn without_candidate(&self, removed: CandidateId) -> RatingsMatrix {
        assert!(self.n_candidates > 2, "cannot drop below two candidates");
        let keep = self.n_candidates - 1;
        let mut grades = Vec::with_capacity(self.n_voters * keep);
        for v in 0..self.n_voters {
            let row = self.voter_row(v);
            for (i, &g) in row.iter().enumerate() {
                if i != removed.0 {
                    grades.push(g);
                }
            }
        }
        RatingsMatrix {
            grades,
            n_voters: self.n_voters,
            n_candidates: keep,
            study_type: self.study_type,
        }
    }
}

/// Converts a sampled electorate into the ratings fed to the voting rules.
///
/// Types 1 and 2 consume no randomness; Types 3 and 4 draw one
/// standard-normal error per voter-candidate cell, voter-major.
pub fn make_ratings<R: Rng>(
    setup: &TrialSetup,
    study_type: StudyType,
    rng: &mut R,
) -> RatingsMatrix {
    let closeness = setup.closeness_matrix();
    let mut grades = closeness.values;
    if study_type.adds_noise() {
        for g in grades.iter_mut() {
            let noise: f64 = rng.sample(StandardNormal);
            *g += noise;
        }
    }
    if study_type.rounds() {
        for g in grades.iter_mut() {
            *g = round_grade(*g);
        }
    }
    RatingsMatrix {
        grades,
        n_voters: setup.n_voters(),
        n_candidates: setup.n_candidates(),
        study_type: Some(study_type),
    }
}

/// Round half away from zero, then clamp to the 1..9 grade scale.
pub fn round_grade(raw: f64) -> f64 {
    raw.round().clamp(1.0, 9.0)
}
