//! Ballot-file ingestion and export.
//!
//! Files are comma-separated with a header row of candidate names and one
//! row of grades per voter. A blank cell means the voter never graded that
//! candidate, which places the candidate at the bottom of the scale.

use std::path::Path;

use crate::error::{Error, Result};
use crate::spatial::{CandidateId, RatingsMatrix};

/// Grade imputed for a skipped candidate: the bottom of the scale.
pub const SCALE_BOTTOM: f64 = 1.0;

/// A parsed ballot file: candidate names plus the grade matrix.
#[derive(Debug, Clone)]
pub struct BallotFile {
    names: Vec<String>,
    ratings: RatingsMatrix,
}

impl BallotFile {
    pub fn new(names: Vec<String>, ratings: RatingsMatrix) -> Self {
        assert_eq!(names.len(), ratings.n_candidates(), "one name per candidate");
        Self { names, ratings }
    }

    /// Wraps a matrix under generated names (A, B, C, ...).
    pub fn from_ratings(ratings: RatingsMatrix) -> Self {
        let names = (0..ratings.n_candidates()).map(default_name).collect();
        Self { names, ratings }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, c: CandidateId) -> &str {
        &self.names[c.0]
    }

    pub fn ratings(&self) -> &RatingsMatrix {
        &self.ratings
    }
}

/// Column name used when the caller has none: single letters while they
/// last, then numbered candidates.
pub fn default_name(index: usize) -> String {
    if index < 26 {
        char::from(b'A' + index as u8).to_string()
    } else {
        format!("C{}", index + 1)
    }
}

/// Reads a ballot file. Blank cells are imputed to [`SCALE_BOTTOM`]; ragged
/// rows, non-numeric grades, and files without ballots are rejected.
pub fn ingest_ballots(path: impl AsRef<Path>) -> Result<BallotFile> {
    let path = path.as_ref();
    let fail =
        |reason: String| Error::BallotFormat { path: path.to_path_buf(), reason };

    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let names: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    if names.iter().all(String::is_empty) {
        return Err(fail("empty file: expected a header row of candidate names".into()));
    }
    if names.len() < 2 {
        return Err(fail("header row must name at least two candidates".into()));
    }
    if let Some(i) = names.iter().position(String::is_empty) {
        return Err(fail(format!("header column {} has a blank candidate name", i + 1)));
    }

    let mut grades = Vec::new();
    let mut n_voters = 0;
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = i + 2; // 1-based file line, after the header
        if record.len() != names.len() {
            return Err(fail(format!(
                "row {row} has {} cells, expected {}",
                record.len(),
                names.len()
            )));
        }
        for (cell, name) in record.iter().zip(&names) {
            let grade = if cell.is_empty() {
                SCALE_BOTTOM
            } else {
                cell.parse::<f64>().ok().filter(|g| g.is_finite()).ok_or_else(|| {
                    fail(format!("row {row}, candidate {name}: {cell:?} is not a grade"))
                })?
            };
            grades.push(grade);
        }
        n_voters += 1;
    }
    if n_voters == 0 {
        return Err(fail("no ballot rows after the header".into()));
    }

    let ratings = RatingsMatrix::from_grades(grades, n_voters, names.len())?;
    Ok(BallotFile::new(names, ratings))
}

/// Writes a ballot file that [`ingest_ballots`] reads back exactly.
pub fn write_ballots(path: impl AsRef<Path>, ballots: &BallotFile) -> Result<()> {
    let mut writer = csv::Writer::from_path(path.as_ref())?;
    writer.write_record(ballots.names())?;
    for v in 0..ballots.ratings().n_voters() {
        let row: Vec<String> =
            ballots.ratings().voter_row(v).iter().map(|&g| format_grade(g)).collect();
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Integer grades print without a fractional part so files stay readable;
/// everything else uses the shortest digits that parse back to the same
/// value.
fn format_grade(g: f64) -> String {
    if g.fract() == 0.0 && g.abs() < 1e15 {
        format!("{}", g as i64)
    } else {
        format!("{g}")
    }
}
