//! Result export: CSV for reading and diffing, JSON for audit.
//!
//! Every file embeds the command and configuration needed to reproduce it.
//! Worker count is never embedded because it cannot affect results.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::ballots::BallotFile;
use crate::dropout::{Study1Result, Study2Result, Study3Result};
use crate::error::Result;
use crate::harness::{StudyConfig, Table1Result};
use crate::rules::{minimax_winner, mj_winner, mr_two_way, qb_winner, qm_winner, select_finalists};
use crate::spatial::CandidateId;
use crate::stats::standard_error;
use crate::tally::{condorcet_winner, margin, PairwiseTally};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Reproduction parameters for a dropout study run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DropoutConfig {
    pub n_voters: usize,
    pub target_kept_trials: u64,
    pub master_seed: u64,
    #[serde(skip_serializing)]
    pub workers: usize,
}

/// A completed run, ready to serialize.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum RunReport {
    Table1 { config: StudyConfig, result: Table1Result },
    Dropout1 { config: DropoutConfig, result: Study1Result },
    Dropout2 { config: DropoutConfig, result: Study2Result },
    Dropout3 { config: DropoutConfig, result: Study3Result },
    Election { source: String, result: ElectionReport },
}

impl RunReport {
    fn command(&self) -> &'static str {
        match self {
            RunReport::Table1 { .. } => "table1",
            RunReport::Dropout1 { .. } => "dropout1",
            RunReport::Dropout2 { .. } => "dropout2",
            RunReport::Dropout3 { .. } => "dropout3",
            RunReport::Election { .. } => "election",
        }
    }

    /// The `#` comment line embedded at the top of CSV output: the command
    /// plus the JSON of its reproduction parameters.
    fn csv_header_comment(&self) -> Result<String> {
        let params = match self {
            RunReport::Table1 { config, .. } => serde_json::to_string(config)?,
            RunReport::Dropout1 { config, .. }
            | RunReport::Dropout2 { config, .. }
            | RunReport::Dropout3 { config, .. } => serde_json::to_string(&config)?,
            RunReport::Election { source, .. } => serde_json::to_string(&source)?,
        };
        Ok(format!("# {} {}", self.command(), params))
    }

    pub fn write_to(&self, format: OutputFormat, w: &mut dyn Write) -> Result<()> {
        match format {
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut *w, self)?;
                writeln!(w)?;
            }
            OutputFormat::Csv => {
                writeln!(w, "{}", self.csv_header_comment()?)?;
                match self {
                    RunReport::Table1 { result, .. } => table1_csv(result, w)?,
                    RunReport::Dropout1 { result, .. } => dropout1_csv(result, w)?,
                    RunReport::Dropout2 { result, .. } => dropout2_csv(result, w)?,
                    RunReport::Dropout3 { result, .. } => dropout3_csv(result, w)?,
                    RunReport::Election { result, .. } => election_csv(result, w)?,
                }
            }
        }
        Ok(())
    }

    /// Writes the report to `path`. CSV study output also writes a
    /// full-precision companion next to it (`<stem>.full.csv`) carrying
    /// numerators, denominators, and standard errors.
    pub fn write_to_path(&self, format: OutputFormat, path: &Path) -> Result<()> {
        let mut file = std::fs::File::create(path)?;
        self.write_to(format, &mut file)?;
        file.flush()?;
        if format == OutputFormat::Csv {
            if let RunReport::Table1 { result, .. } = self {
                let mut full = std::fs::File::create(companion_path(path))?;
                writeln!(full, "{}", self.csv_header_comment()?)?;
                table1_full_csv(result, &mut full)?;
                full.flush()?;
            }
        }
        Ok(())
    }
}

/// `results.csv` -> `results.full.csv`.
fn companion_path(path: &Path) -> std::path::PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    path.with_file_name(format!("{stem}.full.csv"))
}

/// Presentation rounding: half away from zero, as in `f64::round`.
pub fn rounded_percent(percent: f64) -> i64 {
    percent.round() as i64
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn table1_csv(result: &Table1Result, w: &mut dyn Write) -> Result<()> {
    writeln!(w, "line,label,percent")?;
    for line in &result.lines {
        let pct = line.percent.map(rounded_percent);
        writeln!(
            w,
            "{},{},{}",
            line.line,
            line.label,
            pct.map(|p| p.to_string()).unwrap_or_default()
        )?;
    }
    Ok(())
}

fn table1_full_csv(result: &Table1Result, w: &mut dyn Write) -> Result<()> {
    writeln!(w, "line,label,numerator,denominator,percent,standard_error")?;
    for line in &result.lines {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            line.line,
            line.label,
            line.numerator,
            line.denominator,
            fmt_opt(line.percent),
            fmt_opt(line.standard_error),
        )?;
    }
    writeln!(w, "kept,,{},,,", result.kept)?;
    writeln!(w, "discarded_finalist_filter,,{},,,", result.discarded_finalist_filter)?;
    writeln!(w, "discarded_tie_in_system,,{},,,", result.discarded_tie_in_system)?;
    writeln!(w, "discarded_unresolved_mj,,{},,,", result.discarded_unresolved_mj)?;
    writeln!(w, "consumed,,{},,,", result.consumed)?;
    Ok(())
}

/// Shared row shape for the dropout CSVs: counts plus a derived percent
/// with its standard error.
fn stat_row(w: &mut dyn Write, metric: &str, numerator: u64, denominator: u64) -> Result<()> {
    if denominator == 0 {
        writeln!(w, "{metric},{numerator},{denominator},,")?;
    } else {
        let p = numerator as f64 / denominator as f64;
        let se = standard_error(p, denominator as usize).expect("nonzero denominator");
        writeln!(w, "{metric},{numerator},{denominator},{},{se}", 100.0 * p)?;
    }
    Ok(())
}

fn count_row(w: &mut dyn Write, metric: &str, value: u64) -> Result<()> {
    writeln!(w, "{metric},{value},,,")?;
    Ok(())
}

fn dropout1_csv(r: &Study1Result, w: &mut dyn Write) -> Result<()> {
    writeln!(w, "metric,numerator,denominator,percent,standard_error")?;
    stat_row(w, "duel WM over HH", r.duel_wm_hh.wins_first, r.duel_wm_hh.disagreements())?;
    stat_row(w, "duel WM over MM", r.duel_wm_mm.wins_first, r.duel_wm_mm.disagreements())?;
    stat_row(w, "duel HH over MM", r.duel_hh_mm.wins_first, r.duel_hh_mm.disagreements())?;
    stat_row(w, "HH picked the winner", r.hits_hh, r.kept)?;
    stat_row(w, "MM picked the winner", r.hits_mm, r.kept)?;
    stat_row(w, "WM picked the winner", r.hits_wm, r.kept)?;
    count_row(w, "kept", r.kept)?;
    count_row(w, "discarded_no_condorcet_winner", r.discarded_no_condorcet_winner)?;
    count_row(w, "discarded_strategy_tie", r.discarded_strategy_tie)?;
    count_row(w, "consumed", r.consumed)?;
    Ok(())
}

fn dropout2_csv(r: &Study2Result, w: &mut dyn Write) -> Result<()> {
    writeln!(w, "metric,numerator,denominator,percent,standard_error")?;
    stat_row(w, "duel MM over HH", r.duel_mm_hh.wins_first, r.duel_mm_hh.disagreements())?;
    stat_row(w, "duel MM over WM", r.duel_mm_wm.wins_first, r.duel_mm_wm.disagreements())?;
    stat_row(w, "duel HH over WM", r.duel_hh_wm.wins_first, r.duel_hh_wm.disagreements())?;
    count_row(w, "kept", r.kept)?;
    count_row(w, "discarded_no_paradox", r.discarded_no_paradox)?;
    count_row(w, "discarded_equal_largest_losses", r.discarded_equal_lls)?;
    count_row(w, "consumed", r.consumed)?;
    Ok(())
}

fn dropout3_csv(r: &Study3Result, w: &mut dyn Write) -> Result<()> {
    writeln!(w, "metric,numerator,denominator,percent,standard_error")?;
    stat_row(w, "minimax winner more centrist", r.minimax_more_centrist, r.kept)?;
    count_row(w, "kept", r.kept)?;
    count_row(w, "discarded_no_paradox", r.discarded_no_paradox)?;
    count_row(w, "discarded_equal_largest_losses", r.discarded_equal_lls)?;
    count_row(w, "consumed", r.consumed)?;
    Ok(())
}

/// Every rule's answer on one ballot file.
///
/// `None` means the rule could not separate the relevant candidates: an
/// exact tie for minimax, majority rule, and the finalist rules, or an
/// unresolvable grade distribution for majority judgment. The finalist
/// rules are reported only for three or more candidates; with two, the
/// head-to-head race is the whole story.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElectionReport {
    pub n_voters: usize,
    pub candidates: Vec<String>,
    pub mj_winner: Option<String>,
    pub mj_medians: Vec<NamedValue>,
    pub mj_tiebreak_used: bool,
    pub mj_tiebreak_row: Option<usize>,
    pub condorcet_winner: Option<String>,
    pub minimax_winner: Option<String>,
    /// Signed margin per candidate pair, first name over the second.
    pub margins: Vec<PairMargin>,
    pub finalists: Option<[String; 2]>,
    pub mr_winner: Option<String>,
    pub qb_winner: Option<String>,
    pub qm_winner: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairMargin {
    pub first: String,
    pub second: String,
    pub margin: i64,
}

/// Evaluates every rule on a ballot file.
pub fn evaluate_election(ballots: &BallotFile) -> ElectionReport {
    let ratings = ballots.ratings();
    let c = ratings.n_candidates();
    let name = |id: CandidateId| ballots.name(id).to_owned();

    let all: Vec<CandidateId> = ratings.candidate_ids().collect();
    let mj = mj_winner(ratings, &all).expect("at least two candidates");
    let tally = PairwiseTally::from_ratings(ratings);

    let mut margins = Vec::new();
    for a in 0..c {
        for b in (a + 1)..c {
            margins.push(PairMargin {
                first: name(CandidateId(a)),
                second: name(CandidateId(b)),
                margin: margin(&tally, CandidateId(a), CandidateId(b)).expect("distinct"),
            });
        }
    }

    let (finalists, mr, qb, qm) = if c == 2 {
        let mr = mr_two_way(&tally, CandidateId(0), CandidateId(1)).expect("distinct");
        (None, mr.winner(), None, None)
    } else {
        match select_finalists(ratings) {
            Ok(pair) => {
                let losers: Vec<CandidateId> =
                    all.iter().copied().filter(|&x| !pair.contains(x)).collect();
                let mr = mr_two_way(&tally, pair.first, pair.second).expect("distinct");
                let qb = qb_winner(&tally, pair, &losers);
                let qm = qm_winner(&tally, pair, &losers);
                (
                    Some([name(pair.first), name(pair.second)]),
                    mr.winner(),
                    qb.winner(),
                    qm.winner(),
                )
            }
            Err(_) => (None, None, None, None),
        }
    };

    ElectionReport {
        n_voters: ratings.n_voters(),
        candidates: ballots.names().to_vec(),
        mj_winner: mj.winner.map(name),
        mj_medians: mj
            .medians
            .iter()
            .map(|&(id, m)| NamedValue { name: name(id), value: m })
            .collect(),
        mj_tiebreak_used: mj.tiebreak_used,
        mj_tiebreak_row: mj.tiebreak_row,
        condorcet_winner: condorcet_winner(&tally).map(name),
        minimax_winner: minimax_winner(&tally).winner().map(name),
        margins,
        finalists,
        mr_winner: mr.map(name),
        qb_winner: qb.map(name),
        qm_winner: qm.map(name),
    }
}

fn election_csv(r: &ElectionReport, w: &mut dyn Write) -> Result<()> {
    let none = "(none)";
    writeln!(w, "metric,value")?;
    writeln!(w, "n_voters,{}", r.n_voters)?;
    writeln!(w, "candidates,{}", r.candidates.join(" "))?;
    writeln!(w, "mj_winner,{}", r.mj_winner.as_deref().unwrap_or(none))?;
    for m in &r.mj_medians {
        writeln!(w, "mj_median {},{}", m.name, m.value)?;
    }
    writeln!(w, "mj_tiebreak_used,{}", r.mj_tiebreak_used)?;
    if let Some(row) = r.mj_tiebreak_row {
        writeln!(w, "mj_tiebreak_row,{row}")?;
    }
    writeln!(w, "condorcet_winner,{}", r.condorcet_winner.as_deref().unwrap_or(none))?;
    writeln!(w, "minimax_winner,{}", r.minimax_winner.as_deref().unwrap_or(none))?;
    for m in &r.margins {
        writeln!(w, "margin {} over {},{}", m.first, m.second, m.margin)?;
    }
    if let Some([a, b]) = &r.finalists {
        writeln!(w, "finalists,{a} {b}")?;
    }
    writeln!(w, "mr_winner,{}", r.mr_winner.as_deref().unwrap_or(none))?;
    if r.finalists.is_some() {
        writeln!(w, "qb_winner,{}", r.qb_winner.as_deref().unwrap_or(none))?;
        writeln!(w, "qm_winner,{}", r.qm_winner.as_deref().unwrap_or(none))?;
    }
    Ok(())
}
