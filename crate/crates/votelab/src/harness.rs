//! End-to-end runner for the twelve finalist studies: simulate electorates,
//! pick two finalists by majority judgment, filter and discard, score the
//! four systems (MJ, MR, QB, QM) against centrism, and report the ten
//! statistic lines.

use crate::driver::run_kept_trials;
use crate::error::{Error, Result};
use crate::rng::TrialRng;
use crate::rules::{mr_two_way, qb_winner, qm_winner, select_finalists, Decision, FinalistPair};
use crate::spatial::{make_ratings, sample_trial, CandidateId, RatingsMatrix, StudyType, TrialSetup};
use crate::stats::standard_error;
use crate::tally::{margin, PairwiseTally};
use serde::Serialize;

/// Everything needed to reproduce one study run exactly. Worker count is
/// excluded from serialized output because it never affects results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StudyConfig {
    pub study_type: StudyType,
    pub candidates: usize,
    pub n_voters: usize,
    pub target_kept_trials: u64,
    pub master_seed: u64,
    #[serde(skip_serializing)]
    pub workers: usize,
}

impl StudyConfig {
    fn validate(&self) -> Result<()> {
        if self.candidates < 3 {
            return Err(Error::InvalidCandidateCount { min: 3, got: self.candidates });
        }
        if self.n_voters < 1 {
            return Err(Error::InvalidVoterCount(self.n_voters));
        }
        if self.target_kept_trials == 0 {
            return Err(Error::ZeroTargetTrials);
        }
        if self.workers == 0 {
            return Err(Error::ZeroWorkers);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiscardReason {
    /// A finalist failed to beat every loser head-to-head.
    FinalistFilter,
    /// MR, QB, or QM could not separate the finalists.
    TieInSystem,
    /// Majority judgment itself could not name a finalist.
    UnresolvedMj,
}

/// A trial that survived every filter, with each system's pick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KeptTrial {
    pub finalists: FinalistPair,
    pub mj_pick: CandidateId,
    pub mr_pick: CandidateId,
    pub qb_pick: CandidateId,
    pub qm_pick: CandidateId,
    pub more_centrist_finalist: CandidateId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrialVerdict {
    Kept(KeptTrial),
    Discarded(DiscardReason),
}

/// Evaluates one simulated election.
///
/// The two finalists are the MJ winner and the MJ winner of the rest.
/// The trial is kept only when both finalists beat every loser head to
/// head and all four systems resolve; MJ's pick is the first finalist by
/// construction.
pub fn run_trial(setup: &TrialSetup, ratings: &RatingsMatrix) -> TrialVerdict {
    assert!(ratings.n_candidates() >= 3, "finalist studies need at least 3 candidates");
    assert_eq!(ratings.n_candidates(), setup.n_candidates());

    let finalists = match select_finalists(ratings) {
        Ok(pair) => pair,
        Err(Error::UnresolvedTie(_)) => {
            return TrialVerdict::Discarded(DiscardReason::UnresolvedMj)
        }
        Err(e) => unreachable!("validated inputs: {e}"),
    };

    let tally = PairwiseTally::from_ratings(ratings);
    let losers: Vec<CandidateId> =
        tally.candidate_ids().filter(|&c| !finalists.contains(c)).collect();
    let beats_all = |f: CandidateId| {
        losers.iter().all(|&l| margin(&tally, f, l).expect("distinct") > 0)
    };
    if !beats_all(finalists.first) || !beats_all(finalists.second) {
        return TrialVerdict::Discarded(DiscardReason::FinalistFilter);
    }

    let Decision::Winner(mr_pick) = mr_two_way(&tally, finalists.first, finalists.second)
        .expect("distinct finalists")
    else {
        return TrialVerdict::Discarded(DiscardReason::TieInSystem);
    };
    let Decision::Winner(qb_pick) = qb_winner(&tally, finalists, &losers) else {
        return TrialVerdict::Discarded(DiscardReason::TieInSystem);
    };
    let Decision::Winner(qm_pick) = qm_winner(&tally, finalists, &losers) else {
        return TrialVerdict::Discarded(DiscardReason::TieInSystem);
    };

    let centrism = setup.centrism_values();
    let more_centrist_finalist = if centrism[finalists.first.0] <= centrism[finalists.second.0] {
        finalists.first
    } else {
        finalists.second
    };

    TrialVerdict::Kept(KeptTrial {
        finalists,
        mj_pick: finalists.first,
        mr_pick,
        qb_pick,
        qm_pick,
        more_centrist_finalist,
    })
}

/// One line of the ten-line study report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineStat {
    pub line: u8,
    pub label: &'static str,
    pub numerator: u64,
    pub denominator: u64,
    /// 100 * numerator / denominator; absent when the denominator is 0.
    pub percent: Option<f64>,
    pub standard_error: Option<f64>,
}

impl LineStat {
    fn new(line: u8, label: &'static str, numerator: u64, denominator: u64) -> Self {
        let (percent, se) = if denominator == 0 {
            (None, None)
        } else {
            let p = numerator as f64 / denominator as f64;
            (
                Some(100.0 * p),
                Some(standard_error(p, denominator as usize).expect("nonzero denominator")),
            )
        };
        Self { line, label, numerator, denominator, percent, standard_error: se }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Result {
    pub lines: Vec<LineStat>,
    pub kept: u64,
    pub discarded_finalist_filter: u64,
    pub discarded_tie_in_system: u64,
    pub discarded_unresolved_mj: u64,
    pub consumed: u64,
}

impl Table1Result {
    pub fn line(&self, line: u8) -> &LineStat {
        &self.lines[usize::from(line) - 1]
    }
}

/// Per-line hit and disagreement counters over the kept trials.
#[derive(Debug, Default)]
struct Counters {
    kept: u64,
    qb_hits: u64,
    qm_hits: u64,
    qbqm_agree: u64,
    qbqm_hits: u64,
    // (wins-for-first, disagreements) per compared pair
    qb_mj: (u64, u64),
    qm_mj: (u64, u64),
    qbqm_mj: (u64, u64),
    mr_mj: (u64, u64),
    qb_mr: (u64, u64),
    qm_mr: (u64, u64),
    qbqm_mr: (u64, u64),
}

impl Counters {
    fn absorb(&mut self, t: &KeptTrial) {
        let hit = |pick: CandidateId| u64::from(pick == t.more_centrist_finalist);
        let duel = |slot: &mut (u64, u64), first: CandidateId, second: CandidateId| {
            if first != second {
                slot.0 += hit(first);
                slot.1 += 1;
            }
        };
        self.kept += 1;
        self.qb_hits += hit(t.qb_pick);
        self.qm_hits += hit(t.qm_pick);
        if t.qb_pick == t.qm_pick {
            self.qbqm_agree += 1;
            self.qbqm_hits += hit(t.qb_pick);
            duel(&mut self.qbqm_mj, t.qb_pick, t.mj_pick);
            duel(&mut self.qbqm_mr, t.qb_pick, t.mr_pick);
        }
        duel(&mut self.qb_mj, t.qb_pick, t.mj_pick);
        duel(&mut self.qm_mj, t.qm_pick, t.mj_pick);
        duel(&mut self.mr_mj, t.mr_pick, t.mj_pick);
        duel(&mut self.qb_mr, t.qb_pick, t.mr_pick);
        duel(&mut self.qm_mr, t.qm_pick, t.mr_pick);
    }

    fn into_lines(self) -> Vec<LineStat> {
        vec![
            LineStat::new(1, "QB", self.qb_hits, self.kept),
            LineStat::new(2, "QM", self.qm_hits, self.kept),
            LineStat::new(3, "QBQM", self.qbqm_hits, self.qbqm_agree),
            LineStat::new(4, "QB > MJ", self.qb_mj.0, self.qb_mj.1),
            LineStat::new(5, "QM > MJ", self.qm_mj.0, self.qm_mj.1),
            LineStat::new(6, "QBQM > MJ", self.qbqm_mj.0, self.qbqm_mj.1),
            LineStat::new(7, "MR > MJ", self.mr_mj.0, self.mr_mj.1),
            LineStat::new(8, "QB > MR", self.qb_mr.0, self.qb_mr.1),
            LineStat::new(9, "QM > MR", self.qm_mr.0, self.qm_mr.1),
            LineStat::new(10, "QBQM > MR", self.qbqm_mr.0, self.qbqm_mr.1),
        ]
    }
}

/// Runs one study: trial indices are consumed in order until the target
/// number of kept trials is reached. Identical configs give identical
/// results for any worker count.
pub fn run_table1_study(config: &StudyConfig) -> Result<Table1Result> {
    config.validate()?;
    let rng = TrialRng::new(config.master_seed);
    let eval = |index: u64| -> TrialVerdict {
        let mut stream = rng.stream(index);
        let setup = sample_trial(config.n_voters, config.candidates, &mut stream)
            .expect("validated config");
        let ratings = make_ratings(&setup, config.study_type, &mut stream);
        run_trial(&setup, &ratings)
    };

    let mut counters = Counters::default();
    let mut finalist_filter = 0u64;
    let mut tie_in_system = 0u64;
    let mut unresolved_mj = 0u64;
    let outcome = run_kept_trials(
        config.target_kept_trials,
        config.workers,
        eval,
        |verdict| match verdict {
            TrialVerdict::Kept(t) => {
                counters.absorb(&t);
                true
            }
            TrialVerdict::Discarded(DiscardReason::FinalistFilter) => {
                finalist_filter += 1;
                false
            }
            TrialVerdict::Discarded(DiscardReason::TieInSystem) => {
                tie_in_system += 1;
                false
            }
            TrialVerdict::Discarded(DiscardReason::UnresolvedMj) => {
                unresolved_mj += 1;
                false
            }
        },
    )?;

    debug_assert_eq!(counters.kept, outcome.kept);
    Ok(Table1Result {
        lines: counters.into_lines(),
        kept: outcome.kept,
        discarded_finalist_filter: finalist_filter,
        discarded_tie_in_system: tie_in_system,
        discarded_unresolved_mj: unresolved_mj,
        consumed: outcome.consumed,
    })
}
