//! What should happen when a candidate withdraws after the votes are in?
//!
//! Three strategies pick a replacement winner from the remaining pair:
//! HH reruns the head-to-head race, MM keeps the candidate with the
//! smaller largest loss (counting the race against the withdrawn
//! candidate), and WM keeps the candidate who lost to the withdrawn
//! candidate by less. Three studies score the strategies on 3-candidate,
//! 75-voter spatial electorates by asking which strategy's pick sits
//! closer to the voter mean.

use crate::driver::run_kept_trials;
use crate::error::{Error, Result};
use crate::rng::TrialRng;
use crate::rules::{minimax_winner, Decision};
use crate::spatial::{centrism, make_ratings, sample_trial, CandidateId, StudyType};
use crate::tally::{condorcet_winner, largest_loss, margin, PairwiseTally};
use serde::Serialize;

/// One simulated withdrawal: the full 3-candidate tally, each candidate's
/// distance from the voter mean, and who dropped out.
#[derive(Debug, Clone)]
pub struct DropoutTrial {
    tally: PairwiseTally,
    centrism: [f64; 3],
    withdrawn: CandidateId,
    remaining: [CandidateId; 2],
}

impl DropoutTrial {
    pub fn new(
        tally: PairwiseTally,
        centrism: [f64; 3],
        withdrawn: CandidateId,
        remaining: [CandidateId; 2],
    ) -> Result<Self> {
        if tally.n_candidates() != 3 {
            return Err(Error::InvalidCandidateCount { min: 3, got: tally.n_candidates() });
        }
        for c in [withdrawn, remaining[0], remaining[1]] {
            if c.0 >= 3 {
                return Err(Error::CandidateOutOfRange { index: c.0, count: 3 });
            }
        }
        if remaining.contains(&withdrawn) || remaining[0] == remaining[1] {
            return Err(Error::StrategyTie("withdrawn and remaining candidates must be distinct"));
        }
        Ok(Self { tally, centrism, withdrawn, remaining })
    }

    pub fn tally(&self) -> &PairwiseTally {
        &self.tally
    }

    pub fn centrism(&self, c: CandidateId) -> f64 {
        self.centrism[c.0]
    }

    pub fn withdrawn(&self) -> CandidateId {
        self.withdrawn
    }

    pub fn remaining(&self) -> [CandidateId; 2] {
        self.remaining
    }

    /// The remaining candidate closer to the voter mean.
    fn more_centrist_remaining(&self) -> CandidateId {
        let [a, b] = self.remaining;
        if self.centrism[a.0] <= self.centrism[b.0] {
            a
        } else {
            b
        }
    }
}

/// Head-to-head: majority rule between the remaining pair.
pub fn strategy_hh(trial: &DropoutTrial) -> Result<CandidateId> {
    let [a, b] = trial.remaining;
    let m = margin(&trial.tally, a, b)?;
    match m.cmp(&0) {
        std::cmp::Ordering::Greater => Ok(a),
        std::cmp::Ordering::Less => Ok(b),
        std::cmp::Ordering::Equal => Err(Error::StrategyTie("zero head-to-head margin")),
    }
}

/// Minimax modified: the remaining candidate whose largest loss is
/// smaller. Losses are taken over both of the candidate's races, so a
/// defeat by the withdrawn candidate still counts.
pub fn strategy_mm(trial: &DropoutTrial) -> Result<CandidateId> {
    let [a, b] = trial.remaining;
    let ll_a = largest_loss(&trial.tally, a);
    let ll_b = largest_loss(&trial.tally, b);
    match ll_a.cmp(&ll_b) {
        std::cmp::Ordering::Less => Ok(a),
        std::cmp::Ordering::Greater => Ok(b),
        std::cmp::Ordering::Equal => Err(Error::StrategyTie("equal largest losses")),
    }
}

/// Winner's margin: the remaining candidate who lost to the withdrawn
/// candidate by less. Beating the withdrawn candidate counts as a
/// negative loss margin, smaller than any true loss.
pub fn strategy_wm(trial: &DropoutTrial) -> Result<CandidateId> {
    let [a, b] = trial.remaining;
    let loss_a = margin(&trial.tally, trial.withdrawn, a)?;
    let loss_b = margin(&trial.tally, trial.withdrawn, b)?;
    match loss_a.cmp(&loss_b) {
        std::cmp::Ordering::Less => Ok(a),
        std::cmp::Ordering::Greater => Ok(b),
        std::cmp::Ordering::Equal => Err(Error::StrategyTie("equal margins of loss")),
    }
}

/// Scoreboard for one pair of strategies over the trials where they
/// picked different winners; the strategy whose pick was more centrist
/// wins the trial.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StrategyDuel {
    pub wins_first: u64,
    pub wins_second: u64,
}

impl StrategyDuel {
    pub fn disagreements(&self) -> u64 {
        self.wins_first + self.wins_second
    }

    /// Share of disagreement trials won by the first strategy, in [0, 1].
    pub fn share_first(&self) -> f64 {
        self.wins_first as f64 / self.disagreements() as f64
    }

    fn record(&mut self, first: CandidateId, second: CandidateId, best: CandidateId) {
        if first == second {
            return;
        }
        if first == best {
            self.wins_first += 1;
        } else {
            self.wins_second += 1;
        }
    }
}

/// Study 1: the Condorcet winner withdraws from a paradox-free race.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Study1Result {
    pub kept: u64,
    /// Disagreement duels, first strategy named first.
    pub duel_wm_hh: StrategyDuel,
    pub duel_wm_mm: StrategyDuel,
    pub duel_hh_mm: StrategyDuel,
    /// Trials on which the strategy picked the more centrist of the two
    /// remaining candidates, out of all kept trials.
    pub hits_hh: u64,
    pub hits_mm: u64,
    pub hits_wm: u64,
    pub discarded_no_condorcet_winner: u64,
    pub discarded_strategy_tie: u64,
    pub consumed: u64,
}

/// Study 2: the minimax winner of a Condorcet cycle withdraws.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Study2Result {
    pub kept: u64,
    pub duel_mm_hh: StrategyDuel,
    pub duel_mm_wm: StrategyDuel,
    pub duel_hh_wm: StrategyDuel,
    pub discarded_no_paradox: u64,
    pub discarded_equal_lls: u64,
    pub consumed: u64,
}

/// Study 3: the candidate beaten by the minimax winner withdraws; does
/// the minimax winner deserve to keep the seat on centrism grounds?
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Study3Result {
    pub kept: u64,
    pub minimax_more_centrist: u64,
    pub challenger_more_centrist: u64,
    pub discarded_no_paradox: u64,
    pub discarded_equal_lls: u64,
    pub consumed: u64,
}

/// Shared trial material: spatial tally plus exact centrism values.
fn sample_dropout_tally(n_voters: usize, rng: &mut impl rand::Rng) -> (PairwiseTally, [f64; 3]) {
    let setup = sample_trial(n_voters, 3, rng).expect("valid dropout trial shape");
    let ratings = make_ratings(&setup, StudyType::Type1, rng);
    let tally = PairwiseTally::from_ratings(&ratings);
    let mut cent = [0.0; 3];
    for (i, slot) in cent.iter_mut().enumerate() {
        *slot = centrism(&setup.candidates()[i], &setup);
    }
    (tally, cent)
}

enum Study1Verdict {
    NoCondorcetWinner,
    StrategyTie,
    Kept { hh: CandidateId, mm: CandidateId, wm: CandidateId, best: CandidateId },
}

pub fn run_study1(
    n_voters: usize,
    target_kept: u64,
    seed: u64,
    workers: usize,
) -> Result<Study1Result> {
    let rng = TrialRng::new(seed);
    let eval = |index: u64| -> Study1Verdict {
        let mut stream = rng.stream(index);
        let (tally, cent) = sample_dropout_tally(n_voters, &mut stream);
        let Some(winner) = condorcet_winner(&tally) else {
            return Study1Verdict::NoCondorcetWinner;
        };
        let remaining: Vec<CandidateId> =
            tally.candidate_ids().filter(|&c| c != winner).collect();
        let trial = DropoutTrial::new(tally, cent, winner, [remaining[0], remaining[1]])
            .expect("well-formed trial");
        let (Ok(hh), Ok(mm), Ok(wm)) =
            (strategy_hh(&trial), strategy_mm(&trial), strategy_wm(&trial))
        else {
            return Study1Verdict::StrategyTie;
        };
        Study1Verdict::Kept { hh, mm, wm, best: trial.more_centrist_remaining() }
    };

    let mut result = Study1Result::default();
    let outcome = run_kept_trials(target_kept, workers, eval, |verdict| match verdict {
        Study1Verdict::NoCondorcetWinner => {
            result.discarded_no_condorcet_winner += 1;
            false
        }
        Study1Verdict::StrategyTie => {
            result.discarded_strategy_tie += 1;
            false
        }
        Study1Verdict::Kept { hh, mm, wm, best } => {
            result.duel_wm_hh.record(wm, hh, best);
            result.duel_wm_mm.record(wm, mm, best);
            result.duel_hh_mm.record(hh, mm, best);
            result.hits_hh += u64::from(hh == best);
            result.hits_mm += u64::from(mm == best);
            result.hits_wm += u64::from(wm == best);
            true
        }
    })?;
    result.kept = outcome.kept;
    result.consumed = outcome.consumed;
    Ok(result)
}

enum CycleVerdict {
    NoParadox,
    EqualLls,
    Kept { trial: DropoutTrial, minimax: CandidateId },
}

/// Common filter for Studies 2 and 3: a strict Condorcet cycle whose three
/// largest losses are all different, which makes the minimax winner
/// unique. Returns the trial with the minimax winner withdrawn.
fn cycle_verdict(tally: PairwiseTally, cent: [f64; 3]) -> CycleVerdict {
    let ids: Vec<CandidateId> = tally.candidate_ids().collect();
    let any_zero_margin = ids
        .iter()
        .flat_map(|&a| ids.iter().map(move |&b| (a, b)))
        .filter(|(a, b)| a.0 < b.0)
        .any(|(a, b)| margin(&tally, a, b).unwrap() == 0);
    if any_zero_margin || condorcet_winner(&tally).is_some() {
        return CycleVerdict::NoParadox;
    }
    let lls: Vec<i64> = ids.iter().map(|&c| largest_loss(&tally, c)).collect();
    if lls[0] == lls[1] || lls[0] == lls[2] || lls[1] == lls[2] {
        return CycleVerdict::EqualLls;
    }
    let minimax = minimax_winner(&tally);
    let Decision::Winner(w) = minimax else {
        unreachable!("distinct largest losses force a unique minimax winner")
    };
    let remaining: Vec<CandidateId> = ids.into_iter().filter(|&c| c != w).collect();
    let trial = DropoutTrial::new(tally, cent, w, [remaining[0], remaining[1]])
        .expect("well-formed trial");
    CycleVerdict::Kept { trial, minimax: w }
}

pub fn run_study2(
    n_voters: usize,
    target_kept: u64,
    seed: u64,
    workers: usize,
) -> Result<Study2Result> {
    let rng = TrialRng::new(seed);
    let eval = |index: u64| -> CycleVerdict {
        let mut stream = rng.stream(index);
        let (tally, cent) = sample_dropout_tally(n_voters, &mut stream);
        cycle_verdict(tally, cent)
    };

    let mut result = Study2Result::default();
    let mut ties = 0u64;
    let outcome = run_kept_trials(target_kept, workers, eval, |verdict| match verdict {
        CycleVerdict::NoParadox => {
            result.discarded_no_paradox += 1;
            false
        }
        CycleVerdict::EqualLls => {
            result.discarded_equal_lls += 1;
            false
        }
        CycleVerdict::Kept { trial, .. } => {
            let (Ok(hh), Ok(mm), Ok(wm)) =
                (strategy_hh(&trial), strategy_mm(&trial), strategy_wm(&trial))
            else {
                ties += 1;
                return false;
            };
            let best = trial.more_centrist_remaining();
            result.duel_mm_hh.record(mm, hh, best);
            result.duel_mm_wm.record(mm, wm, best);
            result.duel_hh_wm.record(hh, wm, best);
            true
        }
    })?;
    // The distinct-LL filter leaves no room for strategy ties: WM compares
    // a win with a loss and MM compares two of the three distinct losses.
    debug_assert_eq!(ties, 0);
    result.discarded_equal_lls += ties;
    result.kept = outcome.kept;
    result.consumed = outcome.consumed;
    Ok(result)
}

pub fn run_study3(
    n_voters: usize,
    target_kept: u64,
    seed: u64,
    workers: usize,
) -> Result<Study3Result> {
    let rng = TrialRng::new(seed);
    let eval = |index: u64| -> CycleVerdict {
        let mut stream = rng.stream(index);
        let (tally, cent) = sample_dropout_tally(n_voters, &mut stream);
        cycle_verdict(tally, cent)
    };

    let mut result = Study3Result::default();
    let outcome = run_kept_trials(target_kept, workers, eval, |verdict| match verdict {
        CycleVerdict::NoParadox => {
            result.discarded_no_paradox += 1;
            false
        }
        CycleVerdict::EqualLls => {
            result.discarded_equal_lls += 1;
            false
        }
        CycleVerdict::Kept { trial, minimax } => {
            // The minimax winner stays; the candidate they beat withdraws,
            // leaving the challenger who beat the minimax winner.
            let [a, b] = trial.remaining();
            let beaten =
                if margin(trial.tally(), minimax, a).unwrap() > 0 { a } else { b };
            let challenger = if beaten == a { b } else { a };
            debug_assert!(margin(trial.tally(), challenger, minimax).unwrap() > 0);
            if trial.centrism(minimax) <= trial.centrism(challenger) {
                result.minimax_more_centrist += 1;
            } else {
                result.challenger_more_centrist += 1;
            }
            true
        }
    })?;
    result.kept = outcome.kept;
    result.consumed = outcome.consumed;
    Ok(result)
}
