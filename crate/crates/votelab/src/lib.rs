//! Monte Carlo laboratory for comparing voting rules on a spatial model
//! of elections.
//!
//! Voters and candidates are points in the plane; a voter grades a
//! candidate by closeness. From those grades the library runs majority
//! judgment (with its matrix tiebreaker), majority rule, minimax, and the
//! margin-based finalist rules, and aggregates agreement statistics over
//! many simulated elections.

pub mod ballots;
pub mod cli;
mod driver;
pub mod dropout;
pub mod error;
pub mod harness;
pub mod report;
pub mod rng;
pub mod rules;
pub mod spatial;
pub mod stats;
pub mod tally;

pub use ballots::{ingest_ballots, write_ballots, BallotFile};
pub use report::{evaluate_election, DropoutConfig, ElectionReport, OutputFormat, RunReport};

pub use harness::{
    run_table1_study, run_trial, DiscardReason, KeptTrial, LineStat, StudyConfig, Table1Result,
    TrialVerdict,
};

pub use dropout::{
    run_study1, run_study2, run_study3, strategy_hh, strategy_mm, strategy_wm, DropoutTrial,
    StrategyDuel, Study1Result, Study2Result, Study3Result,
};
pub use error::{Error, Result};
pub use rng::TrialRng;
pub use rules::{
    mj_winner, mj_winner_sorted, minimax_winner, mr_two_way, qb_winner, qm_winner,
    select_finalists, Decision, FinalistPair, MJOutcome, SortedRatings,
};
pub use spatial::{
    centrism, closeness, make_ratings, round_grade, sample_trial, CandidateId, ClosenessMatrix,
    Point, RatingsMatrix, StudyType, TrialSetup,
};
pub use stats::{binomial_two_tailed, standard_error};
pub use tally::{condorcet_winner, largest_loss, margin, PairwiseTally};
