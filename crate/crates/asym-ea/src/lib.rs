//! A (1+1) evolutionary algorithm on the generalized OneMax function family,
//! with three mutation operators: standard uniform mutation, static asymmetric
//! mutation, and a self-adjusting asymmetric operator that tunes its mutation
//! strengths online via a phase-based random walk.
//!
//! Beyond the algorithm itself the crate provides:
//!
//! - an exact oracle for the probability that a single asymmetric mutation
//!   strictly improves fitness, with brute-force and Monte Carlo counterparts
//!   for cross-validation ([`oracle`]),
//! - a checker for the drift inequality that makes larger mutation strength on
//!   incorrect bits provably better ([`oracle::lemma1_check`]),
//! - Mann-Whitney U statistics for comparing runtime samples ([`stats`]),
//! - a batch experiment harness with CSV output ([`harness`]).
//!
//! # Quick start
//!
//! ```
//! use asym_ea::ea::{run, MutationOperator, RunConfig, RunOutcome, TargetSpec};
//!
//! let config = RunConfig {
//!     n: 500,
//!     target: TargetSpec::AllOnes,
//!     operator: MutationOperator::SelfAdjustingAsymmetric,
//!     alpha: 0.1,
//!     phase_length: 50,
//!     seed: 7,
//!     max_evaluations: 5_000_000,
//!     record_trace: false,
//! };
//! let record = run(&config).unwrap();
//! match record.outcome {
//!     RunOutcome::Reached(evals) => println!("optimum after {evals} evaluations"),
//!     RunOutcome::CapReached => println!("gave up at the evaluation cap"),
//! }
//! ```

pub mod bitstring;
pub mod controller;
pub mod ea;
pub mod error;
pub mod fitness;
pub mod harness;
pub mod mutation;
pub mod oracle;
pub mod stats;

#[cfg(test)]
pub(crate) mod testutil;

pub use bitstring::BitString;
pub use error::{Error, Result};
pub use fitness::{BitProfile, Target};
pub use mutation::ProbabilityPair;
