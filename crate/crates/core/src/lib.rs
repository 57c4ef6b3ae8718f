//! Weighted fair division of indivisible items.
//!
//! The main rules are picking sequences built from divisor and quota apportionment
//! methods, next to maximum weighted Nash welfare and a few unweighted baselines.
//! Fairness verifiers work on allocations and on whole picking sequences.
//! The [`harness`] compares outcomes under perturbations and searches for
//! counterexamples; [`repro`] replays the known ones.
//!
//! All arithmetic is exact over [`Rational`]. Agent and item indices are 0-based
//! in the API and 1-based in every external format.

pub mod baselines;
pub mod cli;
pub mod error;
pub mod executor;
pub mod fairness;
pub mod harness;
pub mod io;
pub mod methods;
pub mod model;
pub mod mwnw;
pub mod rational;
pub mod report;
pub mod repro;

pub use error::{Error, Result};
pub use executor::execute;
pub use fairness::{check_allocation, check_sequence, FairnessVerdict, Notion, Witness};
pub use methods::{DivisorFunction, Exactness, Rule, RuleConfig};
pub use model::{Allocation, Instance, PickingSequence};
pub use rational::Rational;
