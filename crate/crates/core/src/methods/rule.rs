//! Named allocation rules usable by the harness and the CLI.

use std::fmt;

use crate::baselines::{adjusted_winner, envy_cycle_eliminate, round_robin_sequence};
use crate::error::{Error, Result};
use crate::executor::execute;
use crate::methods::{divisor_sequence, parse_divisor_function, quota_sequence, DivisorFunction, Exactness};
use crate::model::{Allocation, Instance, PickingSequence};
use crate::mwnw::{self, SolveOptions};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RuleConfig {
    pub exactness: Exactness,
    pub mwnw: SolveOptions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Divisor(DivisorFunction),
    Quota,
    Mwnw,
    RoundRobin,
    EnvyCycle,
    AdjustedWinner,
    FixedSequence(PickingSequence),
}

impl Rule {
    /// Parses CLI rule names. `custom:@file` must be resolved by the caller.
    pub fn parse(text: &str) -> Result<Rule> {
        match text.trim().to_ascii_lowercase().as_str() {
            "quota" => Ok(Rule::Quota),
            "mwnw" | "mnw" => Ok(Rule::Mwnw),
            "rr" | "round-robin" => Ok(Rule::RoundRobin),
            "ecycle" | "envy-cycle" => Ok(Rule::EnvyCycle),
            "aw" | "adjusted-winner" => Ok(Rule::AdjustedWinner),
            _ => parse_divisor_function(text).map(Rule::Divisor).map_err(|_| {
                Error::arg(format!(
                    "unknown rule `{text}` (expected adams, jefferson, webster, hill, dean, stationary:c, \
                     powermean:p,w, custom:@file, quota, mwnw, rr, ecycle or aw)"
                ))
            }),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Rule::Divisor(f) => f.name(),
            Rule::Quota => "quota".into(),
            Rule::Mwnw => "mwnw".into(),
            Rule::RoundRobin => "rr".into(),
            Rule::EnvyCycle => "ecycle".into(),
            Rule::AdjustedWinner => "aw".into(),
            Rule::FixedSequence(s) => format!("sequence({s})"),
        }
    }

    /// Whether the rule allocates by a picking sequence that depends only on weights and `m`.
    pub fn is_sequence_rule(&self) -> bool {
        matches!(
            self,
            Rule::Divisor(_) | Rule::Quota | Rule::RoundRobin | Rule::FixedSequence(_)
        )
    }

    /// The picking sequence for `weights` and `m` items, or `None` for non-sequence rules.
    pub fn sequence(&self, weights: &[Rational], m: usize, config: &RuleConfig) -> Result<Option<PickingSequence>> {
        let seq = match self {
            Rule::Divisor(f) => divisor_sequence(f, weights, m, &config.exactness)?,
            Rule::Quota => quota_sequence(weights, m)?,
            Rule::RoundRobin => round_robin_sequence(weights.len(), m)?,
            Rule::FixedSequence(s) => {
                if s.len() != m {
                    return Err(Error::arg(format!("fixed sequence has {} turns, need {m}", s.len())));
                }
                s.clone()
            }
            Rule::Mwnw | Rule::EnvyCycle | Rule::AdjustedWinner => return Ok(None),
        };
        Ok(Some(seq))
    }

    pub fn apply(&self, instance: &Instance, config: &RuleConfig) -> Result<Allocation> {
        match self {
            Rule::Mwnw => mwnw::solve(instance, &config.mwnw),
            Rule::EnvyCycle => envy_cycle_eliminate(instance),
            Rule::AdjustedWinner => adjusted_winner(instance),
            _ => {
                let seq = self
                    .sequence(instance.weights(), instance.m(), config)?
                    .expect("sequence rules produce a sequence");
                execute(instance, &seq)
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
