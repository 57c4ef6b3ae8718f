//! Seeded randomized counterexample search.
//!
//! Trial `t` draws from its own ChaCha stream `(seed, t)`, so any trial can be
//! replayed in isolation and the result does not depend on the worker count:
//! the reported counterexample is always the one with the smallest trial index.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::executor::execute;
use crate::fairness::{check_allocation, check_sequence, prefix_indicator_instance, FairnessVerdict, Notion};
use crate::harness::monotonicity::{compare, MonotonicityKind, MonotonicityReport, Perturbation};
use crate::io::{allocation_to_value, instance_to_value};
use crate::methods::{Rule, RuleConfig};
use crate::model::{Allocation, Instance};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanProperty {
    Fairness(Notion),
    Monotonicity(MonotonicityKind),
}

impl ScanProperty {
    pub fn name(&self) -> &'static str {
        match self {
            ScanProperty::Fairness(n) => n.name(),
            ScanProperty::Monotonicity(k) => k.name(),
        }
    }
}

impl fmt::Display for ScanProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<Notion>()
            .map(ScanProperty::Fairness)
            .or_else(|_| s.parse::<MonotonicityKind>().map(ScanProperty::Monotonicity))
            .map_err(|_| {
                Error::arg(format!(
                    "unknown property `{s}` (expected wef1, wwef1, wprop1, resource, population or weight)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub seed: u64,
    pub trials: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub min_m: usize,
    pub max_m: usize,
    /// Utilities are drawn from `0..=max_utility`.
    pub max_utility: u32,
    /// Weights are drawn from `1..=max_weight`.
    pub max_weight: u32,
    pub workers: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            seed: 0,
            trials: 1000,
            min_n: 1,
            max_n: 3,
            min_m: 1,
            max_m: 8,
            max_utility: 10,
            max_weight: 10,
            workers: 1,
        }
    }
}

impl ScanConfig {
    fn validate(&self) -> Result<()> {
        if self.min_n == 0 || self.min_n > self.max_n {
            return Err(Error::arg("agent bounds must satisfy 1 <= min-n <= max-n"));
        }
        if self.min_m > self.max_m {
            return Err(Error::arg("item bounds must satisfy min-m <= max-m"));
        }
        if self.max_weight == 0 {
            return Err(Error::arg("max weight must be at least 1"));
        }
        Ok(())
    }

    /// The generator stream of one trial.
    pub fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }
}

/// A violation together with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub seed: u64,
    pub trial: usize,
    pub rule: String,
    pub property: ScanProperty,
    pub instance: Instance,
    pub perturbation: Option<Perturbation>,
    pub allocation: Option<Allocation>,
    pub verdict: Option<FairnessVerdict>,
    pub report: Option<MonotonicityReport>,
}

impl Counterexample {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "trial": self.trial,
            "rule": self.rule,
            "property": self.property.name(),
            "instance": instance_to_value(&self.instance),
            "perturbation": self.perturbation.as_ref().map(Perturbation::to_json),
            "allocation": self.allocation.as_ref().map(allocation_to_value),
            "verdict": self.verdict.as_ref().map(FairnessVerdict::to_json),
            "report": self.report.as_ref().map(MonotonicityReport::to_json),
        })
    }
}

fn random_int<R: Rng>(rng: &mut R, low: u32, high: u32) -> Rational {
    rational::int(rng.random_range(low..=high) as i64)
}

fn random_row<R: Rng>(rng: &mut R, len: usize, max_utility: u32) -> Vec<Rational> {
    (0..len).map(|_| random_int(rng, 0, max_utility)).collect()
}

/// A random instance; adjusted winner always gets two agents.
pub fn random_instance<R: Rng>(rng: &mut R, rule: &Rule, config: &ScanConfig) -> Result<Instance> {
    let n = if *rule == Rule::AdjustedWinner {
        2
    } else {
        rng.random_range(config.min_n..=config.max_n)
    };
    let m = rng.random_range(config.min_m..=config.max_m);
    let weights = (0..n).map(|_| random_int(rng, 1, config.max_weight)).collect();
    let utilities = (0..n).map(|_| random_row(rng, m, config.max_utility)).collect();
    Instance::new(weights, utilities, m)
}

pub fn random_perturbation<R: Rng>(rng: &mut R, kind: MonotonicityKind, base: &Instance, config: &ScanConfig) -> Perturbation {
    match kind {
        MonotonicityKind::Resource => Perturbation::AddItem {
            utilities: random_row(rng, base.n(), config.max_utility),
        },
        MonotonicityKind::Population => Perturbation::AddAgent {
            weight: random_int(rng, 1, config.max_weight),
            utilities: random_row(rng, base.m(), config.max_utility),
        },
        MonotonicityKind::Weight => {
            let agent = rng.random_range(0..base.n());
            let weight = base.weight(agent) + random_int(rng, 1, config.max_weight);
            Perturbation::RaiseWeight { agent, weight }
        }
    }
}

/// Runs one trial; `Some` when it violates the property.
pub fn run_trial(
    rule: &Rule,
    property: ScanProperty,
    config: &ScanConfig,
    rule_config: &RuleConfig,
    trial: usize,
) -> Result<Option<Counterexample>> {
    let mut rng = config.trial_rng(trial);
    let instance = random_instance(&mut rng, rule, config)?;
    let found = |instance, perturbation, allocation, verdict, report| Counterexample {
        seed: config.seed,
        trial,
        rule: rule.name(),
        property,
        instance,
        perturbation,
        allocation,
        verdict,
        report,
    };
    match property {
        ScanProperty::Fairness(notion) => {
            if let Some(seq) = rule.sequence(instance.weights(), instance.m(), rule_config)? {
                let verdict = check_sequence(notion, &seq, instance.weights())?;
                let Some(witness) = &verdict.witness else {
                    return Ok(None);
                };
                // Replace the utilities by the indicator profile that exposes the failure.
                let prefix = witness.prefix.unwrap_or(seq.len());
                let concrete = prefix_indicator_instance(instance.weights(), instance.m(), prefix)?;
                let allocation = execute(&concrete, &seq)?;
                let allocation_verdict = check_allocation(notion, &concrete, &allocation)?;
                if allocation_verdict.holds {
                    return Err(Error::Invariant(format!(
                        "sequence witness did not carry over to an allocation (trial {trial})"
                    )));
                }
                Ok(Some(found(concrete, None, Some(allocation), Some(verdict), None)))
            } else {
                let allocation = rule.apply(&instance, rule_config)?;
                let verdict = check_allocation(notion, &instance, &allocation)?;
                Ok((!verdict.holds).then(|| found(instance, None, Some(allocation), Some(verdict), None)))
            }
        }
        ScanProperty::Monotonicity(kind) => {
            let perturbation = random_perturbation(&mut rng, kind, &instance, config);
            let report = compare(rule, &instance, &perturbation, rule_config)?;
            Ok(report
                .violated
                .then(|| found(instance, Some(perturbation), None, None, Some(report))))
        }
    }
}

/// First violating trial in `0..trials`, or `None`.
pub fn scan(rule: &Rule, property: ScanProperty, config: &ScanConfig, rule_config: &RuleConfig) -> Result<Option<Counterexample>> {
    config.validate()?;
    let trial = |t| run_trial(rule, property, config, rule_config, t);
    let hit = if config.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
        pool.install(|| {
            (0..config.trials)
                .into_par_iter()
                .map(trial)
                .find_first(|r| !matches!(r, Ok(None)))
        })
    } else {
        (0..config.trials).map(trial).find(|r| !matches!(r, Ok(None)))
    };
    hit.unwrap_or(Ok(None))
}
