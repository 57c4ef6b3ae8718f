//! Monotonicity comparisons: run a rule before and after a perturbation.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::methods::{Rule, RuleConfig};
use crate::model::Instance;
use crate::rational::{self, format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonotonicityKind {
    Resource,
    Population,
    Weight,
}

impl MonotonicityKind {
    pub const ALL: [MonotonicityKind; 3] = [
        MonotonicityKind::Resource,
        MonotonicityKind::Population,
        MonotonicityKind::Weight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MonotonicityKind::Resource => "resource",
            MonotonicityKind::Population => "population",
            MonotonicityKind::Weight => "weight",
        }
    }
}

impl fmt::Display for MonotonicityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonotonicityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "resource" | "resmon" => Ok(MonotonicityKind::Resource),
            "population" | "popmon" => Ok(MonotonicityKind::Population),
            "weight" | "weightmon" => Ok(MonotonicityKind::Weight),
            other => Err(Error::arg(format!(
                "unknown monotonicity property `{other}` (expected resource, population or weight)"
            ))),
        }
    }
}

/// A change to an instance. New items and agents are appended last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Perturbation {
    AddItem { utilities: Vec<Rational> },
    AddAgent { weight: Rational, utilities: Vec<Rational> },
    RaiseWeight { agent: usize, weight: Rational },
}

impl Perturbation {
    pub fn kind(&self) -> MonotonicityKind {
        match self {
            Perturbation::AddItem { .. } => MonotonicityKind::Resource,
            Perturbation::AddAgent { .. } => MonotonicityKind::Population,
            Perturbation::RaiseWeight { .. } => MonotonicityKind::Weight,
        }
    }

    pub fn apply(&self, base: &Instance) -> Result<Instance> {
        match self {
            Perturbation::AddItem { utilities } => base.with_item(utilities),
            Perturbation::AddAgent { weight, utilities } => base.with_agent(weight.clone(), utilities.clone()),
            Perturbation::RaiseWeight { agent, weight } => {
                if *agent >= base.n() {
                    return Err(Error::arg(format!("agent {} does not exist", agent + 1)));
                }
                if weight <= base.weight(*agent) {
                    return Err(Error::arg(format!(
                        "new weight {weight} must exceed the current weight {}",
                        base.weight(*agent)
                    )));
                }
                base.with_weight(*agent, weight.clone())
            }
        }
    }

    /// `{"utilities": [..]}`, `{"weight": w, "utilities": [..]}` or `{"agent": i, "weight": w}`
    /// for the respective kinds; agents are 1-based.
    pub fn to_json(&self) -> Value {
        let list = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        match self {
            Perturbation::AddItem { utilities } => json!({ "utilities": list(utilities) }),
            Perturbation::AddAgent { weight, utilities } => {
                json!({ "weight": format_rational(weight), "utilities": list(utilities) })
            }
            Perturbation::RaiseWeight { agent, weight } => json!({ "agent": agent + 1, "weight": format_rational(weight) }),
        }
    }

    pub fn from_json(kind: MonotonicityKind, doc: &Value) -> Result<Self> {
        let list = |field: &str| -> Result<Vec<Rational>> {
            doc.get(field)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::parse(field, "expected an array of numbers"))?
                .iter()
                .enumerate()
                .map(|(k, v)| rational::from_json(v, &format!("{field}[{}]", k + 1)))
                .collect()
        };
        let weight = || -> Result<Rational> {
            let w = rational::from_json(
                doc.get("weight").ok_or_else(|| Error::parse("weight", "missing required field"))?,
                "weight",
            )?;
            if !rational::is_positive(&w) {
                return Err(Error::parse("weight", "weight must be positive"));
            }
            Ok(w)
        };
        match kind {
            MonotonicityKind::Resource => Ok(Perturbation::AddItem { utilities: list("utilities")? }),
            MonotonicityKind::Population => Ok(Perturbation::AddAgent {
                weight: weight()?,
                utilities: list("utilities")?,
            }),
            MonotonicityKind::Weight => {
                let agent = doc
                    .get("agent")
                    .and_then(Value::as_u64)
                    .filter(|&a| a >= 1)
                    .ok_or_else(|| Error::parse("agent", "expected a 1-based agent index"))?;
                Ok(Perturbation::RaiseWeight {
                    agent: agent as usize - 1,
                    weight: weight()?,
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentChange {
    pub agent: usize,
    pub before: Rational,
    pub after: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub property: MonotonicityKind,
    /// Utilities of the original agents before and after the perturbation.
    pub changes: Vec<AgentChange>,
    pub violated: bool,
    pub violators: Vec<usize>,
}

impl MonotonicityReport {
    pub fn change(&self, agent: usize) -> Option<&AgentChange> {
        self.changes.iter().find(|c| c.agent == agent)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "property": self.property.name(),
            "violated": self.violated,
            "violators": self.violators.iter().map(|a| a + 1).collect::<Vec<_>>(),
            "agents": self.changes.iter().map(|c| json!({
                "agent": c.agent + 1,
                "before": format_rational(&c.before),
                "after": format_rational(&c.after),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs `rule` on `base` and on the perturbed instance and flags forbidden utility moves:
/// any decrease (resource), any increase of an original agent (population), or a
/// decrease of the boosted agent (weight).
pub fn compare(rule: &Rule, base: &Instance, perturbation: &Perturbation, config: &RuleConfig) -> Result<MonotonicityReport> {
    let modified = perturbation.apply(base)?;
    let before = rule.apply(base, config)?.utilities(base)?;
    let after = rule.apply(&modified, config)?.utilities(&modified)?;
    let changes: Vec<AgentChange> = (0..base.n())
        .map(|i| AgentChange {
            agent: i,
            before: before[i].clone(),
            after: after[i].clone(),
        })
        .collect();
    let violators: Vec<usize> = changes
        .iter()
        .filter(|c| match perturbation {
            Perturbation::AddItem { .. } => c.after < c.before,
            Perturbation::AddAgent { .. } => c.after > c.before,
            Perturbation::RaiseWeight { agent, .. } => c.agent == *agent && c.after < c.before,
        })
        .map(|c| c.agent)
        .collect();
    Ok(MonotonicityReport {
        property: perturbation.kind(),
        violated: !violators.is_empty(),
        changes,
        violators,
    })
}

pub fn compare_resource(rule: &Rule, base: &Instance, extra_item: &[Rational], config: &RuleConfig) -> Result<MonotonicityReport> {
    compare(rule, base, &Perturbation::AddItem { utilities: extra_item.to_vec() }, config)
}

pub fn compare_population(
    rule: &Rule,
    base: &Instance,
    weight: Rational,
    utilities: Vec<Rational>,
    config: &RuleConfig,
) -> Result<MonotonicityReport> {
    compare(rule, base, &Perturbation::AddAgent { weight, utilities }, config)
}

pub fn compare_weight(rule: &Rule, base: &Instance, agent: usize, new_weight: Rational, config: &RuleConfig) -> Result<MonotonicityReport> {
    compare(rule, base, &Perturbation::RaiseWeight { agent, weight: new_weight }, config)
}
