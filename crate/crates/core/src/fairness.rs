//! Fairness verifiers.
//!
//! Allocation-level checks evaluate WEF1, WWEF1 and WPROP1 on a concrete
//! allocation. Sequence-level checks decide whether a picking sequence
//! guarantees the notion for every additive utility profile, which reduces to
//! inequalities on pick counts over all prefixes.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::methods::{DivisorFunction, Exactness, ScoreKey, Scorer};
use crate::model::{Allocation, Instance, PickingSequence};
use crate::rational::{self, format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Notion {
    Wef1,
    Wwef1,
    Wprop1,
}

impl Notion {
    pub const ALL: [Notion; 3] = [Notion::Wef1, Notion::Wwef1, Notion::Wprop1];

    pub fn name(self) -> &'static str {
        match self {
            Notion::Wef1 => "wef1",
            Notion::Wwef1 => "wwef1",
            Notion::Wprop1 => "wprop1",
        }
    }
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Notion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "wef1" | "ef1" => Ok(Notion::Wef1),
            "wwef1" => Ok(Notion::Wwef1),
            "wprop1" | "prop1" => Ok(Notion::Wprop1),
            other => Err(Error::arg(format!("unknown fairness notion `{other}` (expected wef1, wwef1 or wprop1)"))),
        }
    }
}

/// The decisive inequality `lhs >= rhs` of a failed check, which evaluates to `lhs < rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub agent: Option<usize>,
    pub other: Option<usize>,
    /// Prefix length for sequence-level checks.
    pub prefix: Option<usize>,
    /// Item whose removal (or addition) was considered.
    pub item: Option<usize>,
    /// Pick count for the divisor condition.
    pub t: Option<u64>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub inequality: String,
}

impl Witness {
    fn new(lhs: Rational, rhs: Rational, inequality: impl Into<String>) -> Self {
        Witness {
            agent: None,
            other: None,
            prefix: None,
            item: None,
            t: None,
            lhs,
            rhs,
            inequality: inequality.into(),
        }
    }

    fn agents(mut self, agent: usize, other: Option<usize>) -> Self {
        self.agent = Some(agent);
        self.other = other;
        self
    }

    fn at_prefix(mut self, k: usize) -> Self {
        self.prefix = Some(k);
        self
    }

    fn with_item(mut self, item: Option<usize>) -> Self {
        self.item = item;
        self
    }

    /// `true` when the recorded sides indeed violate `lhs >= rhs`.
    pub fn is_violation(&self) -> bool {
        self.lhs < self.rhs
    }

    /// Indices are reported 1-based, rationals as `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        if let Some(a) = self.agent {
            obj.insert("agent".into(), json!(a + 1));
        }
        if let Some(b) = self.other {
            obj.insert("other".into(), json!(b + 1));
        }
        if let Some(k) = self.prefix {
            obj.insert("prefix".into(), json!(k));
        }
        if let Some(g) = self.item {
            obj.insert("item".into(), json!(g + 1));
        }
        if let Some(t) = self.t {
            obj.insert("t".into(), json!(t));
        }
        obj.insert("lhs".into(), json!(format_rational(&self.lhs)));
        obj.insert("rhs".into(), json!(format_rational(&self.rhs)));
        obj.insert("inequality".into(), json!(self.inequality));
        Value::Object(obj)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(k) = self.prefix {
            parts.push(format!("prefix {k}"));
        }
        if let Some(a) = self.agent {
            parts.push(format!("agent {}", a + 1));
        }
        if let Some(b) = self.other {
            parts.push(format!("vs agent {}", b + 1));
        }
        if let Some(g) = self.item {
            parts.push(format!("item {}", g + 1));
        }
        if let Some(t) = self.t {
            parts.push(format!("t = {t}"));
        }
        write!(
            f,
            "{}: {} fails ({} < {})",
            parts.join(", "),
            self.inequality,
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl FairnessVerdict {
    pub fn pass() -> Self {
        FairnessVerdict { holds: true, witness: None }
    }

    pub fn fail(witness: Witness) -> Self {
        debug_assert!(witness.is_violation(), "witness does not violate: {witness}");
        FairnessVerdict {
            holds: false,
            witness: Some(witness),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("holds".into(), json!(self.holds));
        if let Some(w) = &self.witness {
            obj.insert("witness".into(), w.to_json());
        }
        Value::Object(obj)
    }
}

/// Item of `bundle` that `agent` values most; lowest index on ties.
fn most_valued(instance: &Instance, agent: usize, bundle: &[usize]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for &g in bundle {
        if best.is_none_or(|b| instance.utility(agent, g) > instance.utility(agent, b)) {
            best = Some(g);
        }
    }
    best
}

fn envy_witness(instance: &Instance, alloc: &Allocation, notion: Notion, i: usize, j: usize) -> Result<Option<Witness>> {
    let own = instance.bundle_utility(i, alloc.bundle(i))?;
    let other = instance.bundle_utility(i, alloc.bundle(j))?;
    let b = most_valued(instance, i, alloc.bundle(j));
    let b_value = b.map_or_else(rational::zero, |g| instance.utility(i, g).clone());
    let (wi, wj) = (instance.weight(i), instance.weight(j));
    let lhs = &own / wi;
    let rhs = (&other - &b_value) / wj;
    if lhs >= rhs {
        return Ok(None);
    }
    if notion == Notion::Wwef1 && (&own + &b_value) / wi >= &other / wj {
        return Ok(None);
    }
    let inequality = match notion {
        Notion::Wwef1 => "u_i(M_i)/w_i >= u_i(M_j - g)/w_j or u_i(M_i + g)/w_i >= u_i(M_j)/w_j",
        _ => "u_i(M_i)/w_i >= u_i(M_j - g)/w_j",
    };
    Ok(Some(Witness::new(lhs, rhs, inequality).agents(i, Some(j)).with_item(b)))
}

fn wprop1_witness(instance: &Instance, alloc: &Allocation, i: usize) -> Result<Option<Witness>> {
    let own = instance.bundle_utility(i, alloc.bundle(i))?;
    let everything: Vec<usize> = (0..instance.m()).collect();
    let total = instance.bundle_utility(i, &everything)?;
    let outside: Vec<usize> = everything.iter().copied().filter(|g| !alloc.bundle(i).contains(g)).collect();
    let g = most_valued(instance, i, &outside);
    let bonus = g.map_or_else(rational::zero, |g| instance.utility(i, g).clone());
    let share = instance.weight(i) / instance.total_weight() * total;
    let rhs = share - bonus;
    if own >= rhs {
        return Ok(None);
    }
    Ok(Some(
        Witness::new(own, rhs, "u_i(M_i) >= w_i/W * u_i(M) - u_i(g)")
            .agents(i, None)
            .with_item(g),
    ))
}

/// Allocation-level check; the first violation in (agent, other agent) order is reported.
pub fn check_allocation(notion: Notion, instance: &Instance, allocation: &Allocation) -> Result<FairnessVerdict> {
    allocation.validate_for(instance)?;
    let n = instance.n();
    for i in 0..n {
        let found = match notion {
            Notion::Wprop1 => wprop1_witness(instance, allocation, i)?,
            _ => {
                let mut found = None;
                for j in (0..n).filter(|&j| j != i) {
                    found = envy_witness(instance, allocation, notion, i, j)?;
                    if found.is_some() {
                        break;
                    }
                }
                found
            }
        };
        if let Some(w) = found {
            return Ok(FairnessVerdict::fail(w));
        }
    }
    Ok(FairnessVerdict::pass())
}

/// Unweighted EF1.
pub fn check_ef1(instance: &Instance, allocation: &Allocation) -> Result<FairnessVerdict> {
    check_allocation(Notion::Wef1, &instance.unweighted(), allocation)
}

fn check_weights_cover(sequence: &PickingSequence, weights: &[Rational]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::arg("at least one weight is required"));
    }
    if let Some(i) = weights.iter().position(|w| !rational::is_positive(w)) {
        return Err(Error::arg(format!("weight of agent {} must be positive", i + 1)));
    }
    sequence.check_agents(weights.len())
}

fn sequence_pair_witness(notion: Notion, counts: &[usize], weights: &[Rational], i: usize, j: usize) -> Option<Witness> {
    let (ti, tj) = (counts[i], counts[j]);
    if tj < 2 {
        return None;
    }
    let (wi, wj) = (&weights[i], &weights[j]);
    let ratio = wi / wj;
    let removal = || {
        let lhs = Rational::new(ti.into(), (tj - 1).into());
        (lhs < ratio).then(|| Witness::new(lhs, ratio.clone(), "t_i/(t_j - 1) >= w_i/w_j"))
    };
    let addition = || {
        let lhs = Rational::new((ti + 1).into(), tj.into());
        (lhs < ratio).then(|| Witness::new(lhs, ratio.clone(), "(t_i + 1)/t_j >= w_i/w_j"))
    };
    match notion {
        Notion::Wef1 => removal(),
        Notion::Wwef1 => {
            let heavier = if wi >= wj { removal() } else { None };
            heavier.or_else(|| if wi <= wj { addition() } else { None })
        }
        Notion::Wprop1 => None,
    }
    .map(|w| w.agents(i, Some(j)))
}

/// Whether `sequence` guarantees `notion` for every utility profile.
/// The reported witness has the shortest prefix, then the lowest agent pair.
pub fn check_sequence(notion: Notion, sequence: &PickingSequence, weights: &[Rational]) -> Result<FairnessVerdict> {
    check_weights_cover(sequence, weights)?;
    let n = weights.len();
    let total: Rational = weights.iter().sum();
    let mut counts = vec![0usize; n];
    for (step, &agent) in sequence.turns().iter().enumerate() {
        counts[agent] += 1;
        let k = step + 1;
        for i in 0..n {
            if notion == Notion::Wprop1 {
                let rhs = &weights[i] / &total * rational::from_usize(k) - rational::one();
                let lhs = rational::from_usize(counts[i]);
                if lhs < rhs {
                    let w = Witness::new(lhs, rhs, "t_i >= w_i/W * k - 1").agents(i, None);
                    return Ok(FairnessVerdict::fail(w.at_prefix(k)));
                }
                continue;
            }
            for j in (0..n).filter(|&j| j != i) {
                if let Some(w) = sequence_pair_witness(notion, &counts, weights, i, j) {
                    return Ok(FairnessVerdict::fail(w.at_prefix(k)));
                }
            }
        }
    }
    Ok(FairnessVerdict::pass())
}

/// Every agent values each of the first `k` items at 1 and the rest at 0.
///
/// Executing a sequence on this instance hands every agent exactly her prefix-`k`
/// pick count in value, which turns a sequence-level witness into an allocation-level one.
pub fn prefix_indicator_instance(weights: &[Rational], m: usize, k: usize) -> Result<Instance> {
    let row: Vec<Rational> = (0..m)
        .map(|g| if g < k { rational::one() } else { rational::zero() })
        .collect();
    Instance::new(weights.to_vec(), vec![row; weights.len()], m)
}

fn exact_key(key: ScoreKey) -> Result<Rational> {
    match key {
        ScoreKey::Exact(v) => Ok(v),
        ScoreKey::Approx(_) => Err(Error::Precision("divisor condition needs exact scores".into())),
    }
}

/// `t/(t+1) <= f(t)/f(t+1) <= (t+1)/(t+2)` for `t = 0..=t_max`, checked exactly.
///
/// Both sides are rearranged into score comparisons:
/// `f(t+1)/(t+1) <= f(t)/t` (for `t >= 1`) and `f(t)/(t+1) <= f(t+1)/(t+2)`.
/// Witness sides are `k`-th powers of those scores for the function's exact root `k`.
pub fn divisor_wwef1_condition(f: &DivisorFunction, t_max: u64) -> Result<FairnessVerdict> {
    let root = f
        .exact_root()
        .ok_or_else(|| Error::Precision(format!("{f} cannot be compared exactly")))?;
    let mut scorer = Scorer::new(f, Exactness::default());
    let w = |x: u64| Rational::from_integer(x.into());
    for t in 0..=t_max {
        if t >= 1 {
            let at_t = exact_key(scorer.key(t, &w(t))?)?;
            let at_next = exact_key(scorer.key(t + 1, &w(t + 1))?)?;
            if at_t < at_next {
                let mut wit = Witness::new(at_t, at_next, format!("(f(t)/t)^{root} >= (f(t+1)/(t+1))^{root}"));
                wit.t = Some(t);
                return Ok(FairnessVerdict::fail(wit));
            }
        }
        let low = exact_key(scorer.key(t, &w(t + 1))?)?;
        let high = exact_key(scorer.key(t + 1, &w(t + 2))?)?;
        if high < low {
            let mut wit = Witness::new(high, low, format!("(f(t+1)/(t+2))^{root} >= (f(t)/(t+1))^{root}"));
            wit.t = Some(t);
            return Ok(FairnessVerdict::fail(wit));
        }
    }
    Ok(FairnessVerdict::pass())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotaMode {
    Full,
    EveryPrefix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotaBound {
    Lower,
    Both,
}

impl FromStr for QuotaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(QuotaMode::Full),
            "every-prefix" | "prefix" => Ok(QuotaMode::EveryPrefix),
            _ => Err(Error::arg(format!("unknown quota mode `{s}` (expected full or every-prefix)"))),
        }
    }
}

impl FromStr for QuotaBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(QuotaBound::Lower),
            "both" => Ok(QuotaBound::Both),
            _ => Err(Error::arg(format!("unknown quota bound `{s}` (expected lower or both)"))),
        }
    }
}

/// `floor(w_i k / W) <= t_i` and, for `Both`, `t_i <= ceil(w_i k / W)`.
pub fn check_quota_bounds(
    sequence: &PickingSequence,
    weights: &[Rational],
    mode: QuotaMode,
    bound: QuotaBound,
) -> Result<FairnessVerdict> {
    check_weights_cover(sequence, weights)?;
    let total: Rational = weights.iter().sum();
    let m = sequence.len();
    let lengths: Vec<usize> = match mode {
        QuotaMode::Full => vec![m],
        QuotaMode::EveryPrefix => (1..=m).collect(),
    };
    for k in lengths {
        let counts = sequence.prefix(k).counts(weights.len());
        for (i, w) in weights.iter().enumerate() {
            let share = w * rational::from_usize(k) / &total;
            let t = rational::from_usize(counts[i]);
            let lower = Rational::from_integer(rational::floor(&share));
            if t < lower {
                let wit = Witness::new(t, lower, "t_i >= floor(w_i k / W)").agents(i, None);
                return Ok(FairnessVerdict::fail(wit.at_prefix(k)));
            }
            let upper = Rational::from_integer(rational::ceil(&share));
            if bound == QuotaBound::Both && t > upper {
                let wit = Witness::new(upper, t, "ceil(w_i k / W) >= t_i").agents(i, None);
                return Ok(FairnessVerdict::fail(wit.at_prefix(k)));
            }
        }
    }
    Ok(FairnessVerdict::pass())
}
