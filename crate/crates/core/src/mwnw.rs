//! Exact maximum weighted Nash welfare by enumeration.
//!
//! Weights are scaled to coprime integer exponents `k_i`, so welfare
//! comparisons reduce to comparing the rational products `prod u_i^k_i`.
//! When no allocation gives every agent positive utility, the agent set with
//! positive utility is maximised first (largest, then lexicographically
//! smallest), and the weighted product is maximised over that set.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance};
use crate::rational::{format_rational, Rational};

/// Default limit on `m * log2(n)`, i.e. at most `2^24` assignments.
pub const DEFAULT_BUDGET_BITS: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget_bits: u32,
    /// Branch-and-bound on utility upper bounds; the result is identical either way.
    pub prune: bool,
    /// Worker threads; `0` or `1` runs on the calling thread.
    pub workers: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget_bits: DEFAULT_BUDGET_BITS,
            prune: true,
            workers: 1,
        }
    }
}

/// Comparable welfare of a utility vector. Greater is better.
#[derive(Debug, Clone)]
pub struct WelfareScore {
    utilities: Vec<Rational>,
    exponents: Vec<u32>,
    support: Vec<usize>,
    product: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WelfareKind {
    Positive,
    Zero,
}

impl WelfareScore {
    fn from_utilities(utilities: Vec<Rational>, exponents: &[u32]) -> Self {
        let support: Vec<usize> = (0..utilities.len()).filter(|&i| utilities[i].is_positive()).collect();
        let product = support
            .iter()
            .fold(Rational::one(), |acc, &i| acc * Pow::pow(&utilities[i], exponents[i]));
        WelfareScore {
            utilities,
            exponents: exponents.to_vec(),
            support,
            product,
        }
    }

    pub fn kind(&self) -> WelfareKind {
        if self.support.len() == self.utilities.len() {
            WelfareKind::Positive
        } else {
            WelfareKind::Zero
        }
    }

    pub fn utilities(&self) -> &[Rational] {
        &self.utilities
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Agents with positive utility.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// `prod u_i^k_i` over the support.
    pub fn product(&self) -> &Rational {
        &self.product
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": match self.kind() { WelfareKind::Positive => "positive", WelfareKind::Zero => "zero" },
            "utilities": self.utilities.iter().map(format_rational).collect::<Vec<_>>(),
            "exponents": self.exponents,
            "support": self.support.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "product": format_rational(&self.product),
        })
    }
}

impl Ord for WelfareScore {
    fn cmp(&self, other: &Self) -> Ordering {
        self.support
            .len()
            .cmp(&other.support.len())
            .then_with(|| other.support.cmp(&self.support))
            .then_with(|| self.product.cmp(&other.product))
    }
}

impl PartialOrd for WelfareScore {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for WelfareScore {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for WelfareScore {}

/// Smallest integer vector proportional to the weights.
pub fn integer_exponents(weights: &[Rational]) -> Result<Vec<u32>> {
    let lcm = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let scaled: Vec<BigInt> = weights.iter().map(|w| (w * &lcm).to_integer()).collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, k| acc.gcd(k));
    scaled
        .iter()
        .map(|k| {
            (k / &gcd)
                .to_u32()
                .ok_or_else(|| Error::Resource("weights need exponents beyond 2^32".into()))
        })
        .collect()
}

pub fn score(instance: &Instance, allocation: &Allocation) -> Result<WelfareScore> {
    let utilities = allocation.utilities(instance)?;
    Ok(WelfareScore::from_utilities(utilities, &integer_exponents(instance.weights())?))
}

/// `m * log2(n)` bits of search space.
fn search_bits(n: usize, m: usize) -> f64 {
    m as f64 * (n as f64).log2()
}

struct Search<'a> {
    instance: &'a Instance,
    exponents: Vec<u32>,
    /// `suffix[i][g]`: agent `i`'s total utility for items `g..m`.
    suffix: Vec<Vec<Rational>>,
    prune: bool,
}

#[derive(Clone)]
struct Best {
    score: WelfareScore,
    owners: Vec<usize>,
}

impl Search<'_> {
    fn dfs(&self, g: usize, owners: &mut Vec<usize>, utils: &mut Vec<Rational>, best: &mut Option<Best>) {
        let m = self.instance.m();
        if g == m {
            let s = WelfareScore::from_utilities(utils.clone(), &self.exponents);
            if best.as_ref().is_none_or(|b| s > b.score) {
                *best = Some(Best {
                    score: s,
                    owners: owners.clone(),
                });
            }
            return;
        }
        if self.prune {
            if let Some(b) = best.as_ref() {
                let bound: Vec<Rational> = (0..utils.len()).map(|i| &utils[i] + &self.suffix[i][g]).collect();
                if WelfareScore::from_utilities(bound, &self.exponents) <= b.score {
                    return;
                }
            }
        }
        for a in 0..utils.len() {
            let value = self.instance.utility(a, g).clone();
            utils[a] += &value;
            owners.push(a);
            self.dfs(g + 1, owners, utils, best);
            owners.pop();
            utils[a] -= &value;
        }
    }

    fn run_from(&self, first: Option<usize>) -> Option<Best> {
        let n = self.instance.n();
        let mut utils = vec![Rational::zero(); n];
        let mut owners = Vec::with_capacity(self.instance.m());
        let mut best = None;
        match first {
            None => self.dfs(0, &mut owners, &mut utils, &mut best),
            Some(a) => {
                utils[a] += self.instance.utility(a, 0);
                owners.push(a);
                self.dfs(1, &mut owners, &mut utils, &mut best);
            }
        }
        best
    }
}

/// The maximum weighted Nash welfare allocation; among equal scores, the one whose
/// item-to-agent vector is lexicographically smallest.
pub fn solve(instance: &Instance, options: &SolveOptions) -> Result<Allocation> {
    solve_with_score(instance, options).map(|(alloc, _)| alloc)
}

pub fn solve_with_score(instance: &Instance, options: &SolveOptions) -> Result<(Allocation, WelfareScore)> {
    let (n, m) = (instance.n(), instance.m());
    let bits = search_bits(n, m);
    if bits > options.budget_bits as f64 {
        return Err(Error::Resource(format!(
            "{n}^{m} assignments (about 2^{bits:.1}) exceed the budget of 2^{}; use a smaller instance or raise the budget",
            options.budget_bits
        )));
    }
    let suffix = (0..n)
        .map(|i| {
            let mut acc = vec![Rational::zero(); m + 1];
            for g in (0..m).rev() {
                acc[g] = &acc[g + 1] + instance.utility(i, g);
            }
            acc
        })
        .collect();
    let search = Search {
        instance,
        exponents: integer_exponents(instance.weights())?,
        suffix,
        prune: options.prune,
    };
    let best = if options.workers > 1 && m > 0 && n > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers)
            .build()
            .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
        let partial: Vec<Option<Best>> = pool.install(|| (0..n).into_par_iter().map(|a| search.run_from(Some(a))).collect());
        // Subtrees are in lexicographic order, so a strict improvement is needed to move on.
        partial.into_iter().flatten().fold(None, |acc: Option<Best>, cand| match acc {
            Some(b) if cand.score <= b.score => Some(b),
            _ => Some(cand),
        })
    } else {
        search.run_from(None)
    };
    let best = best.ok_or_else(|| Error::Invariant("enumeration visited no allocation".into()))?;
    Ok((Allocation::from_owners(&best.owners, n)?, best.score))
}
