//! Problem instances and their outcomes: allocations and picking sequences.
//!
//! Agents and items are 0-indexed here; every file format and every
//! human-facing message uses 1-based indices.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Agents with positive weights and an additive utility matrix over items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    weights: Vec<Rational>,
    utilities: Vec<Vec<Rational>>,
    item_count: usize,
    agent_names: Vec<Option<String>>,
    item_names: Option<Vec<String>>,
}

impl Instance {
    /// Builds an instance with `weights.len()` agents and `item_count` items.
    pub fn new(weights: Vec<Rational>, utilities: Vec<Vec<Rational>>, item_count: usize) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::parse("agents", "at least one agent is required"));
        }
        if utilities.len() != weights.len() {
            return Err(Error::parse(
                "utilities",
                format!("expected {} rows, found {}", weights.len(), utilities.len()),
            ));
        }
        for (i, w) in weights.iter().enumerate() {
            if !w.is_positive() {
                return Err(Error::parse(format!("agents[{}].weight", i + 1), "weight must be positive"));
            }
        }
        for (i, row) in utilities.iter().enumerate() {
            if row.len() != item_count {
                return Err(Error::parse(
                    format!("utilities[{}]", i + 1),
                    format!("expected {item_count} entries, found {}", row.len()),
                ));
            }
            for (g, u) in row.iter().enumerate() {
                if u.is_negative() {
                    return Err(Error::parse(
                        format!("utilities[{}][{}]", i + 1, g + 1),
                        "utility must be non-negative",
                    ));
                }
            }
        }
        let n = weights.len();
        Ok(Instance {
            weights,
            utilities,
            item_count,
            agent_names: vec![None; n],
            item_names: None,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(weights: &[i64], utilities: &[&[i64]]) -> Result<Self> {
        let m = utilities.first().map_or(0, |row| row.len());
        Instance::new(
            weights.iter().map(|&w| rational::int(w)).collect(),
            utilities
                .iter()
                .map(|row| row.iter().map(|&u| rational::int(u)).collect())
                .collect(),
            m,
        )
    }

    pub fn with_names(mut self, agent_names: Vec<Option<String>>, item_names: Option<Vec<String>>) -> Result<Self> {
        if agent_names.len() != self.n() {
            return Err(Error::arg("one name slot per agent is required"));
        }
        if let Some(names) = &item_names {
            if names.len() != self.m() {
                return Err(Error::arg("one name per item is required"));
            }
        }
        self.agent_names = agent_names;
        self.item_names = item_names;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn m(&self) -> usize {
        self.item_count
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, agent: usize) -> &Rational {
        &self.weights[agent]
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn utility(&self, agent: usize, item: usize) -> &Rational {
        &self.utilities[agent][item]
    }

    pub fn utilities(&self) -> &[Vec<Rational>] {
        &self.utilities
    }

    pub fn agent_names(&self) -> &[Option<String>] {
        &self.agent_names
    }

    pub fn item_names(&self) -> Option<&[String]> {
        self.item_names.as_deref()
    }

    fn check_agent(&self, agent: usize) -> Result<()> {
        if agent >= self.n() {
            return Err(Error::arg(format!("agent {} out of range 1..={}", agent + 1, self.n())));
        }
        Ok(())
    }

    /// Exact additive utility of `agent` for `bundle`.
    pub fn bundle_utility(&self, agent: usize, bundle: &[usize]) -> Result<Rational> {
        self.check_agent(agent)?;
        let mut total = Rational::zero();
        for &item in bundle {
            if item >= self.m() {
                return Err(Error::arg(format!("item {} out of range 1..={}", item + 1, self.m())));
            }
            total += &self.utilities[agent][item];
        }
        Ok(total)
    }

    /// Same instance with every weight set to 1.
    pub fn unweighted(&self) -> Instance {
        let mut out = self.clone();
        out.weights = vec![rational::one(); self.n()];
        out
    }

    pub fn with_weights(&self, weights: Vec<Rational>) -> Result<Instance> {
        if weights.len() != self.n() {
            return Err(Error::arg(format!("expected {} weights, found {}", self.n(), weights.len())));
        }
        let mut out = Instance::new(weights, self.utilities.clone(), self.m())?;
        out.agent_names = self.agent_names.clone();
        out.item_names = self.item_names.clone();
        Ok(out)
    }

    pub fn with_weight(&self, agent: usize, weight: Rational) -> Result<Instance> {
        self.check_agent(agent)?;
        let mut weights = self.weights.clone();
        weights[agent] = weight;
        self.with_weights(weights)
    }

    /// Appends an item as the new last item.
    pub fn with_item(&self, column: &[Rational]) -> Result<Instance> {
        if column.len() != self.n() {
            return Err(Error::arg(format!(
                "extra item needs {} utilities, found {}",
                self.n(),
                column.len()
            )));
        }
        let utilities = self
            .utilities
            .iter()
            .zip(column)
            .map(|(row, u)| {
                let mut row = row.clone();
                row.push(u.clone());
                row
            })
            .collect();
        let mut out = Instance::new(self.weights.clone(), utilities, self.m() + 1)?;
        out.agent_names = self.agent_names.clone();
        out.item_names = self.item_names.clone().map(|mut names| {
            names.push(format!("item{}", self.m() + 1));
            names
        });
        Ok(out)
    }

    /// Appends an agent as the new last agent.
    pub fn with_agent(&self, weight: Rational, row: Vec<Rational>) -> Result<Instance> {
        if row.len() != self.m() {
            return Err(Error::arg(format!(
                "new agent needs {} utilities, found {}",
                self.m(),
                row.len()
            )));
        }
        let mut weights = self.weights.clone();
        weights.push(weight);
        let mut utilities = self.utilities.clone();
        utilities.push(row);
        let mut out = Instance::new(weights, utilities, self.m())?;
        out.agent_names = self.agent_names.clone();
        out.agent_names.push(None);
        out.item_names = self.item_names.clone();
        Ok(out)
    }

    /// Keeps only `items`, in the given order.
    pub fn restrict_items(&self, items: &[usize]) -> Result<Instance> {
        if let Some(&bad) = items.iter().find(|&&g| g >= self.m()) {
            return Err(Error::arg(format!("item {} out of range", bad + 1)));
        }
        let utilities = self
            .utilities
            .iter()
            .map(|row| items.iter().map(|&g| row[g].clone()).collect())
            .collect();
        let mut out = Instance::new(self.weights.clone(), utilities, items.len())?;
        out.agent_names = self.agent_names.clone();
        out.item_names = self
            .item_names
            .as_ref()
            .map(|names| items.iter().map(|&g| names[g].clone()).collect());
        Ok(out)
    }

    /// Keeps only the first `count` agents.
    pub fn restrict_agents(&self, count: usize) -> Result<Instance> {
        if count == 0 || count > self.n() {
            return Err(Error::arg(format!("cannot keep {count} of {} agents", self.n())));
        }
        let mut out = Instance::new(
            self.weights[..count].to_vec(),
            self.utilities[..count].to_vec(),
            self.m(),
        )?;
        out.agent_names = self.agent_names[..count].to_vec();
        out.item_names = self.item_names.clone();
        Ok(out)
    }
}

/// A partition of the items into one (possibly empty) bundle per agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    bundles: Vec<Vec<usize>>,
}

impl Allocation {
    /// Validates that `bundles` partitions `0..item_count`; bundles are stored sorted.
    pub fn new(mut bundles: Vec<Vec<usize>>, item_count: usize) -> Result<Self> {
        let mut seen = vec![false; item_count];
        for (i, bundle) in bundles.iter_mut().enumerate() {
            bundle.sort_unstable();
            for &g in bundle.iter() {
                if g >= item_count {
                    return Err(Error::arg(format!(
                        "bundle of agent {} holds item {} but there are only {item_count} items",
                        i + 1,
                        g + 1
                    )));
                }
                if std::mem::replace(&mut seen[g], true) {
                    return Err(Error::arg(format!("item {} is allocated twice", g + 1)));
                }
            }
        }
        if let Some(g) = seen.iter().position(|&s| !s) {
            return Err(Error::arg(format!("item {} is not allocated", g + 1)));
        }
        Ok(Allocation { bundles })
    }

    /// `owner[g]` is the agent receiving item `g`.
    pub fn from_owners(owner: &[usize], agent_count: usize) -> Result<Self> {
        let mut bundles = vec![Vec::new(); agent_count];
        for (g, &i) in owner.iter().enumerate() {
            if i >= agent_count {
                return Err(Error::arg(format!("owner {} of item {} out of range", i + 1, g + 1)));
            }
            bundles[i].push(g);
        }
        Ok(Allocation { bundles })
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }

    pub fn bundle(&self, agent: usize) -> &[usize] {
        &self.bundles[agent]
    }

    pub fn agent_count(&self) -> usize {
        self.bundles.len()
    }

    pub fn item_count(&self) -> usize {
        self.bundles.iter().map(Vec::len).sum()
    }

    /// Checks that this allocation fits `instance`.
    pub fn validate_for(&self, instance: &Instance) -> Result<()> {
        if self.bundles.len() != instance.n() {
            return Err(Error::arg(format!(
                "allocation has {} bundles but the instance has {} agents",
                self.bundles.len(),
                instance.n()
            )));
        }
        Allocation::new(self.bundles.clone(), instance.m()).map(|_| ())
    }

    /// Every agent's utility for her own bundle.
    pub fn utilities(&self, instance: &Instance) -> Result<Vec<Rational>> {
        self.validate_for(instance)?;
        (0..instance.n())
            .map(|i| instance.bundle_utility(i, &self.bundles[i]))
            .collect()
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, bundle) in self.bundles.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let items: Vec<String> = bundle.iter().map(|g| (g + 1).to_string()).collect();
            write!(f, "{}: {{{}}}", i + 1, items.join(","))?;
        }
        Ok(())
    }
}

/// Ordered agent turns; the agent holding turn `k` picks the `k`-th item.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PickingSequence {
    turns: Vec<usize>,
}

impl PickingSequence {
    pub fn new(turns: Vec<usize>) -> Self {
        PickingSequence { turns }
    }

    /// From 1-based agent labels.
    pub fn from_one_based(turns: &[usize]) -> Result<Self> {
        turns
            .iter()
            .map(|&a| {
                a.checked_sub(1)
                    .ok_or_else(|| Error::parse("turns", "agent indices are 1-based"))
            })
            .collect::<Result<Vec<_>>>()
            .map(PickingSequence::new)
    }

    pub fn turns(&self) -> &[usize] {
        &self.turns
    }

    pub fn len(&self) -> usize {
        self.turns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.turns.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.turns.iter().map(|a| a + 1).collect()
    }

    pub fn max_agent(&self) -> Option<usize> {
        self.turns.iter().copied().max()
    }

    pub fn is_prefix_of(&self, other: &PickingSequence) -> bool {
        other.turns.starts_with(&self.turns)
    }

    pub fn prefix(&self, len: usize) -> PickingSequence {
        PickingSequence::new(self.turns[..len.min(self.turns.len())].to_vec())
    }

    /// Pick counts per agent, sized to `agent_count`.
    pub fn counts(&self, agent_count: usize) -> Vec<usize> {
        let mut counts = vec![0; agent_count];
        for &a in &self.turns {
            if a < agent_count {
                counts[a] += 1;
            }
        }
        counts
    }

    pub fn check_agents(&self, agent_count: usize) -> Result<()> {
        match self.turns.iter().find(|&&a| a >= agent_count) {
            Some(a) => Err(Error::arg(format!(
                "sequence names agent {} but only {agent_count} agents exist",
                a + 1
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for PickingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.turns.iter().map(|a| (a + 1).to_string()).collect();
        write!(f, "{}", labels.join(" "))
    }
}
