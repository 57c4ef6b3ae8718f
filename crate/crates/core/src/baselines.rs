//! Unweighted baselines: envy-cycle elimination, adjusted winner for
//! indivisible items, and round-robin.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, PickingSequence};
use crate::rational::Rational;

/// Strict unweighted envy between bundles: `i -> j` iff `u_i(M_j) > u_i(M_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvyGraph {
    envies: Vec<Vec<bool>>,
}

impl EnvyGraph {
    pub fn new(instance: &Instance, bundles: &[Vec<usize>]) -> Self {
        let value = |i: usize, b: &[usize]| b.iter().map(|&g| instance.utility(i, g)).sum::<Rational>();
        let n = bundles.len();
        let envies = (0..n)
            .map(|i| {
                let own = value(i, &bundles[i]);
                (0..n).map(|j| j != i && value(i, &bundles[j]) > own).collect()
            })
            .collect();
        EnvyGraph { envies }
    }

    pub fn envies(&self, i: usize, j: usize) -> bool {
        self.envies[i][j]
    }

    pub fn edge_count(&self) -> usize {
        self.envies.iter().flatten().filter(|&&e| e).count()
    }

    pub fn unenvied(&self) -> Vec<usize> {
        let n = self.envies.len();
        (0..n).filter(|&j| (0..n).all(|i| !self.envies[i][j])).collect()
    }

    /// First cycle closed by a depth-first search that starts from the lowest agent
    /// and follows edges in index order.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.envies.len();
        let mut done = vec![false; n];
        for start in 0..n {
            if done[start] {
                continue;
            }
            let mut path = vec![start];
            let mut on_path = vec![false; n];
            on_path[start] = true;
            let mut next_edge = vec![0usize; n];
            while let Some(&v) = path.last() {
                let succ = (next_edge[v]..n).find(|&w| self.envies[v][w]);
                match succ {
                    Some(w) => {
                        next_edge[v] = w + 1;
                        if on_path[w] {
                            let pos = path.iter().position(|&x| x == w).expect("on path");
                            return Some(path[pos..].to_vec());
                        }
                        if !done[w] {
                            path.push(w);
                            on_path[w] = true;
                        }
                    }
                    None => {
                        done[v] = true;
                        on_path[v] = false;
                        path.pop();
                    }
                }
            }
        }
        None
    }
}

/// Envy-cycle elimination with the maximum-marginal-utility rule: each item goes to the
/// unenvied agent who gains most from some remaining item (ties: agent, then item).
/// Weights are ignored.
pub fn envy_cycle_eliminate(instance: &Instance) -> Result<Allocation> {
    let n = instance.n();
    let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut remaining: Vec<usize> = (0..instance.m()).collect();
    while !remaining.is_empty() {
        let mut graph = EnvyGraph::new(instance, &bundles);
        let mut rotations = 0;
        while graph.unenvied().is_empty() {
            let cycle = graph
                .find_cycle()
                .ok_or_else(|| Error::Invariant("every agent is envied but no envy cycle exists".into()))?;
            let taken: Vec<Vec<usize>> = (0..cycle.len())
                .map(|k| bundles[cycle[(k + 1) % cycle.len()]].clone())
                .collect();
            for (k, &agent) in cycle.iter().enumerate() {
                bundles[agent] = taken[k].clone();
            }
            let rotated = EnvyGraph::new(instance, &bundles);
            // Each rotation removes the cycle's edges and adds none.
            if rotated.edge_count() >= graph.edge_count() || rotations > n * n {
                return Err(Error::Invariant("envy-cycle rotation made no progress".into()));
            }
            graph = rotated;
            rotations += 1;
        }
        let mut choice: Option<(usize, usize)> = None;
        for &i in &graph.unenvied() {
            for (pos, &g) in remaining.iter().enumerate() {
                let better = match choice {
                    None => true,
                    Some((a, p)) => instance.utility(i, g) > instance.utility(a, remaining[p]),
                };
                if better {
                    choice = Some((i, pos));
                }
            }
        }
        let (agent, pos) = choice.expect("an unenvied agent and a remaining item exist");
        let item = remaining.remove(pos);
        bundles[agent].push(item);
    }
    Allocation::new(bundles, instance.m())
}

/// Item order for adjusted winner: items agent 2 values at zero first (by agent 1's
/// value, descending), then decreasing `u_1 / u_2`; remaining ties by item index.
pub fn adjusted_winner_order(instance: &Instance) -> Vec<usize> {
    let mut items: Vec<usize> = (0..instance.m()).collect();
    items.sort_by(|&a, &b| {
        let (a1, a2) = (instance.utility(0, a), instance.utility(1, a));
        let (b1, b2) = (instance.utility(0, b), instance.utility(1, b));
        let key = match (a2.is_zero(), b2.is_zero()) {
            (true, true) => b1.cmp(a1),
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            // a1/a2 > b1/b2  <=>  a1*b2 > b1*a2
            (false, false) => (b1 * a2).cmp(&(a1 * b2)),
        };
        key.then(a.cmp(&b))
    });
    items
}

/// Two-agent adjusted winner for indivisible items: agent 1 receives the shortest prefix
/// of the ratio order whose value to her is at least that of everything after the next item.
pub fn adjusted_winner(instance: &Instance) -> Result<Allocation> {
    if instance.n() != 2 {
        return Err(Error::arg(format!(
            "adjusted winner needs exactly 2 agents, got {}",
            instance.n()
        )));
    }
    let order = adjusted_winner_order(instance);
    let m = order.len();
    let value = |items: &[usize]| items.iter().map(|&g| instance.utility(0, g)).sum::<Rational>();
    let cut = (1..=m)
        .find(|&k| value(&order[..k]) >= value(&order[(k + 1).min(m)..]))
        .unwrap_or(0);
    let mut owners = vec![1usize; m];
    for &g in &order[..cut] {
        owners[g] = 0;
    }
    Allocation::from_owners(&owners, 2)
}

/// `(1, 2, .., n, 1, 2, ..)` truncated to `m` turns.
pub fn round_robin_sequence(n: usize, m: usize) -> Result<PickingSequence> {
    if n == 0 {
        return Err(Error::arg("round robin needs at least one agent"));
    }
    Ok(PickingSequence::new((0..m).map(|k| k % n).collect()))
}
