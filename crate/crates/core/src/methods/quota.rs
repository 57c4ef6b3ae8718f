//! The quota method.
//!
//! At round `k` an agent is eligible while `t_i < w_i k / W`; among eligible
//! agents the turn goes to the smallest `(t_i + 1) / w_i`, lowest index first.

use crate::error::{Error, Result};
use crate::methods::divisor::check_weights;
use crate::model::PickingSequence;
use crate::rational::{self, Rational};

/// Agents eligible in round `round` (1-based) given current pick counts.
pub fn eligible_agents(weights: &[Rational], counts: &[usize], round: usize) -> Vec<usize> {
    let total: Rational = weights.iter().sum();
    let round = rational::from_usize(round);
    (0..weights.len())
        .filter(|&i| rational::from_usize(counts[i]) * &total < &weights[i] * &round)
        .collect()
}

pub fn quota_sequence(weights: &[Rational], m: usize) -> Result<PickingSequence> {
    check_weights(weights)?;
    let mut counts = vec![0usize; weights.len()];
    let mut turns = Vec::with_capacity(m);
    for round in 1..=m {
        let eligible = eligible_agents(weights, &counts, round);
        let best = eligible
            .iter()
            .copied()
            .min_by(|&a, &b| {
                let sa = rational::from_usize(counts[a] + 1) / &weights[a];
                let sb = rational::from_usize(counts[b] + 1) / &weights[b];
                sa.cmp(&sb).then(a.cmp(&b))
            })
            .ok_or_else(|| Error::Invariant(format!("no agent is eligible in round {round}")))?;
        counts[best] += 1;
        turns.push(best);
    }
    Ok(PickingSequence::new(turns))
}
