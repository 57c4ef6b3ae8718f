//! Consistency decision procedures for picking-sequence families.

use crate::error::Result;
use crate::model::PickingSequence;
use crate::rational::Rational;

/// `family(weights, m)` is a prefix of `family(weights, m + 1)`.
pub fn check_resource_consistency<F>(family: F, weights: &[Rational], m: usize) -> Result<bool>
where
    F: Fn(&[Rational], usize) -> Result<PickingSequence>,
{
    let short = family(weights, m)?;
    let long = family(weights, m + 1)?;
    Ok(short.is_prefix_of(&long))
}

/// Whether `pi_n1` arises from `pi_n` by inserting `new_agent` in some positions and trimming
/// to the original length: removing every `new_agent` turn from `pi_n1` must leave a prefix of `pi_n`.
/// `pi_n` itself must not mention `new_agent`; if it does the answer is `false`.
pub fn check_population_consistency_pair(pi_n: &PickingSequence, pi_n1: &PickingSequence, new_agent: usize) -> bool {
    if pi_n.len() != pi_n1.len() || pi_n.turns().contains(&new_agent) {
        return false;
    }
    let rest: Vec<usize> = pi_n1.turns().iter().copied().filter(|&a| a != new_agent).collect();
    pi_n.turns().starts_with(&rest)
}

/// Whether `pi_prime` arises from `pi` by moving `agent`'s turns earlier, inserting `agent`
/// turns, and trimming to the original length. Decided by two conditions:
/// the other agents' turns in `pi_prime` form a prefix of those in `pi`, and every prefix
/// of `pi_prime` gives `agent` at least as many turns as the same prefix of `pi`.
pub fn check_weight_consistency_pair(pi: &PickingSequence, pi_prime: &PickingSequence, agent: usize) -> bool {
    if pi.len() != pi_prime.len() {
        return false;
    }
    let others = |s: &PickingSequence| s.turns().iter().copied().filter(|&a| a != agent).collect::<Vec<_>>();
    if !others(pi).starts_with(&others(pi_prime)) {
        return false;
    }
    let (mut before, mut after) = (0usize, 0usize);
    for (a, b) in pi.turns().iter().zip(pi_prime.turns()) {
        before += usize::from(*a == agent);
        after += usize::from(*b == agent);
        if after < before {
            return false;
        }
    }
    true
}

/// Population consistency of a family: appending an agent with `new_weight`.
pub fn check_population_consistency<F>(family: F, weights: &[Rational], new_weight: &Rational, m: usize) -> Result<bool>
where
    F: Fn(&[Rational], usize) -> Result<PickingSequence>,
{
    let mut extended = weights.to_vec();
    extended.push(new_weight.clone());
    Ok(check_population_consistency_pair(
        &family(weights, m)?,
        &family(&extended, m)?,
        weights.len(),
    ))
}

/// Weight consistency of a family: raising `agent`'s weight to `new_weight`.
pub fn check_weight_consistency<F>(family: F, weights: &[Rational], agent: usize, new_weight: &Rational, m: usize) -> Result<bool>
where
    F: Fn(&[Rational], usize) -> Result<PickingSequence>,
{
    let mut raised = weights.to_vec();
    raised[agent] = new_weight.clone();
    Ok(check_weight_consistency_pair(&family(weights, m)?, &family(&raised, m)?, agent))
}
