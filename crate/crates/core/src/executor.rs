//! Runs a picking sequence against an instance.

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, PickingSequence};

/// Each turn the acting agent takes her most valued remaining item, lowest item index on ties.
/// A turn is taken even when every remaining item is worth zero to the agent.
pub fn execute(instance: &Instance, sequence: &PickingSequence) -> Result<Allocation> {
    if sequence.len() != instance.m() {
        return Err(Error::arg(format!(
            "sequence has {} turns but the instance has {} items",
            sequence.len(),
            instance.m()
        )));
    }
    sequence.check_agents(instance.n())?;
    let mut remaining: Vec<usize> = (0..instance.m()).collect();
    let mut owner = vec![0usize; instance.m()];
    for &agent in sequence.turns() {
        let mut best = 0;
        for k in 1..remaining.len() {
            if instance.utility(agent, remaining[k]) > instance.utility(agent, remaining[best]) {
                best = k;
            }
        }
        // `remaining` stays sorted, so the first maximum is the lowest index.
        let item = remaining.remove(best);
        owner[item] = agent;
    }
    Allocation::from_owners(&owner, instance.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn table() -> Instance {
        Instance::from_ints(
            &[1, 1, 1],
            &[&[10, 9, 8, 7, 0], &[7, 10, 8, 9, 0], &[0, 7, 10, 8, 9]],
        )
        .unwrap()
    }

    fn run(inst: &Instance, turns: &[usize]) -> Allocation {
        execute(inst, &PickingSequence::from_one_based(turns).unwrap()).unwrap()
    }

    #[test]
    fn first_sequence_gives_agent_one_items_1_3_4() {
        let alloc = run(&table(), &[1, 2, 1, 3, 1]);
        assert_eq!(alloc.bundle(0), &[0, 2, 3]);
        assert_eq!(table().bundle_utility(0, alloc.bundle(0)).unwrap(), int(25));
    }

    #[test]
    fn second_sequence_gives_agent_one_items_1_2_5() {
        let alloc = run(&table(), &[1, 1, 2, 3, 1]);
        assert_eq!(alloc.bundle(0), &[0, 1, 4]);
        assert_eq!(table().bundle_utility(0, alloc.bundle(0)).unwrap(), int(19));
    }

    #[test]
    fn rejects_length_and_agent_mismatch() {
        let inst = table();
        assert!(execute(&inst, &PickingSequence::new(vec![0; 4])).is_err());
        assert!(execute(&inst, &PickingSequence::new(vec![0, 0, 0, 0, 3])).is_err());
    }

    #[test]
    fn zero_utilities_still_pick_lowest_index() {
        let inst = Instance::from_ints(&[1, 1], &[&[0, 0, 0], &[0, 5, 0]]).unwrap();
        let alloc = run(&inst, &[1, 2, 1]);
        assert_eq!(alloc.bundle(0), &[0, 2]);
        assert_eq!(alloc.bundle(1), &[1]);
    }

    fn arb_case() -> impl Strategy<Value = (Instance, PickingSequence)> {
        (1usize..4, 0usize..8).prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(proptest::collection::vec(0i64..6, m), n),
                proptest::collection::vec(0..n, m),
            )
                .prop_map(move |(u, turns)| {
                    let inst = Instance::new(
                        vec![int(1); n],
                        u.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
                        m,
                    )
                    .unwrap();
                    (inst, PickingSequence::new(turns))
                })
        })
    }

    proptest! {
        #[test]
        fn bundle_sizes_match_turn_counts((inst, seq) in arb_case()) {
            let alloc = execute(&inst, &seq).unwrap();
            let counts = seq.counts(inst.n());
            for (i, &count) in counts.iter().enumerate() {
                prop_assert_eq!(alloc.bundle(i).len(), count);
            }
        }

        #[test]
        fn own_picks_never_improve((inst, seq) in arb_case()) {
            let alloc = execute(&inst, &seq).unwrap();
            let mut taken = vec![false; inst.m()];
            let mut last: Vec<Option<crate::rational::Rational>> = vec![None; inst.n()];
            for &a in seq.turns() {
                let g = (0..inst.m())
                    .filter(|&g| !taken[g])
                    .max_by(|&x, &y| inst.utility(a, x).cmp(inst.utility(a, y)).then(y.cmp(&x)))
                    .unwrap();
                taken[g] = true;
                prop_assert!(alloc.bundle(a).contains(&g));
                if let Some(prev) = &last[a] {
                    prop_assert!(inst.utility(a, g) <= prev);
                }
                last[a] = Some(inst.utility(a, g).clone());
            }
        }

        #[test]
        fn sole_agent_takes_everything(m in 0usize..8) {
            let inst = Instance::new(vec![int(1)], vec![(0..m as i64).map(int).collect()], m).unwrap();
            let alloc = execute(&inst, &PickingSequence::new(vec![0; m])).unwrap();
            prop_assert_eq!(alloc.bundle(0).len(), m);
        }
    }
}
