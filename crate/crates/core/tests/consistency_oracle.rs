mod common;

use fairseq::harness::{check_population_consistency_pair, check_weight_consistency_pair};
use fairseq::model::PickingSequence;

use common::{all_sequences, closure_images};

#[test]
fn weight_pair_matches_move_insert_trim_closure() {
    for n in 1..=3 {
        for m in 0..=6 {
            let candidates = all_sequences(n, m);
            for pi in &candidates {
                for agent in 0..n {
                    let images = closure_images(pi, agent, true);
                    let pi_seq = PickingSequence::new(pi.clone());
                    for other in &candidates {
                        let fast = check_weight_consistency_pair(&pi_seq, &PickingSequence::new(other.clone()), agent);
                        assert_eq!(fast, images.contains(other), "pi {pi:?} pi' {other:?} agent {agent}");
                    }
                }
            }
        }
    }
}

#[test]
fn population_pair_matches_insert_trim_closure() {
    for n in 1..=3 {
        for m in 0..=6 {
            let extended = all_sequences(n + 1, m);
            for pi in all_sequences(n, m) {
                let images = closure_images(&pi, n, false);
                let pi_seq = PickingSequence::new(pi.clone());
                for other in &extended {
                    let fast = check_population_consistency_pair(&pi_seq, &PickingSequence::new(other.clone()), n);
                    assert_eq!(fast, images.contains(other), "pi {pi:?} pi' {other:?}");
                }
            }
        }
    }
}

#[test]
fn closure_examples() {
    let images = closure_images(&[1, 0], 0, true);
    assert!(images.contains(&vec![0, 1]));
    assert!(!closure_images(&[0, 1], 0, true).contains(&vec![1, 0]));
    assert!(!closure_images(&[0, 1, 0], 2, false).contains(&vec![0, 2, 0]));
    assert!(closure_images(&[0, 1, 0], 2, false).contains(&vec![0, 1, 2]));
}
