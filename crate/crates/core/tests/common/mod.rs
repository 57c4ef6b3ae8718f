//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

/// Every sequence of `len` turns over `agents` agents, in lexicographic order.
pub fn all_sequences(agents: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..agents).map(move |a| {
                    let mut t = s.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// Length-`pi.len()` prefixes of every sequence reachable from `pi` by inserting `agent`
/// turns and, when `moves` is set, moving `agent` turns earlier. More than `pi.len()`
/// insertions cannot change the trimmed prefix, so intermediate sequences are capped at
/// twice the original length.
pub fn closure_images(pi: &[usize], agent: usize, moves: bool) -> HashSet<Vec<usize>> {
    let m = pi.len();
    let cap = 2 * m;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::from([pi.to_vec()]);
    seen.insert(pi.to_vec());
    while let Some(s) = queue.pop_front() {
        let mut next = Vec::new();
        if s.len() < cap {
            for pos in 0..=s.len() {
                let mut t = s.clone();
                t.insert(pos, agent);
                next.push(t);
            }
        }
        if moves {
            for pos in 1..s.len() {
                if s[pos] == agent && s[pos - 1] != agent {
                    let mut t = s.clone();
                    t.swap(pos - 1, pos);
                    next.push(t);
                }
            }
        }
        for t in next {
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen.into_iter().map(|s| s[..m].to_vec()).collect()
}
