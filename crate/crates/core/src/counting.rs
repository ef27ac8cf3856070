//! Exact per-length word counts and shortlex enumeration of a DFA's language.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::automaton::{Acceptor, Dfa};

/// `counts[n]` is the number of accepted words of length exactly `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordCountTable {
    counts: Vec<BigUint>,
}

impl WordCountTable {
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, len: usize) -> Option<&BigUint> {
        self.counts.get(len)
    }

    /// Largest length covered by the table.
    pub fn max_len(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Counts accepted words of each length `0..=max_len` by forward dynamic
/// programming over (state, length).
pub fn count_words(dfa: &Dfa, max_len: usize) -> WordCountTable {
    let n = dfa.num_states();
    let mut reach = vec![BigUint::zero(); n];
    reach[dfa.initial()] = BigUint::from(1u8);
    let mut counts = Vec::with_capacity(max_len + 1);
    for len in 0..=max_len {
        counts.push(dfa.final_states().map(|q| &reach[q]).sum());
        if len == max_len {
            break;
        }
        let mut next = vec![BigUint::zero(); n];
        for (q, ways) in reach.iter().enumerate() {
            if ways.is_zero() {
                continue;
            }
            for t in dfa.row(q) {
                next[t] += ways;
            }
        }
        reach = next;
    }
    WordCountTable { counts }
}

/// The first `limit` accepted words of length at most `max_len`, in shortlex
/// order.
///
/// A backward table records which states can still reach acceptance in
/// exactly `r` more symbols; the depth-first walk for each target length only
/// enters branches that lead to an accepted word, so the work is proportional
/// to the output size times `max_len` times the alphabet size.
pub fn enumerate_shortlex(dfa: &Dfa, max_len: usize, limit: usize) -> Vec<String> {
    let n = dfa.num_states();
    let k = dfa.alphabet().len();
    // viable[r][q]: some word of length exactly r leads from q to a final state
    let mut viable: Vec<Vec<bool>> = Vec::with_capacity(max_len + 1);
    viable.push(dfa.final_flags().to_vec());
    for r in 1..=max_len {
        let prev = &viable[r - 1];
        let row = (0..n).map(|q| dfa.row(q).any(|t| prev[t])).collect();
        viable.push(row);
    }

    let mut out = Vec::new();
    let mut word = Vec::with_capacity(max_len);
    for len in 0..=max_len {
        if out.len() >= limit {
            break;
        }
        if !viable[len][dfa.initial()] {
            continue;
        }
        // iterative DFS; stack holds (state, next symbol to try)
        let mut stack = vec![(dfa.initial(), 0usize)];
        word.clear();
        while let Some(top) = stack.last_mut() {
            if word.len() == len {
                out.push(dfa.alphabet().decode(&word));
                if out.len() >= limit {
                    break;
                }
                stack.pop();
                word.pop();
                continue;
            }
            let remaining = len - word.len() - 1;
            let mut step = None;
            while top.1 < k {
                let a = top.1;
                top.1 += 1;
                let t = dfa.next(top.0, a);
                if viable[remaining][t] {
                    step = Some((a, t));
                    break;
                }
            }
            match step {
                Some((a, t)) => {
                    word.push(a);
                    stack.push((t, 0));
                }
                None => {
                    stack.pop();
                    word.pop();
                }
            }
        }
    }
    out
}
