//! Brute-force oracles. Each works by enumerating words or walking the raw
//! transition table, never through the library's constructions.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use fsmgrade_core::{Alphabet, Dfa};
use rand::seq::SliceRandom;
use rand::Rng;

/// All words over `symbols` of length exactly `len`, in lexicographic order.
pub fn words_of_len(symbols: &[char], len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|w| symbols.iter().map(move |c| format!("{w}{c}")))
            .collect();
    }
    out
}

/// All words of length `0..=max_len` in shortlex order.
pub fn words_up_to(symbols: &[char], max_len: usize) -> Vec<String> {
    (0..=max_len).flat_map(|n| words_of_len(symbols, n)).collect()
}

/// Runs the raw table from `state`.
pub fn run(dfa: &Dfa, state: usize, word: &str) -> usize {
    let symbols = dfa_symbols(dfa);
    word.chars().fold(state, |q, c| {
        let a = symbols.iter().position(|&s| s == c).unwrap();
        dfa.next(q, a)
    })
}

pub fn accepts(dfa: &Dfa, word: &str) -> bool {
    dfa.is_final(run(dfa, dfa.initial(), word))
}

pub fn dfa_symbols(dfa: &Dfa) -> Vec<char> {
    use fsmgrade_core::Acceptor;
    dfa.alphabet().symbols().to_vec()
}

/// Product-graph BFS for a reachable pair with mismatched finality.
pub fn equivalent_by_product(a: &Dfa, b: &Dfa) -> bool {
    let k = dfa_symbols(a).len();
    let start = (a.initial(), b.initial());
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        if a.is_final(p) != b.is_final(q) {
            return false;
        }
        for s in 0..k {
            let next = (a.next(p, s), b.next(q, s));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    true
}

/// Shortlex-first word up to `max_len` on which the machines disagree.
pub fn first_disagreement(a: &Dfa, b: &Dfa, max_len: usize) -> Option<String> {
    words_up_to(&dfa_symbols(a), max_len)
        .into_iter()
        .find(|w| accepts(a, w) != accepts(b, w))
}

/// Number of Myhill–Nerode classes: reachable states grouped by their
/// acceptance signature over every word of length `< n` (enough to separate
/// any two distinguishable states of an `n`-state DFA).
pub fn nerode_class_count(dfa: &Dfa) -> usize {
    let n = dfa.num_states();
    let symbols = dfa_symbols(dfa);
    let probes = words_up_to(&symbols, n.saturating_sub(1));
    let reachable: HashSet<usize> = words_up_to(&symbols, n.saturating_sub(1))
        .iter()
        .map(|w| run(dfa, dfa.initial(), w))
        .collect();
    let signatures: HashSet<Vec<bool>> = reachable
        .iter()
        .map(|&q| probes.iter().map(|w| dfa.is_final(run(dfa, q, w))).collect())
        .collect();
    signatures.len()
}

pub fn count_by_enumeration(dfa: &Dfa, len: usize) -> u64 {
    words_of_len(&dfa_symbols(dfa), len)
        .iter()
        .filter(|w| accepts(dfa, w))
        .count() as u64
}

/// Approximated density difference by enumerating every word up to `2k`,
/// with `k` from the Myhill–Nerode oracle.
pub fn density_difference(student: &Dfa, reference: &Dfa) -> f64 {
    let k = nerode_class_count(reference);
    let symbols = dfa_symbols(reference);
    let total: f64 = (0..=2 * k)
        .map(|n| {
            let words = words_of_len(&symbols, n);
            let wrong = words.iter().filter(|w| accepts(student, w) != accepts(reference, w)).count();
            let right = words.iter().filter(|w| accepts(reference, w)).count();
            wrong as f64 / right.max(1) as f64
        })
        .sum();
    total / (2 * k + 1) as f64
}

/// Shortlex comparison.
pub fn shortlex_lt(a: &str, b: &str) -> bool {
    (a.chars().count(), a) < (b.chars().count(), b)
}

pub fn alphabet(size: usize) -> Alphabet {
    Alphabet::new(['0', '1', '2', '3', '4', '5'].into_iter().take(size)).unwrap()
}

/// Uniformly random total DFA with states `0..n` and initial state 0.
pub fn random_dfa<R: Rng>(rng: &mut R, n: usize, symbols: usize) -> Dfa {
    let delta = (0..n * symbols).map(|_| rng.gen_range(0..n)).collect();
    let finals = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::numbered(alphabet(symbols), delta, 0, finals).unwrap()
}

/// A language-equal copy of `dfa` with every state split in two; each
/// transition picks one of the target's copies at random.
pub fn split_copy<R: Rng>(rng: &mut R, dfa: &Dfa) -> Dfa {
    let n = dfa.num_states();
    let k = dfa_symbols(dfa).len();
    let mut delta = Vec::with_capacity(2 * n * k);
    for _ in 0..2 {
        for q in 0..n {
            for a in 0..k {
                delta.push(dfa.next(q, a) + if rng.gen_bool(0.5) { n } else { 0 });
            }
        }
    }
    let finals = (0..2 * n).map(|q| dfa.is_final(q % n)).collect();
    Dfa::numbered(alphabet(k), delta, dfa.initial(), finals).unwrap()
}

/// `dfa` with its states renumbered by a uniformly random permutation: a
/// same-size, language-equal random DFA.
pub fn relabeled<R: Rng>(rng: &mut R, dfa: &Dfa) -> Dfa {
    let n = dfa.num_states();
    let k = dfa_symbols(dfa).len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut delta = vec![0; n * k];
    let mut finals = vec![false; n];
    for q in 0..n {
        for a in 0..k {
            delta[perm[q] * k + a] = perm[dfa.next(q, a)];
        }
        finals[perm[q]] = dfa.is_final(q);
    }
    Dfa::numbered(alphabet(k), delta, perm[dfa.initial()], finals).unwrap()
}
