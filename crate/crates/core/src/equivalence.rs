//! Language equality of DFAs by the Hopcroft–Karp union-find method, and
//! shortlex-minimal witnesses for inequivalent pairs.
//!
//! The union-find runs over the disjoint union of both state sets. Starting
//! from the pair of initial states, each merged pair pushes its successor
//! pairs; a class that would mix final and non-final states proves the
//! languages differ. At most `|A| + |B| - 1` merges happen, each processing
//! `|Σ|` successor pairs, so the work is near-linear in the transition count.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{check_same_alphabet, Acceptor, AutomatonError, Dfa};

/// Disjoint-set forest with union by size and path halving. A root
/// stores the negated size of its class, so one array serves both purposes.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<i32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        assert!(n <= i32::MAX as usize, "too many elements");
        UnionFind { parent: vec![-1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        loop {
            let p = self.parent[x];
            if p < 0 {
                return x;
            }
            let grandparent = self.parent[p as usize];
            if grandparent < 0 {
                return p as usize;
            }
            self.parent[x] = grandparent;
            x = grandparent as usize;
        }
    }

    /// Merges the classes of `a` and `b`; false if they were already one class.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // sizes are negative, so the larger class has the smaller entry
        if self.parent[ra] > self.parent[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[ra] += self.parent[rb];
        self.parent[rb] = ra as i32;
        true
    }
}

/// Whether `a` and `b` accept the same language.
pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool, AutomatonError> {
    check_same_alphabet(a.alphabet(), b.alphabet())?;
    let k = a.alphabet().len();
    let offset = a.num_states();
    let mut uf = UnionFind::new(offset + b.num_states());
    let (ia, ib) = (a.initial(), b.initial());
    if a.is_final(ia) != b.is_final(ib) {
        return Ok(false);
    }
    uf.union(ia, offset + ib);
    let mut pending = vec![(ia, ib)];
    while let Some((p, q)) = pending.pop() {
        for sym in 0..k {
            let ((p2, final_a), (q2, final_b)) = (a.step(p, sym), b.step(q, sym));
            if uf.union(p2, offset + q2) {
                // classes were homogeneous before this merge, so comparing
                // the two representatives decides the merged class
                if final_a != final_b {
                    return Ok(false);
                }
                pending.push((p2, q2));
            }
        }
    }
    Ok(true)
}

/// Which of the two machines is the answer key.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reference {
    First,
    Second,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// Accepted by the checked machine, rejected by the reference.
    IncorrectlyAccepted,
    /// Rejected by the checked machine, accepted by the reference.
    IncorrectlyRejected,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::IncorrectlyAccepted => "incorrectly accepted",
            Classification::IncorrectlyRejected => "incorrectly rejected",
        })
    }
}

/// A word accepted by exactly one of two machines.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WitnessString {
    pub word: String,
    pub classification: Classification,
}

impl WitnessString {
    /// Classifies `word` for a checked machine that does (or does not) accept it.
    pub fn new(word: String, checked_accepts: bool) -> Self {
        let classification = if checked_accepts {
            Classification::IncorrectlyAccepted
        } else {
            Classification::IncorrectlyRejected
        };
        WitnessString { word, classification }
    }

    /// The word for display, with `ε` standing in for the empty word.
    pub fn display_word(&self) -> &str {
        display_word(&self.word)
    }
}

pub fn display_word(word: &str) -> &str {
    if word.is_empty() {
        "ε"
    } else {
        word
    }
}

/// Shortlex-minimal word on which `a` and `b` disagree, or `None` if they are
/// equivalent.
///
/// After the union-find check rules out equivalence, a breadth-first search
/// over the reachable product pairs, expanding symbols in sorted order, finds
/// the first pair with mismatched finality. Breadth-first discovery order
/// equals shortlex order of the words that first reach each pair.
pub fn shortest_witness(a: &Dfa, b: &Dfa, reference: Reference) -> Result<Option<WitnessString>, AutomatonError> {
    if equivalent(a, b)? {
        return Ok(None);
    }
    let k = a.alphabet().len();
    let start = (a.initial(), b.initial());
    let mut parent: HashMap<(usize, usize), ((usize, usize), usize)> = HashMap::new();
    parent.insert(start, (start, usize::MAX));
    let mut queue = VecDeque::from([start]);
    while let Some(pair @ (p, q)) = queue.pop_front() {
        if a.is_final(p) != b.is_final(q) {
            let mut symbols = Vec::new();
            let mut at = pair;
            while at != start {
                let (prev, sym) = parent[&at];
                symbols.push(sym);
                at = prev;
            }
            symbols.reverse();
            let word = a.alphabet().decode(&symbols);
            let checked_accepts = match reference {
                Reference::First => b.is_final(q),
                Reference::Second => a.is_final(p),
            };
            return Ok(Some(WitnessString::new(word, checked_accepts)));
        }
        for sym in 0..k {
            let next = (a.next(p, sym), b.next(q, sym));
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert((pair, sym));
                queue.push_back(next);
            }
        }
    }
    unreachable!("union-find found a difference the product search could not reach")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::fixtures::{at_least_zeros, at_least_zeros_padded};

    #[test]
    fn reflexive_and_minimized() {
        let d = at_least_zeros(3);
        assert!(equivalent(&d, &d).unwrap());
        assert!(equivalent(&d, &d.minimize()).unwrap());
        assert!(equivalent(&d, &at_least_zeros_padded()).unwrap());
        assert!(!equivalent(&d, &at_least_zeros(2)).unwrap());
    }

    #[test]
    fn witnesses_against_listing() {
        let reference = at_least_zeros(3);
        let w = shortest_witness(&reference, &at_least_zeros(2), Reference::First)
            .unwrap()
            .unwrap();
        assert_eq!(w.word, "00");
        assert_eq!(w.classification, Classification::IncorrectlyAccepted);

        let w = shortest_witness(&reference, &at_least_zeros(4), Reference::First)
            .unwrap()
            .unwrap();
        assert_eq!(w.word, "000");
        assert_eq!(w.classification, Classification::IncorrectlyRejected);

        // swapping the reference flips the label
        let w = shortest_witness(&at_least_zeros(4), &reference, Reference::Second)
            .unwrap()
            .unwrap();
        assert_eq!(w.classification, Classification::IncorrectlyRejected);

        assert_eq!(
            shortest_witness(&reference, &at_least_zeros_padded(), Reference::First).unwrap(),
            None
        );
    }

    #[test]
    fn empty_word_witness() {
        let ab = Alphabet::new(['0', '1']).unwrap();
        let w = shortest_witness(&Dfa::universal(ab.clone()), &Dfa::empty_language(ab), Reference::First)
            .unwrap()
            .unwrap();
        assert_eq!(w.word, "");
        assert_eq!(w.display_word(), "ε");
        assert_eq!(w.classification, Classification::IncorrectlyRejected);
    }

    #[test]
    fn alphabet_mismatch() {
        let other = Dfa::universal(Alphabet::new(['a', 'b']).unwrap());
        assert!(matches!(
            equivalent(&at_least_zeros(3), &other),
            Err(AutomatonError::AlphabetMismatch { .. })
        ));
        assert!(shortest_witness(&at_least_zeros(3), &other, Reference::First).is_err());
    }

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(0), uf.find(3));
        assert!(uf.union(1, 4));
        assert_eq!(uf.find(0), uf.find(3));
    }
}
