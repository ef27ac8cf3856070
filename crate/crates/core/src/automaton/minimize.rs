//! Hopcroft partition refinement.
//!
//! The quotient is renumbered breadth-first from the initial state with
//! symbols in sorted order and states named `"0"`, `"1"`, ... Because the
//! minimal DFA of a language is unique up to isomorphism, this numbering makes
//! equal languages minimize to structurally equal values.

use std::collections::VecDeque;

use super::{Acceptor, Dfa};

/// Refinable partition over `0..n`. Each block owns a contiguous slice of
/// `elems`; marked members are swapped to the front of their block.
struct Partition {
    elems: Vec<usize>,
    loc: Vec<usize>,
    block_of: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    marked: Vec<usize>,
}

impl Partition {
    fn new(block_of: Vec<usize>, num_blocks: usize) -> Self {
        let n = block_of.len();
        let mut sizes = vec![0; num_blocks];
        for &b in &block_of {
            sizes[b] += 1;
        }
        let mut start = vec![0; num_blocks];
        for b in 1..num_blocks {
            start[b] = start[b - 1] + sizes[b - 1];
        }
        let mut fill = start.clone();
        let mut elems = vec![0; n];
        let mut loc = vec![0; n];
        for (q, &b) in block_of.iter().enumerate() {
            elems[fill[b]] = q;
            loc[q] = fill[b];
            fill[b] += 1;
        }
        Partition {
            elems,
            loc,
            block_of,
            end: fill,
            marked: start.clone(),
            start,
        }
    }

    fn num_blocks(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: usize) -> usize {
        self.end[b] - self.start[b]
    }

    fn members(&self, b: usize) -> &[usize] {
        &self.elems[self.start[b]..self.end[b]]
    }

    /// Marks `q`; returns true when it is the first mark in its block.
    fn mark(&mut self, q: usize) -> bool {
        let b = self.block_of[q];
        let pos = self.loc[q];
        if pos < self.marked[b] {
            return false;
        }
        let first = self.marked[b] == self.start[b];
        let dest = self.marked[b];
        let other = self.elems[dest];
        self.elems.swap(pos, dest);
        self.loc[other] = pos;
        self.loc[q] = dest;
        self.marked[b] += 1;
        first
    }

    /// Splits off the marked prefix of `b` as a new block, unless every member
    /// was marked. Returns the new block id.
    fn split(&mut self, b: usize) -> Option<usize> {
        let mid = self.marked[b];
        self.marked[b] = self.start[b];
        if mid == self.end[b] {
            return None;
        }
        let nb = self.num_blocks();
        self.start.push(self.start[b]);
        self.end.push(mid);
        self.marked.push(self.start[b]);
        self.start[b] = mid;
        self.marked[b] = mid;
        for i in self.start[nb]..self.end[nb] {
            self.block_of[self.elems[i]] = nb;
        }
        Some(nb)
    }
}

impl Dfa {
    /// Minimal DFA for the same language: inaccessible states are dropped and
    /// indistinguishable states merged.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet().len();
        let accessible = self.accessible();
        let live: Vec<usize> = (0..self.num_states()).filter(|&q| accessible[q]).collect();
        let mut local = vec![usize::MAX; self.num_states()];
        for (i, &q) in live.iter().enumerate() {
            local[q] = i;
        }
        let n = live.len();

        // inverse transitions in CSR form, per symbol
        let mut pre_start = vec![0usize; k * (n + 1) + 1];
        for &q in &live {
            for a in 0..k {
                pre_start[a * (n + 1) + local[self.next(q, a)] + 1] += 1;
            }
        }
        for i in 1..pre_start.len() {
            pre_start[i] += pre_start[i - 1];
        }
        let mut fill = pre_start.clone();
        let mut pre = vec![0usize; n * k];
        for (i, &q) in live.iter().enumerate() {
            for a in 0..k {
                let slot = &mut fill[a * (n + 1) + local[self.next(q, a)]];
                pre[*slot] = i;
                *slot += 1;
            }
        }
        let preimage = |a: usize, t: usize| &pre[pre_start[a * (n + 1) + t]..pre_start[a * (n + 1) + t + 1]];

        let has_final = live.iter().any(|&q| self.is_final(q));
        let has_nonfinal = live.iter().any(|&q| !self.is_final(q));
        let initial_blocks: Vec<usize> = if has_final && has_nonfinal {
            live.iter().map(|&q| usize::from(self.is_final(q))).collect()
        } else {
            vec![0; n]
        };
        let num_initial = if has_final && has_nonfinal { 2 } else { 1 };
        let mut part = Partition::new(initial_blocks, num_initial);

        let mut in_work = vec![false; num_initial];
        let mut work = Vec::new();
        if num_initial == 2 {
            let smaller = if part.size(0) <= part.size(1) { 0 } else { 1 };
            in_work[smaller] = true;
            work.push(smaller);
        }

        let mut touched = Vec::new();
        while let Some(splitter) = work.pop() {
            in_work[splitter] = false;
            let snapshot = part.members(splitter).to_vec();
            for a in 0..k {
                for &t in &snapshot {
                    for &p in preimage(a, t) {
                        if part.mark(p) {
                            touched.push(part.block_of[p]);
                        }
                    }
                }
                for b in touched.drain(..) {
                    if let Some(nb) = part.split(b) {
                        in_work.push(false);
                        if in_work[b] || part.size(nb) <= part.size(b) {
                            in_work[nb] = true;
                            work.push(nb);
                        } else {
                            in_work[b] = true;
                            work.push(b);
                        }
                    }
                }
            }
        }

        // canonical breadth-first numbering of the blocks
        let blocks = part.num_blocks();
        let mut order = vec![usize::MAX; blocks];
        let mut rep = Vec::with_capacity(blocks);
        let start_block = part.block_of[local[self.initial()]];
        order[start_block] = 0;
        rep.push(live[part.members(start_block)[0]]);
        let mut queue = VecDeque::from([start_block]);
        let mut delta = Vec::with_capacity(blocks * k);
        while let Some(b) = queue.pop_front() {
            let q = live[part.members(b)[0]];
            for a in 0..k {
                let tb = part.block_of[local[self.next(q, a)]];
                if order[tb] == usize::MAX {
                    order[tb] = rep.len();
                    rep.push(live[part.members(tb)[0]]);
                    queue.push_back(tb);
                }
                delta.push(order[tb]);
            }
        }
        let finals = rep.iter().map(|&q| self.is_final(q)).collect();
        let names = (0..rep.len()).map(|i| i.to_string()).collect();
        Dfa::from_parts_unchecked(names, self.alphabet().clone(), delta, 0, finals)
    }
}

#[cfg(test)]
mod tests {
    use crate::automaton::{Acceptor, Alphabet, Dfa};
    use crate::fixtures;

    #[test]
    fn listing_dfa_is_already_minimal() {
        let d = fixtures::at_least_zeros(3);
        let m = d.minimize();
        assert_eq!(m.num_states(), 4);
        assert_eq!(m, d);
    }

    #[test]
    fn duplicated_states_collapse() {
        let d = fixtures::at_least_zeros_padded();
        assert_eq!(d.num_states(), 6);
        let m = d.minimize();
        assert_eq!(m.num_states(), 4);
        assert_eq!(m, fixtures::at_least_zeros(3));
        assert_eq!(m.minimize(), m);
    }

    #[test]
    fn drops_unreachable() {
        let ab = Alphabet::new(['a']).unwrap();
        let d = Dfa::numbered(ab, vec![0, 0, 1], 0, vec![true, false, true]).unwrap();
        let m = d.minimize();
        assert_eq!(m.num_states(), 1);
        assert!(m.accepts("aaa").unwrap());
    }

    #[test]
    fn single_class_languages() {
        let ab = Alphabet::new(['0', '1']).unwrap();
        let all = Dfa::numbered(ab.clone(), vec![1, 1, 0, 0], 0, vec![true, true]).unwrap();
        assert_eq!(all.minimize(), Dfa::universal(ab.clone()));
        let none = Dfa::numbered(ab.clone(), vec![1, 1, 0, 0], 0, vec![false, false]).unwrap();
        assert_eq!(none.minimize(), Dfa::empty_language(ab));
    }
}
