use std::collections::VecDeque;

use super::{check_state_names, Acceptor, Alphabet, AutomatonError};

/// A total deterministic finite automaton.
///
/// The transition table is dense: `delta[state * |alphabet| + symbol]`.
/// Each entry packs the target index above a low bit holding the target's
/// finality, so a single table read answers both questions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dfa {
    names: Vec<String>,
    alphabet: Alphabet,
    delta: Vec<u32>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from named states and `(from, symbol, to)` triples.
    ///
    /// Every `(state, symbol)` pair must receive exactly one transition.
    pub fn new<S: AsRef<str>>(
        states: &[S],
        alphabet: Alphabet,
        transitions: &[(&str, char, &str)],
        initial: &str,
        finals: &[&str],
    ) -> Result<Self, AutomatonError> {
        let names: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        check_state_names(&names)?;
        let lookup = |name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| AutomatonError::UnknownState(name.to_string()))
        };
        let k = alphabet.len();
        let mut delta = vec![usize::MAX; names.len() * k];
        for &(from, symbol, to) in transitions {
            let p = lookup(from)?;
            let q = lookup(to)?;
            let a = alphabet
                .index_of(symbol)
                .ok_or(AutomatonError::SymbolNotInAlphabet(symbol))?;
            let cell = &mut delta[p * k + a];
            if *cell != usize::MAX && *cell != q {
                return Err(AutomatonError::Nondeterministic {
                    state: from.to_string(),
                    symbol,
                });
            }
            *cell = q;
        }
        if let Some(pos) = delta.iter().position(|&t| t == usize::MAX) {
            return Err(AutomatonError::MissingTransition {
                state: names[pos / k].clone(),
                symbol: alphabet.symbol(pos % k),
            });
        }
        let initial = lookup(initial)?;
        let mut final_flags = vec![false; names.len()];
        for f in finals {
            final_flags[lookup(f)?] = true;
        }
        Ok(Dfa::from_parts_unchecked(names, alphabet, delta, initial, final_flags))
    }

    /// Builds a DFA from an index-based table. `delta` is row-major by state.
    pub fn from_table(
        names: Vec<String>,
        alphabet: Alphabet,
        delta: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self, AutomatonError> {
        check_state_names(&names)?;
        let n = names.len();
        assert_eq!(delta.len(), n * alphabet.len(), "transition table has the wrong shape");
        assert_eq!(finals.len(), n, "final flags have the wrong length");
        if initial >= n {
            return Err(AutomatonError::UnknownState(initial.to_string()));
        }
        if let Some(&t) = delta.iter().find(|&&t| t >= n) {
            return Err(AutomatonError::UnknownState(t.to_string()));
        }
        Ok(Dfa::from_parts_unchecked(names, alphabet, delta, initial, finals))
    }

    /// Like [`Dfa::from_table`], naming states `"0"`, `"1"`, ...
    pub fn numbered(
        alphabet: Alphabet,
        delta: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self, AutomatonError> {
        let names = (0..finals.len()).map(|i| i.to_string()).collect();
        Self::from_table(names, alphabet, delta, initial, finals)
    }

    pub(crate) fn from_parts_unchecked(
        names: Vec<String>,
        alphabet: Alphabet,
        delta: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), names.len() * alphabet.len());
        assert!(names.len() <= (u32::MAX >> 1) as usize, "too many states");
        Dfa {
            names,
            alphabet,
            delta: delta.into_iter().map(|t| (t as u32) << 1 | u32::from(finals[t])).collect(),
            initial,
            finals,
        }
    }

    /// One-state DFA accepting every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa::from_parts_unchecked(vec!["0".into()], alphabet, vec![0; k], 0, vec![true])
    }

    /// One-state DFA accepting nothing.
    pub fn empty_language(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa::from_parts_unchecked(vec!["0".into()], alphabet, vec![0; k], 0, vec![false])
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn state_name(&self, state: usize) -> &str {
        &self.names[state]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn final_flags(&self) -> &[bool] {
        &self.finals
    }

    pub fn final_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i)
    }

    /// Successor of `state` on the symbol with index `symbol`.
    #[inline]
    pub fn next(&self, state: usize, symbol: usize) -> usize {
        (self.delta[state * self.alphabet.len() + symbol] >> 1) as usize
    }

    /// Successor of `state` on `symbol`, with its finality.
    #[inline]
    pub(crate) fn step(&self, state: usize, symbol: usize) -> (usize, bool) {
        let entry = self.delta[state * self.alphabet.len() + symbol];
        ((entry >> 1) as usize, entry & 1 == 1)
    }

    /// Successors of `state` in symbol order.
    pub fn row(&self, state: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        let k = self.alphabet.len();
        self.delta[state * k..(state + 1) * k].iter().map(|&t| (t >> 1) as usize)
    }

    /// All transitions as `(from, symbol index, to)`, ordered by state then symbol.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let k = self.alphabet.len();
        self.delta.iter().enumerate().map(move |(i, &t)| (i / k, i % k, (t >> 1) as usize))
    }

    /// State reached from `state` after reading the encoded word.
    pub fn run_from(&self, state: usize, word: &[usize]) -> usize {
        word.iter().fold(state, |q, &a| self.next(q, a))
    }

    /// Accessibility flags: `true` for states reachable from the initial state.
    pub fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for t in self.row(q) {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Flips which states accept.
    pub fn complement(&self) -> Dfa {
        Dfa {
            delta: self.delta.iter().map(|t| t ^ 1).collect(),
            finals: self.finals.iter().map(|f| !f).collect(),
            ..self.clone()
        }
    }
}

impl Acceptor for Dfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn accepts(&self, word: &str) -> Result<bool, AutomatonError> {
        let word = self.alphabet.encode(word)?;
        Ok(self.finals[self.run_from(self.initial, &word)])
    }

    fn trace(&self, word: &str) -> Result<Vec<String>, AutomatonError> {
        let word = self.alphabet.encode(word)?;
        let mut q = self.initial;
        let mut path = Vec::with_capacity(word.len() + 1);
        path.push(self.names[q].clone());
        for &a in &word {
            q = self.next(q, a);
            path.push(self.names[q].clone());
        }
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn listing_dfa_accepts_and_traces() {
        let d = fixtures::at_least_zeros(3);
        assert!(d.accepts("000").unwrap());
        assert_eq!(d.trace("000").unwrap(), ["0", "1", "2", "3"]);
        assert!(!d.accepts("").unwrap());
        assert!(!d.accepts("0101").unwrap());
        assert_eq!(d.trace("0101").unwrap().last().unwrap(), "2");
        assert_eq!(d.accepts("0a"), Err(AutomatonError::SymbolNotInAlphabet('a')));
        assert_eq!(d.trace("2"), Err(AutomatonError::SymbolNotInAlphabet('2')));
    }

    #[test]
    fn construction_errors() {
        let ab = Alphabet::new(['0', '1']).unwrap();
        let err = Dfa::new(&["a"], ab.clone(), &[("a", '0', "a")], "a", &[]).unwrap_err();
        assert_eq!(
            err,
            AutomatonError::MissingTransition {
                state: "a".into(),
                symbol: '1'
            }
        );
        let err = Dfa::new(
            &["a", "b"],
            ab.clone(),
            &[("a", '0', "a"), ("a", '0', "b")],
            "a",
            &[],
        )
        .unwrap_err();
        assert!(matches!(err, AutomatonError::Nondeterministic { .. }));
        let err = Dfa::new(&["a", "a"], ab.clone(), &[], "a", &[]).unwrap_err();
        assert_eq!(err, AutomatonError::DuplicateState("a".into()));
        let err = Dfa::new(&["a"], ab, &[("a", '0', "a"), ("a", '1', "a")], "z", &[]).unwrap_err();
        assert_eq!(err, AutomatonError::UnknownState("z".into()));
    }

    #[test]
    fn complement_flips() {
        let d = fixtures::at_least_zeros(3);
        let c = d.complement();
        for w in ["", "0", "000", "1001", "00100"] {
            assert_ne!(d.accepts(w).unwrap(), c.accepts(w).unwrap());
        }
    }

    #[test]
    fn accessible_ignores_islands() {
        let ab = Alphabet::new(['0']).unwrap();
        let d = Dfa::numbered(ab, vec![0, 1], 0, vec![false, true]).unwrap();
        assert_eq!(d.accessible(), vec![true, false]);
    }
}
