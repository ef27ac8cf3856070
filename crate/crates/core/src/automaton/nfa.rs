use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{check_state_names, Acceptor, Alphabet, AutomatonError, Dfa};

/// A nondeterministic finite automaton with epsilon moves.
///
/// Epsilon is never an alphabet symbol; epsilon edges live in their own table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Nfa {
    names: Vec<String>,
    alphabet: Alphabet,
    /// `delta[state][symbol]`, sorted and deduplicated.
    delta: Vec<Vec<Vec<usize>>>,
    epsilon: Vec<Vec<usize>>,
    initial: usize,
    finals: Vec<bool>,
}

impl Nfa {
    /// Builds an NFA from named states and `(from, symbol, to)` triples, where a
    /// `None` symbol is an epsilon move.
    pub fn new<S: AsRef<str>>(
        states: &[S],
        alphabet: Alphabet,
        transitions: &[(&str, Option<char>, &str)],
        initial: &str,
        finals: &[&str],
    ) -> Result<Self, AutomatonError> {
        let names: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        check_state_names(&names)?;
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| AutomatonError::UnknownState(name.to_string()))
        };
        let mut nfa = Nfa::with_states(names.clone(), alphabet, lookup(initial)?);
        for &(from, symbol, to) in transitions {
            let (p, q) = (lookup(from)?, lookup(to)?);
            match symbol {
                None => nfa.add_epsilon(p, q),
                Some(c) => {
                    let a = nfa
                        .alphabet
                        .index_of(c)
                        .ok_or(AutomatonError::SymbolNotInAlphabet(c))?;
                    nfa.add_transition(p, a, q);
                }
            }
        }
        for f in finals {
            nfa.finals[lookup(f)?] = true;
        }
        nfa.normalize();
        Ok(nfa)
    }

    pub(crate) fn with_states(names: Vec<String>, alphabet: Alphabet, initial: usize) -> Self {
        let n = names.len();
        let k = alphabet.len();
        Nfa {
            names,
            alphabet,
            delta: vec![vec![Vec::new(); k]; n],
            epsilon: vec![Vec::new(); n],
            initial,
            finals: vec![false; n],
        }
    }

    pub(crate) fn add_state(&mut self, name: String) -> usize {
        self.names.push(name);
        self.delta.push(vec![Vec::new(); self.alphabet.len()]);
        self.epsilon.push(Vec::new());
        self.finals.push(false);
        self.names.len() - 1
    }

    pub(crate) fn add_transition(&mut self, from: usize, symbol: usize, to: usize) {
        self.delta[from][symbol].push(to);
    }

    pub(crate) fn add_epsilon(&mut self, from: usize, to: usize) {
        self.epsilon[from].push(to);
    }

    pub(crate) fn set_final(&mut self, state: usize, is_final: bool) {
        self.finals[state] = is_final;
    }

    pub(crate) fn set_initial(&mut self, state: usize) {
        self.initial = state;
    }

    pub(crate) fn normalize(&mut self) {
        for targets in self.delta.iter_mut().flatten().chain(self.epsilon.iter_mut()) {
            targets.sort_unstable();
            targets.dedup();
        }
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

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn targets(&self, state: usize, symbol: usize) -> &[usize] {
        &self.delta[state][symbol]
    }

    pub fn epsilon_targets(&self, state: usize) -> &[usize] {
        &self.epsilon[state]
    }

    /// Whether the NFA has any epsilon edge.
    pub fn has_epsilon(&self) -> bool {
        self.epsilon.iter().any(|e| !e.is_empty())
    }

    /// Smallest superset of `states` closed under epsilon moves, by name.
    pub fn epsilon_closure<'a, I>(&self, states: I) -> Result<BTreeSet<String>, AutomatonError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let seeds = states
            .into_iter()
            .map(|s| {
                self.names
                    .iter()
                    .position(|n| n == s)
                    .ok_or_else(|| AutomatonError::UnknownState(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let closed = self.closure_of(seeds);
        Ok(closed.into_iter().map(|q| self.names[q].clone()).collect())
    }

    /// Index-based epsilon closure; the result is sorted.
    pub(crate) fn closure_of<I: IntoIterator<Item = usize>>(&self, seeds: I) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<usize> = Vec::new();
        for s in seeds {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        let mut out = stack.clone();
        while let Some(q) = stack.pop() {
            for &t in &self.epsilon[q] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                    out.push(t);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Subset construction. Only subsets reachable from the initial closure are
    /// built; they are numbered in breadth-first discovery order (symbols in
    /// sorted order) and named `{a,b,...}` from their members' sorted names.
    pub fn to_dfa(&self) -> Dfa {
        let k = self.alphabet.len();
        let start = self.closure_of([self.initial]);
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut subsets = vec![start];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            for a in 0..k {
                let mut step: Vec<usize> = subsets[i]
                    .iter()
                    .flat_map(|&q| self.delta[q][a].iter().copied())
                    .collect();
                step.sort_unstable();
                step.dedup();
                let target = self.closure_of(step);
                let next_id = subsets.len();
                let id = *ids.entry(target.clone()).or_insert_with(|| {
                    subsets.push(target);
                    next_id
                });
                delta.push(id);
            }
            i += 1;
        }
        let finals = subsets.iter().map(|s| s.iter().any(|&q| self.finals[q])).collect();
        let names = subsets.iter().map(|s| self.subset_name(s)).collect();
        Dfa::from_parts_unchecked(names, self.alphabet.clone(), delta, 0, finals)
    }

    fn subset_name(&self, subset: &[usize]) -> String {
        let mut members: Vec<&str> = subset.iter().map(|&q| self.names[q].as_str()).collect();
        members.sort_unstable();
        format!("{{{}}}", members.join(","))
    }
}

impl From<&Dfa> for Nfa {
    fn from(dfa: &Dfa) -> Self {
        let mut nfa = Nfa::with_states(dfa.state_names().to_vec(), dfa.alphabet().clone(), dfa.initial());
        for (p, a, q) in dfa.transitions() {
            nfa.add_transition(p, a, q);
        }
        for f in dfa.final_states() {
            nfa.set_final(f, true);
        }
        nfa
    }
}

impl Acceptor for Nfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn accepts(&self, word: &str) -> Result<bool, AutomatonError> {
        let word = self.alphabet.encode(word)?;
        let mut current = self.closure_of([self.initial]);
        for &a in &word {
            let step: Vec<usize> = current.iter().flat_map(|&q| self.delta[q][a].iter().copied()).collect();
            current = self.closure_of(step);
        }
        Ok(current.iter().any(|&q| self.finals[q]))
    }

    /// Breadth-first search over `(state, consumed)` pairs finds the accepting
    /// run with the fewest steps; ties go to lower state indices.
    fn trace(&self, word: &str) -> Result<Vec<String>, AutomatonError> {
        let encoded = self.alphabet.encode(word)?;
        let len = encoded.len();
        let n = self.num_states();
        let slot = |q: usize, pos: usize| pos * n + q;
        let mut parent = vec![usize::MAX; n * (len + 1)];
        let root = slot(self.initial, 0);
        parent[root] = root;
        let mut queue = VecDeque::from([(self.initial, 0usize)]);
        let mut found = None;
        while let Some((q, pos)) = queue.pop_front() {
            if pos == len && self.finals[q] {
                found = Some(slot(q, pos));
                break;
            }
            let here = slot(q, pos);
            let eps = self.epsilon[q].iter().map(|&t| (t, pos));
            let sym = (pos < len)
                .then(|| self.delta[q][encoded[pos]].iter().map(move |&t| (t, pos + 1)))
                .into_iter()
                .flatten();
            for (t, p) in eps.chain(sym) {
                let s = slot(t, p);
                if parent[s] == usize::MAX {
                    parent[s] = here;
                    queue.push_back((t, p));
                }
            }
        }
        let mut at = found.ok_or_else(|| AutomatonError::NoAcceptingRun(word.to_string()))?;
        let mut path = vec![self.names[at % n].clone()];
        while parent[at] != at {
            at = parent[at];
            path.push(self.names[at % n].clone());
        }
        path.reverse();
        Ok(path)
    }
}
