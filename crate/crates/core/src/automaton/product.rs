use std::collections::HashMap;

use super::{check_same_alphabet, Acceptor, AutomatonError, Dfa};

/// How a product state's finality derives from its two components.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProductMode {
    Intersection,
    Union,
    SymmetricDifference,
}

impl ProductMode {
    fn accepts(self, left: bool, right: bool) -> bool {
        match self {
            ProductMode::Intersection => left && right,
            ProductMode::Union => left || right,
            ProductMode::SymmetricDifference => left != right,
        }
    }
}

impl Dfa {
    /// Runs both machines in lockstep. Only pairs reachable from the initial
    /// pair are built, numbered breadth-first and named `(p,q)`.
    pub fn product(&self, other: &Dfa, mode: ProductMode) -> Result<Dfa, AutomatonError> {
        check_same_alphabet(self.alphabet(), other.alphabet())?;
        let k = self.alphabet().len();
        let start = (self.initial(), other.initial());
        let mut ids = HashMap::from([(start, 0usize)]);
        let mut pairs = vec![start];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..k {
                let target = (self.next(p, a), other.next(q, a));
                let fresh = pairs.len();
                let id = *ids.entry(target).or_insert_with(|| {
                    pairs.push(target);
                    fresh
                });
                delta.push(id);
            }
            i += 1;
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| mode.accepts(self.is_final(p), other.is_final(q)))
            .collect();
        let names = pairs
            .iter()
            .map(|&(p, q)| format!("({},{})", self.state_name(p), other.state_name(q)))
            .collect();
        Ok(Dfa::from_parts_unchecked(names, self.alphabet().clone(), delta, 0, finals))
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa, AutomatonError> {
        self.product(other, ProductMode::Intersection)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa, AutomatonError> {
        self.product(other, ProductMode::Union)
    }

    /// Accepts exactly the words on which the two machines disagree.
    pub fn symmetric_difference(&self, other: &Dfa) -> Result<Dfa, AutomatonError> {
        self.product(other, ProductMode::SymmetricDifference)
    }
}
