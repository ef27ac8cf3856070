//! Immutable DFA/NFA values and the classical constructions on them:
//! epsilon closure, subset construction, minimization, product machines,
//! complement and Thompson's regex construction.
//!
//! States are stored by index with a parallel table of names. Names are
//! what callers see (traces, validation reports, serialized documents);
//! indices are what the algorithms work on.

mod alphabet;
mod dfa;
mod minimize;
mod nfa;
mod product;
pub mod regex;

pub use alphabet::{is_valid_symbol, single_char, Alphabet};
pub use dfa::Dfa;
pub use nfa::Nfa;
pub use product::ProductMode;
pub use regex::{regex_to_nfa, Regex, RegexError};

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate alphabet symbol '{0}'")]
    DuplicateSymbol(char),
    #[error("'{0}' cannot be used as an alphabet symbol")]
    InvalidSymbol(char),
    #[error("symbol \"{0}\" is not a single character")]
    MultiCharSymbol(String),
    #[error("symbol '{0}' is not in the alphabet")]
    SymbolNotInAlphabet(char),
    #[error("automaton has no states")]
    NoStates,
    #[error("state name must be nonempty")]
    EmptyStateName,
    #[error("duplicate state name \"{0}\"")]
    DuplicateState(String),
    #[error("unknown state \"{0}\"")]
    UnknownState(String),
    #[error("no transition from state \"{state}\" on '{symbol}'")]
    MissingTransition { state: String, symbol: char },
    #[error("state \"{state}\" has several transitions on '{symbol}'")]
    Nondeterministic { state: String, symbol: char },
    #[error("automata are over different alphabets: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("word \"{0}\" is not accepted, so it has no accepting run")]
    NoAcceptingRun(String),
}

/// Word acceptance and run reconstruction, shared by DFAs and NFAs.
pub trait Acceptor {
    fn alphabet(&self) -> &Alphabet;

    /// Whether the machine accepts `word`. Errors on symbols outside the alphabet.
    fn accepts(&self, word: &str) -> Result<bool, AutomatonError>;

    /// State names visited while reading `word`.
    ///
    /// A DFA always yields its unique run (`|word| + 1` names). An NFA yields
    /// one shortest accepting run, including states entered by epsilon moves,
    /// and errors when the word is rejected.
    fn trace(&self, word: &str) -> Result<Vec<String>, AutomatonError>;
}

pub(crate) fn check_same_alphabet(a: &Alphabet, b: &Alphabet) -> Result<(), AutomatonError> {
    if a == b {
        Ok(())
    } else {
        Err(AutomatonError::AlphabetMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

pub(crate) fn check_state_names<'a, I: IntoIterator<Item = &'a String>>(names: I) -> Result<(), AutomatonError> {
    let mut seen = std::collections::HashSet::new();
    for name in names {
        if name.is_empty() {
            return Err(AutomatonError::EmptyStateName);
        }
        if !seen.insert(name.as_str()) {
            return Err(AutomatonError::DuplicateState(name.clone()));
        }
    }
    if seen.is_empty() {
        return Err(AutomatonError::NoStates);
    }
    Ok(())
}
