//! Sample machines used across tests, benches and the sample question bank.

use crate::automaton::{Alphabet, Dfa};

/// Reference DFA for "binary strings with at least three 0s", as an
/// instructor would write it.
pub const LISTING_JSON: &str = r#"{
  "states": ["0", "1", "2", "3"],
  "input_symbols": ["0", "1"],
  "transitions":{
      "0":{"0": "1", "1": "0"},
      "1":{"0": "2", "1": "1"},
      "2":{"0": "3", "1": "2"},
      "3":{"0": "3", "1": "3"}
  },
  "initial_state": "0",
  "final_states": ["3"]
}"#;

pub fn binary() -> Alphabet {
    Alphabet::new(['0', '1']).expect("valid alphabet")
}

/// Binary strings with at least `k` zeros: states `"0"..="k"` count zeros
/// seen, saturating at `k`. `at_least_zeros(3)` is the listing machine.
pub fn at_least_zeros(k: usize) -> Dfa {
    let delta = (0..=k).flat_map(|i| [(i + 1).min(k), i]).collect();
    let finals = (0..=k).map(|i| i == k).collect();
    Dfa::numbered(binary(), delta, 0, finals).expect("valid table")
}

/// A 6-state machine for the same language as [`at_least_zeros`]`(3)`, with
/// states `1` and `2` each duplicated.
pub fn at_least_zeros_padded() -> Dfa {
    Dfa::new(
        &["0", "1b", "1", "2b", "2", "3"],
        binary(),
        &[
            ("0", '0', "1b"),
            ("0", '1', "0"),
            ("1b", '0', "2"),
            ("1b", '1', "1"),
            ("1", '0', "2b"),
            ("1", '1', "1b"),
            ("2b", '0', "3"),
            ("2b", '1', "2"),
            ("2", '0', "3"),
            ("2", '1', "2b"),
            ("3", '0', "3"),
            ("3", '1', "3"),
        ],
        "0",
        &["3"],
    )
    .expect("valid machine")
}
