//! Drawing conventions a submission must follow before it is graded:
//!
//! 1. state names are nonempty and unique,
//! 2. exactly one start state is marked,
//! 3. every state is accessible from the start state,
//! 4. transitions use alphabet symbols (epsilon only in NFA questions),
//! 5. every state has a transition on every symbol, unless missing
//!    transitions go to an implicit dump state,
//! 6. a DFA has at most one transition per state and symbol.
//!
//! Every violation is reported, ordered by rule and then by element, with the
//! offending states or transitions attached so a client can highlight them.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::format::{FsmDocument, FsmType, Label, QuestionConfig};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ValidationCode {
    EmptyOrDuplicateStateName,
    StartStateCount,
    NonAccessibleState,
    InvalidTransitionSymbol,
    MissingTransition,
    DfaNondeterminism,
}

impl ValidationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ValidationCode::EmptyOrDuplicateStateName => "EMPTY_OR_DUPLICATE_STATE_NAME",
            ValidationCode::StartStateCount => "START_STATE_COUNT",
            ValidationCode::NonAccessibleState => "NON_ACCESSIBLE_STATE",
            ValidationCode::InvalidTransitionSymbol => "INVALID_TRANSITION_SYMBOL",
            ValidationCode::MissingTransition => "MISSING_TRANSITION",
            ValidationCode::DfaNondeterminism => "DFA_NONDETERMINISM",
        }
    }
}

impl fmt::Display for ValidationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A drawn element: a state, or a `(from, symbol, to)` edge. Serializes as a
/// string or a three-element list; an epsilon symbol is `""`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ElementRef {
    State(String),
    Transition { from: String, label: Label, to: String },
}

impl ElementRef {
    pub fn state(name: &str) -> Self {
        ElementRef::State(name.to_string())
    }

    pub fn transition(from: &str, label: Label, to: &str) -> Self {
        ElementRef::Transition {
            from: from.to_string(),
            label,
            to: to.to_string(),
        }
    }
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementRef::State(s) => write!(f, "{s:?}"),
            ElementRef::Transition { from, label, to } => {
                let label = match label {
                    Label::Epsilon => "ε".to_string(),
                    Label::Symbol(c) => c.to_string(),
                };
                write!(f, "({from:?}, {label}, {to:?})")
            }
        }
    }
}

impl Serialize for ElementRef {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ElementRef::State(name) => s.serialize_str(name),
            ElementRef::Transition { from, label, to } => {
                let mut t = s.serialize_tuple(3)?;
                t.serialize_element(from)?;
                t.serialize_element(label)?;
                t.serialize_element(to)?;
                t.end()
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ValidationError {
    pub code: ValidationCode,
    pub message: String,
    pub element_refs: Vec<ElementRef>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)?;
        if !self.element_refs.is_empty() {
            let refs: Vec<String> = self.element_refs.iter().map(ToString::to_string).collect();
            write!(f, " [{}]", refs.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct ValidationReport {
    pub errors: Vec<ValidationError>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn codes(&self) -> Vec<ValidationCode> {
        self.errors.iter().map(|e| e.code).collect()
    }
}

fn error(code: ValidationCode, message: String, element_refs: Vec<ElementRef>) -> ValidationError {
    ValidationError {
        code,
        message,
        element_refs,
    }
}

/// Checks a submission against the drawing conventions for `config`.
pub fn validate(doc: &FsmDocument, config: &QuestionConfig) -> ValidationReport {
    let mut errors = Vec::new();

    // rule 1
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for s in &doc.states {
        *seen.entry(s.as_str()).or_default() += 1;
    }
    let bad_names: BTreeSet<&str> = doc
        .states
        .iter()
        .map(String::as_str)
        .filter(|s| s.is_empty() || s.trim() != *s || seen[s] > 1)
        .collect();
    for name in bad_names {
        let message = if name.is_empty() {
            "a state has an empty name".to_string()
        } else if seen[name] > 1 {
            format!("state name {name:?} is used {} times", seen[name])
        } else {
            format!("state name {name:?} has leading or trailing whitespace")
        };
        errors.push(error(ValidationCode::EmptyOrDuplicateStateName, message, vec![ElementRef::state(name)]));
    }

    // rule 2
    let starts: BTreeSet<&str> = doc.initial_state.as_slice().iter().map(String::as_str).collect();
    if starts.len() != 1 {
        let message = if starts.is_empty() {
            "no start state is marked".to_string()
        } else {
            format!("{} start states are marked; exactly one is required", starts.len())
        };
        errors.push(error(
            ValidationCode::StartStateCount,
            message,
            starts.iter().map(|s| ElementRef::state(s)).collect(),
        ));
    }

    // rule 3: reachability along every drawn edge, from every marked start
    if !starts.is_empty() {
        let mut adjacency: HashMap<&str, Vec<&str>> = HashMap::new();
        for (from, _, to) in doc.edges() {
            adjacency.entry(from).or_default().push(to);
        }
        let mut reached: HashSet<&str> = starts.iter().copied().collect();
        let mut queue: VecDeque<&str> = starts.iter().copied().collect();
        while let Some(q) = queue.pop_front() {
            for &t in adjacency.get(q).into_iter().flatten() {
                if reached.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        let unreachable: BTreeSet<&str> = doc
            .states
            .iter()
            .map(String::as_str)
            .filter(|s| !reached.contains(s))
            .collect();
        for s in unreachable {
            errors.push(error(
                ValidationCode::NonAccessibleState,
                format!("state {s:?} cannot be reached from the start state"),
                vec![ElementRef::state(s)],
            ));
        }
    }

    // rule 4
    let allowed = |label: Label| match label {
        Label::Epsilon => config.fsm_type == FsmType::Nfa,
        Label::Symbol(c) => config.alphabet.contains(c),
    };
    let invalid: BTreeSet<ElementRef> = doc
        .edges()
        .filter(|(_, label, _)| !allowed(*label))
        .map(|(from, label, to)| ElementRef::transition(from, label, to))
        .collect();
    for r in invalid {
        let ElementRef::Transition { label, .. } = &r else {
            unreachable!()
        };
        let message = match label {
            Label::Epsilon => "epsilon transitions are not allowed in a DFA".to_string(),
            Label::Symbol(c) => format!("'{c}' is not in the alphabet {}", config.alphabet),
        };
        errors.push(error(ValidationCode::InvalidTransitionSymbol, message, vec![r]));
    }

    // cells keyed by (state, symbol) over valid symbols only
    let mut cells: BTreeMap<(&str, char), BTreeSet<ElementRef>> = BTreeMap::new();
    for (from, label, to) in doc.edges() {
        if let Label::Symbol(c) = label {
            if config.alphabet.contains(c) {
                cells
                    .entry((from, c))
                    .or_default()
                    .insert(ElementRef::transition(from, label, to));
            }
        }
    }
    let edge_count = |from: &str, c: char| -> usize {
        doc.transitions
            .get(from)
            .and_then(|row| row.get(&Label::Symbol(c)))
            .map_or(0, |t| t.as_slice().len())
    };

    // rule 5
    if !config.implicit_dump_state {
        let names: BTreeSet<&str> = doc.states.iter().map(String::as_str).collect();
        for s in names {
            for c in config.alphabet.iter() {
                if edge_count(s, c) == 0 {
                    errors.push(error(
                        ValidationCode::MissingTransition,
                        format!("state {s:?} has no transition on '{c}'"),
                        vec![ElementRef::state(s)],
                    ));
                }
            }
        }
    }

    // rule 6
    if config.fsm_type == FsmType::Dfa {
        for ((s, c), refs) in &cells {
            if edge_count(s, *c) > 1 {
                errors.push(error(
                    ValidationCode::DfaNondeterminism,
                    format!("state {s:?} has {} transitions on '{c}'", edge_count(s, *c)),
                    refs.iter().cloned().collect(),
                ));
            }
        }
    }

    ValidationReport { errors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::fixtures::LISTING_JSON;
    use crate::format::{parse_fsm, ReferenceSolution};

    fn config(kind: FsmType, dump: bool) -> QuestionConfig {
        let mut c = QuestionConfig::new(
            "q",
            kind,
            Alphabet::new(['0', '1']).unwrap(),
            ReferenceSolution::Fsm(parse_fsm(LISTING_JSON).unwrap()),
        );
        c.implicit_dump_state = dump;
        c
    }

    fn doc(json: &str) -> FsmDocument {
        parse_fsm(json).unwrap()
    }

    #[test]
    fn listing_is_clean() {
        let report = validate(&doc(LISTING_JSON), &config(FsmType::Dfa, false));
        assert!(report.is_valid(), "{:?}", report);
    }

    #[test]
    fn isolated_state() {
        let text = LISTING_JSON
            .replace("[\"0\", \"1\", \"2\", \"3\"]", "[\"0\", \"1\", \"2\", \"3\", \"4\"]")
            .replace("\"3\":{\"0\": \"3\", \"1\": \"3\"}", "\"3\":{\"0\": \"3\", \"1\": \"3\"}, \"4\":{\"0\": \"4\", \"1\": \"4\"}");
        let report = validate(&doc(&text), &config(FsmType::Dfa, false));
        assert_eq!(report.codes(), [ValidationCode::NonAccessibleState]);
        assert_eq!(report.errors[0].element_refs, [ElementRef::state("4")]);
    }

    #[test]
    fn nondeterminism_and_missing_together() {
        let text = r#"{"states": ["0", "1"], "input_symbols": ["0", "1"],
            "transitions": {"0": {"0": ["0", "1"]}, "1": {"0": "1", "1": "1"}},
            "initial_state": "0", "final_states": ["1"]}"#;
        let report = validate(&doc(text), &config(FsmType::Dfa, false));
        assert_eq!(
            report.codes(),
            [ValidationCode::MissingTransition, ValidationCode::DfaNondeterminism]
        );
        assert_eq!(report.errors[0].element_refs, [ElementRef::state("0")]);
        assert_eq!(
            report.errors[1].element_refs,
            [
                ElementRef::transition("0", Label::Symbol('0'), "0"),
                ElementRef::transition("0", Label::Symbol('0'), "1"),
            ]
        );
        // with a dump state the gap is fine, the duplicate still is not
        let report = validate(&doc(text), &config(FsmType::Dfa, true));
        assert_eq!(report.codes(), [ValidationCode::DfaNondeterminism]);
        // NFAs may branch
        let report = validate(&doc(text), &config(FsmType::Nfa, true));
        assert!(report.is_valid());
    }

    #[test]
    fn epsilon_only_in_nfa() {
        let text = r#"{"states": ["a", "b"], "input_symbols": ["0", "1"],
            "transitions": {"a": {"": "b", "0": "a", "1": "a"}, "b": {"0": "b", "1": "b"}},
            "initial_state": "a", "final_states": ["b"]}"#;
        let report = validate(&doc(text), &config(FsmType::Dfa, false));
        assert_eq!(report.codes(), [ValidationCode::InvalidTransitionSymbol]);
        assert_eq!(
            report.errors[0].element_refs,
            [ElementRef::transition("a", Label::Epsilon, "b")]
        );
        assert!(validate(&doc(text), &config(FsmType::Nfa, false)).is_valid());
    }

    #[test]
    fn reports_everything_in_rule_order() {
        let text = r#"{"states": ["a", "a", "", "z"], "input_symbols": ["0", "x"],
            "transitions": {"a": {"x": "a"}}, "initial_state": [], "final_states": []}"#;
        let report = validate(&doc(text), &config(FsmType::Dfa, false));
        let codes = report.codes();
        let mut sorted = codes.clone();
        sorted.sort();
        assert_eq!(codes, sorted);
        assert_eq!(codes[..3], [
            ValidationCode::EmptyOrDuplicateStateName,
            ValidationCode::EmptyOrDuplicateStateName,
            ValidationCode::StartStateCount
        ]);
        assert_eq!(report.errors[0].element_refs, [ElementRef::state("")]);
        assert_eq!(report.errors[1].element_refs, [ElementRef::state("a")]);
        assert!(report.errors[2].element_refs.is_empty());
        assert!(codes.contains(&ValidationCode::InvalidTransitionSymbol));
        assert!(!codes.contains(&ValidationCode::NonAccessibleState));
    }

    #[test]
    fn element_refs_serialize_compactly() {
        let refs = vec![
            ElementRef::state("q"),
            ElementRef::transition("q", Label::Symbol('0'), "r"),
            ElementRef::transition("q", Label::Epsilon, "r"),
        ];
        assert_eq!(
            serde_json::to_string(&refs).unwrap(),
            r#"["q",["q","0","r"],["q","","r"]]"#
        );
    }
}
