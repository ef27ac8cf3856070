//! JSON documents for automata and question configurations.
//!
//! An FSM document has exactly five keys, serialized in this order:
//!
//! ```json
//! {
//!   "states": ["0", "1", "2", "3"],
//!   "input_symbols": ["0", "1"],
//!   "transitions": {
//!     "0": {"0": "1", "1": "0"},
//!     "1": {"0": "2", "1": "1"},
//!     "2": {"0": "3", "1": "2"},
//!     "3": {"0": "3", "1": "3"}
//!   },
//!   "initial_state": "0",
//!   "final_states": ["3"]
//! }
//! ```
//!
//! A transition target is a state name or a list of state names; the empty
//! string as a symbol key is an epsilon move. `initial_state` is normally a
//! single name, but a list is accepted so a drawing with zero or several start
//! markers can still be reported on. State and symbol order is kept as drawn.
//!
//! Documents are checked for shape here (keys, types, single-character
//! symbols, references to listed states). Whether they follow the drawing
//! conventions is the job of [`crate::grading::validate`].

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::automaton::{is_valid_symbol, single_char, Acceptor, Alphabet, AutomatonError, Dfa, Nfa, Regex};

pub const FSM_KEYS: [&str; 5] = ["states", "input_symbols", "transitions", "initial_state", "final_states"];

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    /// The text is not well-formed JSON.
    #[error("PARSE_ERROR at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    /// Well-formed JSON that does not fit the schema. `path` is a JSON pointer.
    #[error("SCHEMA_ERROR at {path}: {message}")]
    Schema { path: String, message: String },
}

impl FormatError {
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::Parse { .. } => "PARSE_ERROR",
            FormatError::Schema { .. } => "SCHEMA_ERROR",
        }
    }

    /// The top-level key at fault, for schema errors below a key.
    pub fn key(&self) -> Option<&str> {
        match self {
            FormatError::Schema { path, .. } => path.split('/').nth(1).filter(|k| !k.is_empty()),
            FormatError::Parse { .. } => None,
        }
    }

    fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        FormatError::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        FormatError::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

/// A transition label: an alphabet symbol or epsilon (the empty-string key).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Label {
    Epsilon,
    Symbol(char),
}

impl Label {
    pub fn parse(s: &str) -> Option<Label> {
        if s.is_empty() {
            Some(Label::Epsilon)
        } else {
            single_char(s).map(Label::Symbol)
        }
    }

    pub fn symbol(self) -> Option<char> {
        match self {
            Label::Symbol(c) => Some(c),
            Label::Epsilon => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Epsilon => Ok(()),
            Label::Symbol(c) => write!(f, "{c}"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One target, or a list of targets as nondeterministic drawings produce.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum Targets {
    One(String),
    Many(Vec<String>),
}

impl Targets {
    pub fn as_slice(&self) -> &[String] {
        match self {
            Targets::One(s) => std::slice::from_ref(s),
            Targets::Many(v) => v,
        }
    }
}

/// The start marker(s) of a drawing.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum StartMarker {
    One(String),
    Many(Vec<String>),
}

impl StartMarker {
    pub fn as_slice(&self) -> &[String] {
        match self {
            StartMarker::One(s) => std::slice::from_ref(s),
            StartMarker::Many(v) => v,
        }
    }

    pub fn single(&self) -> Option<&str> {
        match self.as_slice() {
            [s] => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FsmDocument {
    pub states: Vec<String>,
    pub input_symbols: Vec<char>,
    pub transitions: IndexMap<String, IndexMap<Label, Targets>>,
    pub initial_state: StartMarker,
    pub final_states: Vec<String>,
}

impl FsmDocument {
    /// Every drawn edge as `(from, label, to)`, in document order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, Label, &str)> + '_ {
        self.transitions.iter().flat_map(|(from, row)| {
            row.iter()
                .flat_map(move |(&label, t)| t.as_slice().iter().map(move |to| (from.as_str(), label, to.as_str())))
        })
    }

    pub fn alphabet(&self) -> Result<Alphabet, AutomatonError> {
        Alphabet::new(self.input_symbols.iter().copied())
    }

    /// Reads the document as an NFA over `alphabet`; missing transitions reject.
    pub fn to_nfa(&self, alphabet: &Alphabet) -> Result<Nfa, AutomatonError> {
        let initial = self
            .initial_state
            .single()
            .ok_or_else(|| AutomatonError::UnknownState(format!("{:?}", self.initial_state.as_slice())))?;
        let edges: Vec<(&str, Option<char>, &str)> = self.edges().map(|(f, l, t)| (f, l.symbol(), t)).collect();
        let finals: Vec<&str> = self.final_states.iter().map(String::as_str).collect();
        Nfa::new(&self.states, alphabet.clone(), &edges, initial, &finals)
    }

    /// Compiles the document over its own alphabet. A deterministic, total
    /// drawing keeps its state names; anything else goes through the subset
    /// construction.
    pub fn to_dfa(&self) -> Result<Dfa, AutomatonError> {
        let alphabet = self.alphabet()?;
        let deterministic = self
            .transitions
            .values()
            .flat_map(|row| row.iter())
            .all(|(label, t)| *label != Label::Epsilon && t.as_slice().len() == 1);
        if deterministic {
            let edges: Vec<(&str, char, &str)> = self
                .edges()
                .filter_map(|(f, l, t)| l.symbol().map(|c| (f, c, t)))
                .collect();
            let finals: Vec<&str> = self.final_states.iter().map(String::as_str).collect();
            if let Some(initial) = self.initial_state.single() {
                match Dfa::new(&self.states, alphabet.clone(), &edges, initial, &finals) {
                    Ok(dfa) => return Ok(dfa),
                    Err(AutomatonError::MissingTransition { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(self.to_nfa(&alphabet)?.to_dfa())
    }

    pub fn from_dfa(dfa: &Dfa) -> Self {
        let alphabet = dfa.alphabet();
        let transitions = (0..dfa.num_states())
            .map(|q| {
                let row = dfa
                    .row(q)
                    .enumerate()
                    .map(|(a, t)| (Label::Symbol(alphabet.symbol(a)), Targets::One(dfa.state_name(t).to_string())))
                    .collect();
                (dfa.state_name(q).to_string(), row)
            })
            .collect();
        FsmDocument {
            states: dfa.state_names().to_vec(),
            input_symbols: alphabet.symbols().to_vec(),
            transitions,
            initial_state: StartMarker::One(dfa.state_name(dfa.initial()).to_string()),
            final_states: dfa.final_states().map(|q| dfa.state_name(q).to_string()).collect(),
        }
    }

    pub fn from_nfa(nfa: &Nfa) -> Self {
        let alphabet = nfa.alphabet();
        let name = |q: &usize| nfa.state_name(*q).to_string();
        let transitions = (0..nfa.num_states())
            .filter_map(|q| {
                let mut row = IndexMap::new();
                if !nfa.epsilon_targets(q).is_empty() {
                    row.insert(Label::Epsilon, Targets::Many(nfa.epsilon_targets(q).iter().map(name).collect()));
                }
                for a in 0..alphabet.len() {
                    if !nfa.targets(q, a).is_empty() {
                        row.insert(
                            Label::Symbol(alphabet.symbol(a)),
                            Targets::Many(nfa.targets(q, a).iter().map(name).collect()),
                        );
                    }
                }
                (!row.is_empty()).then(|| (nfa.state_name(q).to_string(), row))
            })
            .collect();
        FsmDocument {
            states: nfa.state_names().to_vec(),
            input_symbols: alphabet.symbols().to_vec(),
            transitions,
            initial_state: StartMarker::One(nfa.state_name(nfa.initial()).to_string()),
            final_states: (0..nfa.num_states())
                .filter(|&q| nfa.is_final(q))
                .map(|q| nfa.state_name(q).to_string())
                .collect(),
        }
    }
}

/// Parses an FSM document.
pub fn parse_fsm(text: &str) -> Result<FsmDocument, FormatError> {
    let value: Value = serde_json::from_str(text)?;
    fsm_from_value(&value, "")
}

/// Serializes with the five keys in canonical order and two-space indentation.
pub fn serialize_fsm(doc: &FsmDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

fn escape_pointer(segment: &str) -> String {
    segment.replace('~', "~0").replace('/', "~1")
}

fn string_at(value: &Value, path: &str) -> Result<String, FormatError> {
    value
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| FormatError::schema(path, format!("expected a string, found {}", kind(value))))
}

fn string_list(value: &Value, path: &str) -> Result<Vec<String>, FormatError> {
    let items = value
        .as_array()
        .ok_or_else(|| FormatError::schema(path, format!("expected a list of strings, found {}", kind(value))))?;
    items
        .iter()
        .enumerate()
        .map(|(i, v)| string_at(v, &format!("{path}/{i}")))
        .collect()
}

fn kind(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "a list",
        Value::Object(_) => "an object",
    }
}

fn object<'v>(value: &'v Value, path: &str) -> Result<&'v serde_json::Map<String, Value>, FormatError> {
    value
        .as_object()
        .ok_or_else(|| FormatError::schema(if path.is_empty() { "/" } else { path }, format!("expected an object, found {}", kind(value))))
}

fn required<'v>(map: &'v serde_json::Map<String, Value>, base: &str, key: &str) -> Result<&'v Value, FormatError> {
    map.get(key)
        .ok_or_else(|| FormatError::schema(format!("{base}/{key}"), format!("missing required key \"{key}\"")))
}

fn reject_unknown_keys(map: &serde_json::Map<String, Value>, base: &str, known: &[&str]) -> Result<(), FormatError> {
    match map.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => Err(FormatError::schema(
            format!("{base}/{}", escape_pointer(k)),
            format!("unknown key \"{k}\""),
        )),
        None => Ok(()),
    }
}

pub(crate) fn fsm_from_value(value: &Value, base: &str) -> Result<FsmDocument, FormatError> {
    let map = object(value, base)?;
    reject_unknown_keys(map, base, &FSM_KEYS)?;
    let fields: Vec<&Value> = FSM_KEYS
        .iter()
        .map(|k| required(map, base, k))
        .collect::<Result<_, _>>()?;

    let states = string_list(fields[0], &format!("{base}/states"))?;

    let symbols_path = format!("{base}/input_symbols");
    let raw_symbols = string_list(fields[1], &symbols_path)?;
    if raw_symbols.is_empty() {
        return Err(FormatError::schema(&symbols_path, "alphabet must not be empty"));
    }
    let mut input_symbols = Vec::with_capacity(raw_symbols.len());
    for (i, s) in raw_symbols.iter().enumerate() {
        let path = format!("{symbols_path}/{i}");
        let c = single_char(s)
            .ok_or_else(|| FormatError::schema(&path, format!("symbol \"{s}\" is not a single character")))?;
        if !is_valid_symbol(c) {
            return Err(FormatError::schema(&path, format!("symbol {s:?} is not a visible character")));
        }
        if input_symbols.contains(&c) {
            return Err(FormatError::schema(&path, format!("duplicate symbol \"{s}\"")));
        }
        input_symbols.push(c);
    }

    let known: HashSet<&str> = states.iter().map(String::as_str).collect();
    let check_state = |name: &str, path: &str| {
        if known.contains(name) {
            Ok(())
        } else {
            Err(FormatError::schema(path, format!("\"{name}\" is not a listed state")))
        }
    };

    let trans_path = format!("{base}/transitions");
    let mut transitions = IndexMap::new();
    for (from, row) in object(fields[2], &trans_path)? {
        let row_path = format!("{trans_path}/{}", escape_pointer(from));
        check_state(from, &row_path)?;
        let mut parsed_row = IndexMap::new();
        for (label, targets) in object(row, &row_path)? {
            let cell_path = format!("{row_path}/{}", escape_pointer(label));
            let label = Label::parse(label).ok_or_else(|| {
                FormatError::schema(&cell_path, format!("symbol \"{label}\" is not a single character"))
            })?;
            let targets = match targets {
                Value::String(s) => Targets::One(s.clone()),
                Value::Array(_) => Targets::Many(string_list(targets, &cell_path)?),
                other => {
                    return Err(FormatError::schema(
                        &cell_path,
                        format!("expected a state name or list of state names, found {}", kind(other)),
                    ))
                }
            };
            for (i, t) in targets.as_slice().iter().enumerate() {
                let p = match targets {
                    Targets::One(_) => cell_path.clone(),
                    Targets::Many(_) => format!("{cell_path}/{i}"),
                };
                check_state(t, &p)?;
            }
            parsed_row.insert(label, targets);
        }
        transitions.insert(from.clone(), parsed_row);
    }

    let init_path = format!("{base}/initial_state");
    let initial_state = match fields[3] {
        Value::String(s) => StartMarker::One(s.clone()),
        Value::Array(_) => StartMarker::Many(string_list(fields[3], &init_path)?),
        other => {
            return Err(FormatError::schema(
                &init_path,
                format!("expected a state name or list of state names, found {}", kind(other)),
            ))
        }
    };
    for s in initial_state.as_slice() {
        check_state(s, &init_path)?;
    }

    let finals_path = format!("{base}/final_states");
    let final_states = string_list(fields[4], &finals_path)?;
    for (i, s) in final_states.iter().enumerate() {
        check_state(s, &format!("{finals_path}/{i}"))?;
    }

    Ok(FsmDocument {
        states,
        input_symbols,
        transitions,
        initial_state,
        final_states,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FsmType {
    Dfa,
    Nfa,
}

impl fmt::Display for FsmType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FsmType::Dfa => "dfa",
            FsmType::Nfa => "nfa",
        })
    }
}

/// The hidden answer to a question.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ReferenceSolution {
    Fsm(FsmDocument),
    Regex(Regex),
}

pub const DEFAULT_FEEDBACK_LENGTH_BOUND: usize = 8;
pub const DEFAULT_MAX_FEEDBACK_STRINGS: usize = 10;

const QUESTION_KEYS: [&str; 8] = [
    "question_id",
    "fsm_type",
    "alphabet",
    "reference",
    "implicit_dump_state",
    "feedback_length_bound",
    "max_feedback_strings",
    "prompt",
];

/// One question: a prompt plus its reference solution and grading settings.
///
/// In JSON, `reference` is either an FSM document object or a regex string.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuestionConfig {
    pub question_id: String,
    pub fsm_type: FsmType,
    pub alphabet: Alphabet,
    pub reference: ReferenceSolution,
    pub implicit_dump_state: bool,
    pub feedback_length_bound: usize,
    pub max_feedback_strings: usize,
    pub prompt: String,
}

impl QuestionConfig {
    /// A config with default feedback settings.
    pub fn new(question_id: impl Into<String>, fsm_type: FsmType, alphabet: Alphabet, reference: ReferenceSolution) -> Self {
        QuestionConfig {
            question_id: question_id.into(),
            fsm_type,
            alphabet,
            reference,
            implicit_dump_state: false,
            feedback_length_bound: DEFAULT_FEEDBACK_LENGTH_BOUND,
            max_feedback_strings: DEFAULT_MAX_FEEDBACK_STRINGS,
            prompt: String::new(),
        }
    }
}

/// Parses a question config document.
pub fn parse_question(text: &str) -> Result<QuestionConfig, FormatError> {
    let value: Value = serde_json::from_str(text)?;
    let map = object(&value, "")?;
    reject_unknown_keys(map, "", &QUESTION_KEYS)?;

    let question_id = string_at(required(map, "", "question_id")?, "/question_id")?;
    if question_id.trim().is_empty() {
        return Err(FormatError::schema("/question_id", "question id must not be blank"));
    }
    let fsm_type = match string_at(required(map, "", "fsm_type")?, "/fsm_type")?.as_str() {
        "dfa" => FsmType::Dfa,
        "nfa" => FsmType::Nfa,
        other => return Err(FormatError::schema("/fsm_type", format!("expected \"dfa\" or \"nfa\", found \"{other}\""))),
    };
    let symbols = string_list(required(map, "", "alphabet")?, "/alphabet")?;
    let alphabet = Alphabet::from_strs(symbols.iter().map(String::as_str))
        .map_err(|e| FormatError::schema("/alphabet", e.to_string()))?;
    let reference = match required(map, "", "reference")? {
        Value::String(pattern) => ReferenceSolution::Regex(Regex::new(pattern.clone())),
        v @ Value::Object(_) => ReferenceSolution::Fsm(fsm_from_value(v, "/reference")?),
        other => {
            return Err(FormatError::schema(
                "/reference",
                format!("expected an FSM document or a regex string, found {}", kind(other)),
            ))
        }
    };
    let implicit_dump_state = match map.get("implicit_dump_state") {
        None => false,
        Some(v) => v
            .as_bool()
            .ok_or_else(|| FormatError::schema("/implicit_dump_state", format!("expected a boolean, found {}", kind(v))))?,
    };
    let count = |key: &str, default: usize, min: u64| -> Result<usize, FormatError> {
        match map.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .filter(|&n| n >= min)
                .map(|n| n as usize)
                .ok_or_else(|| FormatError::schema(format!("/{key}"), format!("expected an integer >= {min}"))),
        }
    };
    let feedback_length_bound = count("feedback_length_bound", DEFAULT_FEEDBACK_LENGTH_BOUND, 0)?;
    let max_feedback_strings = count("max_feedback_strings", DEFAULT_MAX_FEEDBACK_STRINGS, 1)?;
    let prompt = match map.get("prompt") {
        None => String::new(),
        Some(v) => string_at(v, "/prompt")?,
    };
    Ok(QuestionConfig {
        question_id,
        fsm_type,
        alphabet,
        reference,
        implicit_dump_state,
        feedback_length_bound,
        max_feedback_strings,
        prompt,
    })
}
