//! The grading pipeline: validate the drawing, compile both sides to DFAs,
//! decide equivalence, then attach partial credit and witness feedback.

mod credit;
mod feedback;
mod validate;

pub use credit::{partial_credit, LengthRatio, PartialCreditResult};
pub use feedback::{build_feedback, FeedbackReport};
pub use validate::{validate, ElementRef, ValidationCode, ValidationError, ValidationReport};

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{regex_to_nfa, Acceptor, AutomatonError, Dfa, Nfa, RegexError};
use crate::equivalence::{equivalent, WitnessString};
use crate::format::{FormatError, FsmDocument, FsmType, Label, QuestionConfig, ReferenceSolution};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum GradeError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Regex(#[from] RegexError),
    #[error("submission breaks {} drawing convention(s)", .0.errors.len())]
    InvalidSubmission(ValidationReport),
    #[error("reference solution is invalid: {0}")]
    InvalidReference(String),
    #[error("machines are equivalent; there is nothing to give feedback on")]
    NoDifference,
}

/// Fresh dump-state name: `__dump`, with apostrophes appended until unused.
pub fn dump_state_name<'a, I: IntoIterator<Item = &'a str>>(taken: I) -> String {
    let taken: std::collections::HashSet<&str> = taken.into_iter().collect();
    let mut name = String::from("__dump");
    while taken.contains(name.as_str()) {
        name.push('\'');
    }
    name
}

/// The machine a student drew, compiled for grading.
#[derive(Clone, Debug)]
pub enum Submission {
    Dfa(Dfa),
    /// An NFA and its determinization.
    Nfa(Nfa, Dfa),
}

impl Submission {
    pub fn dfa(&self) -> &Dfa {
        match self {
            Submission::Dfa(d) | Submission::Nfa(_, d) => d,
        }
    }

    /// The machine whose runs are shown to the student.
    pub fn drawn(&self) -> &dyn Acceptor {
        match self {
            Submission::Dfa(d) => d,
            Submission::Nfa(n, _) => n,
        }
    }
}

/// Compiles a validated submission. DFA drawings keep their state names and
/// gain a fresh dump state if the question allows missing transitions and some
/// are missing; NFA drawings are determinized.
pub fn compile_submission(doc: &FsmDocument, config: &QuestionConfig) -> Result<Submission, GradeError> {
    let report = validate(doc, config);
    if !report.is_valid() {
        return Err(GradeError::InvalidSubmission(report));
    }
    match config.fsm_type {
        FsmType::Nfa => {
            let nfa = doc.to_nfa(&config.alphabet)?;
            let dfa = nfa.to_dfa();
            Ok(Submission::Nfa(nfa, dfa))
        }
        FsmType::Dfa => {
            let mut names = doc.states.clone();
            let k = config.alphabet.len();
            let index = |name: &str| names.iter().position(|n| n == name).expect("validated reference");
            let mut delta = vec![usize::MAX; names.len() * k];
            for (from, label, to) in doc.edges() {
                if let Label::Symbol(c) = label {
                    let a = config.alphabet.index_of(c).expect("validated symbol");
                    delta[index(from) * k + a] = index(to);
                }
            }
            let initial = index(doc.initial_state.single().expect("validated start"));
            let mut finals = vec![false; names.len()];
            for f in &doc.final_states {
                finals[index(f)] = true;
            }
            if delta.contains(&usize::MAX) {
                let dump = names.len();
                for t in delta.iter_mut().filter(|t| **t == usize::MAX) {
                    *t = dump;
                }
                delta.extend(std::iter::repeat_n(dump, k));
                finals.push(false);
                names.push(dump_state_name(doc.states.iter().map(String::as_str)));
            }
            Ok(Submission::Dfa(Dfa::from_table(names, config.alphabet.clone(), delta, initial, finals)?))
        }
    }
}

/// A validated submission as a total DFA over the question alphabet.
pub fn canonicalize(doc: &FsmDocument, config: &QuestionConfig) -> Result<Dfa, GradeError> {
    Ok(match compile_submission(doc, config)? {
        Submission::Dfa(d) | Submission::Nfa(_, d) => d,
    })
}

/// Compiles a question's reference solution to a DFA over its alphabet.
pub fn compile_reference(config: &QuestionConfig) -> Result<Dfa, GradeError> {
    match &config.reference {
        ReferenceSolution::Regex(regex) => Ok(regex_to_nfa(regex, &config.alphabet)?.to_dfa()),
        ReferenceSolution::Fsm(doc) => {
            let symbols: Vec<char> = config.alphabet.iter().collect();
            let mut drawn = doc.input_symbols.clone();
            drawn.sort_unstable();
            if drawn != symbols {
                return Err(GradeError::InvalidReference(format!(
                    "input_symbols do not match the question alphabet {}",
                    config.alphabet
                )));
            }
            match canonicalize(doc, config) {
                Err(GradeError::InvalidSubmission(report)) => {
                    let lines: Vec<String> = report.errors.iter().map(ToString::to_string).collect();
                    Err(GradeError::InvalidReference(lines.join("; ")))
                }
                other => other,
            }
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct GradeResult {
    pub valid: bool,
    pub score: f64,
    pub equivalent: bool,
    pub partial_credit: Option<PartialCreditResult>,
    pub feedback: FeedbackReport,
}

impl GradeResult {
    fn invalid(validation: ValidationReport) -> Self {
        GradeResult {
            valid: false,
            score: 0.0,
            equivalent: false,
            partial_credit: None,
            feedback: FeedbackReport {
                validation,
                ..FeedbackReport::default()
            },
        }
    }

    pub fn to_response(&self) -> GradeResponse<'_> {
        GradeResponse {
            valid: self.valid,
            score: self.score,
            equivalent: self.equivalent,
            density_difference: match &self.partial_credit {
                Some(p) => Some(p.density_difference),
                None if self.equivalent => Some(0.0),
                None => None,
            },
            k: self.partial_credit.as_ref().map(|p| p.k),
            witnesses: &self.feedback.witnesses,
            accepted_trace: self.feedback.accepted_trace.as_deref(),
            validation_errors: &self.feedback.validation.errors,
        }
    }
}

/// Wire form of a [`GradeResult`]. Never includes anything about the
/// reference beyond what the witnesses reveal.
#[derive(Serialize, Debug)]
pub struct GradeResponse<'a> {
    pub valid: bool,
    pub score: f64,
    pub equivalent: bool,
    pub density_difference: Option<f64>,
    pub k: Option<usize>,
    pub witnesses: &'a [WitnessString],
    pub accepted_trace: Option<&'a [String]>,
    pub validation_errors: &'a [ValidationError],
}

/// A question with its reference compiled once, ready to grade many
/// submissions.
#[derive(Clone, Debug)]
pub struct Question {
    config: QuestionConfig,
    reference: Dfa,
}

impl Question {
    pub fn new(config: QuestionConfig) -> Result<Self, GradeError> {
        let reference = compile_reference(&config)?;
        Ok(Question { config, reference })
    }

    pub fn config(&self) -> &QuestionConfig {
        &self.config
    }

    pub fn reference(&self) -> &Dfa {
        &self.reference
    }

    pub fn grade(&self, submission: &FsmDocument) -> GradeResult {
        let report = validate(submission, &self.config);
        if !report.is_valid() {
            return GradeResult::invalid(report);
        }
        let student = compile_submission(submission, &self.config).expect("validated submission compiles");
        let dfa = student.dfa();
        if equivalent(dfa, &self.reference).expect("same alphabet") {
            return GradeResult {
                valid: true,
                score: 1.0,
                equivalent: true,
                partial_credit: None,
                feedback: FeedbackReport::default(),
            };
        }
        let credit = partial_credit(dfa, &self.reference).expect("same alphabet");
        let feedback = feedback::build_feedback_traced(dfa, &self.reference, &self.config, student.drawn())
            .expect("inequivalent machines over one alphabet");
        GradeResult {
            valid: true,
            score: credit.score,
            equivalent: false,
            partial_credit: Some(credit),
            feedback,
        }
    }
}

/// Grades `submission` against the question `config`. Errors only when the
/// question's own reference is unusable.
pub fn grade(submission: &FsmDocument, config: &QuestionConfig) -> Result<GradeResult, GradeError> {
    Ok(Question::new(config.clone())?.grade(submission))
}

/// Parses and grades a submission document.
pub fn grade_text(submission: &str, config: &QuestionConfig) -> Result<GradeResult, GradeError> {
    let doc = crate::format::parse_fsm(submission)?;
    grade(&doc, config)
}
