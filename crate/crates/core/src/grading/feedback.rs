use serde::Serialize;

use crate::automaton::{Acceptor, Dfa};
use crate::counting::enumerate_shortlex;
use crate::equivalence::{equivalent, shortest_witness, Classification, Reference, WitnessString};
use crate::format::QuestionConfig;

use super::{GradeError, ValidationReport};

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct FeedbackReport {
    pub witnesses: Vec<WitnessString>,
    pub accepted_trace: Option<Vec<String>>,
    pub validation: ValidationReport,
}

/// Misclassified words for an inequivalent submission.
///
/// The shortlex-first `max_feedback_strings` words of length at most
/// `feedback_length_bound` on which the machines disagree, each labeled from
/// the student's side. If none are that short, the single shortest witness is
/// used instead. The student's run is traced on the first incorrectly
/// accepted word.
pub fn build_feedback(student: &Dfa, reference: &Dfa, config: &QuestionConfig) -> Result<FeedbackReport, GradeError> {
    build_feedback_traced(student, reference, config, student)
}

/// As [`build_feedback`], tracing on `runs` (the machine the student drew,
/// which may be an NFA) instead of the determinized `student`.
pub(crate) fn build_feedback_traced(
    student: &Dfa,
    reference: &Dfa,
    config: &QuestionConfig,
    runs: &dyn Acceptor,
) -> Result<FeedbackReport, GradeError> {
    if equivalent(student, reference)? {
        return Err(GradeError::NoDifference);
    }
    let diff = student.symmetric_difference(reference)?;
    let words = enumerate_shortlex(&diff, config.feedback_length_bound, config.max_feedback_strings);
    let mut witnesses = Vec::with_capacity(words.len());
    for word in words {
        let accepted = student.accepts(&word)?;
        witnesses.push(WitnessString::new(word, accepted));
    }
    if witnesses.is_empty() {
        witnesses.extend(shortest_witness(reference, student, Reference::First)?);
    }
    let accepted_trace = witnesses
        .iter()
        .find(|w| w.classification == Classification::IncorrectlyAccepted)
        .map(|w| runs.trace(&w.word))
        .transpose()?;
    Ok(FeedbackReport {
        witnesses,
        accepted_trace,
        validation: ValidationReport::default(),
    })
}
