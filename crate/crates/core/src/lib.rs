//! Regular-language engine for grading student-drawn finite automata.
//!
//! A submission is checked against drawing conventions, compiled to a DFA,
//! and compared with the question's reference for language equality. Wrong
//! answers get partial credit from the approximated density difference of the
//! two languages, plus the shortlex-first misclassified words as feedback.
//!
//! ```
//! use fsmgrade_core::{fixtures, grade_text, parse_question};
//!
//! let question = parse_question(&format!(
//!     r#"{{"question_id": "q", "fsm_type": "dfa", "alphabet": ["0", "1"], "reference": {}}}"#,
//!     fixtures::LISTING_JSON
//! ))
//! .unwrap();
//! let result = grade_text(fixtures::LISTING_JSON, &question).unwrap();
//! assert_eq!(result.score, 1.0);
//! ```

pub mod automaton;
pub mod bank;
pub mod counting;
pub mod equivalence;
pub mod fixtures;
pub mod format;
pub mod grading;

pub use automaton::{regex_to_nfa, Acceptor, Alphabet, AutomatonError, Dfa, Nfa, ProductMode, Regex, RegexError};
pub use bank::{load_question_bank, BankError, QuestionBank};
pub use counting::{count_words, enumerate_shortlex, WordCountTable};
pub use equivalence::{equivalent, shortest_witness, Classification, Reference, WitnessString};
pub use format::{
    parse_fsm, parse_question, serialize_fsm, FormatError, FsmDocument, FsmType, QuestionConfig, ReferenceSolution,
};
pub use grading::{
    build_feedback, canonicalize, grade, grade_text, partial_credit, validate, GradeError, GradeResponse, GradeResult,
    PartialCreditResult, Question, ValidationCode, ValidationReport,
};
