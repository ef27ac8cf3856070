use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use fsmgrade_core::equivalence::display_word;
use fsmgrade_core::{
    count_words, equivalent, parse_fsm, parse_question, shortest_witness, validate, Classification, Dfa, FsmDocument,
    GradeResult, Question, QuestionConfig, Reference,
};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "fsmgrade", version, about = "Grade finite automata against reference solutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct OutputFormat {
    /// Machine-readable JSON output
    #[arg(long, conflicts_with = "human")]
    pub json: bool,
    /// Human-readable output (the default)
    #[arg(long)]
    pub human: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a drawing against a question's conventions
    Validate {
        fsm: PathBuf,
        question: PathBuf,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Grade a submission against a question's reference
    Grade {
        submission: PathBuf,
        question: PathBuf,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Decide whether two automata accept the same language
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Print the shortlex-first word on which two automata disagree, labeled
    /// from B's side with A as the reference
    Witness {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Count accepted words of each length up to MAX_LEN
    Count {
        fsm: PathBuf,
        max_len: usize,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Run the HTTP grading service
    Serve {
        /// Question bank directory (one subdirectory per question)
        #[arg(long, env = "FSMGRADE_BANK")]
        bank: PathBuf,
        /// Address to listen on
        #[arg(long, env = "FSMGRADE_BIND", default_value = "127.0.0.1:8080")]
        bind: String,
        /// Allow browser requests from this origin
        #[arg(long, env = "FSMGRADE_CORS_ORIGIN")]
        cors_origin: Option<String>,
    },
}

/// Exit status and captured output of a one-shot command.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: u8, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(err: anyhow::Error) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {err:#}\n"),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_fsm(path: &Path) -> Result<FsmDocument> {
    parse_fsm(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_question(path: &Path) -> Result<QuestionConfig> {
    parse_question(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_dfa(path: &Path) -> Result<Dfa> {
    load_fsm(path)?
        .to_dfa()
        .with_context(|| format!("{} does not describe an automaton", path.display()))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Runs any command other than `serve`.
pub fn execute(command: &Command) -> Outcome {
    let result = match command {
        Command::Validate { fsm, question, format } => run_validate(fsm, question, *format),
        Command::Grade {
            submission,
            question,
            format,
        } => run_grade(submission, question, *format),
        Command::Equiv { a, b, format } => run_equiv(a, b, *format),
        Command::Witness { a, b, format } => run_witness(a, b, *format),
        Command::Count { fsm, max_len, format } => run_count(fsm, *max_len, *format),
        Command::Serve { .. } => unreachable!("serve is long-running"),
    };
    result.unwrap_or_else(Outcome::failure)
}

fn run_validate(fsm: &Path, question: &Path, format: OutputFormat) -> Result<Outcome> {
    let doc = load_fsm(fsm)?;
    let config = load_question(question)?;
    let report = validate(&doc, &config);
    let stdout = if format.json {
        to_json(&report)
    } else {
        report.errors.iter().map(|e| format!("{e}\n")).collect()
    };
    Ok(Outcome::with_code(u8::from(!report.is_valid()), stdout))
}

fn run_grade(submission: &Path, question: &Path, format: OutputFormat) -> Result<Outcome> {
    let doc = load_fsm(submission)?;
    let config = load_question(question)?;
    let question = Question::new(config).context("question is unusable")?;
    let result = question.grade(&doc);
    let stdout = if format.json {
        to_json(&result.to_response())
    } else {
        render_grade(&result)
    };
    Ok(Outcome::with_code(if result.score == 1.0 { 0 } else { 3 }, stdout))
}

/// Human-readable grade report: witnesses grouped by classification, `ε` for
/// the empty word, and the trace as `a → b → c`.
pub fn render_grade(result: &GradeResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "score: {}", result.score);
    if !result.valid {
        let _ = writeln!(out, "the submission breaks the drawing conventions:");
        for e in &result.feedback.validation.errors {
            let _ = writeln!(out, "  {e}");
        }
        return out;
    }
    if result.equivalent {
        let _ = writeln!(out, "correct: the submission accepts exactly the target language");
        return out;
    }
    if let Some(pc) = &result.partial_credit {
        let _ = writeln!(out, "density difference: {} (k = {})", pc.density_difference, pc.k);
    }
    for (label, class) in [
        ("incorrectly accepted", Classification::IncorrectlyAccepted),
        ("incorrectly rejected", Classification::IncorrectlyRejected),
    ] {
        let words: Vec<&str> = result
            .feedback
            .witnesses
            .iter()
            .filter(|w| w.classification == class)
            .map(|w| w.display_word())
            .collect();
        if !words.is_empty() {
            let _ = writeln!(out, "{label}: {}", words.join(", "));
        }
    }
    if let Some(trace) = &result.feedback.accepted_trace {
        let first = result
            .feedback
            .witnesses
            .iter()
            .find(|w| w.classification == Classification::IncorrectlyAccepted)
            .map(|w| w.display_word())
            .unwrap_or_default();
        let _ = writeln!(out, "run on {first}: {}", trace.join(" → "));
    }
    out
}

fn run_equiv(a: &Path, b: &Path, format: OutputFormat) -> Result<Outcome> {
    let (a, b) = (load_dfa(a)?, load_dfa(b)?);
    let eq = equivalent(&a, &b)?;
    Ok(Outcome::ok(if format.json {
        to_json(&json!({ "equivalent": eq }))
    } else {
        format!("{eq}\n")
    }))
}

fn run_witness(a: &Path, b: &Path, format: OutputFormat) -> Result<Outcome> {
    let (a, b) = (load_dfa(a)?, load_dfa(b)?);
    let witness = shortest_witness(&a, &b, Reference::First)?;
    Ok(Outcome::ok(if format.json {
        to_json(&json!({ "witness": witness }))
    } else {
        match witness {
            None => "none: the automata are equivalent\n".to_string(),
            Some(w) => format!("{}\t{}\n", display_word(&w.word), w.classification),
        }
    }))
}

fn run_count(fsm: &Path, max_len: usize, format: OutputFormat) -> Result<Outcome> {
    let table = count_words(&load_dfa(fsm)?, max_len);
    let counts: Vec<String> = table.counts().iter().map(ToString::to_string).collect();
    Ok(Outcome::ok(if format.json {
        to_json(&json!({ "counts": counts }))
    } else {
        format!("{}\n", counts.join(","))
    }))
}
