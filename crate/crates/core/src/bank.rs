//! Question banks: one subdirectory per question, each holding `question.json`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::format::{parse_question, FsmDocument, ReferenceSolution};
use crate::grading::Question;

pub const QUESTION_FILE: &str = "question.json";

#[derive(Error, Debug)]
#[error("{}: {reason}", file.display())]
pub struct BankError {
    pub file: PathBuf,
    pub reason: String,
}

/// Loaded questions keyed by id. Immutable once loaded.
#[derive(Clone, Debug, Default)]
pub struct QuestionBank {
    questions: BTreeMap<String, Question>,
}

impl QuestionBank {
    pub fn get(&self, id: &str) -> Option<&Question> {
        self.questions.get(id)
    }

    pub fn len(&self) -> usize {
        self.questions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.questions.is_empty()
    }

    /// Questions in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Question)> {
        self.questions.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Adds a question after checking that its reference grades itself to 1.0.
    pub fn insert(&mut self, question: Question) -> Result<(), String> {
        let id = question.config().question_id.clone();
        if self.questions.contains_key(&id) {
            return Err(format!("duplicate question_id \"{id}\""));
        }
        let self_doc = match &question.config().reference {
            ReferenceSolution::Fsm(doc) => doc.clone(),
            ReferenceSolution::Regex(_) => FsmDocument::from_dfa(question.reference()),
        };
        let result = question.grade(&self_doc);
        if result.score != 1.0 {
            return Err(format!("reference solution does not grade to 1.0 (got {})", result.score));
        }
        self.questions.insert(id, question);
        Ok(())
    }
}

/// Loads every `*/question.json` under `dir`. Any bad question aborts the load.
pub fn load_question_bank(dir: &Path) -> Result<QuestionBank, BankError> {
    let fail = |file: &Path, reason: String| BankError {
        file: file.to_path_buf(),
        reason,
    };
    let entries = fs::read_dir(dir).map_err(|e| fail(dir, e.to_string()))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| fail(dir, e.to_string()))?.path();
        let file = path.join(QUESTION_FILE);
        if path.is_dir() && file.is_file() {
            files.push(file);
        }
    }
    files.sort();

    let mut bank = QuestionBank::default();
    for file in files {
        let text = fs::read_to_string(&file).map_err(|e| fail(&file, e.to_string()))?;
        let config = parse_question(&text).map_err(|e| fail(&file, e.to_string()))?;
        let question = Question::new(config).map_err(|e| fail(&file, e.to_string()))?;
        bank.insert(question).map_err(|reason| fail(&file, reason))?;
    }
    Ok(bank)
}
