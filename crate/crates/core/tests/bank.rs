use std::fs;
use std::path::{Path, PathBuf};

use fsmgrade_core::{fixtures, load_question_bank, parse_fsm, FsmDocument, ReferenceSolution};

fn shipped_bank() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../questions")
}

fn write_question(root: &Path, dir: &str, body: &str) {
    let d = root.join(dir);
    fs::create_dir_all(&d).unwrap();
    fs::write(d.join("question.json"), body).unwrap();
}

#[test]
fn shipped_questions_self_grade() {
    let bank = load_question_bank(&shipped_bank()).unwrap();
    assert!(bank.len() >= 3);
    for (id, q) in bank.iter() {
        let doc = match &q.config().reference {
            ReferenceSolution::Fsm(doc) => doc.clone(),
            ReferenceSolution::Regex(_) => FsmDocument::from_dfa(q.reference()),
        };
        assert_eq!(q.grade(&doc).score, 1.0, "{id}");
    }
    let listing = bank.get("at-least-three-zeros").unwrap();
    let r = listing.grade(&parse_fsm(fixtures::LISTING_JSON).unwrap());
    assert_eq!(r.score, 1.0);
}

#[test]
fn single_question_bank() {
    let tmp = tempfile::tempdir().unwrap();
    let body = format!(
        r#"{{"question_id": "zeros", "fsm_type": "dfa", "alphabet": ["0", "1"], "reference": {}}}"#,
        fixtures::LISTING_JSON
    );
    write_question(tmp.path(), "zeros", &body);
    // stray files beside question directories are ignored
    fs::write(tmp.path().join("README"), "notes").unwrap();
    let bank = load_question_bank(tmp.path()).unwrap();
    assert_eq!(bank.len(), 1);
    assert!(bank.get("zeros").is_some());
}

#[test]
fn duplicate_ids_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let body = r#"{"question_id": "same", "fsm_type": "dfa", "alphabet": ["0", "1"], "reference": "0*"}"#;
    write_question(tmp.path(), "a", body);
    write_question(tmp.path(), "b", body);
    let err = load_question_bank(tmp.path()).unwrap_err();
    assert!(err.reason.contains("duplicate"), "{err}");
    assert!(err.file.ends_with("b/question.json"));
}

#[test]
fn regex_outside_alphabet_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    write_question(
        tmp.path(),
        "bad",
        r#"{"question_id": "bad", "fsm_type": "dfa", "alphabet": ["0", "1"], "reference": "(0|2)*"}"#,
    );
    let err = load_question_bank(tmp.path()).unwrap_err();
    assert!(err.to_string().contains("'2'"), "{err}");
}

#[test]
fn invalid_reference_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    // a DFA reference with a missing transition and no dump state
    let reference = fixtures::LISTING_JSON.replace("\"3\":{\"0\": \"3\", \"1\": \"3\"}", "\"3\":{\"0\": \"3\"}");
    write_question(
        tmp.path(),
        "partial",
        &format!(r#"{{"question_id": "p", "fsm_type": "dfa", "alphabet": ["0", "1"], "reference": {reference}}}"#),
    );
    let err = load_question_bank(tmp.path()).unwrap_err();
    assert!(err.reason.contains("MISSING_TRANSITION"), "{err}");

    let tmp = tempfile::tempdir().unwrap();
    write_question(tmp.path(), "broken", "{\"question_id\": ");
    let err = load_question_bank(tmp.path()).unwrap_err();
    assert!(err.reason.contains("PARSE_ERROR"), "{err}");
}
