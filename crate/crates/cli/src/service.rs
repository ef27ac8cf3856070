//! HTTP grading service over a question bank.
//!
//! ```text
//! GET  /questions             -> [{question_id, prompt}]
//! GET  /questions/{id}        -> {question_id, prompt, fsm_type, alphabet, implicit_dump_state}
//! POST /questions/{id}/grade  -> grade response for an FSM document body
//! ```
//!
//! Handlers are stateless; the bank is shared read-only. Reference solutions
//! never appear in any response.

use std::sync::Arc;

use axum::body::Body;
use axum::extract::{Path, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use fsmgrade_core::{parse_fsm, FormatError, QuestionBank};
use serde::Serialize;
use serde_json::json;
use tower_http::cors::CorsLayer;

#[derive(Serialize)]
struct QuestionSummary<'a> {
    question_id: &'a str,
    prompt: &'a str,
}

#[derive(Serialize)]
struct QuestionDetail<'a> {
    question_id: &'a str,
    prompt: &'a str,
    fsm_type: String,
    alphabet: Vec<String>,
    implicit_dump_state: bool,
}

fn json_response<T: Serialize>(status: StatusCode, body: &T) -> Response {
    let bytes = serde_json::to_vec(body).expect("response serializes");
    (status, [(header::CONTENT_TYPE, "application/json")], Body::from(bytes)).into_response()
}

fn not_found(id: &str) -> Response {
    json_response(
        StatusCode::NOT_FOUND,
        &json!({"error": "NOT_FOUND", "message": format!("no question \"{id}\"")}),
    )
}

async fn list_questions(State(bank): State<Arc<QuestionBank>>) -> Response {
    let list: Vec<QuestionSummary> = bank
        .iter()
        .map(|(id, q)| QuestionSummary {
            question_id: id,
            prompt: &q.config().prompt,
        })
        .collect();
    json_response(StatusCode::OK, &list)
}

async fn show_question(State(bank): State<Arc<QuestionBank>>, Path(id): Path<String>) -> Response {
    let Some(q) = bank.get(&id) else {
        return not_found(&id);
    };
    let config = q.config();
    json_response(
        StatusCode::OK,
        &QuestionDetail {
            question_id: &config.question_id,
            prompt: &config.prompt,
            fsm_type: config.fsm_type.to_string(),
            alphabet: config.alphabet.iter().map(String::from).collect(),
            implicit_dump_state: config.implicit_dump_state,
        },
    )
}

async fn grade_submission(State(bank): State<Arc<QuestionBank>>, Path(id): Path<String>, body: String) -> Response {
    let Some(q) = bank.get(&id) else {
        return not_found(&id);
    };
    let doc = match parse_fsm(&body) {
        Ok(doc) => doc,
        Err(e) => {
            let mut detail = json!({"error": e.code(), "message": e.to_string()});
            match &e {
                FormatError::Parse { line, column, .. } => {
                    detail["line"] = json!(line);
                    detail["column"] = json!(column);
                }
                FormatError::Schema { path, .. } => detail["path"] = json!(path),
            }
            return json_response(StatusCode::BAD_REQUEST, &detail);
        }
    };
    let result = q.grade(&doc);
    json_response(StatusCode::OK, &result.to_response())
}

/// Builds the service router. `cors_origin` allows a separately served editor
/// to call the API from the browser.
pub fn router(bank: Arc<QuestionBank>, cors_origin: Option<HeaderValue>) -> Router {
    let app = Router::new()
        .route("/questions", get(list_questions))
        .route("/questions/{id}", get(show_question))
        .route("/questions/{id}/grade", post(grade_submission))
        .with_state(bank);
    match cors_origin {
        Some(origin) => app.layer(
            CorsLayer::new()
                .allow_origin(origin)
                .allow_methods([Method::GET, Method::POST])
                .allow_headers([header::CONTENT_TYPE]),
        ),
        None => app,
    }
}

/// Serves until interrupted.
pub async fn serve(bank: QuestionBank, bind: &str, cors_origin: Option<HeaderValue>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(bind).await?;
    eprintln!(
        "serving {} question(s) on http://{}",
        bank.len(),
        listener.local_addr()?
    );
    axum::serve(listener, router(Arc::new(bank), cors_origin))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
