use std::path::Path;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{header, HeaderValue, Method, Request, StatusCode};
use axum::Router;
use fsmgrade_cli::service::router;
use fsmgrade_core::{fixtures, load_question_bank, serialize_fsm, FsmDocument};
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

fn app() -> Router {
    let bank = load_question_bank(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../questions")).unwrap();
    router(Arc::new(bank), None)
}

async fn send(app: &Router, method: Method, uri: &str, body: &str) -> (StatusCode, String) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header(header::CONTENT_TYPE, "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    assert_eq!(resp.headers()[header::CONTENT_TYPE], "application/json");
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

#[tokio::test]
async fn listing_grades_full_marks() {
    let app = app();
    let (status, body) = send(&app, Method::POST, "/questions/at-least-three-zeros/grade", fixtures::LISTING_JSON).await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["score"], 1.0);
    assert_eq!(v["valid"], true);
}

#[tokio::test]
async fn partial_submission() {
    let app = app();
    let doc = serialize_fsm(&FsmDocument::from_dfa(&fixtures::at_least_zeros(2)));
    let (status, body) = send(&app, Method::POST, "/questions/at-least-three-zeros/grade", &doc).await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert!((v["score"].as_f64().unwrap() - (1.0 - 162937.0 / 224840.0)).abs() < 1e-12);
    assert_eq!(v["witnesses"][0]["word"], "00");
    assert_eq!(v["accepted_trace"], serde_json::json!(["0", "1", "2"]));
}

#[tokio::test]
async fn convention_errors_carry_refs() {
    let app = app();
    let doc = fixtures::LISTING_JSON.replace("\"initial_state\": \"0\"", "\"initial_state\": []");
    let (status, body) = send(&app, Method::POST, "/questions/at-least-three-zeros/grade", &doc).await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["score"], 0.0);
    assert_eq!(v["validation_errors"][0]["code"], "START_STATE_COUNT");
}

#[tokio::test]
async fn unknown_question_is_404() {
    let app = app();
    let (status, body) = send(&app, Method::POST, "/questions/nope/grade", fixtures::LISTING_JSON).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(body.contains("NOT_FOUND"));
    let (status, _) = send(&app, Method::GET, "/questions/nope", "").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn malformed_body_is_400() {
    let app = app();
    let (status, body) = send(&app, Method::POST, "/questions/at-least-three-zeros/grade", "{\n  \"states\": [").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["error"], "PARSE_ERROR");
    assert_eq!(v["line"], 2);

    let doc = fixtures::LISTING_JSON.replace("\"final_states\"", "\"accepting\"");
    let (status, body) = send(&app, Method::POST, "/questions/at-least-three-zeros/grade", &doc).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["error"], "SCHEMA_ERROR");
    assert!(v["path"].is_string());
}

#[tokio::test]
async fn question_views_hide_reference() {
    let app = app();
    let (status, body) = send(&app, Method::GET, "/questions", "").await;
    assert_eq!(status, StatusCode::OK);
    let list: Vec<Value> = serde_json::from_str(&body).unwrap();
    assert_eq!(list.len(), 3);
    assert!(!body.contains("\"transitions\"") && !body.contains("\"reference\""));

    for q in &list {
        let id = q["question_id"].as_str().unwrap();
        let (status, body) = send(&app, Method::GET, &format!("/questions/{id}"), "").await;
        assert_eq!(status, StatusCode::OK);
        assert!(!body.contains("\"transitions\""), "{body}");
        assert!(!body.contains("\"reference\""), "{body}");
        let v: Value = serde_json::from_str(&body).unwrap();
        assert!(v["alphabet"].is_array());
        assert!(v["implicit_dump_state"].is_boolean());
    }
    let (_, body) = send(&app, Method::GET, "/questions/ends-in-01", "").await;
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["fsm_type"], "nfa");
    let (_, body) = send(&app, Method::GET, "/questions/starts-with-ab", "").await;
    assert!(!body.contains("saw a"), "{body}");
    // the regex reference must not leak either
    assert!(!body.contains("01)"));
}

#[tokio::test]
async fn repeated_requests_identical() {
    let app = app();
    let doc = serialize_fsm(&FsmDocument::from_dfa(&fixtures::at_least_zeros(4)));
    let (_, first) = send(&app, Method::POST, "/questions/at-least-three-zeros/grade", &doc).await;
    for _ in 0..5 {
        let (_, again) = send(&app, Method::POST, "/questions/at-least-three-zeros/grade", &doc).await;
        assert_eq!(first, again);
    }
}

#[tokio::test]
async fn cors_preflight() {
    let bank = load_question_bank(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../questions")).unwrap();
    let app = router(Arc::new(bank), Some(HeaderValue::from_static("http://localhost:5173")));
    let req = Request::builder()
        .method(Method::OPTIONS)
        .uri("/questions/at-least-three-zeros/grade")
        .header(header::ORIGIN, "http://localhost:5173")
        .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
        .body(Body::empty())
        .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert_eq!(resp.headers()[header::ACCESS_CONTROL_ALLOW_ORIGIN], "http://localhost:5173");
}
