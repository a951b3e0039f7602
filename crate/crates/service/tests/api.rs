use std::path::PathBuf;
use std::sync::{Arc, OnceLock};

use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use asdkb_service::{router, startup, AppState, ServiceConfig};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/kb")
}

fn shared() -> Arc<AppState> {
    static STATE: OnceLock<Arc<AppState>> = OnceLock::new();
    Arc::clone(STATE.get_or_init(|| startup(&ServiceConfig::new(data_dir())).unwrap()))
}

fn app() -> Router {
    router(shared())
}

async fn send(app: Router, method: Method, uri: &str, body: Option<Value>, accept: Option<&str>) -> (StatusCode, String, String) {
    let mut req = Request::builder().method(method).uri(uri);
    if let Some(a) = accept {
        req = req.header(header::ACCEPT, a);
    }
    let req = match body {
        Some(b) => req.header(header::CONTENT_TYPE, "application/json").body(Body::from(b.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let res = app.oneshot(req).await.unwrap();
    let status = res.status();
    let ctype = res.headers().get(header::CONTENT_TYPE).map(|v| v.to_str().unwrap().to_owned()).unwrap_or_default();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, ctype, String::from_utf8(bytes.to_vec()).unwrap())
}

async fn get_json(uri: &str) -> (StatusCode, Value) {
    let (s, _, b) = send(app(), Method::GET, uri, None, None).await;
    (s, serde_json::from_str(&b).unwrap())
}

async fn post_json(app: Router, uri: &str, body: Value) -> (StatusCode, Value) {
    let (s, _, b) = send(app, Method::POST, uri, Some(body), None).await;
    (s, serde_json::from_str(&b).unwrap())
}

#[tokio::test]
async fn health_reports_the_triple_count() {
    let (s, v) = get_json("/health").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v, json!({ "status": "ok", "triples": shared().kb.store.len() }));
}

#[tokio::test]
async fn query_returns_the_table() {
    let q = "SELECT ?t WHERE { <http://w3id.org/asdkb/instance/tool01> <http://www.w3.org/2000/01/rdf-schema#label> ?t }";
    let (s, v) = post_json(app(), "/query", json!({ "query": q })).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["header"], json!(["t"]));
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r[0] == "\"孤独症行为量表\"@zh"));
    let (s, _, raw) = send(app(), Method::POST, "/query", None, None).await;
    assert_eq!(s, StatusCode::BAD_REQUEST, "{raw}");
}

#[tokio::test]
async fn qa_answers_listed_questions_by_pattern() {
    for q in ["孤独症都有哪些临床表现？", "哪些干预方法是有效的？"] {
        let (s, v) = post_json(app(), "/qa", json!({ "question": q })).await;
        assert_eq!(s, StatusCode::OK);
        assert_eq!((v["answered"].as_bool(), v["route"].as_str()), (Some(true), Some("pattern")), "{q}");
    }
    let (_, v) = post_json(app(), "/qa", json!({ "question": "我想给孩子做个筛查" })).await;
    assert_eq!(v["screening_redirect"], json!(true));
}

#[tokio::test]
async fn screening_flow_end_to_end() {
    let state = shared();
    let (s, v) = get_json("/tools?age=3&filler=parent").await;
    assert_eq!(s, StatusCode::OK);
    let tools = v["tools"].as_array().unwrap();
    assert_eq!(tools.len(), state.kb.catalog.filter_tools(3.0, Some("parent"), None).len());
    assert!(tools.iter().any(|t| t["iri"] == "http://w3id.org/asdkb/instance/tool01"));

    let (s, v) = post_json(app(), "/sessions", json!({ "tool": "tool01" })).await;
    assert_eq!(s, StatusCode::CREATED);
    let id = v["id"].as_str().unwrap().to_owned();
    let first_q = v["unanswered"][0].as_str().unwrap().to_owned();
    let (s, v) = post_json(app(), &format!("/sessions/{id}/score"), json!({})).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(v["detail"]["unanswered"].as_array().unwrap().iter().any(|q| q == first_q.as_str()));

    let tool = asdkb::store::Iri::new("http://w3id.org/asdkb/instance/tool01").unwrap();
    for (q, o) in state.kb.catalog.extreme_choices(&tool, true).unwrap() {
        let (s, _) = post_json(app(), &format!("/sessions/{id}/answers"), json!({ "question": q.local_name(), "option": o.as_str() })).await;
        assert_eq!(s, StatusCode::OK);
    }
    let (s, v) = post_json(app(), &format!("/sessions/{id}/score"), json!({})).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["result"]["at_risk"], json!(true));
    assert_eq!(v["result"]["advice"], json!("seek_professional_evaluation"));
    assert!(v["explanations"].as_array().unwrap().iter().any(|e| e["standard"]["iri"] == "http://w3id.org/asdkb/instance/standard1"));

    let (s, v) = get_json("/questions/tool01-q01/explanation").await;
    assert_eq!(s, StatusCode::OK);
    assert!(v["symptoms"].as_array().unwrap().iter().any(|d| d["label_zh"] == "不会进行对视"));

    let (s, _) = post_json(app(), "/sessions", json!({ "tool": "tool99" })).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    let (s, _) = get_json("/sessions/not-a-session").await;
    assert_eq!(s, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn recommend_and_vote() {
    let (s, v) = get_json("/recommend?province=江苏省&city=南京市").await;
    assert_eq!(s, StatusCode::OK, "{v}");
    assert_eq!(v["fallback"], json!(false));
    let list = v["physicians"].as_array().unwrap();
    assert!(!list.is_empty());
    assert!(list[0]["hospital"]["name"].is_string());

    let state = startup(&ServiceConfig::new(data_dir())).unwrap();
    let p = state.kb.directory.physicians.keys().next().unwrap().clone();
    let before = state.votes.tally(&p).unwrap();
    let (s, v) = post_json(router(Arc::clone(&state)), &format!("/physicians/{}/vote", p.local_name()), json!({ "direction": "up" })).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["up"], json!(before.up + 1));
    assert_eq!(state.votes.tally(&p).unwrap().up, before.up + 1);
    let (s, _) = post_json(router(Arc::clone(&state)), "/physicians/nobody/vote", json!({ "direction": "up" })).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    let (s, _) = post_json(router(state), &format!("/physicians/{}/vote", p.local_name()), json!({ "direction": "sideways" })).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);

    let (s, _) = get_json("/recommend?province=火星").await;
    assert_eq!(s, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn division_tree_covers_every_division() {
    let (s, v) = get_json("/divisions").await;
    assert_eq!(s, StatusCode::OK);
    fn count(nodes: &Value) -> usize {
        nodes.as_array().unwrap().iter().map(|n| 1 + count(&n["children"])).sum()
    }
    assert_eq!(count(&v["divisions"]), shared().kb.directory.divisions.len());
}

#[tokio::test]
async fn entity_content_negotiation() {
    let state = shared();
    let symptom = asdkb::store::Iri::new("http://w3id.org/asdkb/instance/symptom64").unwrap();
    let export = state.kb.store.to_ntriples();
    let want: String = export.lines().filter(|l| l.starts_with(&format!("<{}> ", symptom.as_str()))).map(|l| format!("{l}\n")).collect();
    let (s, ctype, body) = send(app(), Method::GET, "/entity/symptom64", None, Some("application/n-triples")).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(ctype, "application/n-triples");
    assert_eq!(body, want);

    let (s, ctype, html) = send(app(), Method::GET, "/entity/symptom64", None, Some("text/html")).await;
    assert_eq!(s, StatusCode::OK);
    assert!(ctype.starts_with("text/html"));
    let zh = state.kb.store.iter().find(|t| t.s == symptom && t.p.as_str().ends_with("#label") && t.o.to_ntriples().ends_with("@zh")).unwrap();
    let en = state.kb.store.iter().find(|t| t.s == symptom && t.p.as_str().ends_with("#label") && t.o.to_ntriples().ends_with("@en")).unwrap();
    assert!(html.contains(zh.o.as_literal().unwrap().lexical()));
    assert!(html.contains(&html_escape(en.o.as_literal().unwrap().lexical())));

    let (s, _, _) = send(app(), Method::GET, "/entity/symptom9999", None, None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
}

fn html_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[tokio::test]
async fn every_instance_dereferences() {
    let state = shared();
    for s in state.kb.store.distinct_subjects().into_iter().filter(|s| s.is_instance()) {
        let (status, _, body) = send(app(), Method::GET, &format!("/entity/{}", s.local_name()), None, None).await;
        assert_eq!(status, StatusCode::OK, "{s}");
        assert!(!body.is_empty());
    }
}

#[test]
fn startup_refuses_violations() {
    let dir = tempfile::tempdir().unwrap();
    for e in std::fs::read_dir(data_dir()).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), dir.path().join(e.file_name())).unwrap();
    }
    let path = dir.path().join("diseases.jsonl");
    let mut text = std::fs::read_to_string(&path).unwrap();
    text.push_str("{\"id\": \"disease999\", \"Label\": \"x\"}\n");
    std::fs::write(&path, text).unwrap();
    let err = startup(&ServiceConfig::new(dir.path())).err().unwrap().to_string();
    assert!(err.contains("diseases.jsonl") && err.contains("disease999"), "{err}");

    std::fs::write(&path, "{broken\n").unwrap();
    let err = format!("{:#}", startup(&ServiceConfig::new(dir.path())).err().unwrap());
    assert!(err.contains("diseases.jsonl:1"), "{err}");

    let mut bad = ServiceConfig::new(data_dir());
    bad.thresholds = (1.5, 0.5);
    assert!(startup(&bad).is_err());
}

#[test]
fn state_survives_a_restart() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = ServiceConfig::new(data_dir());
    config.state_dir = Some(dir.path().to_owned());
    let p;
    let tally;
    {
        let state = startup(&config).unwrap();
        p = state.kb.directory.physicians.keys().next().unwrap().clone();
        tally = state.votes.vote(&p, asdkb::recommend::Direction::Down).unwrap();
        let tool = asdkb::store::Iri::new("http://w3id.org/asdkb/instance/tool02").unwrap();
        state.sessions.start(&tool).unwrap();
    }
    let state = startup(&config).unwrap();
    assert_eq!(state.votes.tally(&p).unwrap(), tally);
    assert_eq!(state.sessions.len(), 1);
}
