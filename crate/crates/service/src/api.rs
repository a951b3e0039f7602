use std::collections::BTreeMap;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use uuid::Uuid;

use asdkb::qa::QaResult;
use asdkb::query::{execute, parse_query};
use asdkb::recommend::{Direction, Division, DivisionLevel, RecommendError, VoteError};
use asdkb::screening::{Language, RegistryError, ScreeningError};
use asdkb::store::{canonical_dump, Iri};
use asdkb::vocab;

use crate::page;
use crate::AppState;

type Shared = State<Arc<AppState>>;

pub struct ApiError {
    status: StatusCode,
    message: String,
    detail: Option<serde_json::Value>,
}

impl ApiError {
    fn new(status: StatusCode, message: impl ToString) -> Self {
        ApiError { status, message: message.to_string(), detail: None }
    }

    fn bad(message: impl ToString) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }

    fn missing(message: impl ToString) -> Self {
        Self::new(StatusCode::NOT_FOUND, message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({ "error": self.message });
        if let Some(d) = self.detail {
            body["detail"] = d;
        }
        (self.status, Json(body)).into_response()
    }
}

impl From<ScreeningError> for ApiError {
    fn from(e: ScreeningError) -> Self {
        match &e {
            ScreeningError::UnknownTool(_) | ScreeningError::UnknownQuestion(_) | ScreeningError::UnknownSession(_) => {
                ApiError::missing(&e)
            }
            ScreeningError::Incomplete(missing) => ApiError {
                status: StatusCode::UNPROCESSABLE_ENTITY,
                message: e.to_string(),
                detail: Some(json!({ "unanswered": missing })),
            },
            ScreeningError::ForeignQuestion { .. } | ScreeningError::ForeignOption { .. } => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, &e)
            }
        }
    }
}

impl From<RegistryError> for ApiError {
    fn from(e: RegistryError) -> Self {
        match e {
            RegistryError::Screening(s) => s.into(),
            RegistryError::Log(l) => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, l),
        }
    }
}

impl From<RecommendError> for ApiError {
    fn from(e: RecommendError) -> Self {
        match e {
            RecommendError::UnknownDivision(_) => ApiError::missing(e),
            RecommendError::ZeroK => ApiError::bad(e),
            RecommendError::HasCandidates(_) | RecommendError::NoHospitals => ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e),
        }
    }
}

impl From<VoteError> for ApiError {
    fn from(e: VoteError) -> Self {
        match e {
            VoteError::UnknownPhysician(_) => ApiError::missing(e),
            other => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, other),
        }
    }
}

type ApiResult<T> = Result<T, ApiError>;

/// A bare local id or a full IRI in the instance namespace.
fn instance(id: &str) -> ApiResult<Iri> {
    let full = if id.contains("://") { id.to_owned() } else { vocab::instance_iri(id) };
    Iri::new(&full).map_err(|e| ApiError::bad(format!("{id}: {e}")))
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/query", post(query))
        .route("/qa", post(qa))
        .route("/tools", get(tools))
        .route("/sessions", post(start_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/answers", post(answer))
        .route("/sessions/{id}/score", post(score))
        .route("/questions/{id}/explanation", get(explain_question))
        .route("/recommend", get(recommend))
        .route("/physicians/{id}/vote", post(vote))
        .route("/divisions", get(divisions))
        .route("/entity/{id}", get(entity))
        .with_state(state)
}

async fn health(State(s): Shared) -> Json<serde_json::Value> {
    Json(json!({ "status": "ok", "triples": s.kb.store.len() }))
}

#[derive(Deserialize)]
struct QueryBody {
    query: String,
}

/// Accepts the query text as the raw body or as `{"query": ...}`.
async fn query(State(s): Shared, body: String) -> ApiResult<Json<asdkb::query::ResultTable>> {
    let text = match serde_json::from_str::<QueryBody>(&body) {
        Ok(b) => b.query,
        Err(_) => body,
    };
    let ast = parse_query(&text).map_err(ApiError::bad)?;
    Ok(Json(execute(&ast, &s.kb.store)))
}

#[derive(Deserialize)]
struct QaBody {
    question: String,
}

async fn qa(State(s): Shared, Json(body): Json<QaBody>) -> Json<QaResult> {
    Json(s.kb.qa.answer_question(&s.kb.store, &body.question))
}

#[derive(Deserialize)]
struct ToolFilter {
    age: Option<f64>,
    filler: Option<String>,
    lang: Option<String>,
}

async fn tools(State(s): Shared, Query(f): Query<ToolFilter>) -> ApiResult<Json<serde_json::Value>> {
    let lang = match f.lang.as_deref().filter(|l| !l.is_empty()) {
        Some(l) => Some(Language::parse(l).ok_or_else(|| ApiError::bad(format!("unknown language {l}")))?),
        None => None,
    };
    let filler = f.filler.as_deref().filter(|x| !x.is_empty());
    let c = &s.kb.catalog;
    let list = match f.age {
        Some(age) => c.filter_tools(age, filler, lang),
        None => all_matching(c, filler, lang),
    };
    Ok(Json(json!({ "tools": list })))
}

/// Tools passing the filler and language filters at any age, ordered by name.
fn all_matching<'a>(
    c: &'a asdkb::screening::Catalog,
    filler: Option<&str>,
    lang: Option<Language>,
) -> Vec<&'a asdkb::screening::ScreeningTool> {
    let mut out: Vec<_> = c
        .tools
        .values()
        .filter(|t| filler.is_none_or(|f| t.users.iter().any(|u| u == f)))
        .filter(|t| lang.is_none_or(|l| t.language == Some(l)))
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name).then_with(|| a.iri.cmp(&b.iri)));
    out
}

#[derive(Deserialize)]
struct StartBody {
    tool: String,
}

#[derive(Serialize)]
struct SessionView {
    id: Uuid,
    tool: Iri,
    answers: BTreeMap<Iri, Iri>,
    unanswered: Vec<Iri>,
    questions: Vec<serde_json::Value>,
}

fn session_view(s: &AppState, session: asdkb::screening::ScreeningSession) -> ApiResult<SessionView> {
    let c = &s.kb.catalog;
    let unanswered = c.unanswered(&session)?;
    let questions = c.tool(&session.tool)?
        .questions
        .iter()
        .map(|q| {
            let question = &c.questions[q];
            json!({ "question": question, "options": c.options_of(q) })
        })
        .collect();
    Ok(SessionView { id: session.id, tool: session.tool, answers: session.answers, unanswered, questions })
}

async fn start_session(State(s): Shared, Json(body): Json<StartBody>) -> ApiResult<(StatusCode, Json<SessionView>)> {
    let session = s.sessions.start(&instance(&body.tool)?)?;
    Ok((StatusCode::CREATED, Json(session_view(&s, session)?)))
}

fn session_id(id: &str) -> ApiResult<Uuid> {
    Uuid::parse_str(id).map_err(|_| ApiError::missing(format!("unknown session {id}")))
}

async fn get_session(State(s): Shared, Path(id): Path<String>) -> ApiResult<Json<SessionView>> {
    let session = s.sessions.get(session_id(&id)?)?;
    Ok(Json(session_view(&s, session)?))
}

#[derive(Deserialize)]
struct AnswerBody {
    question: String,
    option: String,
}

async fn answer(State(s): Shared, Path(id): Path<String>, Json(body): Json<AnswerBody>) -> ApiResult<Json<SessionView>> {
    let session = s.sessions.answer(session_id(&id)?, &instance(&body.question)?, &instance(&body.option)?)?;
    Ok(Json(session_view(&s, session)?))
}

async fn score(State(s): Shared, Path(id): Path<String>) -> ApiResult<Json<serde_json::Value>> {
    let (result, explanations) = s.sessions.score(session_id(&id)?)?;
    Ok(Json(json!({ "result": result, "explanations": explanations })))
}

async fn explain_question(State(s): Shared, Path(id): Path<String>) -> ApiResult<Json<serde_json::Value>> {
    let q = instance(&id)?;
    let symptoms = s.kb.catalog.explain_question(&q)?;
    Ok(Json(json!({ "question": q, "symptoms": symptoms })))
}

#[derive(Deserialize)]
struct RecommendQuery {
    province: Option<String>,
    city: Option<String>,
    district: Option<String>,
    k: Option<usize>,
}

async fn recommend(State(s): Shared, Query(q): Query<RecommendQuery>) -> ApiResult<Json<asdkb::recommend::Recommendation>> {
    let d = &s.kb.directory;
    let division = d.resolve(q.province.as_deref(), q.city.as_deref(), q.district.as_deref())?;
    Ok(Json(d.recommend(&division.code, q.k.unwrap_or(s.fallback_k), &s.votes)?))
}

#[derive(Deserialize)]
struct VoteBody {
    direction: String,
}

async fn vote(State(s): Shared, Path(id): Path<String>, Json(body): Json<VoteBody>) -> ApiResult<Json<serde_json::Value>> {
    let direction = Direction::parse(&body.direction).ok_or_else(|| ApiError::bad(format!("unknown direction {}", body.direction)))?;
    let p = instance(&id)?;
    let tally = s.votes.vote(&p, direction)?;
    Ok(Json(json!({ "physician": p, "up": tally.up, "down": tally.down, "net": tally.net() })))
}

#[derive(Serialize)]
struct DivisionNode<'a> {
    code: &'a str,
    name: &'a str,
    level: DivisionLevel,
    children: Vec<DivisionNode<'a>>,
}

fn node<'a>(d: &'a asdkb::recommend::Directory, div: &'a Division) -> DivisionNode<'a> {
    DivisionNode {
        code: &div.code,
        name: &div.name,
        level: div.level,
        children: d.children(&div.code).into_iter().map(|c| node(d, c)).collect(),
    }
}

async fn divisions(State(s): Shared) -> Json<serde_json::Value> {
    let d = &s.kb.directory;
    let roots: Vec<DivisionNode<'_>> = d.divisions.values().filter(|x| x.parent.is_none()).map(|x| node(d, x)).collect();
    Json(json!({ "divisions": roots }))
}

pub const NTRIPLES: &str = "application/n-triples";

async fn entity(State(s): Shared, Path(id): Path<String>, headers: HeaderMap) -> ApiResult<Response> {
    let iri = instance(&id)?;
    let triples = s.kb.store.dereference(&iri);
    if triples.is_empty() {
        return Err(ApiError::missing(format!("unknown entity {id}")));
    }
    let accept = headers.get(header::ACCEPT).and_then(|v| v.to_str().ok()).unwrap_or("");
    if accept.contains("text/html") {
        let html = page::render(&s.kb.store, &iri, &triples);
        Ok(([(header::CONTENT_TYPE, "text/html; charset=utf-8")], html).into_response())
    } else {
        Ok(([(header::CONTENT_TYPE, NTRIPLES)], canonical_dump(triples)).into_response())
    }
}
