//! JSON service: in-memory mutation sessions plus stateless enumeration endpoints.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use uuid::Uuid;

use greenseq::coxeter::CartanData;
use greenseq::hearts::{exchange_graph, Heart, SignedSimple, DEFAULT_DEPTH};
use greenseq::linalg::IMat;
use greenseq::quiver::{FramedSeed, Quiver, Vertex};
use greenseq::Error;

use crate::parse_vertices;

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    NotFound,
    NotGreen(Vertex),
    AtInitial,
    NotDynkin,
    Internal(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, json!({ "error": "bad_request", "message": m })),
            ApiError::NotFound => (StatusCode::NOT_FOUND, json!({ "error": "not_found" })),
            ApiError::NotGreen(v) => (StatusCode::CONFLICT, json!({ "error": "not_green", "vertex": v })),
            ApiError::AtInitial => (StatusCode::CONFLICT, json!({ "error": "at_initial" })),
            ApiError::NotDynkin => (StatusCode::UNPROCESSABLE_ENTITY, json!({ "error": "not_dynkin" })),
            ApiError::Internal(m) => (StatusCode::INTERNAL_SERVER_ERROR, json!({ "error": "internal", "message": m })),
        };
        (status, Json(body)).into_response()
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotGreenAt { vertex, .. } => ApiError::NotGreen(vertex),
            Error::NonDynkin => ApiError::NotDynkin,
            Error::Invariant(m) => ApiError::Internal(m),
            other => ApiError::BadRequest(other.to_string()),
        }
    }
}

type ApiResult<T> = std::result::Result<Json<T>, ApiError>;

/// A session is its quiver and the accepted green mutations; the seed is recomputed by folding.
struct Session {
    quiver: Quiver,
    history: Vec<Vertex>,
    last_used: Instant,
}

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<Mutex<HashMap<Uuid, Arc<tokio::sync::Mutex<Session>>>>>,
    ttl: Duration,
}

impl AppState {
    pub fn new(ttl: Duration) -> Self {
        AppState { sessions: Arc::default(), ttl }
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().expect("session map lock").len()
    }

    /// Drops sessions idle for longer than the TTL.
    pub fn sweep(&self) {
        let now = Instant::now();
        let mut map = self.sessions.lock().expect("session map lock");
        map.retain(|_, s| !s.try_lock().is_ok_and(|s| now.duration_since(s.last_used) > self.ttl));
    }

    fn lookup(&self, id: &str) -> Result<Arc<tokio::sync::Mutex<Session>>, ApiError> {
        let id = Uuid::parse_str(id).map_err(|_| ApiError::NotFound)?;
        self.sessions.lock().expect("session map lock").get(&id).cloned().ok_or(ApiError::NotFound)
    }

    fn remove(&self, id: &str) {
        if let Ok(id) = Uuid::parse_str(id) {
            self.sessions.lock().expect("session map lock").remove(&id);
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SessionState {
    pub id: String,
    pub quiver: Quiver,
    pub b: IMat,
    pub c: IMat,
    pub green: Vec<Vertex>,
    pub red: Vec<Vertex>,
    pub history: Vec<Vertex>,
    pub heart: Vec<SignedSimple>,
    pub maximal: bool,
}

fn fold(q: &Quiver, history: &[Vertex]) -> Result<FramedSeed, ApiError> {
    Ok(FramedSeed::new(q).apply_sequence(history, true)?)
}

fn state_of(id: &str, s: &Session) -> Result<SessionState, ApiError> {
    let seed = fold(&s.quiver, &s.history)?;
    let heart = Heart::from_seed(&seed)?;
    Ok(SessionState {
        id: id.to_string(),
        quiver: s.quiver.clone(),
        green: seed.green_vertices(),
        red: seed.red_vertices(),
        maximal: seed.is_maximal_green()?,
        history: s.history.clone(),
        heart: heart.simples,
        b: seed.b,
        c: seed.c,
    })
}

fn parse_quiver(raw: &str) -> Result<Quiver, ApiError> {
    serde_json::from_str(raw).map_err(|e| ApiError::BadRequest(format!("invalid quiver: {e}")))
}

fn parse_body(body: &str) -> Result<Value, ApiError> {
    serde_json::from_str(body).map_err(|e| ApiError::BadRequest(format!("invalid JSON: {e}")))
}

async fn create_session(State(app): State<AppState>, body: String) -> ApiResult<SessionState> {
    let v = parse_body(&body)?;
    let q = v.get("quiver").ok_or_else(|| ApiError::BadRequest("missing field `quiver`".into()))?;
    let quiver = parse_quiver(&q.to_string())?;
    let id = Uuid::new_v4();
    let session = Session { quiver, history: vec![], last_used: Instant::now() };
    let state = state_of(&id.to_string(), &session)?;
    app.sessions.lock().expect("session map lock").insert(id, Arc::new(tokio::sync::Mutex::new(session)));
    Ok(Json(state))
}

/// Locks the session, expiring it first if it has been idle past the TTL.
async fn with_session<T>(
    app: &AppState,
    id: &str,
    f: impl FnOnce(&mut Session) -> Result<T, ApiError>,
) -> Result<T, ApiError> {
    let handle = app.lookup(id)?;
    let mut s = handle.lock().await;
    if s.last_used.elapsed() > app.ttl {
        drop(s);
        app.remove(id);
        return Err(ApiError::NotFound);
    }
    s.last_used = Instant::now();
    f(&mut s)
}

async fn get_session(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<SessionState> {
    with_session(&app, &id, |s| state_of(&id, s)).await.map(Json)
}

async fn mutate_session(State(app): State<AppState>, Path(id): Path<String>, body: String) -> ApiResult<SessionState> {
    let v = parse_body(&body)?;
    let vertex = v
        .get("vertex")
        .and_then(Value::as_u64)
        .ok_or_else(|| ApiError::BadRequest("missing or invalid field `vertex`".into()))? as usize;
    with_session(&app, &id, |s| {
        let seed = fold(&s.quiver, &s.history)?;
        s.quiver.check_vertex(vertex)?;
        if !seed.is_green(vertex) {
            return Err(ApiError::NotGreen(vertex));
        }
        s.history.push(vertex);
        state_of(&id, s)
    })
    .await
    .map(Json)
}

async fn undo_session(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<SessionState> {
    with_session(&app, &id, |s| {
        s.history.pop().ok_or(ApiError::AtInitial)?;
        state_of(&id, s)
    })
    .await
    .map(Json)
}

#[derive(Deserialize)]
struct GraphQuery {
    quiver: Option<String>,
    depth: Option<usize>,
}

async fn get_exchange_graph(Query(p): Query<GraphQuery>) -> ApiResult<Value> {
    let q = parse_quiver(p.quiver.as_deref().ok_or_else(|| ApiError::BadRequest("missing `quiver`".into()))?)?;
    if !CartanData::new(&q)?.is_finite_type() {
        return Err(ApiError::NotDynkin);
    }
    let g = blocking(move || exchange_graph(&q, p.depth)).await?;
    Ok(Json(g.to_json()))
}

#[derive(Deserialize)]
struct SortableQuery {
    quiver: Option<String>,
    c: Option<String>,
    max_len: Option<usize>,
}

#[derive(Serialize)]
struct TreeNode {
    word: Vec<Vertex>,
    factorization: String,
    parent: Option<usize>,
    children: Vec<usize>,
}

async fn get_sortable(Query(p): Query<SortableQuery>) -> ApiResult<Value> {
    let q = parse_quiver(p.quiver.as_deref().ok_or_else(|| ApiError::BadRequest("missing `quiver`".into()))?)?;
    let c = parse_vertices(p.c.as_deref().ok_or_else(|| ApiError::BadRequest("missing `c`".into()))?)
        .map_err(ApiError::BadRequest)?;
    let (tree, max_len, dynkin) = blocking(move || {
        let cd = CartanData::new(&q)?;
        let dynkin = cd.is_finite_type();
        let max_len = match (p.max_len, dynkin) {
            (Some(m), _) => m,
            (None, true) => cd.positive_roots()?.len(),
            (None, false) => DEFAULT_DEPTH,
        };
        Ok((cd.enumerate_c_sortable(&c, max_len)?, max_len, dynkin))
    })
    .await?;
    let nodes: Vec<TreeNode> = (0..tree.words.len())
        .map(|i| TreeNode {
            word: tree.words[i].0.clone(),
            factorization: tree.factorizations[i].to_string(),
            parent: tree.parent[i],
            children: tree.children[i].clone(),
        })
        .collect();
    Ok(Json(json!({ "nodes": nodes, "max_len": max_len, "complete": dynkin })))
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> greenseq::Result<T> + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError::Internal(e.to_string()))?.map_err(ApiError::from)
}

pub fn router(app: AppState) -> Router {
    Router::new()
        .route("/api/session", post(create_session))
        .route("/api/session/{id}", get(get_session))
        .route("/api/session/{id}/mutate", post(mutate_session))
        .route("/api/session/{id}/undo", post(undo_session))
        .route("/api/exchange-graph", get(get_exchange_graph))
        .route("/api/sortable", get(get_sortable))
        .with_state(app)
}

/// Serves until the process is stopped, sweeping idle sessions periodically.
pub async fn serve(addr: std::net::SocketAddr, ttl: Duration) -> std::io::Result<()> {
    let app = AppState::new(ttl);
    let sweeper = app.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval((ttl / 4).max(Duration::from_secs(1)));
        loop {
            tick.tick().await;
            sweeper.sweep();
        }
    });
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(app)).await
}
