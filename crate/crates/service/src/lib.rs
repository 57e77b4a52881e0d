//! In-memory HTTP sessions for playing the indicated colouring game against
//! an engine policy.
//!
//! Routes:
//! - `POST /sessions` with `{"graph", "k", "human": "ann"|"ben", "engine", "factors"?}`
//! - `POST /sessions/{id}/moves` with `{"vertex": v}` or `{"color": c}`, and an
//!   optional `"seq"` equal to the history length the client last saw
//! - `GET /sessions/{id}`
//!
//! Every response is a full [`Snapshot`]; errors are `{"error": reason}` with
//! status 400 (bad input), 404 (unknown session) or 409 (illegal or
//! out-of-turn move).

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use indicolor_core::graph::{Graph, GraphJson, VertexId};
use indicolor_core::harness::parse_graph_text;
use indicolor_core::solver::{AnnPolicy, BenPolicy, GameState, Limits, Move, Side};
use indicolor_core::strategies::{build_ann, build_ben, StrategyContext, StrategyName};
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_IDLE: Duration = Duration::from_secs(30 * 60);

#[derive(Debug, Clone, Copy)]
pub struct ServiceConfig {
    /// Sessions untouched for this long are dropped.
    pub idle: Duration,
    /// Engine search budget; `max_vertices` also caps the board size.
    pub limits: Limits,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig { idle: DEFAULT_IDLE, limits: Limits::default() }
    }
}

#[derive(Debug, Error)]
pub enum ApiError {
    #[error("{0}")]
    BadRequest(String),
    #[error("unknown session `{0}`")]
    NotFound(String),
    #[error("{0}")]
    Conflict(String),
    #[error("engine failed: {0}")]
    Engine(String),
}

impl ApiError {
    fn status(&self) -> StatusCode {
        match self {
            ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::Conflict(_) => StatusCode::CONFLICT,
            ApiError::Engine(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status(), Json(serde_json::json!({ "error": self.to_string() }))).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::BadRequest(r.body_text())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    InProgress,
    AnnWon,
    BenWon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Turn {
    Human,
    Engine,
    Done,
}

/// Graph given as graph6 / generator expression text, or as a JSON object.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GraphInput {
    Text(String),
    Json(GraphJson),
}

impl GraphInput {
    fn parse(self) -> Result<Graph, ApiError> {
        match self {
            GraphInput::Text(t) => parse_graph_text(&t),
            GraphInput::Json(j) => Graph::try_from(j),
        }
        .map_err(|e| ApiError::BadRequest(format!("invalid graph: {e}")))
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct CreateSession {
    pub graph: GraphInput,
    pub k: usize,
    pub human: Side,
    pub engine: String,
    /// `[G, H]` when the board is `G[H]`; needed by the product strategies.
    #[serde(default)]
    pub factors: Option<[GraphInput; 2]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveRequest {
    #[serde(default)]
    pub vertex: Option<VertexId>,
    #[serde(default)]
    pub color: Option<usize>,
    #[serde(default)]
    pub seq: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub id: String,
    pub k: usize,
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
    pub colors: Vec<Option<usize>>,
    pub turn: Turn,
    pub presented: Option<VertexId>,
    /// Vertices the human may present (as Ann) or colours they may give the
    /// presented vertex (as Ben). Empty once the game is over.
    pub legal: Vec<usize>,
    pub available: Vec<Vec<usize>>,
    pub blocked: Vec<VertexId>,
    pub status: Status,
    pub history: Vec<Move>,
    pub human: Side,
    pub engine: String,
}

enum Engine {
    Ann(Box<dyn AnnPolicy>),
    Ben(Box<dyn BenPolicy>),
}

struct Session {
    id: String,
    state: GameState,
    human: Side,
    engine_name: String,
    engine: Engine,
    presented: Option<VertexId>,
    last_seen: Instant,
}

impl Session {
    fn status(&self) -> Status {
        if !self.state.blocked_vertices().is_empty() {
            Status::BenWon
        } else if self.state.is_complete() {
            Status::AnnWon
        } else {
            Status::InProgress
        }
    }

    fn snapshot(&self) -> Snapshot {
        let s = &self.state;
        let g = s.graph();
        let status = self.status();
        let done = status != Status::InProgress;
        let legal = match (done, self.human, self.presented) {
            (true, _, _) => Vec::new(),
            (false, Side::Ann, _) => s.uncolored(),
            (false, Side::Ben, Some(v)) => s.available_colors(v),
            (false, Side::Ben, None) => Vec::new(),
        };
        Snapshot {
            id: self.id.clone(),
            k: s.k(),
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            colors: s.colors().to_vec(),
            turn: if done { Turn::Done } else { Turn::Human },
            presented: if done { None } else { self.presented },
            legal,
            available: g
                .vertices()
                .map(|v| if s.color(v).is_some() { Vec::new() } else { s.available_colors(v) })
                .collect(),
            blocked: s.blocked_vertices(),
            status,
            history: s.history().to_vec(),
            human: self.human,
            engine: self.engine_name.clone(),
        }
    }

    /// Lets the engine move until it is the human's turn or the game ends.
    fn engine_turn(&mut self) -> Result<(), ApiError> {
        if self.status() != Status::InProgress {
            return Ok(());
        }
        let engine_err = |e: &dyn std::fmt::Display| ApiError::Engine(e.to_string());
        match &self.engine {
            Engine::Ann(ann) => {
                let v = ann.present(&self.state).map_err(|e| engine_err(&e))?;
                if v >= self.state.graph().n() || self.state.color(v).is_some() {
                    return Err(ApiError::Engine(format!("engine presented illegal vertex {v}")));
                }
                self.presented = Some(v);
            }
            Engine::Ben(ben) => {
                // Ben only moves after a presentation
                let Some(v) = self.presented.take() else { return Ok(()) };
                let c = ben.color(&self.state, v).map_err(|e| engine_err(&e))?;
                self.state = self.state.apply(v, c).map_err(|e| engine_err(&e))?;
            }
        }
        Ok(())
    }

    fn human_move(&mut self, req: &MoveRequest) -> Result<(), ApiError> {
        if self.status() != Status::InProgress {
            return Err(ApiError::Conflict("game is over".into()));
        }
        if let Some(seq) = req.seq {
            let len = self.state.history().len();
            if seq != len {
                return Err(ApiError::Conflict(format!("stale move: expected seq {len}, got {seq}")));
            }
        }
        match (self.human, req.vertex, req.color) {
            (Side::Ann, Some(v), None) => {
                if v >= self.state.graph().n() {
                    return Err(ApiError::Conflict(format!("vertex {v} out of range")));
                }
                if self.state.color(v).is_some() {
                    return Err(ApiError::Conflict(format!("vertex {v} is already coloured")));
                }
                self.presented = Some(v);
                self.engine_turn()
            }
            (Side::Ben, None, Some(c)) => {
                let v = self.presented.ok_or_else(|| ApiError::Conflict("no vertex presented".into()))?;
                self.state = self.state.apply(v, c).map_err(|e| ApiError::Conflict(e.to_string()))?;
                self.presented = None;
                self.engine_turn()
            }
            (Side::Ann, None, Some(_)) => Err(ApiError::Conflict("out of turn: Ann presents a vertex".into())),
            (Side::Ben, Some(_), None) => Err(ApiError::Conflict("out of turn: Ben colours the presented vertex".into())),
            _ => Err(ApiError::BadRequest("give exactly one of `vertex` or `color`".into())),
        }
    }
}

type SessionRef = Arc<tokio::sync::Mutex<Session>>;

pub struct AppState {
    config: ServiceConfig,
    sessions: Mutex<HashMap<String, SessionRef>>,
}

impl AppState {
    pub fn new(config: ServiceConfig) -> Self {
        AppState { config, sessions: Mutex::new(HashMap::new()) }
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().len()
    }

    fn evict_idle(&self) {
        let idle = self.config.idle;
        self.sessions.lock().retain(|_, s| match s.try_lock() {
            Ok(s) => s.last_seen.elapsed() < idle,
            // busy sessions are in use
            Err(_) => true,
        });
    }

    fn get(&self, id: &str) -> Result<SessionRef, ApiError> {
        self.evict_idle();
        self.sessions.lock().get(id).cloned().ok_or_else(|| ApiError::NotFound(id.to_string()))
    }
}

fn new_session(config: &ServiceConfig, req: CreateSession) -> Result<Session, ApiError> {
    let graph = req.graph.parse()?;
    let max = config.limits.max_vertices;
    if graph.n() > max {
        return Err(ApiError::BadRequest(format!("graph has {} vertices; the limit is {max}", graph.n())));
    }
    let name: StrategyName = req.engine.parse().map_err(|e| ApiError::BadRequest(format!("{e}")))?;
    let factors = match req.factors {
        Some([g, h]) => Some((g.parse()?, h.parse()?)),
        None => None,
    };
    let ctx = StrategyContext {
        graph: &graph,
        factors: factors.as_ref().map(|(g, h)| (g, h)),
        limits: config.limits,
    };
    let bad = |e: indicolor_core::strategies::StrategyError| ApiError::BadRequest(e.to_string());
    let engine = match req.human {
        Side::Ann => Engine::Ben(build_ben(name, ctx).map_err(bad)?),
        Side::Ben => Engine::Ann(build_ann(name, ctx).map_err(bad)?),
    };
    let state = GameState::new(Arc::new(graph), req.k).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let mut session = Session {
        id: uuid::Uuid::new_v4().simple().to_string(),
        state,
        human: req.human,
        engine_name: name.to_string(),
        engine,
        presented: None,
        last_seen: Instant::now(),
    };
    session.engine_turn()?;
    Ok(session)
}

async fn create(
    State(app): State<Arc<AppState>>,
    body: Result<Json<CreateSession>, JsonRejection>,
) -> Result<(StatusCode, Json<Snapshot>), ApiError> {
    let Json(req) = body?;
    app.evict_idle();
    let config = app.config;
    let session = tokio::task::spawn_blocking(move || new_session(&config, req))
        .await
        .map_err(|e| ApiError::Engine(e.to_string()))??;
    let snap = session.snapshot();
    app.sessions.lock().insert(session.id.clone(), Arc::new(tokio::sync::Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(snap)))
}

async fn submit(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<Snapshot>, ApiError> {
    let Json(req) = body?;
    let session = app.get(&id)?;
    // a concurrent move on the same session is out of turn by construction
    let mut guard = session
        .try_lock_owned()
        .map_err(|_| ApiError::Conflict("another move on this session is in progress".into()))?;
    tokio::task::spawn_blocking(move || {
        guard.last_seen = Instant::now();
        let before = (guard.state.clone(), guard.presented);
        let result = guard.human_move(&req);
        if result.is_err() {
            (guard.state, guard.presented) = before;
        }
        result.map(|()| Json(guard.snapshot()))
    })
    .await
    .map_err(|e| ApiError::Engine(e.to_string()))?
}

async fn show(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Snapshot>, ApiError> {
    let session = app.get(&id)?;
    let mut s = session.lock().await;
    s.last_seen = Instant::now();
    Ok(Json(s.snapshot()))
}

pub fn router(config: ServiceConfig) -> Router {
    router_with_state(Arc::new(AppState::new(config)))
}

pub fn router_with_state(app: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/moves", post(submit))
        .with_state(app)
}

/// Serves until the process is stopped.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(config)).await
}
