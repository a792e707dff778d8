//! JSON over HTTP.
//!
//! | method | route                           | body                    | success                  |
//! |--------|---------------------------------|-------------------------|--------------------------|
//! | POST   | `/enroll`                       | [`EnrollRequest`]       | 201 [`EnrollResponse`]   |
//! | POST   | `/challenge`                    | [`ChallengeRequest`]    | 200 [`ChallengeResponse`]|
//! | POST   | `/verify`                       | [`VerifyRequest`]       | 200 [`VerifyResult`]     |
//! | DELETE | `/enrollment/{user}/{label}`    |                         | 204                      |
//!
//! Failures carry `{"error": "..."}` with status 400 (malformed request),
//! 404 (unknown enrollment), 409 (duplicate enrollment) or 500. A wrong
//! password is not a failure: `/verify` answers 200 with the outcome.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, post};
use axum::{Json, Router};
use chrono::{DateTime, Duration, Utc};
use serde::{Deserialize, Serialize};

use super::seal::MasterKey;
use super::{GridParams, Service, ServiceConfig, ServiceError, VerifyResult, DEFAULT_TTL_SECONDS};
use crate::alphabet::AlphabetSpec;
use crate::diagram::Diagram;
use crate::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnrollRequest {
    pub user: String,
    pub label: String,
    pub path: Path,
    /// Defaults to 10x10 over `digit-pairs`.
    #[serde(default)]
    pub grid_params: Option<GridParams>,
}

/// Echoes what was enrolled, except the path itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnrollResponse {
    pub user: String,
    pub label: String,
    pub alphabet: AlphabetSpec,
    pub rows: usize,
    pub cols: usize,
    pub path_length: usize,
    pub created_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChallengeRequest {
    pub user: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChallengeResponse {
    pub challenge_id: String,
    pub diagram: Diagram,
    pub expires_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRequest {
    pub challenge_id: String,
    pub password: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(ErrorBody { error: self.1 })).into_response()
    }
}

impl From<ServiceError> for ApiError {
    fn from(e: ServiceError) -> Self {
        let status = match &e {
            ServiceError::DuplicateEnrollment { .. } => StatusCode::CONFLICT,
            ServiceError::UnknownEnrollment { .. } => StatusCode::NOT_FOUND,
            ServiceError::InvalidPath(_)
            | ServiceError::InvalidGrid(_)
            | ServiceError::EmptyName => StatusCode::BAD_REQUEST,
            ServiceError::DiagramExhausted(_) | ServiceError::Seal(_) | ServiceError::Store(_) => {
                StatusCode::INTERNAL_SERVER_ERROR
            }
        };
        ApiError(status, e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError(StatusCode::BAD_REQUEST, e.body_text())
    }
}

type Shared = Arc<Service>;

/// Runs blocking store work off the async executor.
async fn blocking<T, F>(svc: &Shared, f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce(&Service) -> Result<T, ServiceError> + Send + 'static,
{
    let svc = svc.clone();
    tokio::task::spawn_blocking(move || f(&svc))
        .await
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map_err(ApiError::from)
}

async fn enroll(
    State(svc): State<Shared>,
    body: Result<Json<EnrollRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<EnrollResponse>), ApiError> {
    let Json(req) = body?;
    let record = blocking(&svc, move |s| {
        s.enroll(
            &req.user,
            &req.label,
            req.path,
            req.grid_params.unwrap_or_default(),
        )
    })
    .await?;
    Ok((
        StatusCode::CREATED,
        Json(EnrollResponse {
            user: record.user,
            label: record.label,
            alphabet: record.grid_params.alphabet.spec(),
            rows: record.grid_params.rows,
            cols: record.grid_params.cols,
            path_length: record.path.len(),
            created_at: record.created_at,
        }),
    ))
}

async fn challenge(
    State(svc): State<Shared>,
    body: Result<Json<ChallengeRequest>, JsonRejection>,
) -> Result<Json<ChallengeResponse>, ApiError> {
    let Json(req) = body?;
    let c = blocking(&svc, move |s| s.issue_challenge(&req.user, &req.label)).await?;
    Ok(Json(ChallengeResponse {
        challenge_id: c.id,
        diagram: c.diagram,
        expires_at: c.expires_at,
    }))
}

async fn verify(
    State(svc): State<Shared>,
    body: Result<Json<VerifyRequest>, JsonRejection>,
) -> Result<Json<VerifyResult>, ApiError> {
    let Json(req) = body?;
    let result = blocking(&svc, move |s| s.verify(&req.challenge_id, &req.password)).await?;
    Ok(Json(result))
}

async fn revoke(
    State(svc): State<Shared>,
    UrlPath((user, label)): UrlPath<(String, String)>,
) -> Result<StatusCode, ApiError> {
    blocking(&svc, move |s| s.revoke(&user, &label)).await?;
    Ok(StatusCode::NO_CONTENT)
}

pub fn router(service: Arc<Service>) -> Router {
    Router::new()
        .route("/enroll", post(enroll))
        .route("/challenge", post(challenge))
        .route("/verify", post(verify))
        .route("/enrollment/{user}/{label}", delete(revoke))
        .with_state(service)
}

/// Server settings, loadable from TOML:
///
/// ```toml
/// listen = "127.0.0.1:8080"
/// data_dir = "/var/lib/pathword"
/// ttl_seconds = 120
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServerConfig {
    #[serde(default = "default_listen")]
    pub listen: SocketAddr,
    pub data_dir: PathBuf,
    #[serde(default = "default_ttl")]
    pub ttl_seconds: i64,
}

fn default_listen() -> SocketAddr {
    SocketAddr::from(([127, 0, 0, 1], 8080))
}

fn default_ttl() -> i64 {
    DEFAULT_TTL_SECONDS
}

#[derive(Debug, thiserror::Error)]
pub enum ServerError {
    #[error("reading config {path}: {source}")]
    ConfigIo {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parsing config {path}: {source}")]
    ConfigParse {
        path: PathBuf,
        source: toml::de::Error,
    },
    #[error("ttl_seconds must be positive")]
    BadTtl,
    #[error(transparent)]
    Service(#[from] ServiceError),
    #[error("server i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl ServerConfig {
    pub fn new(data_dir: impl Into<PathBuf>) -> Self {
        ServerConfig {
            listen: default_listen(),
            data_dir: data_dir.into(),
            ttl_seconds: DEFAULT_TTL_SECONDS,
        }
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ServerError> {
        let text = std::fs::read_to_string(path).map_err(|source| ServerError::ConfigIo {
            path: path.into(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| ServerError::ConfigParse {
            path: path.into(),
            source,
        })
    }

    pub fn service_config(&self, key: MasterKey) -> Result<ServiceConfig, ServerError> {
        if self.ttl_seconds <= 0 {
            return Err(ServerError::BadTtl);
        }
        Ok(ServiceConfig::new(&self.data_dir, key).with_ttl(Duration::seconds(self.ttl_seconds)))
    }
}

/// A server running on a background task.
pub struct RunningServer {
    pub addr: SocketAddr,
    shutdown: Option<tokio::sync::oneshot::Sender<()>>,
    task: tokio::task::JoinHandle<std::io::Result<()>>,
}

impl RunningServer {
    pub fn url(&self) -> String {
        format!("http://{}", self.addr)
    }

    pub async fn stop(mut self) -> std::io::Result<()> {
        if let Some(tx) = self.shutdown.take() {
            let _ = tx.send(());
        }
        self.task.await.map_err(std::io::Error::other)?
    }
}

/// Binds `addr` (port 0 picks a free port) and serves in the background.
pub async fn spawn(service: Arc<Service>, addr: SocketAddr) -> std::io::Result<RunningServer> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    let addr = listener.local_addr()?;
    let (tx, rx) = tokio::sync::oneshot::channel::<()>();
    let app = router(service);
    let task = tokio::spawn(async move {
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = rx.await;
            })
            .await
    });
    Ok(RunningServer {
        addr,
        shutdown: Some(tx),
        task,
    })
}

/// Serves until Ctrl-C.
pub async fn serve(config: &ServerConfig, key: MasterKey) -> Result<(), ServerError> {
    let service = Arc::new(Service::open(config.service_config(key)?)?);
    let listener = tokio::net::TcpListener::bind(config.listen).await?;
    eprintln!("pathword listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(service))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
