//! Challenge-response login with a fresh diagram per attempt.
//!
//! Users enroll one or more secret paths, each under a label (a security
//! tier such as `low` or `high`). A login asks for a challenge: the service
//! generates a new random diagram for that enrollment and hands it out. The
//! user answers with the password their path reads off it. Every challenge
//! is single-use and expires after a TTL (120 s by default), so an observed
//! diagram and password pair is useless afterwards.
//!
//! Paths are stored encrypted under a master key (see [`seal`]). All state
//! changes go through one mutex, which makes verify-and-consume atomic.

pub mod client;
pub mod http;
pub mod seal;
pub mod store;

use std::path::PathBuf;
use std::sync::{Arc, Mutex, MutexGuard};

use chrono::{DateTime, Duration, Utc};
use rand::TryRngCore;
use serde::{Deserialize, Serialize};
use subtle::ConstantTimeEq;

use crate::alphabet::Alphabet;
use crate::diagram::{generate_diagram, Diagram, DiagramError};
use crate::path::{derive, Path};
use seal::{MasterKey, SealError, SealedPath};
use store::{Store, StoreError};

pub const DEFAULT_TTL_SECONDS: i64 = 120;
pub const DEFAULT_PATH_LENGTH: usize = 10;

/// Attempts at drawing a diagram whose id was never issued before.
const MAX_DIAGRAM_DRAWS: usize = 8;

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error("`{user}` already has an enrollment labelled `{label}`")]
    DuplicateEnrollment { user: String, label: String },
    #[error("no enrollment for `{user}` labelled `{label}`")]
    UnknownEnrollment { user: String, label: String },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid grid parameters: {0}")]
    InvalidGrid(String),
    #[error("user and label must be non-empty")]
    EmptyName,
    #[error("could not draw an unused diagram after {0} attempts")]
    DiagramExhausted(usize),
    #[error(transparent)]
    Seal(#[from] SealError),
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Shape and alphabet of the diagrams issued for an enrollment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridParams {
    pub alphabet: Alphabet,
    pub rows: usize,
    pub cols: usize,
}

impl Default for GridParams {
    /// 10x10 over the 100 two-digit letters.
    fn default() -> Self {
        GridParams {
            alphabet: Alphabet::builtin("digit-pairs").expect("builtin"),
            rows: 10,
            cols: 10,
        }
    }
}

impl GridParams {
    fn check(&self) -> Result<(), ServiceError> {
        if self.rows == 0 || self.cols == 0 {
            return Err(ServiceError::InvalidGrid(
                "rows and cols must be positive".into(),
            ));
        }
        if self.rows * self.cols < self.alphabet.size() {
            let e = DiagramError::TooSmall {
                rows: self.rows,
                cols: self.cols,
                cells: self.rows * self.cols,
                alphabet_size: self.alphabet.size(),
            };
            return Err(ServiceError::InvalidGrid(e.to_string()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnrollmentRecord {
    pub user: String,
    pub label: String,
    pub path: Path,
    pub grid_params: GridParams,
    pub created_at: DateTime<Utc>,
}

/// An enrollment as persisted: the path is sealed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredEnrollment {
    pub user: String,
    pub label: String,
    pub grid_params: GridParams,
    pub path_length: usize,
    pub created_at: DateTime<Utc>,
    pub sealed_path: SealedPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Challenge {
    pub id: String,
    pub user: String,
    pub label: String,
    pub diagram: Diagram,
    pub issued_at: DateTime<Utc>,
    pub expires_at: DateTime<Utc>,
    pub consumed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Accepted,
    Rejected,
    Expired,
    UnknownChallenge,
    Replayed,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Accepted => "accepted",
            Outcome::Rejected => "rejected",
            Outcome::Expired => "expired",
            Outcome::UnknownChallenge => "unknown-challenge",
            Outcome::Replayed => "replayed",
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub outcome: Outcome,
}

pub trait Clock: Send + Sync {
    fn now(&self) -> DateTime<Utc>;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct SystemClock;

impl Clock for SystemClock {
    fn now(&self) -> DateTime<Utc> {
        Utc::now()
    }
}

/// A clock that only moves when told to.
#[derive(Debug)]
pub struct ManualClock(Mutex<DateTime<Utc>>);

impl ManualClock {
    pub fn new(start: DateTime<Utc>) -> Self {
        ManualClock(Mutex::new(start))
    }

    pub fn advance(&self, by: Duration) {
        let mut now = self.0.lock().unwrap_or_else(|e| e.into_inner());
        *now += by;
    }
}

impl Clock for ManualClock {
    fn now(&self) -> DateTime<Utc> {
        *self.0.lock().unwrap_or_else(|e| e.into_inner())
    }
}

#[derive(Clone)]
pub struct ServiceConfig {
    pub data_dir: PathBuf,
    pub master_key: MasterKey,
    pub ttl: Duration,
    pub clock: Arc<dyn Clock>,
}

impl ServiceConfig {
    pub fn new(data_dir: impl Into<PathBuf>, master_key: MasterKey) -> Self {
        ServiceConfig {
            data_dir: data_dir.into(),
            master_key,
            ttl: Duration::seconds(DEFAULT_TTL_SECONDS),
            clock: Arc::new(SystemClock),
        }
    }

    pub fn with_ttl(mut self, ttl: Duration) -> Self {
        self.ttl = ttl;
        self
    }

    pub fn with_clock(mut self, clock: Arc<dyn Clock>) -> Self {
        self.clock = clock;
        self
    }
}

pub struct Service {
    store: Mutex<Store>,
    key: MasterKey,
    ttl: Duration,
    clock: Arc<dyn Clock>,
}

impl Service {
    /// Opens (or creates) the store in `config.data_dir`.
    pub fn open(config: ServiceConfig) -> Result<Self, ServiceError> {
        Ok(Service {
            store: Mutex::new(Store::open(config.data_dir)?),
            key: config.master_key,
            ttl: config.ttl,
            clock: config.clock,
        })
    }

    pub fn ttl(&self) -> Duration {
        self.ttl
    }

    fn store(&self) -> MutexGuard<'_, Store> {
        self.store.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn enroll(
        &self,
        user: &str,
        label: &str,
        path: Path,
        grid_params: GridParams,
    ) -> Result<EnrollmentRecord, ServiceError> {
        if user.is_empty() || label.is_empty() {
            return Err(ServiceError::EmptyName);
        }
        grid_params.check()?;
        if path.dims() != (grid_params.rows, grid_params.cols) {
            let (r, c) = path.dims();
            return Err(ServiceError::InvalidPath(format!(
                "path is for a {r}x{c} grid, enrollment uses {}x{}",
                grid_params.rows, grid_params.cols
            )));
        }
        let mut store = self.store();
        if store.enrollment(user, label).is_some() {
            return Err(ServiceError::DuplicateEnrollment {
                user: user.into(),
                label: label.into(),
            });
        }
        let created_at = self.clock.now();
        store.put_enrollment(StoredEnrollment {
            user: user.into(),
            label: label.into(),
            grid_params: grid_params.clone(),
            path_length: path.len(),
            created_at,
            sealed_path: seal::seal(&self.key, user, label, &path),
        })?;
        Ok(EnrollmentRecord {
            user: user.into(),
            label: label.into(),
            path,
            grid_params,
            created_at,
        })
    }

    /// Looks up an enrollment and unseals its path.
    pub fn enrollment(&self, user: &str, label: &str) -> Result<EnrollmentRecord, ServiceError> {
        let store = self.store();
        let stored = store
            .enrollment(user, label)
            .ok_or_else(|| unknown(user, label))?;
        Ok(EnrollmentRecord {
            user: stored.user.clone(),
            label: stored.label.clone(),
            path: seal::open(&self.key, user, label, &stored.sealed_path)?,
            grid_params: stored.grid_params.clone(),
            created_at: stored.created_at,
        })
    }

    /// Issues a fresh, never-before-issued diagram for the enrollment.
    pub fn issue_challenge(&self, user: &str, label: &str) -> Result<Challenge, ServiceError> {
        let mut store = self.store();
        let params = store
            .enrollment(user, label)
            .ok_or_else(|| unknown(user, label))?
            .grid_params
            .clone();
        let now = self.clock.now();
        self.purge_stale(&mut store, now)?;

        let mut diagram = None;
        for _ in 0..MAX_DIAGRAM_DRAWS {
            let candidate = generate_diagram(&params.alphabet, params.rows, params.cols, None)
                .map_err(|e| ServiceError::InvalidGrid(e.to_string()))?;
            if store.record_diagram(candidate.id())? {
                diagram = Some(candidate);
                break;
            }
        }
        let diagram = diagram.ok_or(ServiceError::DiagramExhausted(MAX_DIAGRAM_DRAWS))?;
        let challenge = Challenge {
            id: new_challenge_id(),
            user: user.into(),
            label: label.into(),
            diagram: diagram.with_created_at(now),
            issued_at: now,
            expires_at: now + self.ttl,
            consumed: false,
        };
        store.put_challenge(challenge.clone())?;
        Ok(challenge)
    }

    /// Checks a password against a challenge and consumes the challenge,
    /// whatever the outcome.
    pub fn verify(&self, challenge_id: &str, password: &str) -> Result<VerifyResult, ServiceError> {
        let mut store = self.store();
        let outcome = match store.challenge(challenge_id).cloned() {
            None => Outcome::UnknownChallenge,
            Some(c) if c.consumed => Outcome::Replayed,
            Some(mut c) => {
                c.consumed = true;
                let (user, label, diagram, expires_at) = (
                    c.user.clone(),
                    c.label.clone(),
                    c.diagram.clone(),
                    c.expires_at,
                );
                store.put_challenge(c)?;
                if self.clock.now() >= expires_at {
                    Outcome::Expired
                } else {
                    match store.enrollment(&user, &label) {
                        None => Outcome::UnknownChallenge,
                        Some(stored) => {
                            let path = seal::open(&self.key, &user, &label, &stored.sealed_path)?;
                            let expected = derive(&path, &diagram)
                                .map_err(|e| ServiceError::InvalidPath(e.to_string()))?;
                            let alphabet = diagram.alphabet();
                            let expected = alphabet.canonicalize(expected.text());
                            let submitted = alphabet.canonicalize(password);
                            if bool::from(expected.as_bytes().ct_eq(submitted.as_bytes())) {
                                Outcome::Accepted
                            } else {
                                Outcome::Rejected
                            }
                        }
                    }
                }
            }
        };
        Ok(VerifyResult { outcome })
    }

    /// Removes the enrollment and every challenge issued for it.
    pub fn revoke(&self, user: &str, label: &str) -> Result<(), ServiceError> {
        let mut store = self.store();
        let pending: Vec<String> = store
            .challenges()
            .filter(|c| c.user == user && c.label == label)
            .map(|c| c.id.clone())
            .collect();
        if !store.remove_enrollment(user, label)? {
            return Err(unknown(user, label));
        }
        for id in pending {
            store.remove_challenge(&id)?;
        }
        Ok(())
    }

    /// Number of challenges currently held (pending, consumed or recently expired).
    pub fn challenge_count(&self) -> usize {
        self.store().challenges().count()
    }

    pub fn challenge(&self, id: &str) -> Option<Challenge> {
        self.store().challenge(id).cloned()
    }

    /// Drops challenges that expired more than one TTL ago. Until then a
    /// resubmission still reports `replayed` or `expired`.
    fn purge_stale(&self, store: &mut Store, now: DateTime<Utc>) -> Result<(), StoreError> {
        let stale: Vec<String> = store
            .challenges()
            .filter(|c| c.expires_at + self.ttl < now)
            .map(|c| c.id.clone())
            .collect();
        for id in stale {
            store.remove_challenge(&id)?;
        }
        Ok(())
    }
}

fn unknown(user: &str, label: &str) -> ServiceError {
    ServiceError::UnknownEnrollment {
        user: user.into(),
        label: label.into(),
    }
}

fn new_challenge_id() -> String {
    let mut bytes = [0u8; 16];
    rand::rngs::OsRng
        .try_fill_bytes(&mut bytes)
        .expect("operating system entropy source unavailable");
    hex::encode(bytes)
}
