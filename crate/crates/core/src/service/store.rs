//! Directory-backed state for the service.
//!
//! Layout under the data directory:
//!
//! ```text
//! enrollments/<hex(user)>-<hex(label)>.json   StoredEnrollment
//! challenges/<challenge id>.json              Challenge
//! diagrams/<diagram id>                       empty marker, one per issued diagram
//! ```
//!
//! Every document is written to a `.tmp` sibling, synced, renamed over the
//! target and the directory synced, so a reader sees either the old or the
//! new document. Files not ending in `.json` are ignored when loading.
//! The store keeps everything in memory and writes through on each change.

use std::collections::{HashMap, HashSet};
use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path as FsPath, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::{Challenge, StoredEnrollment};
use crate::diagram::DiagramId;

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("store i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("corrupt store document {path}: {message}")]
    Corrupt { path: PathBuf, message: String },
}

fn io_err(path: &FsPath) -> impl FnOnce(io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub(crate) type EnrollmentKey = (String, String);

pub struct Store {
    dir: PathBuf,
    enrollments: HashMap<EnrollmentKey, StoredEnrollment>,
    challenges: HashMap<String, Challenge>,
    diagram_ids: HashSet<DiagramId>,
}

impl Store {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        for sub in ["enrollments", "challenges", "diagrams"] {
            let p = dir.join(sub);
            fs::create_dir_all(&p).map_err(io_err(&p))?;
        }
        let enrollments = load_docs::<StoredEnrollment>(&dir.join("enrollments"))?
            .into_iter()
            .map(|e| ((e.user.clone(), e.label.clone()), e))
            .collect();
        let challenges = load_docs::<Challenge>(&dir.join("challenges"))?
            .into_iter()
            .map(|c| (c.id.clone(), c))
            .collect();
        let diagrams = dir.join("diagrams");
        let mut diagram_ids = HashSet::new();
        for entry in fs::read_dir(&diagrams).map_err(io_err(&diagrams))? {
            let entry = entry.map_err(io_err(&diagrams))?;
            if let Some(id) = entry
                .file_name()
                .to_str()
                .and_then(|n| DiagramId::from_hex(n).ok())
            {
                diagram_ids.insert(id);
            }
        }
        Ok(Store {
            dir,
            enrollments,
            challenges,
            diagram_ids,
        })
    }

    pub fn dir(&self) -> &FsPath {
        &self.dir
    }

    fn enrollment_file(&self, user: &str, label: &str) -> PathBuf {
        self.dir.join("enrollments").join(format!(
            "{}-{}.json",
            hex::encode(user),
            hex::encode(label)
        ))
    }

    fn challenge_file(&self, id: &str) -> PathBuf {
        self.dir.join("challenges").join(format!("{id}.json"))
    }

    pub fn enrollment(&self, user: &str, label: &str) -> Option<&StoredEnrollment> {
        self.enrollments.get(&(user.to_string(), label.to_string()))
    }

    pub fn enrollment_count(&self) -> usize {
        self.enrollments.len()
    }

    pub fn put_enrollment(&mut self, record: StoredEnrollment) -> Result<(), StoreError> {
        write_doc(&self.enrollment_file(&record.user, &record.label), &record)?;
        self.enrollments
            .insert((record.user.clone(), record.label.clone()), record);
        Ok(())
    }

    pub fn remove_enrollment(&mut self, user: &str, label: &str) -> Result<bool, StoreError> {
        let key = (user.to_string(), label.to_string());
        if !self.enrollments.contains_key(&key) {
            return Ok(false);
        }
        remove_file(&self.enrollment_file(user, label))?;
        self.enrollments.remove(&key);
        Ok(true)
    }

    pub fn challenge(&self, id: &str) -> Option<&Challenge> {
        self.challenges.get(id)
    }

    pub fn challenges(&self) -> impl Iterator<Item = &Challenge> {
        self.challenges.values()
    }

    pub fn put_challenge(&mut self, challenge: Challenge) -> Result<(), StoreError> {
        write_doc(&self.challenge_file(&challenge.id), &challenge)?;
        self.challenges.insert(challenge.id.clone(), challenge);
        Ok(())
    }

    pub fn remove_challenge(&mut self, id: &str) -> Result<(), StoreError> {
        if self.challenges.remove(id).is_some() {
            remove_file(&self.challenge_file(id))?;
        }
        Ok(())
    }

    pub fn has_diagram(&self, id: &DiagramId) -> bool {
        self.diagram_ids.contains(id)
    }

    pub fn diagram_count(&self) -> usize {
        self.diagram_ids.len()
    }

    /// Records an issued diagram id; false if it was already recorded.
    pub fn record_diagram(&mut self, id: DiagramId) -> Result<bool, StoreError> {
        if self.diagram_ids.contains(&id) {
            return Ok(false);
        }
        let path = self.dir.join("diagrams").join(id.to_hex());
        write_bytes(&path, b"")?;
        self.diagram_ids.insert(id);
        Ok(true)
    }
}

fn load_docs<T: DeserializeOwned>(dir: &FsPath) -> Result<Vec<T>, StoreError> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err(dir))? {
        let entry = entry.map_err(io_err(dir))?;
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let bytes = fs::read(&path).map_err(io_err(&path))?;
        let doc = serde_json::from_slice(&bytes).map_err(|e| StoreError::Corrupt {
            path: path.clone(),
            message: e.to_string(),
        })?;
        out.push(doc);
    }
    Ok(out)
}

fn write_doc<T: Serialize>(path: &FsPath, doc: &T) -> Result<(), StoreError> {
    let mut bytes = serde_json::to_vec_pretty(doc).expect("store documents always serialize");
    bytes.push(b'\n');
    write_bytes(path, &bytes)
}

fn write_bytes(path: &FsPath, bytes: &[u8]) -> Result<(), StoreError> {
    let tmp = path.with_extension("tmp");
    let result = (|| {
        let mut f = File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)?;
        sync_dir(path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io_err(path))
}

fn remove_file(path: &FsPath) -> Result<(), StoreError> {
    match fs::remove_file(path) {
        Ok(()) => sync_dir(path).map_err(io_err(path)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(()),
        Err(e) => Err(io_err(path)(e)),
    }
}

#[cfg(unix)]
fn sync_dir(path: &FsPath) -> io::Result<()> {
    match path.parent() {
        Some(dir) => File::open(dir)?.sync_all(),
        None => Ok(()),
    }
}

#[cfg(not(unix))]
fn sync_dir(_path: &FsPath) -> io::Result<()> {
    Ok(())
}
