//! At-rest encryption of enrolled paths.
//!
//! The service must re-read each user's path to check a password against a
//! fresh diagram, so paths cannot be hashed. They are sealed with
//! XChaCha20-Poly1305 under a 256-bit master key instead. The associated data
//! binds each ciphertext to its `(user, label)` pair.

use std::fmt;

use chacha20poly1305::aead::{Aead, KeyInit, Payload};
use chacha20poly1305::{Key, XChaCha20Poly1305, XNonce};
use rand::TryRngCore;
use serde::{Deserialize, Serialize};

use crate::path::Path;

pub const MASTER_KEY_ENV: &str = "PATHWORD_MASTER_KEY";

const AAD_DOMAIN: &[u8] = b"pathword/enrollment/v1";

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SealError {
    #[error("master key must be 64 hex digits")]
    BadKey,
    #[error("environment variable {MASTER_KEY_ENV} is not set")]
    MissingKey,
    #[error("sealed path failed authentication (wrong master key or tampered store)")]
    Open,
    #[error("sealed path is not a valid path document")]
    Corrupt,
}

#[derive(Clone)]
pub struct MasterKey([u8; 32]);

impl MasterKey {
    pub fn from_hex(s: &str) -> Result<Self, SealError> {
        let bytes = hex::decode(s.trim()).map_err(|_| SealError::BadKey)?;
        bytes
            .try_into()
            .map(MasterKey)
            .map_err(|_| SealError::BadKey)
    }

    pub fn from_env() -> Result<Self, SealError> {
        let value = std::env::var(MASTER_KEY_ENV).map_err(|_| SealError::MissingKey)?;
        Self::from_hex(&value)
    }

    pub fn generate() -> Self {
        let mut key = [0u8; 32];
        rand::rngs::OsRng
            .try_fill_bytes(&mut key)
            .expect("operating system entropy source unavailable");
        MasterKey(key)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    fn cipher(&self) -> XChaCha20Poly1305 {
        XChaCha20Poly1305::new(Key::from_slice(&self.0))
    }
}

impl fmt::Debug for MasterKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("MasterKey(..)")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SealedPath {
    /// 24-byte nonce, hex.
    pub nonce: String,
    /// Ciphertext and tag, hex.
    pub ciphertext: String,
}

fn aad(user: &str, label: &str) -> Vec<u8> {
    let mut out = AAD_DOMAIN.to_vec();
    for part in [user, label] {
        out.push(0);
        out.extend_from_slice(part.as_bytes());
    }
    out
}

pub fn seal(key: &MasterKey, user: &str, label: &str, path: &Path) -> SealedPath {
    let mut nonce = [0u8; 24];
    rand::rngs::OsRng
        .try_fill_bytes(&mut nonce)
        .expect("operating system entropy source unavailable");
    let plaintext = serde_json::to_vec(path).expect("paths always serialize");
    let aad = aad(user, label);
    let ciphertext = key
        .cipher()
        .encrypt(
            XNonce::from_slice(&nonce),
            Payload {
                msg: &plaintext,
                aad: &aad,
            },
        )
        .expect("encryption of in-memory data cannot fail");
    SealedPath {
        nonce: hex::encode(nonce),
        ciphertext: hex::encode(ciphertext),
    }
}

pub fn open(
    key: &MasterKey,
    user: &str,
    label: &str,
    sealed: &SealedPath,
) -> Result<Path, SealError> {
    let nonce = hex::decode(&sealed.nonce).map_err(|_| SealError::Corrupt)?;
    if nonce.len() != 24 {
        return Err(SealError::Corrupt);
    }
    let ciphertext = hex::decode(&sealed.ciphertext).map_err(|_| SealError::Corrupt)?;
    let aad = aad(user, label);
    let plaintext = key
        .cipher()
        .decrypt(
            XNonce::from_slice(&nonce),
            Payload {
                msg: &ciphertext,
                aad: &aad,
            },
        )
        .map_err(|_| SealError::Open)?;
    serde_json::from_slice(&plaintext).map_err(|_| SealError::Corrupt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_and_binding() {
        let key = MasterKey::generate();
        let path = fixtures::example_path();
        let sealed = seal(&key, "alice", "high", &path);
        assert_eq!(open(&key, "alice", "high", &sealed).unwrap(), path);
        assert_eq!(open(&key, "alice", "low", &sealed), Err(SealError::Open));
        assert_eq!(
            open(&MasterKey::generate(), "alice", "high", &sealed),
            Err(SealError::Open)
        );
        assert!(!sealed.ciphertext.contains(&hex::encode("steps")));
    }

    #[test]
    fn key_parsing() {
        let key = MasterKey::generate();
        assert_eq!(MasterKey::from_hex(&key.to_hex()).unwrap().0, key.0);
        assert_eq!(MasterKey::from_hex("abcd").unwrap_err(), SealError::BadKey);
        assert_eq!(format!("{key:?}"), "MasterKey(..)");
    }
}
