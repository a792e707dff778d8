//! Alphabets: ordered sets of equal-length letter tokens.
//!
//! A letter may span several characters (the `digit-pairs` alphabet uses
//! `"00"` through `"99"`). Every letter of one alphabet has the same length in
//! characters, so a password read off a diagram can always be split back into
//! its letters.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Built-in alphabet names accepted by [`Alphabet::builtin`].
pub const BUILTIN_NAMES: &[&str] = &["hex", "digit-pairs", "binary"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("unknown built-in alphabet `{0}` (expected one of: hex, digit-pairs, binary)")]
    UnknownBuiltin(String),
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("letters have mixed token lengths ({first} and {other})")]
    MixedTokenLengths { first: usize, other: usize },
    #[error("alphabet needs at least 2 letters, got {0}")]
    TooSmall(usize),
    #[error("invalid letter {0:?}: letters must be non-empty and contain no whitespace or control characters")]
    InvalidLetter(String),
}

/// How an alphabet is named in documents: a built-in name or an explicit letter list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphabetSpec {
    Builtin(String),
    Letters(Vec<String>),
}

impl AlphabetSpec {
    /// Parses the command-line form: a built-in name, or a comma-separated letter list.
    pub fn parse(s: &str) -> AlphabetSpec {
        if s.contains(',') {
            AlphabetSpec::Letters(s.split(',').map(|l| l.trim().to_string()).collect())
        } else {
            AlphabetSpec::Builtin(s.trim().to_string())
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    builtin: Option<&'static str>,
    letters: Vec<String>,
    token_len: usize,
    case_folds: bool,
}

impl Alphabet {
    pub fn new(spec: &AlphabetSpec) -> Result<Self, AlphabetError> {
        match spec {
            AlphabetSpec::Builtin(name) => Self::builtin(name),
            AlphabetSpec::Letters(letters) => Self::from_letters(letters.iter().cloned()),
        }
    }

    pub fn builtin(name: &str) -> Result<Self, AlphabetError> {
        let (name, letters): (&'static str, Vec<String>) = match name {
            "hex" => ("hex", (0..16u32).map(|d| format!("{d:x}")).collect()),
            "digit-pairs" => (
                "digit-pairs",
                (0..100u32).map(|d| format!("{d:02}")).collect(),
            ),
            "binary" => ("binary", vec!["0".into(), "1".into()]),
            other => return Err(AlphabetError::UnknownBuiltin(other.to_string())),
        };
        let mut alphabet = Self::from_letters(letters)?;
        alphabet.builtin = Some(name);
        Ok(alphabet)
    }

    /// Builds an alphabet from explicit letters, keeping their order.
    pub fn from_letters<I, S>(letters: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        let mut seen = HashSet::with_capacity(letters.len());
        let mut token_len = None;
        for letter in &letters {
            if letter.is_empty() || letter.chars().any(|c| c.is_whitespace() || c.is_control()) {
                return Err(AlphabetError::InvalidLetter(letter.clone()));
            }
            let len = letter.chars().count();
            match token_len {
                None => token_len = Some(len),
                Some(first) if first != len => {
                    return Err(AlphabetError::MixedTokenLengths { first, other: len })
                }
                _ => {}
            }
            if !seen.insert(letter.as_str()) {
                return Err(AlphabetError::DuplicateLetter(letter.clone()));
            }
        }
        if letters.len() < 2 {
            return Err(AlphabetError::TooSmall(letters.len()));
        }
        let folded: HashSet<String> = letters.iter().map(|l| l.to_lowercase()).collect();
        let case_folds = folded.len() == letters.len();
        Ok(Alphabet {
            builtin: None,
            token_len: token_len.unwrap_or(0),
            letters,
            case_folds,
        })
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter(&self, index: usize) -> Option<&str> {
        self.letters.get(index).map(String::as_str)
    }

    pub fn index_of(&self, letter: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == letter)
    }

    /// Token length of every letter, in characters.
    pub fn token_len(&self) -> usize {
        self.token_len
    }

    pub fn builtin_name(&self) -> Option<&'static str> {
        self.builtin
    }

    pub fn spec(&self) -> AlphabetSpec {
        match self.builtin {
            Some(name) => AlphabetSpec::Builtin(name.to_string()),
            None => AlphabetSpec::Letters(self.letters.clone()),
        }
    }

    /// Canonical form of a typed password: whitespace removed, and lowercased
    /// when no two letters of the alphabet differ only by case.
    pub fn canonicalize(&self, text: &str) -> String {
        let stripped: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if self.case_folds {
            stripped.to_lowercase()
        } else {
            stripped
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.builtin {
            Some(name) => write!(f, "Alphabet({name})"),
            None => f.debug_tuple("Alphabet").field(&self.letters).finish(),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.builtin {
            Some(name) => f.write_str(name),
            None => f.write_str(&self.letters.join(",")),
        }
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.spec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let spec = AlphabetSpec::deserialize(deserializer)?;
        Alphabet::new(&spec).map_err(serde::de::Error::custom)
    }
}

/// `make_alphabet`: builds an alphabet from a built-in name or explicit letters.
pub fn make_alphabet(spec: &AlphabetSpec) -> Result<Alphabet, AlphabetError> {
    Alphabet::new(spec)
}
