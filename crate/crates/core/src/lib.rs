//! Pathwords: passwords read off a random letter grid along a secret path.
//!
//! A user remembers a path, an ordered walk over grid cells that never
//! visits a cell twice. Given any grid of letters (a *diagram*), the path reads
//! out a password. A service can hand out a fresh diagram for every login, so
//! the password changes on every access while the user's secret stays the same.
//!
//! ```
//! use pathword::{derive, fixtures};
//!
//! let password = derive(&fixtures::example_path(), &fixtures::example_diagram()).unwrap();
//! assert_eq!(password.text(), "ac43a172e1cb879d");
//! ```
//!
//! Modules:
//! - [`alphabet`], [`diagram`]: letter sets and the grids built from them.
//! - [`path`]: secret paths and password derivation.
//! - [`strength`], [`oracle`]: exact counting, bounds, adequacy and a brute-force check.
//! - [`service`]: the challenge-response service, its store, HTTP API and client.
//! - [`cli`]: the `pathword` command line.

pub mod alphabet;
pub mod bigfmt;
pub mod cli;
pub mod diagram;
pub mod fixtures;
pub mod oracle;
pub mod path;
mod rng;
pub mod service;
pub mod strength;

pub use alphabet::{make_alphabet, Alphabet, AlphabetError, AlphabetSpec};
pub use diagram::{
    decode_diagram, encode_diagram, generate_diagram, render_diagram, validate_diagram,
    CoverageReport, Diagram, DiagramError, DiagramId, Grid,
};
pub use oracle::{enumerate_oracle, OracleReport};
pub use path::{
    derive, make_path, random_path, render_path_overlay, Coordinate, Password, Path, PathError,
};
pub use strength::{
    adequacy, analyze, bits_of_strength, compensation_length, entropy_comparison,
    injective_sequence_count, ratio, total_strings, AttackerModel, StrengthError, StrengthReport,
};
