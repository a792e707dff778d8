//! Letter grids ("diagrams") and their documents.
//!
//! A [`Grid`] is any rectangular matrix of letters over an [`Alphabet`]. A
//! [`Diagram`] is a grid in which every letter of the alphabet occurs at
//! least once; only diagrams are handed to users.
//!
//! # Text document
//!
//! ```text
//! pathword-diagram v1
//! alphabet: hex
//! rows: 6
//! cols: 6
//! id: 5f0c...(64 hex digits)
//! a c e 2 3 4
//! a 1 6 f 7 2
//! ...
//! ```
//!
//! The alphabet line is either `alphabet: <builtin>` or
//! `letters: <l1> <l2> ...` for an explicit alphabet. Grid rows follow the
//! header, one line per row, letters separated by single spaces. Lines end
//! in `\n`. The `id` line is optional on input; when present it must match.
//!
//! The id is the lowercase hex SHA-256 of the document with the `id:` line
//! removed, i.e. the bytes of the magic line, the alphabet line, `rows:`,
//! `cols:` and the grid rows, each followed by `\n`.
//!
//! # JSON document
//!
//! `{"alphabet": "hex" | [letters...], "rows": 6, "cols": 6,
//!   "cells": [["a","c",...], ...], "id": "<hex>", "created_at": "<RFC 3339>"}`.
//! `id` and `created_at` are optional on input.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::alphabet::{Alphabet, AlphabetError, AlphabetSpec};
use crate::path::Coordinate;
use crate::rng;

pub const TEXT_MAGIC: &str = "pathword-diagram v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error(
        "grid of {rows}x{cols} = {cells} cells cannot cover an alphabet of {alphabet_size} letters"
    )]
    TooSmall {
        rows: usize,
        cols: usize,
        cells: usize,
        alphabet_size: usize,
    },
    #[error("grid must have at least one row and one column")]
    Empty,
    #[error("ragged grid: row {row} has {found} cells, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("cell ({row},{col}) holds letter index {index}, alphabet has {size} letters")]
    BadIndex {
        row: usize,
        col: usize,
        index: usize,
        size: usize,
    },
    #[error("cell ({row},{col}) holds `{token}`, which is not in the alphabet")]
    UnknownLetter {
        row: usize,
        col: usize,
        token: String,
    },
    #[error("grid does not cover its alphabet; missing: {}", .0.join(" "))]
    NotCovered(Vec<String>),
    #[error("annotation at ({row},{col}) is outside the {rows}x{cols} grid")]
    AnnotationOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("diagram document: {0}")]
    Schema(String),
    #[error("diagram id mismatch: document says {stated}, contents hash to {computed}")]
    IdMismatch { stated: String, computed: String },
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
}

fn schema(msg: impl Into<String>) -> DiagramError {
    DiagramError::Schema(msg.into())
}

/// Digest of a diagram's canonical text encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramId([u8; 32]);

impl DiagramId {
    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, DiagramError> {
        let bytes = hex::decode(s.trim()).map_err(|e| schema(format!("bad id: {e}")))?;
        let bytes: [u8; 32] = bytes
            .try_into()
            .map_err(|_| schema("bad id: expected 64 hex digits"))?;
        Ok(DiagramId(bytes))
    }
}

impl fmt::Display for DiagramId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for DiagramId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagramId({})", &self.to_hex()[..16])
    }
}

impl Serialize for DiagramId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for DiagramId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        DiagramId::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub covered: bool,
    pub missing_letters: Vec<String>,
    /// Occurrence count of every alphabet letter, zero counts included.
    pub letter_frequencies: BTreeMap<String, usize>,
}

/// A rows x cols matrix of letters, not necessarily covering its alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct Grid {
    alphabet: Alphabet,
    rows: usize,
    cols: usize,
    /// Row-major letter indices.
    cells: Vec<usize>,
}

impl Grid {
    /// Builds a grid from rows of letter indices.
    pub fn new(alphabet: Alphabet, rows: &[Vec<usize>]) -> Result<Self, DiagramError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(DiagramError::Empty);
        }
        let mut cells = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(DiagramError::Ragged {
                    row: r + 1,
                    found: row.len(),
                    expected: cols,
                });
            }
            cells.extend_from_slice(row);
        }
        Self::from_row_major(alphabet, rows.len(), cols, cells)
    }

    /// Builds a grid from rows of letter tokens.
    pub fn from_tokens<S: AsRef<str>>(
        alphabet: Alphabet,
        rows: &[Vec<S>],
    ) -> Result<Self, DiagramError> {
        let mut indexed = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (c, token) in row.iter().enumerate() {
                let token = token.as_ref();
                let index =
                    alphabet
                        .index_of(token)
                        .ok_or_else(|| DiagramError::UnknownLetter {
                            row: r + 1,
                            col: c + 1,
                            token: token.to_string(),
                        })?;
                out.push(index);
            }
            indexed.push(out);
        }
        Self::new(alphabet, &indexed)
    }

    pub fn from_row_major(
        alphabet: Alphabet,
        rows: usize,
        cols: usize,
        cells: Vec<usize>,
    ) -> Result<Self, DiagramError> {
        if rows == 0 || cols == 0 {
            return Err(DiagramError::Empty);
        }
        if cells.len() != rows * cols {
            return Err(schema(format!(
                "expected {} cells for {rows}x{cols}, got {}",
                rows * cols,
                cells.len()
            )));
        }
        if let Some((i, &index)) = cells
            .iter()
            .enumerate()
            .find(|(_, &x)| x >= alphabet.size())
        {
            return Err(DiagramError::BadIndex {
                row: i / cols + 1,
                col: i % cols + 1,
                index,
                size: alphabet.size(),
            });
        }
        Ok(Grid {
            alphabet,
            rows,
            cols,
            cells,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Row-major letter indices.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn contains(&self, at: Coordinate) -> bool {
        (1..=self.rows).contains(&at.row) && (1..=self.cols).contains(&at.col)
    }

    /// Letter index at a 1-based coordinate.
    pub fn index_at(&self, at: Coordinate) -> Option<usize> {
        self.contains(at)
            .then(|| self.cells[(at.row - 1) * self.cols + (at.col - 1)])
    }

    pub fn letter_at(&self, at: Coordinate) -> Option<&str> {
        self.index_at(at).and_then(|i| self.alphabet.letter(i))
    }

    pub fn coverage(&self) -> CoverageReport {
        let mut counts = vec![0usize; self.alphabet.size()];
        for &c in &self.cells {
            counts[c] += 1;
        }
        let missing_letters: Vec<String> = counts
            .iter()
            .zip(self.alphabet.letters())
            .filter(|(&n, _)| n == 0)
            .map(|(_, l)| l.clone())
            .collect();
        let letter_frequencies = self
            .alphabet
            .letters()
            .iter()
            .cloned()
            .zip(counts)
            .collect();
        CoverageReport {
            covered: missing_letters.is_empty(),
            missing_letters,
            letter_frequencies,
        }
    }

    /// Number of distinct letters present (the size of A').
    pub fn distinct_letters(&self) -> usize {
        let mut seen = vec![false; self.alphabet.size()];
        self.cells.iter().for_each(|&c| seen[c] = true);
        seen.into_iter().filter(|&s| s).count()
    }

    /// Letter indices, one vector per row.
    pub fn index_rows(&self) -> Vec<Vec<usize>> {
        self.rows_iter().map(<[usize]>::to_vec).collect()
    }

    fn rows_iter(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.cols)
    }

    fn canonical_body(&self) -> String {
        let mut out = String::new();
        out.push_str(TEXT_MAGIC);
        out.push('\n');
        match self.alphabet.builtin_name() {
            Some(name) => out.push_str(&format!("alphabet: {name}\n")),
            None => out.push_str(&format!("letters: {}\n", self.alphabet.letters().join(" "))),
        }
        out.push_str(&format!("rows: {}\ncols: {}\n", self.rows, self.cols));
        out
    }

    fn grid_lines(&self) -> String {
        let mut out = String::new();
        for row in self.rows_iter() {
            let tokens: Vec<&str> = row
                .iter()
                .map(|&i| self.alphabet.letter(i).unwrap_or("?"))
                .collect();
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
        out
    }

    fn digest(&self) -> DiagramId {
        let mut hasher = Sha256::new();
        hasher.update(self.canonical_body().as_bytes());
        hasher.update(self.grid_lines().as_bytes());
        DiagramId(hasher.finalize().into())
    }

    /// Fixed-width table, optionally marking cells with visit ordinals as `letter^k`.
    pub fn render(&self, annotations: &HashMap<Coordinate, usize>) -> Result<String, DiagramError> {
        for at in annotations.keys() {
            if !self.contains(*at) {
                return Err(DiagramError::AnnotationOutOfBounds {
                    row: at.row,
                    col: at.col,
                    rows: self.rows,
                    cols: self.cols,
                });
            }
        }
        let labels: Vec<String> = (0..self.cells.len())
            .map(|i| {
                let at = Coordinate::new(i / self.cols + 1, i % self.cols + 1);
                let letter = self.alphabet.letter(self.cells[i]).unwrap_or("?");
                match annotations.get(&at) {
                    Some(k) => format!("{letter}^{k}"),
                    None => letter.to_string(),
                }
            })
            .collect();
        let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
        let rule = format!(
            "+{}\n",
            format!("{}+", "-".repeat(width + 2)).repeat(self.cols)
        );
        let mut out = rule.clone();
        for row in labels.chunks(self.cols) {
            out.push('|');
            for label in row {
                out.push_str(&format!(" {label:<width$} |"));
            }
            out.push('\n');
            out.push_str(&rule);
        }
        Ok(out)
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grid({:?}, {}x{})", self.alphabet, self.rows, self.cols)
    }
}

/// A grid whose cells cover every letter of its alphabet.
#[derive(Clone)]
pub struct Diagram {
    grid: Grid,
    id: DiagramId,
    created_at: Option<DateTime<Utc>>,
}

impl Diagram {
    pub fn from_grid(grid: Grid) -> Result<Self, DiagramError> {
        let report = grid.coverage();
        if !report.covered {
            return Err(DiagramError::NotCovered(report.missing_letters));
        }
        let id = grid.digest();
        Ok(Diagram {
            grid,
            id,
            created_at: None,
        })
    }

    pub fn new(alphabet: Alphabet, rows: &[Vec<usize>]) -> Result<Self, DiagramError> {
        Self::from_grid(Grid::new(alphabet, rows)?)
    }

    pub fn from_tokens<S: AsRef<str>>(
        alphabet: Alphabet,
        rows: &[Vec<S>],
    ) -> Result<Self, DiagramError> {
        Self::from_grid(Grid::from_tokens(alphabet, rows)?)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn id(&self) -> DiagramId {
        self.id
    }

    pub fn created_at(&self) -> Option<DateTime<Utc>> {
        self.created_at
    }

    pub fn with_created_at(mut self, at: DateTime<Utc>) -> Self {
        self.created_at = Some(at);
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.grid.alphabet()
    }

    pub fn rows(&self) -> usize {
        self.grid.rows()
    }

    pub fn cols(&self) -> usize {
        self.grid.cols()
    }

    pub fn letter_at(&self, at: Coordinate) -> Option<&str> {
        self.grid.letter_at(at)
    }

    pub fn coverage(&self) -> CoverageReport {
        self.grid.coverage()
    }

    pub fn render(&self, annotations: &HashMap<Coordinate, usize>) -> Result<String, DiagramError> {
        self.grid.render(annotations)
    }

    pub fn to_text(&self) -> String {
        let mut out = self.grid.canonical_body();
        out.push_str(&format!("id: {}\n", self.id));
        out.push_str(&self.grid.grid_lines());
        out
    }

    pub fn from_text(text: &str) -> Result<Self, DiagramError> {
        let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
        match lines.next() {
            Some(l) if l.trim() == TEXT_MAGIC => {}
            _ => return Err(schema(format!("first line must be `{TEXT_MAGIC}`"))),
        }
        let mut alphabet = None;
        let mut rows = None;
        let mut cols = None;
        let mut stated_id = None;
        let mut grid_rows: Vec<Vec<&str>> = Vec::new();
        for line in lines.by_ref() {
            if line.trim().is_empty() {
                continue;
            }
            let header = line.split_once(':').filter(|(k, _)| {
                matches!(k.trim(), "alphabet" | "letters" | "rows" | "cols" | "id")
            });
            match header {
                Some((key, value)) if grid_rows.is_empty() => {
                    let value = value.trim();
                    match key.trim() {
                        "alphabet" => {
                            alphabet = Some(Alphabet::builtin(value)?);
                        }
                        "letters" => {
                            alphabet = Some(Alphabet::from_letters(value.split_whitespace())?);
                        }
                        "rows" => rows = Some(parse_dim("rows", value)?),
                        "cols" => cols = Some(parse_dim("cols", value)?),
                        _ => stated_id = Some(DiagramId::from_hex(value)?),
                    }
                }
                _ => grid_rows.push(line.split_whitespace().collect()),
            }
        }
        let alphabet = alphabet.ok_or_else(|| schema("missing `alphabet:` or `letters:` line"))?;
        let rows = rows.ok_or_else(|| schema("missing `rows:` line"))?;
        let cols = cols.ok_or_else(|| schema("missing `cols:` line"))?;
        if grid_rows.len() != rows {
            return Err(schema(format!(
                "header declares {rows} rows, found {}",
                grid_rows.len()
            )));
        }
        if let Some((r, row)) = grid_rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(schema(format!(
                "row {} has {} letters, header declares {cols}",
                r + 1,
                row.len()
            )));
        }
        let diagram = Diagram::from_tokens(alphabet, &grid_rows)?;
        diagram.check_id(stated_id)?;
        Ok(diagram)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.document()).expect("diagram documents always serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, DiagramError> {
        let doc: DiagramDocument =
            serde_json::from_value(value.clone()).map_err(|e| schema(e.to_string()))?;
        Diagram::try_from(doc)
    }

    /// Decodes either document form, picking JSON when the text starts with `{`.
    pub fn decode(text: &str) -> Result<Self, DiagramError> {
        if text.trim_start().starts_with('{') {
            let value: serde_json::Value =
                serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
            Self::from_json(&value)
        } else {
            Self::from_text(text)
        }
    }

    fn document(&self) -> DiagramDocument {
        let cells = self
            .grid
            .rows_iter()
            .map(|row| {
                row.iter()
                    .map(|&i| self.alphabet().letter(i).unwrap_or("?").to_string())
                    .collect()
            })
            .collect();
        DiagramDocument {
            alphabet: self.alphabet().spec(),
            rows: self.rows(),
            cols: self.cols(),
            cells,
            id: Some(self.id.to_hex()),
            created_at: self.created_at,
        }
    }

    fn check_id(&self, stated: Option<DiagramId>) -> Result<(), DiagramError> {
        match stated {
            Some(stated) if stated != self.id => Err(DiagramError::IdMismatch {
                stated: stated.to_hex(),
                computed: self.id.to_hex(),
            }),
            _ => Ok(()),
        }
    }
}

impl AsRef<Grid> for Grid {
    fn as_ref(&self) -> &Grid {
        self
    }
}

impl AsRef<Grid> for Diagram {
    fn as_ref(&self) -> &Grid {
        &self.grid
    }
}

/// Structural equality: alphabet, shape and cells. The creation time is not compared.
impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid
    }
}

impl Eq for Diagram {}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Diagram")
            .field("grid", &self.grid)
            .field("id", &self.id)
            .finish()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DiagramDocument {
    alphabet: AlphabetSpec,
    rows: usize,
    cols: usize,
    cells: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    created_at: Option<DateTime<Utc>>,
}

impl TryFrom<DiagramDocument> for Diagram {
    type Error = DiagramError;

    fn try_from(doc: DiagramDocument) -> Result<Self, DiagramError> {
        let alphabet = Alphabet::new(&doc.alphabet)?;
        if doc.cells.len() != doc.rows {
            return Err(schema(format!(
                "declares {} rows, found {}",
                doc.rows,
                doc.cells.len()
            )));
        }
        if let Some((r, row)) = doc
            .cells
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != doc.cols)
        {
            return Err(schema(format!(
                "row {} has {} letters, declares {}",
                r + 1,
                row.len(),
                doc.cols
            )));
        }
        let mut diagram = Diagram::from_tokens(alphabet, &doc.cells)?;
        let stated = doc.id.as_deref().map(DiagramId::from_hex).transpose()?;
        diagram.check_id(stated)?;
        diagram.created_at = doc.created_at;
        Ok(diagram)
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.document().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = DiagramDocument::deserialize(d)?;
        Diagram::try_from(doc).map_err(serde::de::Error::custom)
    }
}

fn parse_dim(key: &str, value: &str) -> Result<usize, DiagramError> {
    value
        .parse::<usize>()
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(|| schema(format!("`{key}` must be a positive integer, got `{value}`")))
}

/// Generates a random diagram covering `alphabet`.
///
/// Every letter is placed once, the remaining cells are filled uniformly over
/// the alphabet, and the whole grid is then shuffled. With a seed the result
/// is a pure function of the arguments; without one the generator is keyed
/// from the operating system.
pub fn generate_diagram(
    alphabet: &Alphabet,
    rows: usize,
    cols: usize,
    seed: Option<u64>,
) -> Result<Diagram, DiagramError> {
    let cells = rows * cols;
    if rows == 0 || cols == 0 {
        return Err(DiagramError::Empty);
    }
    if cells < alphabet.size() {
        return Err(DiagramError::TooSmall {
            rows,
            cols,
            cells,
            alphabet_size: alphabet.size(),
        });
    }
    let mut rng = rng::generator(seed);
    let mut letters: Vec<usize> = (0..alphabet.size()).collect();
    letters.extend((alphabet.size()..cells).map(|_| rng::below(&mut rng, alphabet.size())));
    rng::shuffle(&mut rng, &mut letters);
    let grid = Grid::from_row_major(alphabet.clone(), rows, cols, letters)?;
    let diagram = Diagram::from_grid(grid)?;
    Ok(match seed {
        Some(_) => diagram,
        None => diagram.with_created_at(Utc::now()),
    })
}

/// Coverage report for a structurally valid grid given as rows of letter indices.
pub fn validate_diagram(
    alphabet: &Alphabet,
    rows: &[Vec<usize>],
) -> Result<CoverageReport, DiagramError> {
    Grid::new(alphabet.clone(), rows).map(|g| g.coverage())
}

pub fn render_diagram(
    diagram: &Diagram,
    annotations: &HashMap<Coordinate, usize>,
) -> Result<String, DiagramError> {
    diagram.render(annotations)
}

pub fn encode_diagram(diagram: &Diagram) -> String {
    diagram.to_text()
}

pub fn decode_diagram(text: &str) -> Result<Diagram, DiagramError> {
    Diagram::decode(text)
}
