//! Secret paths and the passwords they read off a grid.
//!
//! A [`Path`] is an ordered, non-repeating sequence of 1-based cells for a
//! fixed grid shape. Cells need not be adjacent. Reading the letters under
//! the path, in order, yields the [`Password`].
//!
//! Text form: `6x6 : (1,1) (1,2) (1,6)`. Whitespace around `x`, `:` and inside
//! the parentheses is ignored on input. JSON form:
//! `{"rows": 6, "cols": 6, "steps": [[1,1],[1,2],[1,6]]}`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, Grid};
use crate::rng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("path is empty")]
    Empty,
    #[error("grid dimensions must be positive, got {rows}x{cols}")]
    BadDims { rows: usize, cols: usize },
    #[error("step {step} at ({row},{col}) is outside the {rows}x{cols} grid")]
    OutOfBounds {
        step: usize,
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("step {step} revisits ({row},{col})")]
    Repeated { step: usize, row: usize, col: usize },
    #[error("path length {n} out of range 1..={max}")]
    LengthOutOfRange { n: usize, max: usize },
    #[error("path is for a {path_rows}x{path_cols} grid, diagram is {rows}x{cols}")]
    DimensionMismatch {
        path_rows: usize,
        path_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("malformed path text: {0}")]
    Syntax(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Coordinate {
    pub row: usize,
    pub col: usize,
}

impl Coordinate {
    pub const fn new(row: usize, col: usize) -> Self {
        Coordinate { row, col }
    }
}

impl From<(usize, usize)> for Coordinate {
    fn from((row, col): (usize, usize)) -> Self {
        Coordinate { row, col }
    }
}

impl From<Coordinate> for (usize, usize) {
    fn from(c: Coordinate) -> Self {
        (c.row, c.col)
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PathDocument", into = "PathDocument")]
pub struct Path {
    rows: usize,
    cols: usize,
    steps: Vec<Coordinate>,
}

#[derive(Serialize, Deserialize)]
struct PathDocument {
    rows: usize,
    cols: usize,
    steps: Vec<Coordinate>,
}

impl TryFrom<PathDocument> for Path {
    type Error = PathError;

    fn try_from(doc: PathDocument) -> Result<Self, PathError> {
        Path::new(doc.rows, doc.cols, doc.steps)
    }
}

impl From<Path> for PathDocument {
    fn from(p: Path) -> Self {
        PathDocument {
            rows: p.rows,
            cols: p.cols,
            steps: p.steps,
        }
    }
}

impl Path {
    pub fn new(rows: usize, cols: usize, steps: Vec<Coordinate>) -> Result<Self, PathError> {
        if rows == 0 || cols == 0 {
            return Err(PathError::BadDims { rows, cols });
        }
        if steps.is_empty() {
            return Err(PathError::Empty);
        }
        let mut seen = HashSet::with_capacity(steps.len());
        for (i, c) in steps.iter().enumerate() {
            if !(1..=rows).contains(&c.row) || !(1..=cols).contains(&c.col) {
                return Err(PathError::OutOfBounds {
                    step: i + 1,
                    row: c.row,
                    col: c.col,
                    rows,
                    cols,
                });
            }
            if !seen.insert(*c) {
                return Err(PathError::Repeated {
                    step: i + 1,
                    row: c.row,
                    col: c.col,
                });
            }
        }
        Ok(Path { rows, cols, steps })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn steps(&self) -> &[Coordinate] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Always false: a path has at least one step.
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Visit ordinals (1-based) keyed by cell.
    pub fn ordinals(&self) -> HashMap<Coordinate, usize> {
        self.steps
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, i + 1))
            .collect()
    }

    fn check_dims(&self, grid: &Grid) -> Result<(), PathError> {
        if (self.rows, self.cols) != (grid.rows(), grid.cols()) {
            return Err(PathError::DimensionMismatch {
                path_rows: self.rows,
                path_cols: self.cols,
                rows: grid.rows(),
                cols: grid.cols(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} :", self.rows, self.cols)?;
        for step in &self.steps {
            write!(f, " {step}")?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, PathError> {
        let syntax = |m: &str| PathError::Syntax(m.to_string());
        let (dims, rest) = s
            .split_once(':')
            .ok_or_else(|| syntax("expected `ROWSxCOLS : (r,c) ...`"))?;
        let (rows, cols) = dims
            .trim()
            .split_once(['x', 'X'])
            .ok_or_else(|| syntax("dimensions must look like `6x6`"))?;
        let number = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| PathError::Syntax(format!("`{}` is not a number", t.trim())))
        };
        let (rows, cols) = (number(rows)?, number(cols)?);

        let mut steps = Vec::new();
        let mut rest = rest.trim_start();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| syntax("coordinates must look like `(row,col)`"))?;
            let (inner, tail) = body.split_once(')').ok_or_else(|| syntax("unclosed `(`"))?;
            let (r, c) = inner
                .split_once(',')
                .ok_or_else(|| syntax("coordinates must look like `(row,col)`"))?;
            steps.push(Coordinate::new(number(r)?, number(c)?));
            rest = tail.trim_start();
        }
        Path::new(rows, cols, steps)
    }
}

/// Letters read off a grid, in path order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Password {
    letters: Vec<String>,
    text: String,
}

impl Password {
    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Password {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub fn make_path(rows: usize, cols: usize, coords: &[(usize, usize)]) -> Result<Path, PathError> {
    Path::new(
        rows,
        cols,
        coords.iter().copied().map(Coordinate::from).collect(),
    )
}

/// Reads the password `path` selects from `grid`.
///
/// Accepts a [`Diagram`] or a bare [`Grid`]; coverage plays no part in reading.
pub fn derive<G: AsRef<Grid> + ?Sized>(path: &Path, grid: &G) -> Result<Password, PathError> {
    let grid = grid.as_ref();
    path.check_dims(grid)?;
    let letters: Vec<String> = path
        .steps
        .iter()
        .map(|&at| {
            grid.letter_at(at)
                .expect("validated path lies inside the grid")
                .to_string()
        })
        .collect();
    let text = letters.concat();
    Ok(Password { letters, text })
}

/// A uniformly random injective path of `n` cells.
pub fn random_path(
    rows: usize,
    cols: usize,
    n: usize,
    seed: Option<u64>,
) -> Result<Path, PathError> {
    if rows == 0 || cols == 0 {
        return Err(PathError::BadDims { rows, cols });
    }
    let cells = rows * cols;
    if n == 0 || n > cells {
        return Err(PathError::LengthOutOfRange { n, max: cells });
    }
    let mut rng = rng::generator(seed);
    let steps = rng::sample_distinct(&mut rng, cells, n)
        .into_iter()
        .map(|i| Coordinate::new(i / cols + 1, i % cols + 1))
        .collect();
    Path::new(rows, cols, steps)
}

/// The diagram table with each visited cell marked by its visit ordinal.
pub fn render_path_overlay(diagram: &Diagram, path: &Path) -> Result<String, PathError> {
    path.check_dims(diagram.grid())?;
    Ok(diagram.render(&path.ordinals())?)
}
