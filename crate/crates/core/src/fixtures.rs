//! The worked 6x6 example: a hexadecimal-looking grid and the sixteen-step
//! path that reads `ac43a172e1cb879d` from it.
//!
//! The grid never uses the letter `0`, so over the full `hex` alphabet it is
//! not a covering diagram. [`example_diagram`] therefore uses the fifteen letters
//! that actually occur; [`example_hex_grid`] gives the same cells over `hex`.

use crate::alphabet::Alphabet;
use crate::diagram::{Diagram, Grid};
use crate::path::{make_path, Path};

pub const EXAMPLE_ROWS: [[&str; 6]; 6] = [
    ["a", "c", "e", "2", "3", "4"],
    ["a", "1", "6", "f", "7", "2"],
    ["d", "2", "a", "1", "9", "4"],
    ["f", "c", "f", "a", "9", "6"],
    ["e", "1", "b", "5", "b", "c"],
    ["8", "7", "3", "4", "d", "9"],
];

/// Cells of the example path, in visit order.
///
/// Each band of rows is read column 1, column 2, then the far end: rows 1, 5
/// and 6 take column 6 before column 5, row 2 takes column 5 before column 6.
pub const EXAMPLE_STEPS: [(usize, usize); 16] = [
    (1, 1),
    (1, 2),
    (1, 6),
    (1, 5),
    (2, 1),
    (2, 2),
    (2, 5),
    (2, 6),
    (5, 1),
    (5, 2),
    (5, 6),
    (5, 5),
    (6, 1),
    (6, 2),
    (6, 6),
    (6, 5),
];

pub const EXAMPLE_PASSWORD: &str = "ac43a172e1cb879d";

fn rows() -> Vec<Vec<&'static str>> {
    EXAMPLE_ROWS.iter().map(|r| r.to_vec()).collect()
}

/// The example grid over the letters `1`-`9`, `a`-`f`.
pub fn example_diagram() -> Diagram {
    let letters = "123456789abcdef".chars().map(String::from);
    let alphabet = Alphabet::from_letters(letters).expect("static alphabet");
    Diagram::from_tokens(alphabet, &rows()).expect("static grid covers its letters")
}

/// The example grid over the full `hex` alphabet (does not cover `0`).
pub fn example_hex_grid() -> Grid {
    let hex = Alphabet::builtin("hex").expect("builtin");
    Grid::from_tokens(hex, &rows()).expect("static grid")
}

pub fn example_path() -> Path {
    make_path(6, 6, &EXAMPLE_STEPS).expect("static path")
}
