//! Exhaustive enumeration of every non-repeating path of a given length on a
//! small grid, counting sequences and distinct passwords by brute force.
//!
//! The counts here come from walking the search tree, never from the closed
//! forms in [`crate::strength`], so the two can be checked against each other.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bigfmt;
use crate::diagram::Grid;
use crate::strength::{injective_sequence_count, StrengthError};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n: usize,
    pub cells: usize,
    /// Number of injective cell sequences of length `n`, by enumeration.
    #[serde(with = "bigfmt::biguint")]
    pub sequence_count: BigUint,
    /// Number of distinct passwords those sequences read.
    #[serde(with = "bigfmt::biguint")]
    pub distinct_passwords: BigUint,
    /// Distinct letters present in the grid, |A'|.
    pub present_letters: usize,
    pub alphabet_covered: bool,
    /// `prod_{j=1..n} (|A'| - (j-1))`.
    #[serde(with = "bigfmt::biguint")]
    pub lower_bound: BigUint,
}

impl OracleReport {
    /// Whether the enumerated password count respects the falling-factorial bound.
    pub fn bound_holds(&self) -> bool {
        self.distinct_passwords >= self.lower_bound
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<20}{}", "length", self.n)?;
        writeln!(f, "{:<20}{}", "cells", self.cells)?;
        writeln!(f, "{:<20}{}", "sequences", self.sequence_count)?;
        writeln!(f, "{:<20}{}", "distinct passwords", self.distinct_passwords)?;
        writeln!(f, "{:<20}{}", "letters present", self.present_letters)?;
        writeln!(f, "{:<20}{}", "alphabet covered", self.alphabet_covered)?;
        writeln!(f, "{:<20}{}", "lower bound", self.lower_bound)
    }
}

/// Password keys: a mixed-radix number when it fits in 128 bits, else the index list.
enum Seen {
    Packed(HashSet<u128>),
    Listed(HashSet<Vec<u32>>),
}

impl Seen {
    fn insert(&mut self, radix: u128, letters: &[usize]) {
        match self {
            Seen::Packed(set) => {
                let key = letters
                    .iter()
                    .fold(0u128, |acc, &l| acc * radix + l as u128);
                set.insert(key);
            }
            Seen::Listed(set) => {
                set.insert(letters.iter().map(|&l| l as u32).collect());
            }
        }
    }

    fn len(&self) -> usize {
        match self {
            Seen::Packed(set) => set.len(),
            Seen::Listed(set) => set.len(),
        }
    }
}

/// Enumerates all injective length-`n` paths on `grid`.
///
/// Fails before enumerating if the number of sequences exceeds `budget`.
pub fn enumerate_oracle(grid: &Grid, n: usize, budget: u64) -> Result<OracleReport, StrengthError> {
    let cells = grid.cell_count();
    let needed = injective_sequence_count(cells, n);
    if needed > BigUint::from(budget) {
        return Err(StrengthError::BudgetExceeded { needed, budget });
    }

    let radix = grid.alphabet().size() as u128;
    let mut seen = match radix.checked_pow(n as u32) {
        Some(_) => Seen::Packed(HashSet::new()),
        None => Seen::Listed(HashSet::new()),
    };
    let mut used = vec![false; cells];
    let mut letters = Vec::with_capacity(n);
    let mut sequences: u64 = 0;
    walk(grid.cells(), n, &mut used, &mut letters, &mut |word| {
        sequences += 1;
        seen.insert(radix, word);
    });

    let present_letters = grid.distinct_letters();
    Ok(OracleReport {
        n,
        cells,
        sequence_count: BigUint::from(sequences),
        distinct_passwords: BigUint::from(seen.len()),
        present_letters,
        alphabet_covered: present_letters == grid.alphabet().size(),
        lower_bound: injective_sequence_count(present_letters, n),
    })
}

fn walk(
    cells: &[usize],
    remaining: usize,
    used: &mut [bool],
    letters: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        visit(letters);
        return;
    }
    for i in 0..cells.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        letters.push(cells[i]);
        walk(cells, remaining - 1, used, letters, visit);
        letters.pop();
        used[i] = false;
    }
}
