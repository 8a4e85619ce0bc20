//! Latin squares: validated construction, deterministic generator families,
//! symmetry transforms, uniform random sampling, and a plain text format.
//!
//! Symbols are `1..=n`. Row and column positions in the API are 0-based;
//! error reports and the text format use 1-based positions.

mod format;
mod gen;
mod mcmc;
pub mod seed;

pub use format::{parse_ls, ParseLsError};
pub use gen::{
    column_value_swap, enumerate_all, gen_cyclic, gen_parity_h, gen_swap_pair, gen_very_local,
    transpose,
};
pub use mcmc::gen_random_uniform;

use thiserror::Error;

/// Violations of the Latin property, reported with 1-based positions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatinError {
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("value out of range 1..={n} at row {row}, column {col}")]
    ValueOutOfRange { row: usize, col: usize, n: usize },
    #[error("duplicate value {value} in row {row}")]
    DuplicateInRow { row: usize, value: u16 },
    #[error("duplicate value {value} in column {col}")]
    DuplicateInColumn { col: usize, value: u16 },
    #[error("order {n} is odd, need an even order")]
    OddOrder { n: usize },
    #[error("order {n} is not divisible by 3")]
    NotDivisibleBy3 { n: usize },
}

/// An order-`n` Latin square over symbols `1..=n`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u16>,
}

impl LatinSquare {
    /// Validates a row-major table and wraps it as a Latin square.
    ///
    /// Rows are checked before columns; the first violation in scan order
    /// is reported.
    ///
    /// # Errors
    /// `NotSquare`, `ValueOutOfRange`, `DuplicateInRow`, `DuplicateInColumn`.
    pub fn from_rows(rows: &[Vec<u16>]) -> Result<Self, LatinError> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(LatinError::NotSquare {
                    row: r + 1,
                    len: row.len(),
                    n,
                });
            }
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v as usize > n {
                    return Err(LatinError::ValueOutOfRange {
                        row: r + 1,
                        col: c + 1,
                        n,
                    });
                }
                cells.push(v);
            }
        }
        let mut seen = vec![false; n + 1];
        for r in 0..n {
            seen.fill(false);
            for c in 0..n {
                let v = cells[r * n + c];
                if seen[v as usize] {
                    return Err(LatinError::DuplicateInRow { row: r + 1, value: v });
                }
                seen[v as usize] = true;
            }
        }
        for c in 0..n {
            seen.fill(false);
            for r in 0..n {
                let v = cells[r * n + c];
                if seen[v as usize] {
                    return Err(LatinError::DuplicateInColumn { col: c + 1, value: v });
                }
                seen[v as usize] = true;
            }
        }
        Ok(Self { n, cells })
    }

    /// Builds a square from a cell function returning symbols `1..=n`,
    /// then validates it.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> u16) -> Result<Self, LatinError> {
        let rows: Vec<Vec<u16>> = (0..n).map(|r| (0..n).map(|c| f(r, c)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// The order of the square.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The symbol at 0-based position `(r, c)`, in `1..=n`.
    pub fn value(&self, r: usize, c: usize) -> u16 {
        self.cells[r * self.n + c]
    }

    /// All cells, row-major.
    pub fn cells(&self) -> &[u16] {
        &self.cells
    }

    /// Renders the text format: the order on the first line, then one
    /// space-separated row per line.
    pub fn to_ls_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.n.to_string());
        out.push('\n');
        for r in 0..self.n {
            for c in 0..self.n {
                if c > 0 {
                    out.push(' ');
                }
                out.push_str(&self.value(r, c).to_string());
            }
            out.push('\n');
        }
        out
    }

    pub(crate) fn from_parts_unchecked(n: usize, cells: Vec<u16>) -> Self {
        debug_assert_eq!(cells.len(), n * n);
        Self { n, cells }
    }
}
