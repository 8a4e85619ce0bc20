//! Pattern densities of Latin squares and step Latinons.
//!
//! A pattern is a k-by-l table whose entries are exactly 1..=k*l; it records
//! the relative order of the symbols in a submatrix. The density of a pattern
//! in a square is the fraction of row/column subsets (taken as increasing
//! tuples) whose submatrix exhibits that order. The same quantity extends to
//! step Latinons as an integral, computed here as a finite sum over cell
//! assignments. Both exact counting and seeded Monte Carlo estimation are
//! provided, along with whole-family sweeps that classify every subsets'
//! pattern in one pass.

mod pattern;
mod square;
mod step;

pub use pattern::{canonicalize, enumerate_patterns, Pattern};
pub use square::{
    count_all_patterns, density_exact, density_mc, density_vector_square,
    sample_pattern_counts_square, subsets_denominator,
};
pub use step::{
    density_vector_step, sample_pattern_counts_step, step_density_exact, step_density_mc,
};

use thiserror::Error;

/// Operation budget for exact counting over row/column subsets.
pub const EXACT_BUDGET: u128 = 10_000_000_000;

/// Operation budget for the exact step-density sum.
pub const STEP_BUDGET: u128 = 1_000_000_000;

/// Largest pattern size (k*l) accepted anywhere.
pub const MAX_PATTERN_CELLS: usize = 12;

/// Largest pattern size for whole-family sweeps, which hold one tally per
/// pattern and so need (k*l)! buckets.
pub const SWEEP_MAX_CELLS: usize = 6;

pub(crate) fn check_sweep_cells(k: usize, l: usize) -> Result<(), DensityError> {
    if k * l > SWEEP_MAX_CELLS {
        return Err(DensityError::TooLarge { k, l, cells: k * l, limit: SWEEP_MAX_CELLS });
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq)]
pub enum DensityError {
    #[error("entry {value} appears more than once; pattern entries must be distinct")]
    DuplicateEntry { value: f64 },
    #[error("pattern entry {value} at cell ({row}, {col}) is outside 1..={cells}")]
    EntryOutOfRange { row: usize, col: usize, value: u8, cells: usize },
    #[error("pattern shape {k}x{l} has {cells} cells, more than the supported {limit}")]
    TooLarge { k: usize, l: usize, cells: usize, limit: usize },
    #[error("pattern shape {k}x{l} does not fit in an order-{n} square")]
    PatternTooLarge { k: usize, l: usize, n: usize },
    #[error("exact computation needs about {cost} operations, over the budget of {limit}")]
    BudgetExceeded { cost: u128, limit: u128 },
    #[error("expected {want}, got {got}")]
    BadShape { want: String, got: String },
}

/// How a reported density value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    MonteCarlo,
}

/// How a density vector should be computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

/// A pattern density together with how it was computed. Monte Carlo reports
/// carry the sample count and a two-sided 99% confidence radius; exact
/// reports set both to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub pattern: Pattern,
    pub value: f64,
    pub mode: Mode,
    pub samples: u64,
    pub radius: f64,
}

impl DensityReport {
    pub(crate) fn exact(pattern: Pattern, value: f64) -> Self {
        DensityReport { pattern, value, mode: Mode::Exact, samples: 0, radius: 0.0 }
    }

    pub(crate) fn monte_carlo(pattern: Pattern, value: f64, samples: u64) -> Self {
        DensityReport {
            pattern,
            value,
            mode: Mode::MonteCarlo,
            samples,
            radius: hoeffding_radius(samples),
        }
    }
}

/// Two-sided 99% Hoeffding radius for a mean of `samples` indicators.
pub fn hoeffding_radius(samples: u64) -> f64 {
    (200f64.ln() / (2.0 * samples as f64)).sqrt()
}

pub(crate) fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_and_factorial_agree_with_small_tables() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(300, 2), 44850);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(6), 720);
    }

    #[test]
    fn radius_matches_hand_value() {
        // sqrt(ln 200 / 2e6) at a million samples.
        let r = hoeffding_radius(1_000_000);
        assert!((r - 1.6277e-3).abs() < 1e-6);
    }
}
