//! Associated semilatinons: equal ground cells carrying unit masses on
//! discretized value cells.

use density::Pattern;
use latinon_core::{IntervalPartition, LatinonError, SemiLatinon, Tensor3};

use crate::SampledMatrix;

/// Value-cell index of a point in the equal partition with `cells` cells,
/// with boundary points assigned to the cell ending there. Dyadic points in
/// dyadic partitions hit their boundaries exactly, so the tiebreak is real.
fn left_cell(value: f64, cells: usize) -> usize {
    debug_assert!((0.0..=1.0).contains(&value));
    let scaled = (value * cells as f64).ceil() as usize;
    scaled.saturating_sub(1).min(cells - 1)
}

fn dirac(values: &[f64], k: usize, cells: usize) -> Result<SemiLatinon, LatinonError> {
    let mut alpha = Tensor3::zeros(k, k, cells)?;
    for i in 0..k {
        for j in 0..k {
            alpha.set(i, j, left_cell(values[i * k + j], cells), 1.0);
        }
    }
    SemiLatinon::new(
        IntervalPartition::equal(k),
        IntervalPartition::equal(k),
        IntervalPartition::equal(cells),
        alpha,
    )
}

/// Associated semilatinon of a k×k real matrix: k equal row and column
/// cells, the 2^depth dyadic value partition, and for each entry mass 1 on
/// the value cell containing it. The result is generally not a Latinon —
/// unit masses satisfy no marginal law.
pub fn associate_matrix(
    values: &[f64],
    k: usize,
    depth: u32,
) -> Result<SemiLatinon, LatinonError> {
    assert!(k >= 1, "the matrix needs at least one row");
    assert_eq!(values.len(), k * k, "the input must be a square matrix");
    assert!(
        values.iter().all(|v| (0.0..=1.0).contains(v)),
        "matrix entries live in [0,1]"
    );
    dirac(values, k, 1usize << depth)
}

/// [`associate_matrix`] applied to a sample's value matrix.
pub fn associate_sample(s: &SampledMatrix, depth: u32) -> Result<SemiLatinon, LatinonError> {
    associate_matrix(s.values(), s.k(), depth)
}

/// Associated semilatinon of a pattern: rescaling the entries by the cell
/// count drops entry c exactly on the upper boundary of the c-th equal value
/// cell, so its unit mass sits on cell c. Built directly from the entries,
/// with no float arithmetic.
pub fn associate_pattern(p: &Pattern) -> Result<SemiLatinon, LatinonError> {
    let (k, l) = (p.k(), p.l());
    let mut alpha = Tensor3::zeros(k, l, k * l)?;
    for i in 0..k {
        for j in 0..l {
            alpha.set(i, j, p.entry(i, j) as usize - 1, 1.0);
        }
    }
    SemiLatinon::new(
        IntervalPartition::equal(k),
        IntervalPartition::equal(l),
        IntervalPartition::equal(k * l),
        alpha,
    )
}
