//! Step Latinons on [0,1]: interval cell partitions, the alpha mass tensor,
//! and the operations on them — validation, Latin-square representation,
//! compression and anti-compression, common refinement, and entropy.

mod json;
mod ops;
mod partition;
mod random;
mod refine;

pub use json::{latinon_from_json, semilatinon_from_json, to_json, JsonError};
pub use ops::{anticompress, compress, entropy, represent, standard_cyclic_step, uniform};
pub use partition::IntervalPartition;
pub use random::random_latinon;
pub use refine::{refine_common, refine_common_semi, Refined, RefinedSemi};

use thiserror::Error;

/// Tolerance for structural equalities: partition length sums and per-cell
/// alpha sums.
pub const STRUCTURAL_TOL: f64 = 1e-12;

/// Tolerance for the marginal (permuton) equalities, which accumulate rounding
/// over entire rows or columns of cells.
pub const MARGINAL_TOL: f64 = 1e-9;

/// Dense tensors above this entry count are rejected.
pub const SIZE_LIMIT: usize = 20_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatinonError {
    #[error("partition cell {index} has non-positive length {length}")]
    EmptyCell { index: usize, length: f64 },
    #[error("partition lengths sum to {sum}, expected 1")]
    BadPartitionSum { sum: f64 },
    #[error("shape mismatch: got {got}, partitions give {want}")]
    DimensionMismatch { want: String, got: String },
    #[error("alpha[{i}][{j}][{k}] = {value} is outside [0, 1]")]
    AlphaOutOfRange { i: usize, j: usize, k: usize, value: f64 },
    #[error("bigraphon value {value} at ({i}, {j}) is outside [-1, 1]")]
    ValueOutOfRange { i: usize, j: usize, value: f64 },
    #[error("alpha sums to {sum} over value cells at row cell {i}, column cell {j}")]
    SumNotOne { i: usize, j: usize, sum: f64 },
    #[error("row marginal at row cell {i}, value cell {k} is off by {residual}")]
    RowMarginalViolation { i: usize, k: usize, residual: f64 },
    #[error("column marginal at column cell {j}, value cell {k} is off by {residual}")]
    ColMarginalViolation { j: usize, k: usize, residual: f64 },
    #[error("dense tensor of {cells} entries exceeds the limit of {limit}")]
    TooLarge { cells: usize, limit: usize },
    #[error("anti-compression needs 2^d parts with d >= 1, got {count}")]
    BadPartCount { count: usize },
    #[error("bigraphon parts do not share their row and column partitions")]
    MismatchedParts,
}

/// Dense row-major tensor indexed by (row cell, column cell, value cell).
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    rows: usize,
    cols: usize,
    depth: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    pub fn zeros(rows: usize, cols: usize, depth: usize) -> Result<Self, LatinonError> {
        let cells = rows.saturating_mul(cols).saturating_mul(depth);
        if cells > SIZE_LIMIT {
            return Err(LatinonError::TooLarge { cells, limit: SIZE_LIMIT });
        }
        Ok(Tensor3 { rows, cols, depth, data: vec![0.0; cells] })
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.rows && j < self.cols && k < self.depth);
        (i * self.cols + j) * self.depth + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[self.offset(i, j, k)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        let o = self.offset(i, j, k);
        self.data[o] = value;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, k: usize, value: f64) {
        let o = self.offset(i, j, k);
        self.data[o] += value;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// The value distribution stored at cell pair (i, j).
    #[inline]
    pub fn slice(&self, i: usize, j: usize) -> &[f64] {
        let o = (i * self.cols + j) * self.depth;
        &self.data[o..o + self.depth]
    }
}

/// Cell partitions plus the alpha tensor: alpha[i][j][k] is the mass that the
/// value distribution on P_i × C_j places on value cell Q_k, spread uniformly
/// within the cell. Each alpha slice must be a probability vector; the permuton
/// marginal conditions are checked separately by [`validate_latinon`].
#[derive(Clone, Debug, PartialEq)]
pub struct SemiLatinon {
    rows: IntervalPartition,
    cols: IntervalPartition,
    values: IntervalPartition,
    alpha: Tensor3,
}

impl SemiLatinon {
    pub fn new(
        rows: IntervalPartition,
        cols: IntervalPartition,
        values: IntervalPartition,
        alpha: Tensor3,
    ) -> Result<Self, LatinonError> {
        if alpha.rows() != rows.cells()
            || alpha.cols() != cols.cells()
            || alpha.depth() != values.cells()
        {
            return Err(LatinonError::DimensionMismatch {
                want: format!("{}x{}x{}", rows.cells(), cols.cells(), values.cells()),
                got: format!("{}x{}x{}", alpha.rows(), alpha.cols(), alpha.depth()),
            });
        }
        for i in 0..alpha.rows() {
            for j in 0..alpha.cols() {
                let mut sum = 0.0;
                for (k, &a) in alpha.slice(i, j).iter().enumerate() {
                    if !(-STRUCTURAL_TOL..=1.0 + STRUCTURAL_TOL).contains(&a) {
                        return Err(LatinonError::AlphaOutOfRange { i, j, k, value: a });
                    }
                    sum += a;
                }
                if (sum - 1.0).abs() > STRUCTURAL_TOL {
                    return Err(LatinonError::SumNotOne { i, j, sum });
                }
            }
        }
        Ok(SemiLatinon { rows, cols, values, alpha })
    }

    pub fn rows(&self) -> &IntervalPartition {
        &self.rows
    }

    pub fn cols(&self) -> &IntervalPartition {
        &self.cols
    }

    pub fn values(&self) -> &IntervalPartition {
        &self.values
    }

    pub fn alpha(&self) -> &Tensor3 {
        &self.alpha
    }
}

/// A [`SemiLatinon`] whose row and column slices are permutons: column-weighted
/// and row-weighted alpha masses reproduce the value cell lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct StepLatinon {
    semi: SemiLatinon,
}

impl StepLatinon {
    pub fn as_semi(&self) -> &SemiLatinon {
        &self.semi
    }

    pub fn into_semi(self) -> SemiLatinon {
        self.semi
    }

    pub fn rows(&self) -> &IntervalPartition {
        &self.semi.rows
    }

    pub fn cols(&self) -> &IntervalPartition {
        &self.semi.cols
    }

    pub fn values(&self) -> &IntervalPartition {
        &self.semi.values
    }

    pub fn alpha(&self) -> &Tensor3 {
        &self.semi.alpha
    }
}

/// Checks the two marginal families and promotes the candidate. Scans row
/// marginals first, in (row cell, value cell) order, and reports the first
/// violation with its signed residual.
pub fn validate_latinon(candidate: SemiLatinon) -> Result<StepLatinon, LatinonError> {
    let alpha = &candidate.alpha;
    let (rows, cols, values) = (&candidate.rows, &candidate.cols, &candidate.values);
    for i in 0..rows.cells() {
        for k in 0..values.cells() {
            let mut sum = 0.0;
            for j in 0..cols.cells() {
                sum += cols.length(j) * alpha.get(i, j, k);
            }
            let residual = sum - values.length(k);
            if residual.abs() > MARGINAL_TOL {
                return Err(LatinonError::RowMarginalViolation { i, k, residual });
            }
        }
    }
    for j in 0..cols.cells() {
        for k in 0..values.cells() {
            let mut sum = 0.0;
            for i in 0..rows.cells() {
                sum += rows.length(i) * alpha.get(i, j, k);
            }
            let residual = sum - values.length(k);
            if residual.abs() > MARGINAL_TOL {
                return Err(LatinonError::ColMarginalViolation { j, k, residual });
            }
        }
    }
    Ok(StepLatinon { semi: candidate })
}

/// A step function on [0,1]², constant on products of row and column cells.
/// Plain bigraphons take values in [0,1]; signed differences stay in [-1,1].
#[derive(Clone, Debug, PartialEq)]
pub struct StepBigraphon {
    rows: IntervalPartition,
    cols: IntervalPartition,
    values: Vec<f64>,
}

impl StepBigraphon {
    /// `values` is row-major with one entry per (row cell, column cell).
    pub fn new(
        rows: IntervalPartition,
        cols: IntervalPartition,
        values: Vec<f64>,
    ) -> Result<Self, LatinonError> {
        if values.len() != rows.cells() * cols.cells() {
            return Err(LatinonError::DimensionMismatch {
                want: format!("{}x{}", rows.cells(), cols.cells()),
                got: format!("{} values", values.len()),
            });
        }
        for (pos, &v) in values.iter().enumerate() {
            if !(-1.0 - STRUCTURAL_TOL..=1.0 + STRUCTURAL_TOL).contains(&v) {
                return Err(LatinonError::ValueOutOfRange {
                    i: pos / cols.cells(),
                    j: pos % cols.cells(),
                    value: v,
                });
            }
        }
        Ok(StepBigraphon { rows, cols, values })
    }

    pub fn rows(&self) -> &IntervalPartition {
        &self.rows
    }

    pub fn cols(&self) -> &IntervalPartition {
        &self.cols
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols.cells() + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn equal3(m: usize) -> (IntervalPartition, IntervalPartition, IntervalPartition) {
        (
            IntervalPartition::equal(m),
            IntervalPartition::equal(m),
            IntervalPartition::equal(m),
        )
    }

    fn tensor_from(m: usize, entries: &[((usize, usize, usize), f64)]) -> Tensor3 {
        let mut t = Tensor3::zeros(m, m, m).unwrap();
        for &((i, j, k), v) in entries {
            t.set(i, j, k, v);
        }
        t
    }

    #[test]
    fn uniform_candidate_is_valid() {
        let (r, c, v) = equal3(1);
        let t = tensor_from(1, &[((0, 0, 0), 1.0)]);
        let w = validate_latinon(SemiLatinon::new(r, c, v, t).unwrap()).unwrap();
        assert_eq!(w.alpha().get(0, 0, 0), 1.0);
    }

    #[test]
    fn two_cyclic_candidate_is_valid() {
        let (r, c, v) = equal3(2);
        let mut t = Tensor3::zeros(2, 2, 2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                t.set(i, j, i ^ j, 1.0);
            }
        }
        assert!(validate_latinon(SemiLatinon::new(r, c, v, t).unwrap()).is_ok());
    }

    #[test]
    fn alpha_out_of_range_is_rejected() {
        let (r, c, v) = equal3(1);
        let t = tensor_from(1, &[((0, 0, 0), 1.5)]);
        let err = SemiLatinon::new(r, c, v, t).unwrap_err();
        assert!(matches!(err, LatinonError::AlphaOutOfRange { value, .. } if value == 1.5));
    }

    #[test]
    fn sum_not_one_is_rejected() {
        let (r, c, v) = equal3(2);
        let mut t = Tensor3::zeros(2, 2, 2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                t.set(i, j, 0, 0.5);
                t.set(i, j, 1, 0.4);
            }
        }
        let err = SemiLatinon::new(r, c, v, t).unwrap_err();
        assert!(matches!(err, LatinonError::SumNotOne { i: 0, j: 0, .. }));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let (r, c, _) = equal3(2);
        let v = IntervalPartition::equal(3);
        let t = Tensor3::zeros(2, 2, 2).unwrap();
        assert!(matches!(
            SemiLatinon::new(r, c, v, t),
            Err(LatinonError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn row_marginal_violation_is_first() {
        // All mass of row cell 0 on value cell 0: both marginal families fail,
        // and the row family must be the one reported.
        let (r, c, v) = equal3(2);
        let mut t = Tensor3::zeros(2, 2, 2).unwrap();
        for j in 0..2 {
            t.set(0, j, 0, 1.0);
            t.set(1, j, 1, 1.0);
        }
        let err = validate_latinon(SemiLatinon::new(r, c, v, t).unwrap()).unwrap_err();
        match err {
            LatinonError::RowMarginalViolation { i, k, residual } => {
                assert_eq!((i, k), (0, 0));
                assert!((residual - 0.5).abs() < 1e-15);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn column_marginal_violation_on_rectangular_shape() {
        // One row cell, two column cells: row marginals hold, column ones fail.
        let r = IntervalPartition::equal(1);
        let c = IntervalPartition::equal(2);
        let v = IntervalPartition::equal(2);
        let mut t = Tensor3::zeros(1, 2, 2).unwrap();
        t.set(0, 0, 0, 1.0);
        t.set(0, 1, 1, 1.0);
        let err = validate_latinon(SemiLatinon::new(r, c, v, t).unwrap()).unwrap_err();
        match err {
            LatinonError::ColMarginalViolation { j, k, residual } => {
                assert_eq!((j, k), (0, 0));
                assert!((residual - 0.5).abs() < 1e-15);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn tensor_size_guard() {
        assert!(matches!(
            Tensor3::zeros(300, 300, 300),
            Err(LatinonError::TooLarge { .. })
        ));
    }

    #[test]
    fn bigraphon_rejects_out_of_range_values() {
        let r = IntervalPartition::equal(2);
        let c = IntervalPartition::equal(2);
        let err = StepBigraphon::new(r, c, vec![0.0, 0.5, -1.2, 1.0]).unwrap_err();
        assert!(matches!(err, LatinonError::ValueOutOfRange { i: 1, j: 0, .. }));
    }
}
