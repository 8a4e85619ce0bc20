//! Interval partitions of [0,1]: consecutive cells, left-closed and
//! right-open, with the last cell closed at 1.

use crate::{LatinonError, STRUCTURAL_TOL};

/// A partition of [0,1] into consecutive intervals, stored by its boundary
/// points `0 = b_0 < b_1 < ... < b_m = 1`. Cell lengths are boundary
/// differences, so they always telescope to exactly 1.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalPartition {
    bounds: Vec<f64>,
}

impl IntervalPartition {
    /// `m` cells of equal length.
    pub fn equal(m: usize) -> Self {
        assert!(m > 0, "a partition needs at least one cell");
        let mut bounds: Vec<f64> = (0..m).map(|i| i as f64 / m as f64).collect();
        bounds.push(1.0);
        IntervalPartition { bounds }
    }

    /// Builds a partition from cell lengths, which must be positive and sum
    /// to 1 within the structural tolerance.
    pub fn from_lengths(lengths: &[f64]) -> Result<Self, LatinonError> {
        if lengths.is_empty() {
            return Err(LatinonError::BadPartitionSum { sum: 0.0 });
        }
        let mut bounds = Vec::with_capacity(lengths.len() + 1);
        bounds.push(0.0);
        let mut acc = 0.0;
        for (index, &length) in lengths.iter().enumerate() {
            if !length.is_finite() || length <= 0.0 {
                return Err(LatinonError::EmptyCell { index, length });
            }
            acc += length;
            bounds.push(acc);
        }
        if (acc - 1.0).abs() > STRUCTURAL_TOL {
            return Err(LatinonError::BadPartitionSum { sum: acc });
        }
        *bounds.last_mut().unwrap() = 1.0;
        Ok(IntervalPartition { bounds })
    }

    pub fn cells(&self) -> usize {
        self.bounds.len() - 1
    }

    #[inline]
    pub fn lower(&self, i: usize) -> f64 {
        self.bounds[i]
    }

    #[inline]
    pub fn upper(&self, i: usize) -> f64 {
        self.bounds[i + 1]
    }

    #[inline]
    pub fn length(&self, i: usize) -> f64 {
        self.bounds[i + 1] - self.bounds[i]
    }

    pub fn bounds(&self) -> &[f64] {
        &self.bounds
    }

    pub fn lengths(&self) -> Vec<f64> {
        (0..self.cells()).map(|i| self.length(i)).collect()
    }

    /// Index of the cell containing `x`; the last cell is closed at 1.
    pub fn cell_of(&self, x: f64) -> usize {
        debug_assert!((0.0..=1.0).contains(&x));
        match self.bounds.partition_point(|&b| b <= x) {
            0 => 0,
            p => (p - 1).min(self.cells() - 1),
        }
    }

    /// Length of the intersection of cell `i` with [lo, hi).
    #[inline]
    pub fn overlap(&self, i: usize, lo: f64, hi: f64) -> f64 {
        (self.upper(i).min(hi) - self.lower(i).max(lo)).max(0.0)
    }

    /// The coarsest partition refining both `self` and `other`. Boundaries
    /// closer than the structural tolerance are identified.
    pub fn common_refinement(&self, other: &IntervalPartition) -> IntervalPartition {
        let mut merged: Vec<f64> = self.bounds.iter().chain(&other.bounds).copied().collect();
        merged.sort_by(f64::total_cmp);
        let mut bounds = vec![0.0];
        for &b in &merged {
            if b - bounds.last().unwrap() > STRUCTURAL_TOL {
                bounds.push(b);
            }
        }
        *bounds.last_mut().unwrap() = 1.0;
        IntervalPartition { bounds }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_partition_telescopes() {
        let p = IntervalPartition::equal(7);
        assert_eq!(p.cells(), 7);
        let total: f64 = p.lengths().iter().sum();
        assert_eq!(p.upper(6), 1.0);
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn from_lengths_rejects_bad_input() {
        assert!(matches!(
            IntervalPartition::from_lengths(&[0.5, 0.0, 0.5]),
            Err(LatinonError::EmptyCell { index: 1, .. })
        ));
        assert!(matches!(
            IntervalPartition::from_lengths(&[0.5, 0.4]),
            Err(LatinonError::BadPartitionSum { .. })
        ));
    }

    #[test]
    fn cell_lookup_handles_boundaries() {
        let p = IntervalPartition::equal(4);
        assert_eq!(p.cell_of(0.0), 0);
        assert_eq!(p.cell_of(0.25), 1);
        assert_eq!(p.cell_of(0.999), 3);
        assert_eq!(p.cell_of(1.0), 3);
    }

    #[test]
    fn overlap_clips_to_cell() {
        let p = IntervalPartition::equal(2);
        assert!((p.overlap(0, 0.25, 0.75) - 0.25).abs() < 1e-15);
        assert_eq!(p.overlap(1, 0.0, 0.5), 0.0);
    }

    #[test]
    fn common_refinement_merges_boundaries() {
        let a = IntervalPartition::equal(2);
        let b = IntervalPartition::equal(3);
        let r = a.common_refinement(&b);
        assert_eq!(r.cells(), 4);
        assert_eq!(r.bounds()[2], 0.5);
        let again = r.common_refinement(&a);
        assert_eq!(again, r);
    }
}
