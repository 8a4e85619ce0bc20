//! Re-expression of two step Latinons on a shared grid: M equal row and
//! column cells plus the common refinement of their value partitions.

use crate::{
    validate_latinon, IntervalPartition, LatinonError, SemiLatinon, StepLatinon, Tensor3,
    STRUCTURAL_TOL,
};

/// A pair re-expressed on the common grid, plus the cut-norm error bound
/// incurred by forcing row and column boundaries onto that grid.
#[derive(Clone, Debug)]
pub struct Refined {
    pub a: StepLatinon,
    pub b: StepLatinon,
    /// Upper bound on the total cut-norm re-expression error across both
    /// objects. Zero when every original boundary sits on the M-grid.
    pub slack: f64,
}

/// [`Refined`] without the Latinon marginal guarantee, for operands that are
/// only semilatinons (sampled or otherwise Dirac-weighted data).
#[derive(Clone, Debug)]
pub struct RefinedSemi {
    pub a: SemiLatinon,
    pub b: SemiLatinon,
    pub slack: f64,
}

/// Re-expresses `a` and `b` on `m` equal row and column cells and the common
/// refinement of their value partitions. Value refinement is exact; averaging
/// cells across the row/column grid is exact only for aligned boundaries, and
/// the reported slack bounds the difference it introduces.
pub fn refine_common(a: &StepLatinon, b: &StepLatinon, m: usize) -> Result<Refined, LatinonError> {
    let r = refine_common_semi(a.as_semi(), b.as_semi(), m)?;
    Ok(Refined { a: validate_latinon(r.a)?, b: validate_latinon(r.b)?, slack: r.slack })
}

/// [`refine_common`] for bare semilatinons. Averaging preserves the marginal
/// defects of the inputs, so the outputs are only checked as semilatinons.
pub fn refine_common_semi(
    a: &SemiLatinon,
    b: &SemiLatinon,
    m: usize,
) -> Result<RefinedSemi, LatinonError> {
    assert!(m >= 1, "the common grid needs at least one cell");
    let values = a.values().common_refinement(b.values());
    let (ra, slack_a) = reexpress(a, m, &values)?;
    let (rb, slack_b) = reexpress(b, m, &values)?;
    Ok(RefinedSemi { a: ra, b: rb, slack: slack_a + slack_b })
}

fn reexpress(
    w: &SemiLatinon,
    m: usize,
    values: &IntervalPartition,
) -> Result<(SemiLatinon, f64), LatinonError> {
    let grid = IntervalPartition::equal(m);
    let d = values.cells();
    // Each refined value cell lies inside one source cell; uniform spread
    // within cells makes proportional mass reassignment exact.
    let mut src = vec![0usize; d];
    let mut ratio = vec![0.0f64; d];
    for kp in 0..d {
        let k = w.values().cell_of(0.5 * (values.lower(kp) + values.upper(kp)));
        src[kp] = k;
        ratio[kp] = values.length(kp) / w.values().length(k);
    }

    let alpha = w.alpha();
    let (m_r, m_c) = (alpha.rows(), alpha.cols());
    let mut by_row = Tensor3::zeros(m, m_c, d)?;
    for gi in 0..m {
        for i in 0..m_r {
            let ov = w.rows().overlap(i, grid.lower(gi), grid.upper(gi));
            if ov == 0.0 {
                continue;
            }
            let weight = ov * m as f64;
            for j in 0..m_c {
                let slice = alpha.slice(i, j);
                for kp in 0..d {
                    by_row.add(gi, j, kp, weight * slice[src[kp]] * ratio[kp]);
                }
            }
        }
    }
    let mut out = Tensor3::zeros(m, m, d)?;
    for gj in 0..m {
        for j in 0..m_c {
            let ov = w.cols().overlap(j, grid.lower(gj), grid.upper(gj));
            if ov == 0.0 {
                continue;
            }
            let weight = ov * m as f64;
            for gi in 0..m {
                let slice = by_row.slice(gi, j);
                for (kp, &v) in slice.iter().enumerate() {
                    out.add(gi, gj, kp, weight * v);
                }
            }
        }
    }

    // The distribution-valued cut norm of any difference is at most 1, which
    // caps the slack when the grid coarsens the object instead of refining it.
    let slack = (axis_slack(w.rows(), m) + axis_slack(w.cols(), m)).min(1.0);
    let semi = SemiLatinon::new(grid.clone(), grid, values.clone(), out)?;
    Ok((semi, slack))
}

/// Cut-norm error bound for averaging one axis onto the m-grid: per boundary
/// interior to a grid cell, twice its distance to the nearest grid point,
/// capped by the total measure of the grid cells containing such boundaries.
fn axis_slack(p: &IntervalPartition, m: usize) -> f64 {
    let scale = m as f64;
    let mut dist_sum = 0.0;
    let mut straddled: Vec<usize> = Vec::new();
    for &b in &p.bounds()[1..p.cells()] {
        let dist = (b - (b * scale).round() / scale).abs();
        if dist > STRUCTURAL_TOL {
            dist_sum += dist;
            straddled.push((b * scale).floor() as usize);
        }
    }
    straddled.dedup();
    (2.0 * dist_sum).min(straddled.len() as f64 / scale)
}
