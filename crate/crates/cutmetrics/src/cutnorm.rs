use crate::{CutError, CutNormResult, EXACT_SIDE_LIMIT, SEARCH_RESTARTS};
use latin_core::seed::split_seed;
use latinon_core::{SemiLatinon, StepBigraphon};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// How a cut norm is computed: full enumeration of the smaller side, or
/// alternating maximization restarted from random subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutMode {
    Exact,
    LocalSearch,
}

/// The pointwise difference a − b as a signed step function. The operands
/// must live on identical row and column partitions.
pub fn bigraphon_difference(
    a: &StepBigraphon,
    b: &StepBigraphon,
) -> Result<StepBigraphon, CutError> {
    if a.rows().bounds() != b.rows().bounds() {
        return Err(CutError::PartitionMismatch { what: "row partitions".into() });
    }
    if a.cols().bounds() != b.cols().bounds() {
        return Err(CutError::PartitionMismatch { what: "column partitions".into() });
    }
    let values: Vec<f64> = a.values().iter().zip(b.values()).map(|(x, y)| x - y).collect();
    Ok(StepBigraphon::new(a.rows().clone(), a.cols().clone(), values)?)
}

/// Canonical evaluation of a subset certificate: the masses over the chosen
/// rows and columns summed in index order. Both computation modes report this
/// number, so a certificate always reproduces its `value` bit for bit.
fn evaluate(w: &[f64], nc: usize, rows: &[usize], cols: &[usize]) -> f64 {
    let mut total = 0.0;
    for &i in rows {
        for &j in cols {
            total += w[i * nc + j];
        }
    }
    total.abs()
}

/// Walks every subset of the rows in Gray-code order, keeping column sums
/// incremental, and pairs each subset with the greedy best column set per
/// sign. Returns the winning row mask and sign.
fn exact_enumerate(w: &[f64], nr: usize, nc: usize) -> (u32, f64) {
    debug_assert!(nr <= EXACT_SIDE_LIMIT);
    let mut col_sums = vec![0.0f64; nc];
    let mut mask = 0u32;
    let (mut best_mask, mut best_sign, mut best) = (0u32, 1.0f64, 0.0f64);
    for step in 1u64..(1u64 << nr) {
        let bit = step.trailing_zeros() as usize;
        let row = &w[bit * nc..(bit + 1) * nc];
        if mask & (1 << bit) == 0 {
            mask |= 1 << bit;
            for (s, v) in col_sums.iter_mut().zip(row) {
                *s += v;
            }
        } else {
            mask &= !(1 << bit);
            for (s, v) in col_sums.iter_mut().zip(row) {
                *s -= v;
            }
        }
        let mut pos = 0.0;
        let mut neg = 0.0;
        for &s in &col_sums {
            if s > 0.0 {
                pos += s;
            } else {
                neg -= s;
            }
        }
        if pos > best {
            best = pos;
            best_mask = mask;
            best_sign = 1.0;
        }
        if neg > best {
            best = neg;
            best_mask = mask;
            best_sign = -1.0;
        }
    }
    (best_mask, best_sign)
}

/// Resolves a winning row mask back into explicit row and column index sets.
fn certificate_from_mask(w: &[f64], nr: usize, nc: usize, mask: u32, sign: f64) -> (Vec<usize>, Vec<usize>) {
    let rows: Vec<usize> = (0..nr).filter(|i| mask & (1 << i) != 0).collect();
    let mut col_sums = vec![0.0f64; nc];
    for &i in &rows {
        for (s, v) in col_sums.iter_mut().zip(&w[i * nc..(i + 1) * nc]) {
            *s += v;
        }
    }
    let cols: Vec<usize> = (0..nc).filter(|&j| sign * col_sums[j] > 0.0).collect();
    (rows, cols)
}

fn transpose_masses(w: &[f64], nr: usize, nc: usize) -> Vec<f64> {
    let mut t = vec![0.0f64; w.len()];
    for i in 0..nr {
        for j in 0..nc {
            t[j * nr + i] = w[i * nc + j];
        }
    }
    t
}

pub(crate) fn exact_masses(w: &[f64], nr: usize, nc: usize) -> Result<(f64, Vec<usize>, Vec<usize>), CutError> {
    let small = nr.min(nc);
    if small > EXACT_SIDE_LIMIT {
        return Err(CutError::TooManyCellsForExact { cells: small, limit: EXACT_SIDE_LIMIT });
    }
    let (rows, cols) = if nr <= nc {
        let (mask, sign) = exact_enumerate(w, nr, nc);
        certificate_from_mask(w, nr, nc, mask, sign)
    } else {
        let t = transpose_masses(w, nr, nc);
        let (mask, sign) = exact_enumerate(&t, nc, nr);
        let (cols, rows) = certificate_from_mask(&t, nc, nr, mask, sign);
        (rows, cols)
    };
    Ok((evaluate(w, nc, &rows, &cols), rows, cols))
}

/// One run of alternating maximization of `sign * sum` from a given row set.
/// Converges because the objective never decreases and subsets are finite.
fn alternate(w: &[f64], nr: usize, nc: usize, sign: f64, mut in_s: Vec<bool>) -> (Vec<usize>, Vec<usize>) {
    let mut cols: Vec<bool> = vec![false; nc];
    for _ in 0..64 {
        let mut col_sums = vec![0.0f64; nc];
        for i in 0..nr {
            if in_s[i] {
                for (s, v) in col_sums.iter_mut().zip(&w[i * nc..(i + 1) * nc]) {
                    *s += v;
                }
            }
        }
        for j in 0..nc {
            cols[j] = sign * col_sums[j] > 0.0;
        }
        let mut next = vec![false; nr];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut row_sum = 0.0;
            for j in 0..nc {
                if cols[j] {
                    row_sum += w[i * nc + j];
                }
            }
            *slot = sign * row_sum > 0.0;
        }
        if next == in_s {
            break;
        }
        in_s = next;
    }
    let rows = (0..nr).filter(|&i| in_s[i]).collect();
    let cols = (0..nc).filter(|&j| cols[j]).collect();
    (rows, cols)
}

pub(crate) fn local_masses(w: &[f64], nr: usize, nc: usize, seed: u64) -> (f64, Vec<usize>, Vec<usize>) {
    let best = (0..SEARCH_RESTARTS)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, restart));
            let start: Vec<bool> = (0..nr).map(|_| rng.random::<bool>()).collect();
            let mut local = (0.0f64, Vec::new(), Vec::new());
            for sign in [1.0, -1.0] {
                let (rows, cols) = alternate(w, nr, nc, sign, start.clone());
                let value = evaluate(w, nc, &rows, &cols);
                if value > local.0 {
                    local = (value, rows, cols);
                }
            }
            (local, restart)
        })
        .reduce(
            || ((0.0, Vec::new(), Vec::new()), u64::MAX),
            |a, b| {
                if b.0 .0 > a.0 .0 || (b.0 .0 == a.0 .0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    best.0
}

fn step_masses(d: &StepBigraphon) -> (Vec<f64>, usize, usize) {
    let nr = d.rows().cells();
    let nc = d.cols().cells();
    let mut w = vec![0.0f64; nr * nc];
    for i in 0..nr {
        let li = d.rows().length(i);
        for j in 0..nc {
            w[i * nc + j] = d.value(i, j) * li * d.cols().length(j);
        }
    }
    (w, nr, nc)
}

/// Cut norm of a signed step function: the largest absolute mass any product
/// of a row-cell set and a column-cell set can capture.
///
/// Exact mode enumerates all subsets of the smaller side (the other side is
/// then optimal greedily, per sign) and requires at most
/// [`EXACT_SIDE_LIMIT`] cells there. Local search restarts alternating
/// maximization from [`SEARCH_RESTARTS`] random subsets; its value never
/// exceeds the true norm because every candidate is a genuine subset pair.
pub fn cutnorm_step(d: &StepBigraphon, mode: CutMode, seed: u64) -> Result<CutNormResult, CutError> {
    let (w, nr, nc) = step_masses(d);
    match mode {
        CutMode::Exact => {
            let (value, rows, cols) = exact_masses(&w, nr, nc)?;
            Ok(CutNormResult::plain(value, rows, cols, true))
        }
        CutMode::LocalSearch => {
            let (value, rows, cols) = local_masses(&w, nr, nc, seed);
            Ok(CutNormResult::plain(value, rows, cols, false))
        }
    }
}

/// The cellwise mass difference of two distribution-valued step functions on
/// identical partitions, with prefix sums over the value axis so any value
/// interval reduces to one subtraction per cell.
pub(crate) struct DistDiff {
    pub nr: usize,
    pub nc: usize,
    pub d: usize,
    raw: Vec<f64>,
    pref: Vec<f64>,
}

impl DistDiff {
    pub(crate) fn new(a: &SemiLatinon, b: &SemiLatinon) -> Result<Self, CutError> {
        if a.rows().bounds() != b.rows().bounds() {
            return Err(CutError::PartitionMismatch { what: "row partitions".into() });
        }
        if a.cols().bounds() != b.cols().bounds() {
            return Err(CutError::PartitionMismatch { what: "column partitions".into() });
        }
        if a.values().bounds() != b.values().bounds() {
            return Err(CutError::PartitionMismatch { what: "value partitions".into() });
        }
        let (nr, nc, d) = (a.rows().cells(), a.cols().cells(), a.values().cells());
        let mut raw = vec![0.0f64; nr * nc * d];
        for i in 0..nr {
            let li = a.rows().length(i);
            for j in 0..nc {
                let scale = li * a.cols().length(j);
                let sa = a.alpha().slice(i, j);
                let sb = b.alpha().slice(i, j);
                let out = &mut raw[(i * nc + j) * d..(i * nc + j + 1) * d];
                for q in 0..d {
                    out[q] = (sa[q] - sb[q]) * scale;
                }
            }
        }
        let mut diff = DistDiff { nr, nc, d, raw, pref: Vec::new() };
        diff.rebuild_prefixes();
        Ok(diff)
    }

    /// Difference tensor for permuted cells of `b`: entry (i, j) compares
    /// a's cell (i, j) against b's cell (phi(i), psi(j)). Used by the cut
    /// distance search; all partitions must already be equal-cell grids.
    pub(crate) fn permuted(
        a: &SemiLatinon,
        b: &SemiLatinon,
        phi: &[usize],
        psi: &[usize],
    ) -> Self {
        let (nr, nc, d) = (a.rows().cells(), a.cols().cells(), a.values().cells());
        let mut raw = vec![0.0f64; nr * nc * d];
        for i in 0..nr {
            let li = a.rows().length(i);
            for j in 0..nc {
                let scale = li * a.cols().length(j);
                let sa = a.alpha().slice(i, j);
                let sb = b.alpha().slice(phi[i], psi[j]);
                let out = &mut raw[(i * nc + j) * d..(i * nc + j + 1) * d];
                for q in 0..d {
                    out[q] = (sa[q] - sb[q]) * scale;
                }
            }
        }
        let mut diff = DistDiff { nr, nc, d, raw, pref: Vec::new() };
        diff.rebuild_prefixes();
        diff
    }

    fn rebuild_prefixes(&mut self) {
        let (nr, nc, d) = (self.nr, self.nc, self.d);
        let mut pref = vec![0.0f64; nr * nc * (d + 1)];
        for cell in 0..nr * nc {
            let src = &self.raw[cell * d..(cell + 1) * d];
            let dst = &mut pref[cell * (d + 1)..(cell + 1) * (d + 1)];
            for q in 0..d {
                dst[q + 1] = dst[q] + src[q];
            }
        }
        self.pref = pref;
    }

    #[inline]
    fn cell_interval(&self, cell: usize, qa: usize, qb: usize) -> f64 {
        let base = cell * (self.d + 1);
        self.pref[base + qb] - self.pref[base + qa]
    }

    fn interval_masses(&self, qa: usize, qb: usize) -> Vec<f64> {
        (0..self.nr * self.nc).map(|cell| self.cell_interval(cell, qa, qb)).collect()
    }

    fn evaluate(&self, rows: &[usize], cols: &[usize], qa: usize, qb: usize) -> f64 {
        let mut total = 0.0;
        for &i in rows {
            for &j in cols {
                total += self.cell_interval(i * self.nc + j, qa, qb);
            }
        }
        total.abs()
    }
}

/// Work cap deciding whether the interval sweep runs exact enumeration.
const DISTVAL_EXACT_BUDGET: u128 = 2_000_000_000;

fn distval_exact(diff: &DistDiff) -> Result<CutNormResult, CutError> {
    let mut best: Option<CutNormResult> = None;
    for qa in 0..diff.d {
        for qb in qa + 1..=diff.d {
            let w = diff.interval_masses(qa, qb);
            let (value, rows, cols) = exact_masses(&w, diff.nr, diff.nc)?;
            if best.as_ref().is_none_or(|b| value > b.value) {
                best = Some(CutNormResult {
                    value,
                    rows,
                    cols,
                    val_cells: Some((qa, qb)),
                    exact: true,
                });
            }
        }
    }
    Ok(best.expect("at least one value cell"))
}

/// Best value interval for fixed subsets: a largest-magnitude contiguous run
/// of the per-cell sums g_q, found by one forward scan per sign.
fn best_interval(g: &[f64], sign: f64) -> (usize, usize, f64) {
    let (mut lo, mut run, mut best, mut range) = (0usize, 0.0f64, f64::NEG_INFINITY, (0, 1));
    for (q, &x) in g.iter().enumerate() {
        let v = sign * x;
        if run <= 0.0 {
            run = v;
            lo = q;
        } else {
            run += v;
        }
        if run > best {
            best = run;
            range = (lo, q + 1);
        }
    }
    (range.0, range.1, best)
}

fn distval_search_once(
    diff: &DistDiff,
    sign: f64,
    mut in_s: Vec<bool>,
    mut in_t: Vec<bool>,
) -> (Vec<usize>, Vec<usize>, usize, usize) {
    let (nr, nc, d) = (diff.nr, diff.nc, diff.d);
    let (mut qa, mut qb) = (0usize, d);
    for _ in 0..64 {
        let mut g = vec![0.0f64; d];
        for (i, &si) in in_s.iter().enumerate() {
            if !si {
                continue;
            }
            for (j, &tj) in in_t.iter().enumerate() {
                if !tj {
                    continue;
                }
                let cell = (i * nc + j) * d;
                for (q, slot) in g.iter_mut().enumerate() {
                    *slot += diff.raw[cell + q];
                }
            }
        }
        let (lo, hi, _) = best_interval(&g, sign);
        let mut col_sums = vec![0.0f64; nc];
        for (i, &si) in in_s.iter().enumerate() {
            if !si {
                continue;
            }
            for (j, slot) in col_sums.iter_mut().enumerate() {
                *slot += diff.cell_interval(i * nc + j, lo, hi);
            }
        }
        let next_t: Vec<bool> = col_sums.iter().map(|&s| sign * s > 0.0).collect();
        let mut next_s = vec![false; nr];
        for (i, slot) in next_s.iter_mut().enumerate() {
            let mut row_sum = 0.0;
            for (j, &tj) in next_t.iter().enumerate() {
                if tj {
                    row_sum += diff.cell_interval(i * nc + j, lo, hi);
                }
            }
            *slot = sign * row_sum > 0.0;
        }
        if next_s == in_s && next_t == in_t && (lo, hi) == (qa, qb) {
            break;
        }
        in_s = next_s;
        in_t = next_t;
        qa = lo;
        qb = hi;
    }
    let rows = (0..nr).filter(|&i| in_s[i]).collect();
    let cols = (0..nc).filter(|&j| in_t[j]).collect();
    (rows, cols, qa, qb)
}

type IntervalCandidate = (f64, Vec<usize>, Vec<usize>, usize, usize);

fn distval_search(diff: &DistDiff, restarts: u64, seed: u64) -> CutNormResult {
    let best = (0..restarts)
        .into_par_iter()
        .map(|restart| {
            let mut local: Option<IntervalCandidate> = None;
            for sign in [1.0, -1.0] {
                let (in_s, in_t) = if restart == 0 {
                    (vec![true; diff.nr], vec![true; diff.nc])
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, restart));
                    (
                        (0..diff.nr).map(|_| rng.random::<bool>()).collect(),
                        (0..diff.nc).map(|_| rng.random::<bool>()).collect(),
                    )
                };
                let (rows, cols, qa, qb) = distval_search_once(diff, sign, in_s, in_t);
                let value = diff.evaluate(&rows, &cols, qa, qb);
                if local.as_ref().is_none_or(|l| value > l.0) {
                    local = Some((value, rows, cols, qa, qb));
                }
            }
            (local.expect("two signs tried"), restart)
        })
        .reduce(
            || ((f64::NEG_INFINITY, Vec::new(), Vec::new(), 0, 0), u64::MAX),
            |a, b| {
                if b.0 .0 > a.0 .0 || (b.0 .0 == a.0 .0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        )
        .0;
    CutNormResult {
        value: best.0,
        rows: best.1,
        cols: best.2,
        val_cells: Some((best.3, best.4)),
        exact: false,
    }
}

/// Cheap estimate used inside the cut-distance annealing loop: one greedy
/// full-set start plus a few random restarts, value only.
pub(crate) fn distval_quick(diff: &DistDiff, seed: u64) -> f64 {
    distval_search(diff, 4, seed).value
}

pub(crate) fn distval_auto(diff: &DistDiff) -> Result<CutNormResult, CutError> {
    let small = diff.nr.min(diff.nc) as u128;
    let intervals = (diff.d * (diff.d + 1) / 2) as u128;
    let work = intervals
        .saturating_mul(1u128 << diff.nr.min(diff.nc).min(127))
        .saturating_mul(diff.nr.max(diff.nc) as u128);
    if small <= EXACT_SIDE_LIMIT as u128 && work <= DISTVAL_EXACT_BUDGET {
        distval_exact(diff)
    } else {
        Ok(distval_search(diff, SEARCH_RESTARTS, 0))
    }
}

/// Cut norm of the difference a − b of two distribution-valued step
/// functions on common partitions, where the supremum also ranges over a
/// value interval V.
///
/// Within one value cell the captured mass is affine in each endpoint of V,
/// so some maximizer has both endpoints on cell boundaries; the search space
/// is therefore the finite set of whole-cell intervals. Small instances
/// sweep every interval with exact subset enumeration; large ones run a
/// three-way alternating search (rows, columns, interval) from
/// [`SEARCH_RESTARTS`] starts and report a certified lower bound.
pub fn cutnorm_distval(a: &SemiLatinon, b: &SemiLatinon) -> Result<CutNormResult, CutError> {
    let diff = DistDiff::new(a, b)?;
    distval_auto(&diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use latinon_core::{represent, uniform, IntervalPartition};

    fn step(nr: usize, nc: usize, values: Vec<f64>) -> StepBigraphon {
        StepBigraphon::new(IntervalPartition::equal(nr), IntervalPartition::equal(nc), values)
            .unwrap()
    }

    #[test]
    fn zero_function_has_zero_norm_and_empty_certificate() {
        let d = step(3, 3, vec![0.0; 9]);
        let r = cutnorm_step(&d, CutMode::Exact, 0).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.rows.is_empty() && r.cols.is_empty());
        assert!(r.exact);
    }

    #[test]
    fn single_cell_norm_is_the_absolute_mass() {
        let d = step(1, 1, vec![0.3]);
        let r = cutnorm_step(&d, CutMode::Exact, 0).unwrap();
        assert_eq!(r.value, 0.3);
        assert_eq!((r.rows.as_slice(), r.cols.as_slice()), ([0].as_slice(), [0].as_slice()));
        let n = step(1, 1, vec![-0.3]);
        assert_eq!(cutnorm_step(&n, CutMode::Exact, 0).unwrap().value, 0.3);
    }

    #[test]
    fn checkerboard_norm_matches_hand_count() {
        // 2x2 cells of mass 1/4 each with signs [[+,-],[-,+]]: any subset
        // pair nets at most one cell, so the norm is 1/4.
        let d = step(2, 2, vec![1.0, -1.0, -1.0, 1.0]);
        let r = cutnorm_step(&d, CutMode::Exact, 0).unwrap();
        assert_eq!(r.value, 0.25);
    }

    #[test]
    fn exact_mode_rejects_wide_instances() {
        let d = step(23, 23, vec![0.0; 23 * 23]);
        assert_eq!(
            cutnorm_step(&d, CutMode::Exact, 0),
            Err(CutError::TooManyCellsForExact { cells: 23, limit: EXACT_SIDE_LIMIT })
        );
    }

    #[test]
    fn rectangular_instances_enumerate_the_smaller_side() {
        // 2 rows x 30 columns passes exact mode because only the row side
        // is enumerated; brute force over the 4 row subsets checks it.
        let values: Vec<f64> = (0..60).map(|v| ((v * 37 % 19) as f64 - 9.0) / 9.0).collect();
        let d = step(2, 30, values.clone());
        let r = cutnorm_step(&d, CutMode::Exact, 0).unwrap();
        let mut best = 0.0f64;
        for mask in 0..4u32 {
            let mut pos = 0.0;
            let mut neg = 0.0;
            for j in 0..30 {
                let mut s = 0.0;
                for i in 0..2 {
                    if mask & (1 << i) != 0 {
                        s += values[i * 30 + j] * 0.5 * (1.0 / 30.0);
                    }
                }
                if s > 0.0 {
                    pos += s;
                } else {
                    neg -= s;
                }
            }
            best = best.max(pos).max(neg);
        }
        assert!((r.value - best).abs() < 1e-15);
    }

    #[test]
    fn negation_symmetry_on_random_instances() {
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<f64> = (0..36).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
            let neg = values.iter().map(|v| -v).collect();
            let d = step(6, 6, values);
            let n = step(6, 6, neg);
            assert_eq!(
                cutnorm_step(&d, CutMode::Exact, 0).unwrap().value,
                cutnorm_step(&n, CutMode::Exact, 0).unwrap().value
            );
        }
    }

    #[test]
    fn local_search_matches_exact_on_most_small_instances() {
        let mut hits = 0;
        for seed in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(split_seed(99, seed));
            let values: Vec<f64> = (0..100).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
            let d = step(10, 10, values);
            let exact = cutnorm_step(&d, CutMode::Exact, 0).unwrap().value;
            let local = cutnorm_step(&d, CutMode::LocalSearch, seed).unwrap().value;
            assert!(local <= exact + 1e-12, "seed {seed}: {local} > {exact}");
            if (exact - local).abs() < 1e-12 {
                hits += 1;
            }
        }
        assert!(hits >= 99, "local search matched exact only {hits}/100 times");
    }

    #[test]
    fn certificates_reevaluate_to_their_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let values: Vec<f64> = (0..64).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let d = step(8, 8, values);
        for mode in [CutMode::Exact, CutMode::LocalSearch] {
            let r = cutnorm_step(&d, mode, 3).unwrap();
            let (w, _, nc) = step_masses(&d);
            assert_eq!(evaluate(&w, nc, &r.rows, &r.cols), r.value);
        }
    }

    #[test]
    fn identical_operands_have_zero_distribution_norm() {
        let w = represent(&latin_core::gen_cyclic(4)).unwrap();
        let r = cutnorm_distval(w.as_semi(), w.as_semi()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.exact);
    }

    #[test]
    fn distribution_norm_matches_exhaustive_small_instance() {
        // uniform vs the represented order-2 cyclic square, both on the
        // 2x2x2 grid: brute force over all subset pairs and all 3 value
        // intervals.
        let u = uniform();
        let c = represent(&latin_core::gen_cyclic(2)).unwrap();
        let refined = latinon_core::refine_common(&u, &c, 2).unwrap();
        let (a, b) = (refined.a, refined.b);
        assert_eq!(refined.slack, 0.0);
        let diff = DistDiff::new(a.as_semi(), b.as_semi()).unwrap();
        let mut best = 0.0f64;
        for rows_mask in 0..4u32 {
            for cols_mask in 0..4u32 {
                for (qa, qb) in [(0, 1), (1, 2), (0, 2)] {
                    let rows: Vec<usize> = (0..2).filter(|i| rows_mask & (1 << i) != 0).collect();
                    let cols: Vec<usize> = (0..2).filter(|j| cols_mask & (1 << j) != 0).collect();
                    best = best.max(diff.evaluate(&rows, &cols, qa, qb));
                }
            }
        }
        let r = cutnorm_distval(a.as_semi(), b.as_semi()).unwrap();
        assert_eq!(r.value, best);
        assert!(r.exact);
    }

    #[test]
    fn mismatched_partitions_are_rejected() {
        let u = uniform();
        let c = represent(&latin_core::gen_cyclic(3)).unwrap();
        assert!(matches!(
            cutnorm_distval(u.as_semi(), c.as_semi()),
            Err(CutError::PartitionMismatch { .. })
        ));
    }

    #[test]
    fn search_mode_stays_at_or_below_exact_on_distribution_norms() {
        for seed in 0..10u64 {
            let a = latinon_core::random_latinon(5, 3, seed);
            let b = latinon_core::random_latinon(5, 3, seed + 100);
            let refined = latinon_core::refine_common(&a, &b, 5).unwrap();
            let diff = DistDiff::new(refined.a.as_semi(), refined.b.as_semi()).unwrap();
            let exact = distval_exact(&diff).unwrap();
            let search = distval_search(&diff, SEARCH_RESTARTS, 0);
            assert!(search.value <= exact.value + 1e-12, "seed {seed}");
            assert!(search.value >= 0.5 * exact.value, "seed {seed}: search too weak");
        }
    }
}
