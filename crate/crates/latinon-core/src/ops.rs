//! Constructions and the compression, anti-compression, and entropy
//! operations.

use latin_core::LatinSquare;

use crate::{
    validate_latinon, IntervalPartition, LatinonError, SemiLatinon, StepBigraphon, StepLatinon,
    Tensor3, SIZE_LIMIT,
};

/// The one-cell Latinon: every value distribution is Lebesgue on [0,1].
pub fn uniform() -> StepLatinon {
    let one = IntervalPartition::equal(1);
    let mut alpha = Tensor3::zeros(1, 1, 1).unwrap();
    alpha.set(0, 0, 0, 1.0);
    let semi = SemiLatinon::new(one.clone(), one.clone(), one, alpha).unwrap();
    validate_latinon(semi).unwrap()
}

/// The step Latinon of a Latin square: n equal cells on each axis, with the
/// whole value mass of cell (r, c) on value cell L(r, c).
pub fn represent(square: &LatinSquare) -> Result<StepLatinon, LatinonError> {
    let n = square.n();
    let mut alpha = Tensor3::zeros(n, n, n)?;
    for r in 0..n {
        for c in 0..n {
            alpha.set(r, c, square.value(r, c) as usize - 1, 1.0);
        }
    }
    let p = IntervalPartition::equal(n);
    let semi = SemiLatinon::new(p.clone(), p.clone(), p, alpha)?;
    validate_latinon(semi)
}

/// The m-cell step version of the cyclic Latinon. On cell (r, c) the sum
/// x + y mod 1 is triangular across two adjacent value cells, so cells
/// (r + c) mod m and (r + c + 1) mod m each receive mass 1/2.
pub fn standard_cyclic_step(m: usize) -> Result<StepLatinon, LatinonError> {
    assert!(m >= 1, "the cyclic step Latinon needs at least one cell");
    let mut alpha = Tensor3::zeros(m, m, m)?;
    for r in 0..m {
        for c in 0..m {
            alpha.add(r, c, (r + c) % m, 0.5);
            alpha.add(r, c, (r + c + 1) % m, 0.5);
        }
    }
    let p = IntervalPartition::equal(m);
    let semi = SemiLatinon::new(p.clone(), p.clone(), p, alpha)?;
    validate_latinon(semi)
}

/// Splits the value axis into the 2^depth dyadic intervals and records, per
/// cell pair, the mass landing in each: output s holds the masses for the
/// s-th dyadic interval. The outputs sum pointwise to 1.
pub fn compress(w: &StepLatinon, depth: u32) -> Result<Vec<StepBigraphon>, LatinonError> {
    assert!(depth >= 1, "compression depth must be at least 1");
    let alpha = w.alpha();
    let (m_r, m_c) = (alpha.rows(), alpha.cols());
    let parts = 1usize.checked_shl(depth).unwrap_or(usize::MAX);
    let cells = m_r.saturating_mul(m_c).saturating_mul(parts);
    if cells > SIZE_LIMIT {
        return Err(LatinonError::TooLarge { cells, limit: SIZE_LIMIT });
    }
    let scale = parts as f64;
    let mut tables = vec![vec![0.0f64; m_r * m_c]; parts];
    for i in 0..m_r {
        for j in 0..m_c {
            for (k, &a) in alpha.slice(i, j).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let lo = w.values().lower(k);
                let hi = w.values().upper(k);
                let len = hi - lo;
                let s0 = ((lo * scale).floor() as usize).min(parts - 1);
                let s1 = ((hi * scale).ceil() as usize).min(parts);
                for (s, table) in tables.iter_mut().enumerate().take(s1).skip(s0) {
                    let ov = (hi.min((s + 1) as f64 / scale) - lo.max(s as f64 / scale)).max(0.0);
                    if ov > 0.0 {
                        table[i * m_c + j] += a * ov / len;
                    }
                }
            }
        }
    }
    tables
        .into_iter()
        .map(|t| StepBigraphon::new(w.rows().clone(), w.cols().clone(), t))
        .collect()
}

/// Reassembles a semilatinon from compression parts: the value partition is
/// the dyadic one, and part s supplies the mass for value cell s. Fails with
/// `SumNotOne` when the parts do not sum pointwise to 1.
pub fn anticompress(parts: &[StepBigraphon]) -> Result<SemiLatinon, LatinonError> {
    let count = parts.len();
    if count < 2 || !count.is_power_of_two() {
        return Err(LatinonError::BadPartCount { count });
    }
    let rows = parts[0].rows();
    let cols = parts[0].cols();
    if parts.iter().any(|p| p.rows() != rows || p.cols() != cols) {
        return Err(LatinonError::MismatchedParts);
    }
    let (m_r, m_c) = (rows.cells(), cols.cells());
    let mut alpha = Tensor3::zeros(m_r, m_c, count)?;
    for (s, part) in parts.iter().enumerate() {
        for i in 0..m_r {
            for j in 0..m_c {
                alpha.set(i, j, s, part.value(i, j));
            }
        }
    }
    SemiLatinon::new(rows.clone(), cols.clone(), IntervalPartition::equal(count), alpha)
}

/// The relative entropy of each value distribution against Lebesgue measure,
/// averaged over the unit square:
/// sum of len(P_i) len(C_j) alpha[i][j][k] log(alpha[i][j][k] / len(Q_k)),
/// with 0 log 0 = 0 and natural logarithms. Nonnegative, and zero exactly
/// when every alpha[i][j][k] equals len(Q_k).
pub fn entropy(w: &StepLatinon) -> f64 {
    let alpha = w.alpha();
    let mut total = 0.0;
    for i in 0..alpha.rows() {
        let li = w.rows().length(i);
        for j in 0..alpha.cols() {
            let cell = li * w.cols().length(j);
            for (k, &a) in alpha.slice(i, j).iter().enumerate() {
                if a > 0.0 {
                    total += cell * a * (a / w.values().length(k)).ln();
                }
            }
        }
    }
    total
}
