use crate::pattern::lehmer_rank;
use crate::{
    binomial, factorial, DensityError, DensityReport, Estimator, Pattern, STEP_BUDGET,
};
use latin_core::seed::split_seed;
use latinon_core::StepLatinon;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CHUNK: u64 = 65_536;

/// Exact pattern density of a step Latinon.
///
/// The integral over increasing row and column coordinates reduces to a
/// finite sum: choose a nondecreasing assignment of the k sorted row
/// coordinates to row cells (weighted by the multinomial probability of
/// that signature), likewise for columns, then sum over the value-cell
/// choices for the k*l sampled entries. Distinct value cells order the
/// entries outright, so only assignments that are nondecreasing along the
/// pattern's entry ranks contribute, and entries sharing a value cell
/// realize the required order with probability 1/count!.
pub fn step_density_exact(
    pattern: &Pattern,
    w: &StepLatinon,
) -> Result<DensityReport, DensityError> {
    let (k, l) = (pattern.k(), pattern.l());
    let (m_r, m_c, d) = (w.rows().cells(), w.cols().cells(), w.values().cells());
    check_step_budget(m_r, m_c, d, k, l)?;

    let row_lens = w.rows().lengths();
    let col_lens = w.cols().lengths();
    let rank_cells: Vec<(usize, usize)> = pattern
        .positions_by_rank()
        .into_iter()
        .map(|p| (p / l, p % l))
        .collect();
    let k_fact = factorial(k) as f64;
    let l_fact = factorial(l) as f64;

    let mut total = 0.0f64;
    let mut slices: Vec<&[f64]> = Vec::with_capacity(k * l);
    for_each_multiset(m_r, k, |a| {
        let wa = signature_weight(a, &row_lens, k_fact);
        for_each_multiset(m_c, l, |b| {
            let wb = signature_weight(b, &col_lens, l_fact);
            slices.clear();
            for &(s, t) in &rank_cells {
                slices.push(w.alpha().slice(a[s], b[t]));
            }
            let mut sum = 0.0f64;
            value_assignments(&slices, d, 0, 0, 0, 1.0, 1.0, &mut sum);
            total += wa * wb * sum;
        });
    });
    Ok(DensityReport::exact(pattern.clone(), total))
}

fn check_step_budget(
    m_r: usize,
    m_c: usize,
    d: usize,
    k: usize,
    l: usize,
) -> Result<(), DensityError> {
    let cost = binomial(m_r + k - 1, k)
        .checked_mul(binomial(m_c + l - 1, l))
        .and_then(|x| x.checked_mul((d as u128).checked_pow((k * l) as u32)?))
        .unwrap_or(u128::MAX);
    if cost > STEP_BUDGET {
        return Err(DensityError::BudgetExceeded { cost, limit: STEP_BUDGET });
    }
    Ok(())
}

/// Probability that k sorted uniform coordinates land in the given
/// nondecreasing cell signature: k!/prod(mult!) times the cell length powers.
fn signature_weight(cells: &[usize], lens: &[f64], k_fact: f64) -> f64 {
    let mut weight = k_fact;
    let mut i = 0;
    while i < cells.len() {
        let mut j = i;
        while j < cells.len() && cells[j] == cells[i] {
            j += 1;
        }
        weight = weight * lens[cells[i]].powi((j - i) as i32) / factorial(j - i) as f64;
        i = j;
    }
    weight
}

/// Calls `body` with every nondecreasing length-k sequence over 0..m.
fn for_each_multiset(m: usize, k: usize, mut body: impl FnMut(&[usize])) {
    debug_assert!(m >= 1 && k >= 1);
    let mut seq = vec![0usize; k];
    loop {
        body(&seq);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if seq[i] + 1 < m {
                let v = seq[i] + 1;
                for s in seq[i..].iter_mut() {
                    *s = v;
                }
                break;
            }
        }
    }
}

/// Depth-first sum over nondecreasing value-cell sequences along the entry
/// ranks. `prod` carries the alpha mass so far, `fact` the factorials of the
/// run lengths of repeated cells; each leaf contributes prod/fact. Branches
/// whose alpha mass vanishes are dropped early.
#[allow(clippy::too_many_arguments)]
fn value_assignments(
    slices: &[&[f64]],
    d: usize,
    r: usize,
    q_lo: usize,
    run_len: u32,
    prod: f64,
    fact: f64,
    acc: &mut f64,
) {
    if r == slices.len() {
        *acc += prod / fact;
        return;
    }
    for q in q_lo..d {
        let mass = slices[r][q];
        if mass == 0.0 {
            continue;
        }
        let (next_run, next_fact) = if r > 0 && q == q_lo {
            (run_len + 1, fact * (run_len + 1) as f64)
        } else {
            (1, fact)
        };
        value_assignments(slices, d, r + 1, q, next_run, prod * mass, next_fact, acc);
    }
}

/// One sampled realization: sorted row and column coordinates, then one
/// value per pattern cell drawn from the step distribution. Redraws from
/// scratch whenever any two sampled numbers tie.
struct StepSampler<'a> {
    w: &'a StepLatinon,
    cum: Vec<f64>,
    d: usize,
    k: usize,
    l: usize,
}

impl<'a> StepSampler<'a> {
    fn new(w: &'a StepLatinon, k: usize, l: usize) -> Self {
        let (m_r, m_c, d) = (w.rows().cells(), w.cols().cells(), w.values().cells());
        let mut cum = vec![0.0f64; m_r * m_c * d];
        for i in 0..m_r {
            for j in 0..m_c {
                let slice = w.alpha().slice(i, j);
                let base = (i * m_c + j) * d;
                let mut run = 0.0;
                for (q, &a) in slice.iter().enumerate() {
                    run += a;
                    cum[base + q] = run;
                }
            }
        }
        StepSampler { w, cum, d, k, l }
    }

    fn draw(&self, rng: &mut ChaCha8Rng, xs: &mut [f64], ys: &mut [f64], vals: &mut [f64]) {
        'redraw: loop {
            for x in xs.iter_mut() {
                *x = rng.random::<f64>();
            }
            xs.sort_unstable_by(f64::total_cmp);
            for y in ys.iter_mut() {
                *y = rng.random::<f64>();
            }
            ys.sort_unstable_by(f64::total_cmp);
            if xs.windows(2).any(|p| p[0] == p[1]) || ys.windows(2).any(|p| p[0] == p[1]) {
                continue 'redraw;
            }
            for s in 0..self.k {
                let i = self.w.rows().cell_of(xs[s]);
                for t in 0..self.l {
                    let j = self.w.cols().cell_of(ys[t]);
                    let base = (i * self.w.cols().cells() + j) * self.d;
                    let cum = &self.cum[base..base + self.d];
                    let r = rng.random::<f64>();
                    let q = cum.partition_point(|&c| c <= r).min(self.d - 1);
                    let u = rng.random::<f64>();
                    vals[s * self.l + t] =
                        self.w.values().lower(q) + u * self.w.values().length(q);
                }
            }
            for p in 0..vals.len() {
                for q in p + 1..vals.len() {
                    if vals[p] == vals[q] {
                        continue 'redraw;
                    }
                }
            }
            return;
        }
    }
}

fn mc_chunks(samples: u64) -> Vec<(u64, u64)> {
    (0..samples.div_ceil(CHUNK))
        .map(|c| (c, CHUNK.min(samples - c * CHUNK)))
        .collect()
}

/// Monte Carlo estimate of one pattern density of a step Latinon, chunked
/// by seed so any thread count reproduces the same value.
pub fn step_density_mc(
    pattern: &Pattern,
    w: &StepLatinon,
    samples: u64,
    seed: u64,
) -> Result<DensityReport, DensityError> {
    assert!(samples >= 1, "need at least one sample");
    let (k, l) = (pattern.k(), pattern.l());
    let rank_positions = pattern.positions_by_rank();
    let sampler = StepSampler::new(w, k, l);

    let hits: u64 = mc_chunks(samples)
        .into_par_iter()
        .map(|(chunk, count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, chunk));
            let mut xs = vec![0.0f64; k];
            let mut ys = vec![0.0f64; l];
            let mut vals = vec![0.0f64; k * l];
            let mut hits = 0u64;
            for _ in 0..count {
                sampler.draw(&mut rng, &mut xs, &mut ys, &mut vals);
                let ordered = rank_positions
                    .windows(2)
                    .all(|p| vals[p[0]] < vals[p[1]]);
                hits += ordered as u64;
            }
            hits
        })
        .sum();

    Ok(DensityReport::monte_carlo(
        pattern.clone(),
        hits as f64 / samples as f64,
        samples,
    ))
}

/// Monte Carlo match counts for every k-by-l pattern of a step Latinon from
/// one shared sample stream, indexed like `enumerate_patterns(k, l)`. Every
/// sample matches exactly one pattern, so the counts sum to `samples`.
pub fn sample_pattern_counts_step(
    w: &StepLatinon,
    k: usize,
    l: usize,
    samples: u64,
    seed: u64,
) -> Result<Vec<u64>, DensityError> {
    assert!(samples >= 1, "need at least one sample");
    crate::check_sweep_cells(k, l)?;
    let buckets = factorial(k * l) as usize;
    let sampler = StepSampler::new(w, k, l);

    let counts = mc_chunks(samples)
        .into_par_iter()
        .map(|(chunk, count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, chunk));
            let mut xs = vec![0.0f64; k];
            let mut ys = vec![0.0f64; l];
            let mut vals = vec![0.0f64; k * l];
            let mut counts = vec![0u64; buckets];
            for _ in 0..count {
                sampler.draw(&mut rng, &mut xs, &mut ys, &mut vals);
                counts[classify_reals(&vals)] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; buckets],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(counts)
}

/// Pattern index of a table of distinct reals.
fn classify_reals(values: &[f64]) -> usize {
    let m = values.len();
    let mut entries = [0u8; crate::MAX_PATTERN_CELLS];
    for i in 0..m {
        let mut rank = 1u8;
        for j in 0..m {
            if values[j] < values[i] {
                rank += 1;
            }
        }
        entries[i] = rank;
    }
    lehmer_rank(&entries[..m])
}

/// Density reports for every k-by-l pattern of a step Latinon.
pub fn density_vector_step(
    w: &StepLatinon,
    k: usize,
    l: usize,
    how: Estimator,
) -> Result<Vec<DensityReport>, DensityError> {
    crate::check_sweep_cells(k, l)?;
    let patterns = crate::enumerate_patterns(k, l)?;
    match how {
        Estimator::Exact => patterns
            .iter()
            .map(|p| step_density_exact(p, w))
            .collect(),
        Estimator::MonteCarlo { samples, seed } => {
            let counts = sample_pattern_counts_step(w, k, l, samples, seed)?;
            Ok(patterns
                .into_iter()
                .zip(counts)
                .map(|(p, c)| DensityReport::monte_carlo(p, c as f64 / samples as f64, samples))
                .collect())
        }
    }
}
