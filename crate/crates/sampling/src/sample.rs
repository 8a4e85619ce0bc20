//! k×k sampling from a step Latinon.

use latinon_core::StepLatinon;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One k×k sample: sorted row and column positions in [0,1] and the value
/// drawn from each cell's mixture, with the seed that produced them. Row and
/// column positions are strictly increasing and the k² values are pairwise
/// distinct; draws violating either are thrown away and repeated.
#[derive(Clone, Debug)]
pub struct SampledMatrix {
    k: usize,
    rows: Vec<f64>,
    cols: Vec<f64>,
    values: Vec<f64>,
    seed: u64,
}

impl SampledMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[f64] {
        &self.rows
    }

    pub fn cols(&self) -> &[f64] {
        &self.cols
    }

    /// Row-major k×k value matrix.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.k + j]
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Draws a k×k sample from `w`: k sorted uniform row positions, k sorted
/// uniform column positions, and for each pair a value from the distribution
/// of the containing cell — a value cell picked by its alpha weight, then a
/// uniform point inside it. Deterministic given the seed.
pub fn sample_matrix(w: &StepLatinon, k: usize, seed: u64) -> SampledMatrix {
    assert!(k >= 1, "a sample needs at least one row");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = sorted_uniforms(&mut rng, k);
    let cols = sorted_uniforms(&mut rng, k);

    let alpha = w.alpha();
    let row_cells: Vec<usize> = rows.iter().map(|&x| w.rows().cell_of(x)).collect();
    let col_cells: Vec<usize> = cols.iter().map(|&y| w.cols().cell_of(y)).collect();
    let values = loop {
        let mut vals = Vec::with_capacity(k * k);
        for &r in &row_cells {
            for &c in &col_cells {
                let slice = alpha.slice(r, c);
                let mut cell = slice
                    .iter()
                    .rposition(|&a| a > 0.0)
                    .expect("alpha rows sum to one");
                let mut u = rng.random::<f64>();
                for (idx, &a) in slice.iter().enumerate() {
                    if a <= 0.0 {
                        continue;
                    }
                    if u < a {
                        cell = idx;
                        break;
                    }
                    u -= a;
                }
                let within = rng.random::<f64>();
                vals.push(w.values().lower(cell) + within * w.values().length(cell));
            }
        }
        if pairwise_distinct(&vals) {
            break vals;
        }
    };

    SampledMatrix { k, rows, cols, values, seed }
}

fn sorted_uniforms(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..k).map(|_| rng.random::<f64>()).collect();
        v.sort_by(f64::total_cmp);
        if v.windows(2).all(|w| w[0] < w[1]) {
            return v;
        }
    }
}

fn pairwise_distinct(vals: &[f64]) -> bool {
    let mut sorted = vals.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.windows(2).all(|w| w[0] < w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use density::canonicalize;
    use latinon_core::{random_latinon, uniform};

    #[test]
    fn a_single_point_sample_is_one_uniform_triple() {
        let s = sample_matrix(&uniform(), 1, 5);
        assert_eq!(s.k(), 1);
        assert_eq!(s.rows().len(), 1);
        assert_eq!(s.cols().len(), 1);
        assert_eq!(s.values().len(), 1);
        for v in [s.rows()[0], s.cols()[0], s.value(0, 0)] {
            assert!((0.0..=1.0).contains(&v));
        }
        assert_eq!(s.seed(), 5);
    }

    #[test]
    fn samples_are_reproducible_and_strictly_ordered() {
        let w = random_latinon(4, 3, 2);
        let a = sample_matrix(&w, 12, 77);
        let b = sample_matrix(&w, 12, 77);
        assert_eq!(a.rows(), b.rows());
        assert_eq!(a.values(), b.values());
        assert!(a.rows().windows(2).all(|p| p[0] < p[1]));
        assert!(a.cols().windows(2).all(|p| p[0] < p[1]));
        assert!(pairwise_distinct(a.values()));
    }

    #[test]
    fn two_by_two_patterns_from_the_uniform_latinon_are_equidistributed() {
        // Each of the 24 rankings of 4 exchangeable values is equally likely,
        // so every pattern frequency is a Binomial(n, 1/24) proportion; the
        // tolerance is four standard deviations.
        let u = uniform();
        let n = 1_000_000u32;
        let mut counts = vec![0u64; 24];
        for seed in 0..n {
            let s = sample_matrix(&u, 2, seed as u64);
            let p = canonicalize(2, 2, s.values()).unwrap();
            counts[p.index()] += 1;
        }
        let p = 1.0 / 24.0;
        let tol = 4.0 * (p * (1.0 - p) / n as f64).sqrt();
        for &c in &counts {
            let freq = c as f64 / n as f64;
            assert!(
                (freq - p).abs() <= tol,
                "pattern frequency {freq} strays from 1/24 by more than {tol}"
            );
        }
    }

    #[test]
    fn value_cell_frequencies_follow_the_alpha_weights() {
        let w = random_latinon(3, 3, 7);
        let s = sample_matrix(&w, 200, 13);
        let cells = w.values().cells();
        // Conditioned on the cell a position pair lands in, the value cell is
        // exactly alpha-distributed, so per-cell frequencies are binomial
        // proportions; alpha itself is the oracle, again at four sigmas.
        let mut hits = vec![vec![0u64; cells]; 9];
        let mut totals = vec![0u64; 9];
        for (i, &x) in s.rows().iter().enumerate() {
            let r = w.rows().cell_of(x);
            for (j, &y) in s.cols().iter().enumerate() {
                let c = w.cols().cell_of(y);
                let v = w.values().cell_of(s.value(i, j));
                hits[r * 3 + c][v] += 1;
                totals[r * 3 + c] += 1;
            }
        }
        for r in 0..3 {
            for c in 0..3 {
                let n = totals[r * 3 + c] as f64;
                assert!(n > 0.0, "every cell pair should be hit at k = 200");
                for v in 0..cells {
                    let a = w.alpha().get(r, c, v);
                    let freq = hits[r * 3 + c][v] as f64 / n;
                    let tol = 4.0 * (a * (1.0 - a) / n).sqrt();
                    assert!(
                        (freq - a).abs() <= tol,
                        "cell ({r},{c},{v}): frequency {freq} vs alpha {a} ± {tol}"
                    );
                }
            }
        }
    }
}
