use crate::cutnorm::{distval_auto, distval_quick, DistDiff};
use crate::displacement::order_displacement;
use crate::{CutError, SEARCH_RESTARTS};
use density::{enumerate_patterns, step_density_exact, Pattern};
use latin_core::seed::split_seed;
use latinon_core::{refine_common_semi, SemiLatinon, StepLatinon};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Every term of the block-distance objective is at most 1 (each is an
/// integral of a function bounded by 1 in absolute value over a probability
/// square), so three terms never exceed this.
const TRIVIAL_UPPER: f64 = 3.0;

/// Two-sided estimate of the cut distance between step Latinons.
///
/// `upper` is the best objective found over block-permutation pairs plus the
/// re-expression slack; `lower` comes from inverting the density counting
/// bound. The certificates reproduce their sides: `upper_certificate` holds
/// the block permutations (phi, psi), `lower_certificate` the pattern, its
/// density gap, and the counting constant.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaEstimate {
    pub upper: f64,
    pub lower: f64,
    pub upper_certificate: Option<(Vec<usize>, Vec<usize>)>,
    pub lower_certificate: Option<(Pattern, f64, f64)>,
}

impl DeltaEstimate {
    fn check(self) -> Self {
        assert!(
            0.0 <= self.lower && self.lower <= self.upper,
            "certificate sandwich violated: lower {} vs upper {}",
            self.lower,
            self.upper
        );
        self
    }
}

/// The growth constant of the density counting bound: how far two objects'
/// pattern densities can drift per unit of cut distance raised to 1/(2kl).
pub fn counting_constant(k: usize, l: usize) -> f64 {
    let fact = |n: usize| (1..=n).map(|v| v as f64).product::<f64>();
    let choose2 = |n: usize| (n * n.saturating_sub(1) / 2) as f64;
    let cells = k * l;
    2.0 * fact(k) * fact(l) * (cells * (cells - 1)) as f64
        + (cells as f64).exp2() * fact(k) * fact(l) * (cells as f64 + choose2(k) + choose2(l))
}

/// Lower bound on the cut distance from pattern-density gaps: a gap of g on
/// a k×l pattern forces distance at least (g / c)^(2kl) with c the counting
/// constant. Scans every pattern with at most `kl_budget` cells (capped at
/// 6) and keeps the strongest bound; shapes whose exact density sum would
/// blow the work budget are skipped, which only weakens the bound.
pub fn delta_lower(a: &StepLatinon, b: &StepLatinon, kl_budget: usize) -> DeltaEstimate {
    let cap = kl_budget.min(6);
    let mut best = 0.0f64;
    let mut cert = None;
    for k in 1..=cap {
        for l in 1..=cap {
            if k * l > cap || k * l < 2 {
                continue;
            }
            let c = counting_constant(k, l);
            let exponent = 2 * (k * l) as i32;
            for pattern in enumerate_patterns(k, l).expect("small shape") {
                let (ta, tb) = match (
                    step_density_exact(&pattern, a),
                    step_density_exact(&pattern, b),
                ) {
                    (Ok(ra), Ok(rb)) => (ra.value, rb.value),
                    _ => break,
                };
                let gap = (ta - tb).abs();
                let bound = (gap / c).powi(exponent);
                if bound > best {
                    best = bound;
                    cert = Some((pattern, gap, c));
                }
            }
        }
    }
    DeltaEstimate {
        upper: TRIVIAL_UPPER,
        lower: best,
        upper_certificate: None,
        lower_certificate: cert,
    }
    .check()
}

struct Objective<'a> {
    a: &'a SemiLatinon,
    b: &'a SemiLatinon,
}

impl Objective<'_> {
    fn displacement(&self, pi: &[usize]) -> f64 {
        if pi.iter().enumerate().all(|(i, &p)| i == p) {
            return 0.0;
        }
        order_displacement(pi).value
    }

    fn quick(&self, phi: &[usize], psi: &[usize], seed: u64) -> f64 {
        let diff = DistDiff::permuted(self.a, self.b, phi, psi);
        self.displacement(phi) + self.displacement(psi) + distval_quick(&diff, seed)
    }

    fn full(&self, phi: &[usize], psi: &[usize]) -> Result<f64, CutError> {
        let diff = DistDiff::permuted(self.a, self.b, phi, psi);
        Ok(self.displacement(phi) + self.displacement(psi) + distval_auto(&diff)?.value)
    }
}

fn propose_swap(pi: &mut [usize], rng: &mut ChaCha8Rng) {
    let m = pi.len();
    if m < 2 {
        return;
    }
    if rng.random::<bool>() {
        let t = rng.random_range(0..m - 1);
        pi.swap(t, t + 1);
    } else {
        let s = rng.random_range(0..m);
        let mut t = rng.random_range(0..m);
        while t == s {
            t = rng.random_range(0..m);
        }
        pi.swap(s, t);
    }
}

/// Upper bound on the cut distance: re-expresses both operands on M equal
/// row and column cells and a common value refinement, then anneals over
/// pairs of block permutations (phi, psi) minimizing the three-term
/// objective — two order displacements plus the distribution-valued cut norm
/// of the permuted difference.
///
/// `search_budget` is the total number of annealing moves spread over
/// [`SEARCH_RESTARTS`] restarts; every restart starts at the identity pair,
/// so the returned bound never exceeds the identity objective. Inside the
/// loop the cut norm is estimated cheaply; the best state and the identity
/// are then re-evaluated at full quality, and the smaller value plus the
/// re-expression slack is returned.
pub fn delta_upper(
    a: &StepLatinon,
    b: &StepLatinon,
    m: usize,
    search_budget: u64,
    seed: u64,
) -> Result<DeltaEstimate, CutError> {
    delta_upper_semi(a.as_semi(), b.as_semi(), m, search_budget, seed)
}

/// [`delta_upper`] for bare semilatinons, whose masses are all the objective
/// needs. This is the form sampled data arrives in: the semilatinon
/// associated with a sampled matrix has Dirac value rows and satisfies no
/// marginal law, yet its distance to the source Latinon is still defined.
pub fn delta_upper_semi(
    a: &SemiLatinon,
    b: &SemiLatinon,
    m: usize,
    search_budget: u64,
    seed: u64,
) -> Result<DeltaEstimate, CutError> {
    let refined = refine_common_semi(a, b, m)?;
    let obj = Objective { a: &refined.a, b: &refined.b };
    let identity: Vec<usize> = (0..m).collect();

    let moves_per_restart = search_budget.div_ceil(SEARCH_RESTARTS);
    let best_state = (0..SEARCH_RESTARTS)
        .into_par_iter()
        .map(|restart| {
            let restart_seed = split_seed(seed, restart);
            let mut rng = ChaCha8Rng::seed_from_u64(restart_seed);
            let mut phi = identity.clone();
            let mut psi = identity.clone();
            let mut energy = obj.quick(&phi, &psi, restart_seed);
            let mut best = (energy, phi.clone(), psi.clone());
            let mut temperature = 0.05f64;
            for mv in 0..moves_per_restart {
                let move_phi = rng.random::<bool>();
                let side: &mut Vec<usize> = if move_phi { &mut phi } else { &mut psi };
                let saved = side.clone();
                propose_swap(side, &mut rng);
                let candidate = obj.quick(&phi, &psi, split_seed(restart_seed, mv + 1));
                let delta = candidate - energy;
                if delta <= 0.0 || rng.random::<f64>() < (-delta / temperature).exp() {
                    energy = candidate;
                    if energy < best.0 {
                        best = (energy, phi.clone(), psi.clone());
                    }
                } else if move_phi {
                    phi = saved;
                } else {
                    psi = saved;
                }
                temperature *= 0.995;
            }
            (best, restart)
        })
        .reduce(
            || ((f64::INFINITY, Vec::new(), Vec::new()), u64::MAX),
            |x, y| {
                if y.0 .0 < x.0 .0 || (y.0 .0 == x.0 .0 && y.1 < x.1) {
                    y
                } else {
                    x
                }
            },
        )
        .0;

    let at_identity = obj.full(&identity, &identity)?;
    let (value, phi, psi) = if best_state.1.is_empty() {
        (at_identity, identity.clone(), identity)
    } else {
        let at_best = obj.full(&best_state.1, &best_state.2)?;
        if at_best < at_identity {
            (at_best, best_state.1, best_state.2)
        } else {
            (at_identity, identity.clone(), identity)
        }
    };

    Ok(DeltaEstimate {
        upper: value + refined.slack,
        lower: 0.0,
        upper_certificate: Some((phi, psi)),
        lower_certificate: None,
    }
    .check())
}

/// Both certificates for one pair: the annealed upper bound and the
/// counting-bound lower bound, with the sandwich asserted.
pub fn delta_estimate(
    a: &StepLatinon,
    b: &StepLatinon,
    m: usize,
    search_budget: u64,
    kl_budget: usize,
    seed: u64,
) -> Result<DeltaEstimate, CutError> {
    let up = delta_upper(a, b, m, search_budget, seed)?;
    let low = delta_lower(a, b, kl_budget);
    Ok(DeltaEstimate {
        upper: up.upper,
        lower: low.lower,
        upper_certificate: up.upper_certificate,
        lower_certificate: low.lower_certificate,
    }
    .check())
}
