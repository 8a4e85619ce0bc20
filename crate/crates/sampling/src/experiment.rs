//! The sampling experiment: how far a Latinon's own k×k samples sit from it
//! in cut distance, summarized over independent replicas.

use crate::{associate_sample, sample_matrix};
use cutmetrics::{delta_upper_semi, CutError};
use latin_core::seed::split_seed;
use latinon_core::StepLatinon;
use rayon::prelude::*;

/// Annealing moves spent on each replica's distance estimate. The identity
/// block permutation is already the right alignment for sampled data, so a
/// small polish budget suffices.
const REPLICA_SEARCH_BUDGET: u64 = 64;

/// Distance summaries for one sample size. `uppers` holds every replica's
/// δ upper bound sorted ascending; `median` averages the middle pair for
/// even counts; `p95` is the nearest-rank 95th percentile.
#[derive(Clone, Debug)]
pub struct SamplingStats {
    pub k: usize,
    pub replicas: usize,
    pub uppers: Vec<f64>,
    pub median: f64,
    pub p95: f64,
}

/// The guaranteed envelope for the cut distance between a Latinon and the
/// semilatinon associated with one of its k×k samples: 30 / log(k)^(1/8),
/// which holds with probability at least 1 − 30·exp(−k^(1/8)/10). The
/// envelope is astronomically loose at desk scale — it stays above the
/// trivial distance bound until log k exceeds 10^8 — so experiments report
/// raw percentiles next to it rather than asserting it tightly.
pub fn sampling_envelope(k: usize) -> f64 {
    30.0 / (k as f64).ln().powf(0.125)
}

/// Runs `replicas` independent sample–associate–estimate rounds at size k.
/// Each replica draws a sample with a split seed, associates it on a dyadic
/// value grid of roughly k² cells, and estimates its distance to `w` on the
/// M = k common grid. Replicas run in parallel and are merged by order
/// statistics, so results do not depend on the thread count.
pub fn sampling_experiment(
    w: &StepLatinon,
    k: usize,
    replicas: usize,
    seed: u64,
) -> Result<SamplingStats, CutError> {
    assert!((1..=64).contains(&k), "distance estimation above k = 64 is too costly");
    assert!(replicas >= 1, "the experiment needs at least one replica");
    let depth = (2 * k.ilog2()).max(1);
    let mut uppers = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let s = sample_matrix(w, k, split_seed(seed, r as u64));
            let assoc = associate_sample(&s, depth)?;
            let est = delta_upper_semi(
                w.as_semi(),
                &assoc,
                k,
                REPLICA_SEARCH_BUDGET,
                split_seed(seed, (replicas + r) as u64),
            )?;
            Ok(est.upper)
        })
        .collect::<Result<Vec<f64>, CutError>>()?;
    uppers.sort_by(f64::total_cmp);

    let median = if replicas % 2 == 1 {
        uppers[replicas / 2]
    } else {
        0.5 * (uppers[replicas / 2 - 1] + uppers[replicas / 2])
    };
    let rank = (0.95 * replicas as f64).ceil() as usize;
    let p95 = uppers[rank.max(1) - 1];
    Ok(SamplingStats { k, replicas, uppers, median, p95 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use latin_core::gen_cyclic;
    use latinon_core::{represent, uniform};

    #[test]
    fn uniform_medians_shrink_as_samples_grow() {
        let u = uniform();
        let mut last = f64::INFINITY;
        for k in [8, 16] {
            let stats = sampling_experiment(&u, k, 5, 0).unwrap();
            assert!(stats.uppers.iter().all(|&v| (0.0..=3.0).contains(&v)));
            assert!(
                stats.median <= last,
                "median at k = {k} rose to {} from {last}",
                stats.median
            );
            last = stats.median;
        }
    }

    #[test]
    fn cyclic_percentiles_sit_under_the_envelope() {
        let w = represent(&gen_cyclic(32)).unwrap();
        let stats = sampling_experiment(&w, 32, 4, 1).unwrap();
        assert!(stats.p95 < sampling_envelope(32));
        assert!(stats.uppers.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn summaries_are_order_statistics() {
        let stats = sampling_experiment(&uniform(), 2, 4, 3).unwrap();
        assert_eq!(stats.uppers.len(), 4);
        assert!(stats.uppers.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(stats.median, 0.5 * (stats.uppers[1] + stats.uppers[2]));
        assert_eq!(stats.p95, stats.uppers[3]);
    }
}
