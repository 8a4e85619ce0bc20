//! Sampling from step Latinons and the empirical side of the sampling lemma:
//! k×k sampled matrices, their associated semilatinons, ε-spread testing of
//! value multisets, point-subsampled bigraphons, and the replica experiment
//! measuring how fast sampled data approaches its source in cut distance.

mod associate;
mod experiment;
mod sample;
mod spread;
mod subsample;

pub use associate::{associate_matrix, associate_pattern, associate_sample};
pub use experiment::{sampling_envelope, sampling_experiment, SamplingStats};
pub use sample::{sample_matrix, SampledMatrix};
pub use spread::{spread_check, SpreadReport};
pub use subsample::subsample_bigraphon;
