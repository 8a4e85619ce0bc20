//! Cut norms and the cut distance for step Latinons: subset-certificate cut
//! norms for plain and distribution-valued step functions, order displacement
//! of block permutations, upper/lower distance certificates, homomorphism
//! densities for bigraphon tuples, and a weak regularity partitioner.

mod cutnorm;
mod delta;
mod displacement;
mod hom;
mod regularity;

pub use cutnorm::{bigraphon_difference, cutnorm_distval, cutnorm_step, CutMode};
pub use delta::{
    counting_constant, delta_estimate, delta_lower, delta_upper, delta_upper_semi, DeltaEstimate,
};
pub use displacement::order_displacement;
pub use hom::{hom_density_tuple, LabeledDigraph};
pub use regularity::{stepping, weak_regularity, RegularityResult};

use latinon_core::LatinonError;
use thiserror::Error;

/// Exact cut-norm enumeration walks subsets of the smaller side; beyond this
/// many cells the walk is no longer affordable.
pub const EXACT_SIDE_LIMIT: usize = 22;

/// Restart count shared by every randomized search in this crate: alternating
/// cut-norm maximization and the annealing over block permutations.
pub const SEARCH_RESTARTS: u64 = 64;

#[derive(Debug, Error, PartialEq)]
pub enum CutError {
    #[error("exact mode enumerates the smaller side, which has {cells} cells (limit {limit})")]
    TooManyCellsForExact { cells: usize, limit: usize },
    #[error("operands disagree on {what}")]
    PartitionMismatch { what: String },
    #[error("graph has {got} vertices; exact summation caps at {limit}")]
    TooManyVertices { got: usize, limit: usize },
    #[error(transparent)]
    Latinon(#[from] LatinonError),
}

/// A cut-norm value together with the subset certificate that attains it.
///
/// `rows` and `cols` list the chosen cells; `val_cells`, when present, is the
/// half-open range of value cells forming the interval of a
/// distribution-valued norm. When `exact` is false the search may have missed
/// the optimum, so `value` is a lower bound on the true norm; the certificate
/// always evaluates back to `value` either way.
#[derive(Debug, Clone, PartialEq)]
pub struct CutNormResult {
    pub value: f64,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub val_cells: Option<(usize, usize)>,
    pub exact: bool,
}

impl CutNormResult {
    pub(crate) fn plain(value: f64, rows: Vec<usize>, cols: Vec<usize>, exact: bool) -> Self {
        CutNormResult { value, rows, cols, val_cells: None, exact }
    }
}
