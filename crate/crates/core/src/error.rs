use thiserror::Error;

use crate::quantale::QuantaleError;
use crate::vcat::VCatError;
use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Quantale(#[from] QuantaleError),

    #[error(transparent)]
    VCat(#[from] VCatError),

    /// An enumeration would exceed the configured budget. `cardinality` is the
    /// size of the space (or the number of search nodes) that was requested.
    #[error("search space too large for {what}: {cardinality} exceeds budget {budget}")]
    SearchSpaceTooLarge {
        what: &'static str,
        cardinality: u128,
        budget: u64,
    },

    #[error("incompatible level family at u = {u}: point {witness} breaks B_u = meet of lower levels")]
    IncompatibleFamily { u: Elem, witness: usize },

    #[error("module law violated at point {point} ({side})")]
    ModuleLawViolated { point: usize, side: &'static str },

    #[error("operation requires a Lukasiewicz chain quantale")]
    NotLukasiewicz,

    #[error("subset is not an up-set: {below} is below {above} but not included")]
    NotUpperSet { below: usize, above: usize },

    #[error("map is not antitone at {lower} <= {upper}")]
    NotAntitone { lower: usize, upper: usize },

    #[error("relation is not monotone: ({x}, {y}) is missing")]
    NotMonotoneRelation { x: usize, y: usize },

    #[error("dual object not closed under {op}: {witness}")]
    ClosureFails { op: &'static str, witness: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Default enumeration budget.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Returns `base^exp`, saturating at `u128::MAX`.
pub(crate) fn space_size(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

pub(crate) fn check_budget(what: &'static str, cardinality: u128, budget: u64) -> Result<()> {
    if cardinality > budget as u128 {
        Err(Error::SearchSpaceTooLarge {
            what,
            cardinality,
            budget,
        })
    } else {
        Ok(())
    }
}
