//! Finite quantales, quantale-enriched categories and their Priestley duality.
//!
//! Everything here is exact: elements of a quantale are indices into
//! precomputed tables, and every enumeration is bounded by an explicit budget.

pub mod cauchy;
pub mod docs;
pub mod duality;
pub mod encoding;
pub mod error;
pub mod oracle;
pub mod ordered;
pub mod priestley;
pub mod quantale;
pub mod random;
mod search;
pub mod vcat;
pub mod verify;

/// An element of a finite quantale, as an index into its tables.
pub type Elem = usize;

pub use cauchy::PresheafPair;
pub use duality::{DualObject, MorphismKind, WeightedLattice};
pub use encoding::{LevelFamily, RelationFamily};
pub use error::{Error, Result, DEFAULT_BUDGET};
pub use ordered::FinPoset;
pub use priestley::PriestleyReport;
pub use quantale::{
    build_chain, build_df_quantale, build_table, build_two, godel, lukasiewicz, ChainTensor, Quantale, QuantaleError,
    TotallyBelowRel,
};
pub use vcat::{VCat, VCatError, VFun};
