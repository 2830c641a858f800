//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use qdw_core::random::{random_separated_vcat, rng};
use qdw_core::{godel, lukasiewicz, Quantale, VCat};

pub fn l2() -> Arc<Quantale> {
    Arc::new(lukasiewicz(2))
}

/// `{0 > 1}` over the three-element Gödel chain.
pub fn godel_pair() -> VCat {
    VCat::from_order(Arc::new(godel(3)), &[vec![true, false], vec![true, true]])
}

/// A seeded separated space with `m` points.
pub fn separated(q: &Arc<Quantale>, m: usize, seed: u64) -> VCat {
    random_separated_vcat(q, m, &mut rng(seed))
}
