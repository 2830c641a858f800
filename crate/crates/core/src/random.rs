//! Seeded generators for random instances.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quantale::Quantale;
use crate::vcat::VCat;
use crate::Elem;

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smallest transitive structure above a random reflexive matrix.
///
/// Off-diagonal entries are `⊥` half of the time, which keeps the closure
/// from collapsing towards `⊤`.
pub fn random_vcat(q: &Arc<Quantale>, m: usize, rng: &mut InstanceRng) -> VCat {
    let n = q.size();
    let mut a = vec![q.bottom(); m * m];
    for x in 0..m {
        for y in 0..m {
            a[x * m + y] = if x == y {
                q.join(q.unit(), rng.gen_range(0..n))
            } else if rng.gen_bool(0.5) {
                q.bottom()
            } else {
                rng.gen_range(0..n)
            };
        }
    }
    loop {
        let mut changed = false;
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    let t = q.tensor(a[x * m + y], a[y * m + z]);
                    let j = q.join(a[x * m + z], t);
                    if j != a[x * m + z] {
                        a[x * m + z] = j;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    VCat::from_fn(q.clone(), m, |x, y| a[x * m + y])
}

/// Rejection-samples [`random_vcat`] until the result is separated.
pub fn random_separated_vcat(q: &Arc<Quantale>, m: usize, rng: &mut InstanceRng) -> VCat {
    loop {
        let x = random_vcat(q, m, rng);
        if x.is_separated() {
            return x;
        }
    }
}

/// A uniformly random matrix, lawful or not.
pub fn random_matrix(q: &Quantale, m: usize, rng: &mut InstanceRng) -> Vec<Vec<Elem>> {
    (0..m)
        .map(|_| (0..m).map(|_| rng.gen_range(0..q.size())).collect())
        .collect()
}

/// A random subset of `0..m`, sorted.
pub fn random_subset(m: usize, rng: &mut InstanceRng) -> Vec<usize> {
    (0..m).filter(|_| rng.gen_bool(0.5)).collect()
}

pub fn choose<'a, T>(items: &'a [T], rng: &mut InstanceRng) -> &'a T {
    items.choose(rng).expect("nonempty choice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::lukasiewicz;
    use crate::vcat::validate;

    #[test]
    fn generated_structures_are_lawful() {
        let q = Arc::new(lukasiewicz(3));
        let mut r = rng(7);
        for m in 1..=5 {
            for _ in 0..20 {
                let x = random_vcat(&q, m, &mut r);
                assert!(validate(&q, &x.matrix()).is_ok());
                assert!(random_separated_vcat(&q, m, &mut r).is_separated());
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let q = Arc::new(lukasiewicz(2));
        let a = random_vcat(&q, 4, &mut rng(3));
        let b = random_vcat(&q, 4, &mut rng(3));
        assert_eq!(a, b);
    }
}
