//! Brute-force reference computations, independent of the fast paths.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::cauchy::{enumerate_adjoint_pairs, l_closure_against, weighted_hom_preserves_colimits};
use crate::error::{check_budget, space_size, Result};
use crate::quantale::{Quantale, TotallyBelowRel};
use crate::vcat::{functor_maps, validate, VCat, VFun};
use crate::Elem;

/// `v ≪ u` by quantifying over every subset `A` with `u ≤ ⋁A`.
pub fn totally_below_by_subsets(q: &Quantale) -> TotallyBelowRel {
    let n = q.size();
    assert!(n < 24, "subset oracle is exponential");
    let joins: Vec<Elem> = (0u32..1 << n)
        .map(|mask| q.join_all((0..n).filter(|&i| mask >> i & 1 == 1)))
        .collect();
    let mut rel = vec![false; n * n];
    for v in 0..n {
        for u in 0..n {
            rel[v * n + u] = (0u32..1 << n)
                .all(|mask| !q.leq(u, joins[mask as usize]) || (0..n).any(|a| mask >> a & 1 == 1 && q.leq(v, a)));
        }
    }
    TotallyBelowRel::new(n, rel)
}

/// First failing quantale law, checked directly on the tables.
pub fn quantale_law_failure(q: &Quantale) -> Option<String> {
    let els: Vec<Elem> = q.elements().collect();
    let k = q.unit();
    for &u in &els {
        if q.hom(k, u) != u {
            return Some(format!("hom(k, {u}) != {u}"));
        }
        if q.hom(u, q.top()) != q.top() {
            return Some(format!("hom({u}, top) != top"));
        }
        if q.tensor(k, u) != u {
            return Some(format!("unit law at {u}"));
        }
        for &v in &els {
            if q.tensor(u, v) != q.tensor(v, u) {
                return Some(format!("commutativity at ({u}, {v})"));
            }
            let derived = q.join_all(els.iter().copied().filter(|&w| q.leq(q.tensor(u, w), v)));
            if derived != q.hom(u, v) {
                return Some(format!("hom({u}, {v}) is not the derived join"));
            }
            for &w in &els {
                if q.leq(q.tensor(u, w), v) != q.leq(w, q.hom(u, v)) {
                    return Some(format!("adjunction at ({u}, {v}, {w})"));
                }
                if q.tensor(q.tensor(u, v), w) != q.tensor(u, q.tensor(v, w)) {
                    return Some(format!("associativity at ({u}, {v}, {w})"));
                }
                if q.leq(v, w) && !q.leq(q.tensor(u, v), q.tensor(u, w)) {
                    return Some(format!("monotonicity at ({u}, {v}, {w})"));
                }
                if q.tensor(u, q.join(v, w)) != q.join(q.tensor(u, v), q.tensor(u, w)) {
                    return Some(format!("join preservation at ({u}, {v}, {w})"));
                }
            }
        }
    }
    if q.totally_below() != totally_below_by_subsets(q) {
        return Some("totally-below relation disagrees with the subset oracle".into());
    }
    None
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut r = p.clone();
            r.insert(i, n - 1);
            out.push(r);
        }
    }
    out
}

/// Every lawful structure on `m` points, in lexicographic order of the flat
/// matrix.
pub fn all_vcats(q: &Arc<Quantale>, m: usize, budget: u64) -> Result<Vec<VCat>> {
    check_budget("structure enumeration", space_size(q.size(), m * m), budget)?;
    let n = q.size();
    let mut out = Vec::new();
    let mut flat = vec![0usize; m * m];
    loop {
        let rows: Vec<Vec<Elem>> = flat.chunks(m.max(1)).take(m).map(|r| r.to_vec()).collect();
        if validate(q, &rows).is_ok() {
            out.push(VCat::from_flat(q.clone(), m, flat.clone()));
        }
        let mut i = flat.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            flat[i] += 1;
            if flat[i] < n {
                break;
            }
            flat[i] = 0;
        }
    }
}

/// One lawful structure per isomorphism class on `m` points.
pub fn all_vcats_up_to_iso(q: &Arc<Quantale>, m: usize, budget: u64) -> Result<Vec<VCat>> {
    let perms = permutations(m);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in all_vcats(q, m, budget)? {
        let canon = perms
            .iter()
            .map(|p| {
                let mut flat = vec![0; m * m];
                for s in 0..m {
                    for t in 0..m {
                        flat[p[s] * m + p[t]] = x.a(s, t);
                    }
                }
                flat
            })
            .min()
            .expect("at least one permutation");
        if seen.insert(canon) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Separated structures with `1..=max_points` points, up to isomorphism.
pub fn separated_codomains(q: &Arc<Quantale>, max_points: usize, budget: u64) -> Result<Vec<VCat>> {
    let mut out = Vec::new();
    for m in 1..=max_points {
        out.extend(
            all_vcats_up_to_iso(q, m, budget)?
                .into_iter()
                .filter(VCat::is_separated),
        );
    }
    Ok(out)
}

/// L-closure quantified over the given separated codomains.
pub fn l_closure_bounded(x: &VCat, subset: &[usize], codomains: &[VCat], budget: u64) -> Result<Vec<usize>> {
    l_closure_against(x, subset, codomains, budget)
}

/// For every `f: X → Y` there is exactly one `g: PX → Y` with `g ∘ q = f`.
/// Returns the first `(f, count)` that breaks uniqueness or existence.
pub fn reflection_universal_failure(quotient: &VFun, y: &VCat, budget: u64) -> Result<Option<(Vec<usize>, usize)>> {
    let x = quotient.dom();
    let px = quotient.cod();
    let gs = functor_maps(px, y, budget)?;
    for f in functor_maps(x, y, budget)? {
        let count = gs
            .iter()
            .filter(|g| x.points().all(|p| g[quotient.apply(p)] == f[p]))
            .count();
        if count != 1 {
            return Ok(Some((f, count)));
        }
    }
    Ok(None)
}

/// A presheaf `φ` where "has an adjoint partner" and "`[φ, −]` preserves
/// finite weighted colimits" disagree.
pub fn left_adjoint_criterion_failure(x: &VCat, budget: u64) -> Result<Option<Vec<Elem>>> {
    let phis = crate::cauchy::left_modules(x, budget)?;
    let pairs = enumerate_adjoint_pairs(x, budget)?;
    for phi in &phis {
        let adjoint = pairs.iter().any(|p| &p.phi == phi);
        if adjoint != weighted_hom_preserves_colimits(x, phi, &phis) {
            return Ok(Some(phi.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{boolean_square, build_two, diamond_m3, godel, lukasiewicz};
    use crate::DEFAULT_BUDGET;

    #[test]
    fn fast_totally_below_matches_oracle() {
        for q in [
            build_two(),
            lukasiewicz(2),
            lukasiewicz(7),
            godel(5),
            boolean_square(),
            diamond_m3(),
        ] {
            assert_eq!(q.totally_below(), totally_below_by_subsets(&q), "{}", q.name());
            assert_eq!(quantale_law_failure(&q), None, "{}", q.name());
        }
    }

    #[test]
    fn structure_counts() {
        let q = Arc::new(build_two());
        // preorders on two points: 4 labelled, 3 up to isomorphism
        assert_eq!(all_vcats(&q, 2, DEFAULT_BUDGET).unwrap().len(), 4);
        assert_eq!(all_vcats_up_to_iso(&q, 2, DEFAULT_BUDGET).unwrap().len(), 3);
        // preorders on three points: 29 labelled, 9 up to isomorphism
        assert_eq!(all_vcats(&q, 3, DEFAULT_BUDGET).unwrap().len(), 29);
        assert_eq!(all_vcats_up_to_iso(&q, 3, DEFAULT_BUDGET).unwrap().len(), 9);
    }
}
