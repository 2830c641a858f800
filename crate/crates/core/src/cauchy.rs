//! L-closure, density, adjoint presheaf pairs and Cauchy completion.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{check_budget, Error, Result};
use crate::vcat::{functor_maps, VCat, VFun};
use crate::Elem;

/// Points that every pair of functors `X → Y` agreeing on `subset` also agree on,
/// intersected over all codomains `Y` given.
pub fn l_closure_against(x: &VCat, subset: &[usize], codomains: &[VCat], budget: u64) -> Result<Vec<usize>> {
    let mut inside = vec![true; x.size()];
    for y in codomains {
        let maps = functor_maps(x, y, budget)?;
        mark_disagreements(&maps, subset, &mut inside);
    }
    Ok(x.points().filter(|&p| inside[p]).collect())
}

fn mark_disagreements(maps: &[Vec<usize>], subset: &[usize], inside: &mut [bool]) {
    let mut groups: BTreeMap<Vec<usize>, &[usize]> = BTreeMap::new();
    for f in maps {
        let key: Vec<usize> = subset.iter().map(|&m| f[m]).collect();
        let first = *groups.entry(key).or_insert(f);
        for (p, keep) in inside.iter_mut().enumerate() {
            *keep &= first[p] == f[p];
        }
    }
}

/// The L-closure, computed against functors into `(V, hom)`.
pub fn l_closure(x: &VCat, subset: &[usize], budget: u64) -> Result<Vec<usize>> {
    let v = VCat::hom_object(x.quantale_arc().clone());
    l_closure_against(x, subset, &[v], budget)
}

/// `l_closure(cod, image) = cod`.
pub fn is_dense(f: &VFun, budget: u64) -> Result<bool> {
    Ok(l_closure(f.cod(), &f.image(), budget)?.len() == f.cod().size())
}

/// An embedding whose image is L-closed.
pub fn is_closed_embedding(f: &VFun, budget: u64) -> Result<bool> {
    if !f.classify().embedding {
        return Ok(false);
    }
    Ok(l_closure(f.cod(), &f.image(), budget)? == f.image())
}

/// Right cancellation: `g ∘ f = h ∘ f` implies `g = h` for functors
/// `g, h: cod → Y`, for every `Y` given.
pub fn is_epi_against(f: &VFun, codomains: &[VCat], budget: u64) -> Result<bool> {
    let img = f.image();
    for y in codomains {
        let maps = functor_maps(f.cod(), y, budget)?;
        let mut seen: BTreeMap<Vec<usize>, &Vec<usize>> = BTreeMap::new();
        for g in &maps {
            let key: Vec<usize> = img.iter().map(|&p| g[p]).collect();
            if let Some(h) = seen.insert(key, g) {
                if h != g {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Epimorphism test against `(V, hom)`, which suffices among separated spaces.
pub fn is_epi_sep(f: &VFun, budget: u64) -> Result<bool> {
    let v = VCat::hom_object(f.cod().quantale_arc().clone());
    is_epi_against(f, &[v], budget)
}

/// Whether `f` is the equalizer of one pair of functors into `(V, hom)^p`
/// with `p ≤ max_power`.
///
/// A pair into a power is a tuple of pairs into `V`, so this picks, for each
/// point outside the image, the first pair agreeing on the image and
/// separating that point, and counts the distinct pairs used.
pub fn is_regmono_sep(f: &VFun, max_power: usize, budget: u64) -> Result<bool> {
    if !f.classify().embedding {
        return Ok(false);
    }
    let cod = f.cod();
    let img = f.image();
    let v = VCat::hom_object(cod.quantale_arc().clone());
    let maps = functor_maps(cod, &v, budget)?;
    let mut used: Vec<(usize, usize)> = Vec::new();
    for y in cod.points().filter(|p| img.binary_search(p).is_err()) {
        if used.iter().any(|&(g, h)| maps[g][y] != maps[h][y]) {
            continue;
        }
        let pair = (0..maps.len()).find_map(|g| {
            (g + 1..maps.len())
                .find(|&h| maps[g][y] != maps[h][y] && img.iter().all(|&p| maps[g][p] == maps[h][p]))
                .map(|h| (g, h))
        });
        match pair {
            Some(p) => used.push(p),
            None => return Ok(false),
        }
    }
    Ok(used.len() <= max_power)
}

/// `φ` plays the role of a distributor `1 ⇸ X`, `ψ` of `X ⇸ 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PresheafPair {
    pub phi: Vec<Elem>,
    pub psi: Vec<Elem>,
}

/// First module-law failure as `(point, side)`.
pub fn module_law_witness(x: &VCat, p: &PresheafPair) -> Option<(usize, &'static str)> {
    let q = x.quantale();
    if p.phi.len() != x.size() || p.psi.len() != x.size() {
        return Some((0, "length"));
    }
    for t in x.points() {
        let lhs = q.join_all(x.points().map(|s| q.tensor(x.a(s, t), p.phi[s])));
        if !q.leq(lhs, p.phi[t]) {
            return Some((t, "phi"));
        }
        let rhs = q.join_all(x.points().map(|s| q.tensor(p.psi[s], x.a(t, s))));
        if !q.leq(rhs, p.psi[t]) {
            return Some((t, "psi"));
        }
    }
    None
}

/// `φ = a(x₀, −)`, `ψ = a(−, x₀)`.
pub fn representable_pair(x: &VCat, x0: usize) -> PresheafPair {
    PresheafPair {
        phi: x.points().map(|y| x.a(x0, y)).collect(),
        psi: x.points().map(|y| x.a(y, x0)).collect(),
    }
}

/// Unit `k ≤ ⋁ φ ⊗ ψ` and counit `φ(x) ⊗ ψ(y) ≤ a(y, x)`.
pub fn is_left_adjoint_pair(x: &VCat, p: &PresheafPair) -> Result<bool> {
    if let Some((point, side)) = module_law_witness(x, p) {
        return Err(Error::ModuleLawViolated { point, side });
    }
    Ok(adjoint_unchecked(x, p))
}

fn adjoint_unchecked(x: &VCat, p: &PresheafPair) -> bool {
    let q = x.quantale();
    let unit = q.join_all(x.points().map(|t| q.tensor(p.phi[t], p.psi[t])));
    q.leq(q.unit(), unit)
        && x.points()
            .all(|s| x.points().all(|t| q.leq(q.tensor(p.phi[s], p.psi[t]), x.a(t, s))))
}

/// Functors `X → (V, hom)`: the `φ` halves.
pub fn left_modules(x: &VCat, budget: u64) -> Result<Vec<Vec<Elem>>> {
    functor_maps(x, &VCat::hom_object(x.quantale_arc().clone()), budget)
}

/// Functors `X → V^op`: the `ψ` halves.
pub fn right_modules(x: &VCat, budget: u64) -> Result<Vec<Vec<Elem>>> {
    functor_maps(x, &VCat::hom_object(x.quantale_arc().clone()).dual(), budget)
}

/// All adjoint pairs, ordered by `φ` then `ψ` in enumeration order.
pub fn enumerate_adjoint_pairs(x: &VCat, budget: u64) -> Result<Vec<PresheafPair>> {
    let phis = left_modules(x, budget)?;
    let psis = right_modules(x, budget)?;
    check_budget(
        "adjoint pair enumeration",
        phis.len() as u128 * psis.len() as u128,
        budget,
    )?;
    let mut out = Vec::new();
    for phi in &phis {
        for psi in &psis {
            let p = PresheafPair {
                phi: phi.clone(),
                psi: psi.clone(),
            };
            if adjoint_unchecked(x, &p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// `d(p, p') = ⋁_x φ(x) ⊗ ψ'(x)`.
pub fn pair_distance(x: &VCat, p: &PresheafPair, r: &PresheafPair) -> Elem {
    let q = x.quantale();
    q.join_all(x.points().map(|t| q.tensor(p.phi[t], r.psi[t])))
}

#[derive(Debug, Clone)]
pub struct Completion {
    pub pairs: Vec<PresheafPair>,
    pub space: VCat,
    pub yoneda: VFun,
}

pub fn cauchy_completion(x: &VCat, budget: u64) -> Result<Completion> {
    let pairs = enumerate_adjoint_pairs(x, budget)?;
    let q: Arc<_> = x.quantale_arc().clone();
    let space = VCat::from_fn(q, pairs.len(), |i, j| pair_distance(x, &pairs[i], &pairs[j]));
    let map = x
        .points()
        .map(|p| {
            let rep = representable_pair(x, p);
            pairs
                .iter()
                .position(|r| *r == rep)
                .expect("representables are adjoint")
        })
        .collect();
    let yoneda = VFun::new_unchecked(x.clone(), space.clone(), map);
    Ok(Completion { pairs, space, yoneda })
}

/// Every adjoint pair is `k`-equivalent to a representable one.
pub fn is_cauchy_complete(x: &VCat, budget: u64) -> Result<bool> {
    let c = cauchy_completion(x, budget)?;
    let q = x.quantale();
    let k = q.unit();
    let img = c.yoneda.image();
    Ok(c.space.points().all(|p| {
        img.iter()
            .any(|&r| q.leq(k, c.space.a(p, r)) && q.leq(k, c.space.a(r, p)))
    }))
}

/// `[φ, −] = ⋀_x hom(φ(x), −(x))` preserves `⊥`, binary joins and copowers
/// `u ⊗ −` over the set `modules` (assumed closed under those operations).
pub fn weighted_hom_preserves_colimits(x: &VCat, phi: &[Elem], modules: &[Vec<Elem>]) -> bool {
    let q = x.quantale();
    let at = |f: &[Elem]| q.meet_all(x.points().map(|t| q.hom(phi[t], f[t])));
    let bottom = vec![q.bottom(); x.size()];
    if at(&bottom) != q.bottom() {
        return false;
    }
    for f in modules {
        for g in modules {
            let j: Vec<Elem> = f.iter().zip(g).map(|(&a, &b)| q.join(a, b)).collect();
            if at(&j) != q.join(at(f), at(g)) {
                return false;
            }
        }
        for u in q.elements() {
            let c: Vec<Elem> = f.iter().map(|&a| q.tensor(u, a)).collect();
            if at(&c) != q.tensor(u, at(f)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{build_two, lukasiewicz};
    use crate::DEFAULT_BUDGET;

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn closure_examples() {
        let q = Arc::new(lukasiewicz(2));
        let ind = VCat::indiscrete(q.clone(), 2);
        assert_eq!(l_closure(&ind, &[0], B).unwrap(), vec![0, 1]);
        assert_eq!(l_closure(&ind, &[0, 1], B).unwrap(), vec![0, 1]);
        let d = VCat::discrete(Arc::new(build_two()), 2);
        assert_eq!(l_closure(&d, &[0], B).unwrap(), vec![0]);
    }

    #[test]
    fn identity_is_everything() {
        let q = Arc::new(lukasiewicz(2));
        let x = VCat::new(q, vec![vec![2, 1], vec![0, 2]]).unwrap();
        let id = VFun::identity(&x);
        assert!(is_dense(&id, B).unwrap());
        assert!(is_closed_embedding(&id, B).unwrap());
        assert!(is_epi_sep(&id, B).unwrap());
        assert!(is_regmono_sep(&id, 1, B).unwrap());
    }

    #[test]
    fn representables_are_adjoint() {
        let q = Arc::new(lukasiewicz(2));
        let x = VCat::new(q, vec![vec![2, 1, 0], vec![0, 2, 0], vec![1, 1, 2]]).unwrap();
        for p in x.points() {
            assert!(is_left_adjoint_pair(&x, &representable_pair(&x, p)).unwrap());
        }
    }

    #[test]
    fn half_pair_fails_unit() {
        let x = VCat::discrete(Arc::new(lukasiewicz(2)), 2);
        let p = PresheafPair {
            phi: vec![1, 1],
            psi: vec![1, 1],
        };
        assert!(!is_left_adjoint_pair(&x, &p).unwrap());
    }

    #[test]
    fn module_law_is_checked() {
        let q = Arc::new(lukasiewicz(2));
        let x = VCat::new(q, vec![vec![2, 2], vec![0, 2]]).unwrap();
        let p = PresheafPair {
            phi: vec![2, 0],
            psi: vec![0, 0],
        };
        assert!(matches!(
            is_left_adjoint_pair(&x, &p),
            Err(Error::ModuleLawViolated { point: 1, side: "phi" })
        ));
    }

    #[test]
    fn completion_of_a_point() {
        let x = VCat::discrete(Arc::new(lukasiewicz(2)), 1);
        let c = cauchy_completion(&x, B).unwrap();
        assert_eq!(c.space.size(), 1);
        assert!(is_cauchy_complete(&x, B).unwrap());
    }

    #[test]
    fn yoneda_is_isometric() {
        let q = Arc::new(lukasiewicz(2));
        let x = VCat::new(q, vec![vec![2, 1], vec![1, 2]]).unwrap();
        let c = cauchy_completion(&x, B).unwrap();
        assert!(c.yoneda.is_initial());
    }
}
