//! The ordered side: finite posets, up-set hyperspaces, the functionals `Φ_A`
//! and relations as hemimorphisms.
//!
//! A finite poset is discrete as a space, so closed up-sets are just up-sets.
//! Subsets are `u64` bitmasks.

use std::sync::Arc;

use serde::Serialize;

use crate::duality::{dual_object, enumerate_morphisms, is_morphism, DualObject, MorphismKind, WeightedLattice};
use crate::error::{Error, Result};
use crate::quantale::Quantale;
use crate::vcat::VCat;
use crate::Elem;

pub const MAX_POSET_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FinPoset {
    n: usize,
    leq: Vec<bool>,
}

impl FinPoset {
    pub fn new(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        if n > MAX_POSET_POINTS {
            return Err(Error::InvalidArgument(format!(
                "posets are limited to {MAX_POSET_POINTS} points"
            )));
        }
        if leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!("order must be {n}x{n}")));
        }
        let p = Self {
            n,
            leq: leq.iter().flatten().copied().collect(),
        };
        for x in 0..n {
            if !p.leq(x, x) {
                return Err(Error::InvalidArgument(format!("order not reflexive at {x}")));
            }
            for y in 0..n {
                if x != y && p.leq(x, y) && p.leq(y, x) {
                    return Err(Error::InvalidArgument(format!("order not antisymmetric at ({x}, {y})")));
                }
                for z in 0..n {
                    if p.leq(x, y) && p.leq(y, z) && !p.leq(x, z) {
                        return Err(Error::InvalidArgument(format!(
                            "order not transitive at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |x, y| x <= y)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(n, |x, y| x == y)
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Self {
            n,
            leq: (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .map(|(x, y)| f(x, y))
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| self.leq(x, y)).collect())
            .collect()
    }

    /// `⊤` where `x ≤ y`, `⊥` elsewhere.
    pub fn as_vcat(&self, q: Arc<Quantale>) -> VCat {
        VCat::from_order(q, &self.matrix())
    }

    pub fn up_closure(&self, set: u64) -> u64 {
        (0..self.n)
            .filter(|&y| (0..self.n).any(|x| set >> x & 1 == 1 && self.leq(x, y)))
            .fold(0, |m, y| m | 1 << y)
    }

    pub fn principal(&self, x: usize) -> u64 {
        self.up_closure(1 << x)
    }

    /// A pair `(below, above)` with `below ∈ set`, `below ≤ above ∉ set`.
    pub fn upper_witness(&self, set: u64) -> Option<(usize, usize)> {
        for x in (0..self.n).filter(|&x| set >> x & 1 == 1) {
            if let Some(y) = (0..self.n).find(|&y| self.leq(x, y) && set >> y & 1 == 0) {
                return Some((x, y));
            }
        }
        None
    }

    pub fn up_sets(&self) -> Vec<u64> {
        (0..1u64 << self.n)
            .filter(|&s| self.upper_witness(s).is_none())
            .collect()
    }

    pub fn is_monotone(&self, cod: &FinPoset, f: &[usize]) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| !self.leq(x, y) || cod.leq(f[x], f[y])))
    }

    fn relabel(&self, perm: &[usize]) -> Self {
        let mut leq = vec![false; self.n * self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                leq[perm[x] * self.n + perm[y]] = self.leq(x, y);
            }
        }
        Self { n: self.n, leq }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One poset per isomorphism class on `n` points, in a fixed order.
pub fn all_posets(n: usize) -> Vec<FinPoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|(x, y)| x != y)
        .collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut leq = vec![vec![false; n]; n];
        for (i, r) in leq.iter_mut().enumerate() {
            r[i] = true;
        }
        for (b, &(x, y)) in pairs.iter().enumerate() {
            leq[x][y] = mask >> b & 1 == 1;
        }
        let Ok(p) = FinPoset::new(&leq) else { continue };
        let canon = perms.iter().map(|perm| p.relabel(perm).leq).min().expect("n! > 0");
        if seen.insert(canon) {
            out.push(p);
        }
    }
    out
}

/// Up-sets of `P` ordered by reverse inclusion, so the singleton is below `∅`
/// in `H(1)`.
pub fn vietoris_h(p: &FinPoset) -> (Vec<u64>, FinPoset) {
    let sets = p.up_sets();
    let h = FinPoset::from_fn(sets.len(), |a, b| sets[b] & !sets[a] == 0);
    (sets, h)
}

/// `H f(A) = ↑f[A]`.
pub fn vietoris_h_map(p: &FinPoset, q: &FinPoset, f: &[usize]) -> Vec<usize> {
    let (src, _) = vietoris_h(p);
    let (tgt, _) = vietoris_h(q);
    src.iter()
        .map(|&a| {
            let img = (0..p.size())
                .filter(|&x| a >> x & 1 == 1)
                .fold(0u64, |m, x| m | 1 << f[x]);
            let up = q.up_closure(img);
            tgt.iter().position(|&b| b == up).expect("closure is an up-set")
        })
        .collect()
}

/// `Φ_A(ψ) = max_{x ∈ A} ψ(x)`, with `Φ_∅ = ⊥`.
pub fn phi_a(p: &FinPoset, q: &Quantale, a: u64, psi: &[Elem]) -> Result<Elem> {
    if let Some((below, above)) = p.upper_witness(a) {
        return Err(Error::NotUpperSet { below, above });
    }
    for x in 0..p.size() {
        for y in 0..p.size() {
            if p.leq(x, y) && !q.leq(psi[y], psi[x]) {
                return Err(Error::NotAntitone { lower: x, upper: y });
            }
        }
    }
    Ok(phi_unchecked(q, a, psi))
}

fn phi_unchecked(q: &Quantale, a: u64, psi: &[Elem]) -> Elem {
    q.join_all((0..psi.len()).filter(|&x| a >> x & 1 == 1).map(|x| psi[x]))
}

/// `Φ_A` as a table on `CP`.
pub fn phi_table(cp: &DualObject, a: u64) -> Vec<Elem> {
    let q = cp.quantale();
    cp.carrier().iter().map(|psi| phi_unchecked(q, a, psi)).collect()
}

/// Nonempty and not covered by two up-sets without being inside one.
pub fn is_irreducible(p: &FinPoset, a: u64) -> bool {
    if a == 0 {
        return false;
    }
    let ups = p.up_sets();
    ups.iter()
        .all(|&b| ups.iter().all(|&c| a & !(b | c) != 0 || a & !b == 0 || a & !c == 0))
}

/// `Φ_A(⊤) = ⊤` and `Φ_A(ψ₁ ⊗ ψ₂) = Φ_A(ψ₁) ⊗ Φ_A(ψ₂)` on `CP`.
pub fn phi_is_multiplicative(cp: &DualObject, a: u64) -> bool {
    let q = cp.quantale();
    let h = phi_table(cp, a);
    let n = cp.size();
    h[cp.top()] == q.top()
        && (0..n).all(|i| {
            (0..n).all(|j| match cp.tensor(i, j) {
                Some(t) => h[t] == q.tensor(h[i], h[j]),
                None => true,
            })
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub upsets_checked: usize,
    /// `(A, irreducible, multiplicative)` at the first disagreement.
    pub mismatch: Option<(u64, bool, bool)>,
}

pub fn irreducibility_equivalence(p: &FinPoset, q: Arc<Quantale>, budget: u64) -> Result<IrreducibilityReport> {
    let cp = dual_object(&p.as_vcat(q), budget)?;
    let ups = p.up_sets();
    for &a in &ups {
        let irr = is_irreducible(p, a);
        let mult = phi_is_multiplicative(&cp, a);
        if irr != mult {
            return Ok(IrreducibilityReport {
                upsets_checked: ups.len(),
                mismatch: Some((a, irr, mult)),
            });
        }
    }
    Ok(IrreducibilityReport {
        upsets_checked: ups.len(),
        mismatch: None,
    })
}

/// A relation `X ⇸ Y` as one bitmask of related `y` per `x`.
pub type Relation = Vec<u64>;

/// A missing pair `(x', y')` forced by `x' ≤ x`, `y ≤ y'`, `(x, y) ∈ R`.
pub fn monotone_relation_witness(p: &FinPoset, q: &FinPoset, r: &Relation) -> Option<(usize, usize)> {
    for x in 0..p.size() {
        for y in (0..q.size()).filter(|&y| r[x] >> y & 1 == 1) {
            for x2 in (0..p.size()).filter(|&x2| p.leq(x2, x)) {
                for y2 in (0..q.size()).filter(|&y2| q.leq(y, y2)) {
                    if r[x2] >> y2 & 1 == 0 {
                        return Some((x2, y2));
                    }
                }
            }
        }
    }
    None
}

/// `CR: CY → CX`, `CR(ψ)(x) = max{ψ(y) : (x, y) ∈ R}`, as index tables.
pub fn hemimorphism_from_relation(
    p: &FinPoset,
    q: &FinPoset,
    r: &Relation,
    cx: &DualObject,
    cy: &DualObject,
) -> Result<Vec<usize>> {
    if let Some((x, y)) = monotone_relation_witness(p, q, r) {
        return Err(Error::NotMonotoneRelation { x, y });
    }
    let v = cy.quantale();
    cy.carrier()
        .iter()
        .map(|psi| {
            let img: Vec<Elem> = (0..p.size()).map(|x| phi_unchecked(v, r[x], psi)).collect();
            cx.index_of(&img).ok_or_else(|| Error::ClosureFails {
                op: "relation image",
                witness: format!("{img:?}"),
            })
        })
        .collect()
}

/// Whether `CR` is a strict monoid morphism.
pub fn function_detection(p: &FinPoset, q: &FinPoset, r: &Relation, cx: &DualObject, cy: &DualObject) -> Result<bool> {
    let h = hemimorphism_from_relation(p, q, r, cx, cy)?;
    let n = cy.size();
    Ok(h[cy.top()] == cx.top()
        && (0..n).all(|i| {
            (0..n).all(|j| match cy.tensor(i, j) {
                Some(t) => cx.tensor(h[i], h[j]) == Some(h[t]),
                None => true,
            })
        }))
}

/// `R = {(x, y) : f(x) ≤ y}` for some monotone `f`.
pub fn is_graph_of_map(p: &FinPoset, q: &FinPoset, r: &Relation) -> bool {
    let m = q.size();
    let mut f = vec![0usize; p.size()];
    loop {
        if p.is_monotone(q, &f) && (0..p.size()).all(|x| r[x] == q.principal(f[x])) {
            return true;
        }
        let mut i = p.size();
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
        }
    }
}

/// All monotone relations `X ⇸ Y`.
pub fn monotone_relations(p: &FinPoset, q: &FinPoset) -> Vec<Relation> {
    let (n, m) = (p.size(), q.size());
    (0u64..1 << (n * m))
        .map(|bits| (0..n).map(|x| bits >> (x * m) & ((1 << m) - 1)).collect::<Relation>())
        .filter(|r| monotone_relation_witness(p, q, r).is_none())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HIsoReport {
    pub upsets: usize,
    pub lax_morphisms: usize,
    pub bijective: bool,
    /// A lax monoid morphism that is no `Φ_A`.
    pub missed: Option<Vec<Elem>>,
}

/// Up-sets against lax monoid FinSup morphisms `CP → V`.
pub fn verify_h_iso(p: &FinPoset, q: Arc<Quantale>, budget: u64) -> Result<HIsoReport> {
    let cp = dual_object(&p.as_vcat(q.clone()), budget)?;
    let lax = enumerate_morphisms(&cp, &*q, MorphismKind::LaxMonoid, budget)?;
    let ups = p.up_sets();
    let mut phis: Vec<Vec<Elem>> = ups.iter().map(|&a| phi_table(&cp, a)).collect();
    phis.sort();
    let distinct = phis.windows(2).all(|w| w[0] != w[1]);
    let all_lax = phis.iter().all(|h| is_morphism(&cp, &*q, h, MorphismKind::LaxMonoid));
    let missed = lax.iter().find(|h| phis.binary_search(h).is_err()).cloned();
    Ok(HIsoReport {
        upsets: ups.len(),
        lax_morphisms: lax.len(),
        bijective: distinct && all_lax && missed.is_none(),
        missed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{godel, lukasiewicz};
    use crate::DEFAULT_BUDGET;

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn h_of_small_posets() {
        let (sets, h) = vietoris_h(&FinPoset::chain(1));
        assert_eq!(sets, vec![0, 1]);
        // {•} ≤ ∅
        assert!(h.leq(1, 0) && !h.leq(0, 1));
        assert_eq!(vietoris_h(&FinPoset::antichain(2)).0.len(), 4);
        assert_eq!(vietoris_h(&FinPoset::chain(0)).0, vec![0]);
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| all_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }

    #[test]
    fn phi_a_examples() {
        let q = godel(3);
        // points 0 > 1
        let p = FinPoset::new(&[vec![true, false], vec![true, true]]).unwrap();
        assert_eq!(phi_a(&p, &q, 0, &[1, 2]).unwrap(), 0);
        assert_eq!(phi_a(&p, &q, 0b11, &[1, 2]).unwrap(), 2);
        assert_eq!(phi_a(&p, &q, p.principal(1), &[1, 2]).unwrap(), 2);
        assert_eq!(phi_a(&p, &q, p.principal(0), &[1, 2]).unwrap(), 1);
        assert!(matches!(
            phi_a(&p, &q, 0b10, &[1, 2]),
            Err(Error::NotUpperSet { below: 1, above: 0 })
        ));
        assert!(matches!(
            phi_a(&p, &q, 0b11, &[2, 1]),
            Err(Error::NotAntitone { lower: 1, upper: 0 })
        ));
    }

    #[test]
    fn irreducible_upsets() {
        let p = FinPoset::antichain(2);
        assert!(is_irreducible(&p, p.principal(0)));
        assert!(!is_irreducible(&p, 0b11));
        assert!(!is_irreducible(&p, 0));
    }

    #[test]
    fn equivalence_on_vee() {
        let p = FinPoset::new(&[
            vec![true, true, true],
            vec![false, true, false],
            vec![false, false, true],
        ])
        .unwrap();
        for q in [lukasiewicz(2), godel(3)] {
            let r = irreducibility_equivalence(&p, Arc::new(q), B).unwrap();
            assert_eq!(r.mismatch, None);
        }
    }

    #[test]
    fn identity_and_total_relations() {
        let q = Arc::new(lukasiewicz(2));
        let x = FinPoset::chain(2);
        let cx = dual_object(&x.as_vcat(q.clone()), B).unwrap();
        let id: Relation = (0..2).map(|p| x.principal(p)).collect();
        assert!(function_detection(&x, &x, &id, &cx, &cx).unwrap());
        let y = FinPoset::antichain(2);
        let cy = dual_object(&y.as_vcat(q), B).unwrap();
        let total: Relation = vec![0b11, 0b11];
        assert!(!function_detection(&x, &y, &total, &cx, &cy).unwrap());
        assert!(!is_graph_of_map(&x, &y, &total));
    }

    #[test]
    fn non_monotone_relation_is_rejected() {
        let q = Arc::new(lukasiewicz(2));
        let x = FinPoset::chain(2);
        let cx = dual_object(&x.as_vcat(q), B).unwrap();
        // (1, 0) in R forces (0, 0) and (1, 1)
        let r: Relation = vec![0, 0b01];
        assert!(matches!(
            hemimorphism_from_relation(&x, &x, &r, &cx, &cx),
            Err(Error::NotMonotoneRelation { .. })
        ));
    }

    #[test]
    fn h_iso_on_a_point() {
        let p = FinPoset::chain(1);
        assert!(verify_h_iso(&p, Arc::new(lukasiewicz(2)), B).unwrap().bijective);
        let g = verify_h_iso(&p, Arc::new(godel(3)), B).unwrap();
        assert!(!g.bijective);
        assert_eq!(g.missed, Some(vec![0, 1, 1]));
    }
}
