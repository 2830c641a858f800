//! The dual object `CX`, the comparison `j`, the enriched Vietoris object and
//! the duality checks built on them.
//!
//! `CX` is the set of functors `X → V^op`, ordered and enriched pointwise:
//! `c(φ, ψ) = ⋀_x hom(φ(x), ψ(x))`. With this orientation the weighted
//! (co)limits are the pointwise ones and `CX` for a one-point `X` is `V`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{check_budget, space_size, Error, Result};
use crate::priestley::vop_cone;
use crate::quantale::Quantale;
use crate::search;
use crate::vcat::{functor_maps, VCat};
use crate::Elem;

/// A finite lattice with copowers and powers by quantale elements, an
/// optional monoid and a `V`-valued structure.
pub trait WeightedLattice {
    fn quantale(&self) -> &Quantale;
    fn size(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn bottom(&self) -> usize;
    fn top(&self) -> usize;
    fn join(&self, a: usize, b: usize) -> usize;
    fn meet(&self, a: usize, b: usize) -> usize;
    fn copower(&self, u: Elem, a: usize) -> usize;
    fn power(&self, u: Elem, a: usize) -> usize;
    /// `None` where the tensor leaves the carrier.
    fn tensor(&self, a: usize, b: usize) -> Option<usize>;
    fn unit(&self) -> Option<usize>;
    fn structure(&self, a: usize, b: usize) -> Elem;
}

impl WeightedLattice for Quantale {
    fn quantale(&self) -> &Quantale {
        self
    }
    fn size(&self) -> usize {
        Quantale::size(self)
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        Quantale::leq(self, a, b)
    }
    fn bottom(&self) -> usize {
        Quantale::bottom(self)
    }
    fn top(&self) -> usize {
        Quantale::top(self)
    }
    fn join(&self, a: usize, b: usize) -> usize {
        Quantale::join(self, a, b)
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        Quantale::meet(self, a, b)
    }
    fn copower(&self, u: Elem, a: usize) -> usize {
        Quantale::tensor(self, u, a)
    }
    fn power(&self, u: Elem, a: usize) -> usize {
        self.hom(u, a)
    }
    fn tensor(&self, a: usize, b: usize) -> Option<usize> {
        Some(Quantale::tensor(self, a, b))
    }
    fn unit(&self) -> Option<usize> {
        Some(Quantale::unit(self))
    }
    fn structure(&self, a: usize, b: usize) -> Elem {
        self.hom(a, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismKind {
    /// `⊥`, binary joins and copowers.
    FinSup,
    /// `FinSup` plus `⊤`, binary meets and powers.
    FinLat,
    /// `FinSup` plus unit and tensor.
    Monoid,
    /// `FinSup` plus `h(a ⊗ b) ≤ h(a) ⊗ h(b)`.
    LaxMonoid,
}

#[derive(Debug, Clone)]
pub struct DualObject {
    x: VCat,
    carrier: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, usize>,
    bottom: usize,
    top: usize,
    join: Vec<usize>,
    meet: Vec<usize>,
    copower: Vec<usize>,
    power: Vec<usize>,
    tensor: Vec<Option<usize>>,
    unit: Option<usize>,
    structure: Vec<Elem>,
}

impl DualObject {
    pub fn source(&self) -> &VCat {
        &self.x
    }

    pub fn carrier(&self) -> &[Vec<Elem>] {
        &self.carrier
    }

    pub fn element(&self, i: usize) -> &[Elem] {
        &self.carrier[i]
    }

    pub fn index_of(&self, phi: &[Elem]) -> Option<usize> {
        self.index.get(phi).copied()
    }

    pub fn label(&self, i: usize) -> String {
        let q = self.x.quantale();
        let parts: Vec<&str> = self.carrier[i].iter().map(|&u| q.label(u)).collect();
        format!("({})", parts.join(","))
    }

    /// The structure as a V-category on the carrier.
    pub fn as_vcat(&self) -> VCat {
        let n = self.carrier.len();
        let labels = (0..n).map(|i| self.label(i)).collect();
        VCat::from_fn(self.x.quantale_arc().clone(), n, |a, b| self.structure[a * n + b]).with_labels(labels)
    }

    /// `a(−, x)`.
    pub fn representable(&self, x: usize) -> usize {
        let phi: Vec<Elem> = self.x.points().map(|y| self.x.a(y, x)).collect();
        self.index[&phi]
    }
}

fn pointwise(a: &[Elem], b: &[Elem], f: impl Fn(Elem, Elem) -> Elem) -> Vec<Elem> {
    a.iter().zip(b).map(|(&s, &t)| f(s, t)).collect()
}

pub fn dual_object(x: &VCat, budget: u64) -> Result<DualObject> {
    let carrier = vop_cone(x, budget)?;
    let q = x.quantale();
    let n = carrier.len();
    let index: HashMap<Vec<Elem>, usize> = carrier.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let find = |phi: Vec<Elem>, op: &'static str| -> Result<usize> {
        index.get(&phi).copied().ok_or_else(|| Error::ClosureFails {
            op,
            witness: format!("{phi:?}"),
        })
    };
    let bottom = find(vec![q.bottom(); x.size()], "bottom")?;
    let top = find(vec![q.top(); x.size()], "top")?;
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    let mut tensor = vec![None; n * n];
    let mut structure = vec![0; n * n];
    for (i, f) in carrier.iter().enumerate() {
        for (j, g) in carrier.iter().enumerate() {
            join[i * n + j] = find(pointwise(f, g, |s, t| q.join(s, t)), "join")?;
            meet[i * n + j] = find(pointwise(f, g, |s, t| q.meet(s, t)), "meet")?;
            tensor[i * n + j] = index.get(&pointwise(f, g, |s, t| q.tensor(s, t))).copied();
            structure[i * n + j] = q.meet_all(f.iter().zip(g).map(|(&s, &t)| q.hom(s, t)));
        }
    }
    let mut copower = vec![0; q.size() * n];
    let mut power = vec![0; q.size() * n];
    for u in q.elements() {
        for (i, f) in carrier.iter().enumerate() {
            copower[u * n + i] = find(f.iter().map(|&s| q.tensor(u, s)).collect(), "copower")?;
            power[u * n + i] = find(f.iter().map(|&s| q.hom(u, s)).collect(), "power")?;
        }
    }
    let unit = index.get(&vec![q.unit(); x.size()]).copied();
    Ok(DualObject {
        x: x.clone(),
        carrier,
        index,
        bottom,
        top,
        join,
        meet,
        copower,
        power,
        tensor,
        unit,
        structure,
    })
}

impl WeightedLattice for DualObject {
    fn quantale(&self) -> &Quantale {
        self.x.quantale()
    }
    fn size(&self) -> usize {
        self.carrier.len()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        let q = self.x.quantale();
        self.carrier[a].iter().zip(&self.carrier[b]).all(|(&s, &t)| q.leq(s, t))
    }
    fn bottom(&self) -> usize {
        self.bottom
    }
    fn top(&self) -> usize {
        self.top
    }
    fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.carrier.len() + b]
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.carrier.len() + b]
    }
    fn copower(&self, u: Elem, a: usize) -> usize {
        self.copower[u * self.carrier.len() + a]
    }
    fn power(&self, u: Elem, a: usize) -> usize {
        self.power[u * self.carrier.len() + a]
    }
    fn tensor(&self, a: usize, b: usize) -> Option<usize> {
        self.tensor[a * self.carrier.len() + b]
    }
    fn unit(&self) -> Option<usize> {
        self.unit
    }
    fn structure(&self, a: usize, b: usize) -> Elem {
        self.structure[a * self.carrier.len() + b]
    }
}

/// Checks a map table directly against the preservation laws.
pub fn is_morphism<S, T>(src: &S, tgt: &T, h: &[usize], kind: MorphismKind) -> bool
where
    S: WeightedLattice + ?Sized,
    T: WeightedLattice + ?Sized,
{
    let n = src.size();
    let q = src.quantale();
    if h.len() != n || h.iter().any(|&v| v >= tgt.size()) {
        return false;
    }
    let finsup = h[src.bottom()] == tgt.bottom()
        && (0..n).all(|a| (0..n).all(|b| h[src.join(a, b)] == tgt.join(h[a], h[b])))
        && q.elements()
            .all(|u| (0..n).all(|a| h[src.copower(u, a)] == tgt.copower(u, h[a])))
        && (0..n).all(|a| (0..n).all(|b| q.leq(src.structure(a, b), tgt.structure(h[a], h[b]))));
    if !finsup {
        return false;
    }
    match kind {
        MorphismKind::FinSup => true,
        MorphismKind::FinLat => {
            h[src.top()] == tgt.top()
                && (0..n).all(|a| (0..n).all(|b| h[src.meet(a, b)] == tgt.meet(h[a], h[b])))
                && q.elements()
                    .all(|u| (0..n).all(|a| h[src.power(u, a)] == tgt.power(u, h[a])))
        }
        MorphismKind::Monoid => {
            let unit_ok = match (src.unit(), tgt.unit()) {
                (Some(s), Some(t)) => h[s] == t,
                _ => false,
            };
            unit_ok
                && (0..n).all(|a| {
                    (0..n).all(|b| match src.tensor(a, b) {
                        None => true,
                        Some(s) => tgt.tensor(h[a], h[b]) == Some(h[s]),
                    })
                })
        }
        MorphismKind::LaxMonoid => (0..n).all(|a| {
            (0..n).all(|b| match src.tensor(a, b) {
                None => true,
                Some(s) => tgt.tensor(h[a], h[b]).is_some_and(|t| tgt.leq(h[s], t)),
            })
        }),
    }
}

pub fn is_finsup_morphism<T: WeightedLattice + ?Sized>(cx: &DualObject, tgt: &T, h: &[usize]) -> bool {
    is_morphism(cx, tgt, h, MorphismKind::FinSup)
}

pub fn is_finlat_morphism<T: WeightedLattice + ?Sized>(cx: &DualObject, tgt: &T, h: &[usize]) -> bool {
    is_morphism(cx, tgt, h, MorphismKind::FinLat)
}

pub fn is_monoid_morphism<T: WeightedLattice + ?Sized>(cx: &DualObject, tgt: &T, h: &[usize]) -> bool {
    is_morphism(cx, tgt, h, MorphismKind::Monoid)
}

pub fn is_lax_monoid_morphism<T: WeightedLattice + ?Sized>(cx: &DualObject, tgt: &T, h: &[usize]) -> bool {
    is_morphism(cx, tgt, h, MorphismKind::LaxMonoid)
}

/// All morphisms of a kind, by constraint propagation; sorted.
pub fn enumerate_morphisms<S, T>(src: &S, tgt: &T, kind: MorphismKind, budget: u64) -> Result<Vec<Vec<usize>>>
where
    S: WeightedLattice + ?Sized,
    T: WeightedLattice + ?Sized,
{
    search::morphisms(src, tgt, kind, budget)
}

/// The same set by scanning all `|T|^|S|` tables.
pub fn enumerate_morphisms_naive<S, T>(src: &S, tgt: &T, kind: MorphismKind, budget: u64) -> Result<Vec<Vec<usize>>>
where
    S: WeightedLattice + ?Sized,
    T: WeightedLattice + ?Sized,
{
    let (n, m) = (src.size(), tgt.size());
    check_budget("naive morphism enumeration", space_size(m, n), budget)?;
    let mut out = Vec::new();
    let mut h = vec![0usize; n];
    loop {
        if is_morphism(src, tgt, &h, kind) {
            out.push(h.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            h[i] += 1;
            if h[i] < m {
                break;
            }
            h[i] = 0;
        }
    }
}

/// `j(φ)(ψ) = ⋁_x ψ(x) ⊗ φ(x)`, as a table on the carrier of `CX`.
pub fn j_map(cx: &DualObject, phi: &[Elem]) -> Vec<Elem> {
    let q = cx.x.quantale();
    cx.carrier
        .iter()
        .map(|psi| q.join_all(psi.iter().zip(phi).map(|(&s, &t)| q.tensor(s, t))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JIsoReport {
    pub vietoris_size: usize,
    pub dual_size: usize,
    pub morphism_count: usize,
    pub injective: bool,
    pub surjective: bool,
    /// Two points of `VX` with the same image.
    pub collision: Option<(Vec<Elem>, Vec<Elem>)>,
    /// A finsup morphism outside the image of `j`.
    pub missed: Option<Vec<Elem>>,
}

impl JIsoReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Compares `j: VX → FinSup(CX, V)` with the enumerated finsup morphisms.
pub fn verify_j_iso(x: &VCat, budget: u64) -> Result<JIsoReport> {
    verify_j_against(x, MorphismKind::FinSup, budget)
}

/// As [`verify_j_iso`], against morphisms of any kind.
pub fn verify_j_against(x: &VCat, kind: MorphismKind, budget: u64) -> Result<JIsoReport> {
    let cx = dual_object(x, budget)?;
    let vx = vietoris_carrier(x, budget)?;
    let morphisms = enumerate_morphisms(&cx, x.quantale(), kind, budget)?;
    let mut seen: HashMap<Vec<Elem>, &Vec<Elem>> = HashMap::new();
    let mut collision = None;
    for phi in &vx {
        let img = j_map(&cx, phi);
        if let Some(prev) = seen.insert(img, phi) {
            collision.get_or_insert_with(|| (prev.clone(), phi.clone()));
        }
    }
    let missed = morphisms.iter().find(|h| !seen.contains_key(*h)).cloned();
    let image_inside = seen.keys().all(|h| morphisms.binary_search(h).is_ok());
    Ok(JIsoReport {
        vietoris_size: vx.len(),
        dual_size: cx.size(),
        morphism_count: morphisms.len(),
        injective: collision.is_none() && image_inside,
        surjective: missed.is_none(),
        collision,
        missed,
    })
}

/// Functors `X → (V, hom)`.
pub fn vietoris_carrier(x: &VCat, budget: u64) -> Result<Vec<Vec<Elem>>> {
    functor_maps(x, &VCat::hom_object(x.quantale_arc().clone()), budget)
}

/// `VX` with `d(φ, φ') = ⋀_x hom(φ'(x), φ(x))`, so that `x ↦ a(x, −)` is a
/// functor `X → VX` and `V1` is `V^op`.
pub fn vietoris(x: &VCat, budget: u64) -> Result<(Vec<Vec<Elem>>, VCat)> {
    let carrier = vietoris_carrier(x, budget)?;
    let q = x.quantale_arc().clone();
    let qq = q.clone();
    let space = VCat::from_fn(q, carrier.len(), |i, j| {
        qq.meet_all(carrier[j].iter().zip(&carrier[i]).map(|(&s, &t)| qq.hom(s, t)))
    });
    Ok((carrier, space))
}

/// A Kleisli arrow `X → VY`: one functor `Y → (V, hom)` per point of `X`.
pub type KleisliArrow = Vec<Vec<Elem>>;

/// `x ↦ a(x, −)`.
pub fn kleisli_unit(x: &VCat) -> KleisliArrow {
    x.points().map(|s| x.points().map(|t| x.a(s, t)).collect()).collect()
}

/// `(Ψ ∘ Φ)(x)(z) = ⋁_y Φ(x)(y) ⊗ Ψ(y)(z)`.
pub fn kleisli_compose(q: &Quantale, phi: &KleisliArrow, psi: &KleisliArrow) -> KleisliArrow {
    let z_size = psi.first().map_or(0, Vec::len);
    phi.iter()
        .map(|row| {
            (0..z_size)
                .map(|z| q.join_all(row.iter().zip(psi).map(|(&s, col)| q.tensor(s, col[z]))))
                .collect()
        })
        .collect()
}

/// Whether `Φ` is a functor `X → VY`.
pub fn is_kleisli_arrow(x: &VCat, y: &VCat, phi: &KleisliArrow) -> bool {
    let q = x.quantale();
    let v = VCat::hom_object(y.quantale_arc().clone());
    phi.len() == x.size()
        && phi
            .iter()
            .all(|f| f.len() == y.size() && crate::vcat::is_vfunctor(y, &v, f))
        && x.points().all(|s| {
            x.points().all(|t| {
                let d = q.meet_all(phi[t].iter().zip(&phi[s]).map(|(&a, &b)| q.hom(a, b)));
                q.leq(x.a(s, t), d)
            })
        })
}

/// `C(Φ): CY → CX`, `ψ ↦ (x ↦ j(Φ(x))(ψ))`, as a table of indices.
pub fn dual_of_kleisli(cx: &DualObject, cy: &DualObject, phi: &KleisliArrow) -> Result<Vec<usize>> {
    let q = cx.x.quantale();
    cy.carrier
        .iter()
        .map(|psi| {
            let img: Vec<Elem> = phi
                .iter()
                .map(|row| q.join_all(psi.iter().zip(row).map(|(&s, &t)| q.tensor(s, t))))
                .collect();
            cx.index_of(&img).ok_or_else(|| Error::ClosureFails {
                op: "kleisli dual",
                witness: format!("{img:?}"),
            })
        })
        .collect()
}

/// `φ ↦ φ ∘ f`, as a table `CX → CY` for `f: Y → X`.
pub fn contravariant_action(cx: &DualObject, cy: &DualObject, f: &[usize]) -> Result<Vec<usize>> {
    cx.carrier
        .iter()
        .map(|phi| {
            let pulled: Vec<Elem> = f.iter().map(|&p| phi[p]).collect();
            cy.index_of(&pulled).ok_or_else(|| Error::ClosureFails {
                op: "precomposition",
                witness: format!("{pulled:?}"),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullFaithfulnessReport {
    pub functor_count: usize,
    pub finlat_count: usize,
    pub injective: bool,
    pub surjective: bool,
    pub missed: Option<Vec<usize>>,
}

impl FullFaithfulnessReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Functors `Y → X` against FinLat morphisms `CX → CY`.
pub fn verify_full_faithfulness(x: &VCat, y: &VCat, budget: u64) -> Result<FullFaithfulnessReport> {
    let cx = dual_object(x, budget)?;
    let cy = dual_object(y, budget)?;
    let maps = functor_maps(y, x, budget)?;
    let finlat = enumerate_morphisms(&cx, &cy, MorphismKind::FinLat, budget)?;
    let mut images = BTreeSet::new();
    let mut injective = true;
    for f in &maps {
        let h = contravariant_action(&cx, &cy, f)?;
        injective &= finlat.binary_search(&h).is_ok();
        injective &= images.insert(h);
    }
    let missed = finlat.iter().find(|h| !images.contains(*h)).cloned();
    Ok(FullFaithfulnessReport {
        functor_count: maps.len(),
        finlat_count: finlat.len(),
        injective,
        surjective: missed.is_none(),
        missed,
    })
}

fn require_lukasiewicz(q: &Quantale) -> Result<()> {
    if q.is_lukasiewicz_chain() {
        Ok(())
    } else {
        Err(Error::NotLukasiewicz)
    }
}

/// Closes a set of maps `X → V` under pointwise meets (including the empty
/// one), powers, `⊥`, binary joins and copowers. The result is sorted.
pub fn closed_subcategory(x: &VCat, seed: &[Vec<Elem>]) -> Result<Vec<Vec<Elem>>> {
    let q = x.quantale();
    require_lukasiewicz(q)?;
    if let Some(bad) = seed
        .iter()
        .find(|f| f.len() != x.size() || f.iter().any(|&u| u >= q.size()))
    {
        return Err(Error::InvalidArgument(format!("{bad:?} is not a map on the points")));
    }
    let mut set: BTreeSet<Vec<Elem>> = seed.iter().cloned().collect();
    set.insert(vec![q.top(); x.size()]);
    set.insert(vec![q.bottom(); x.size()]);
    let mut frontier: Vec<Vec<Elem>> = set.iter().cloned().collect();
    while let Some(f) = frontier.pop() {
        let mut fresh = Vec::new();
        for u in q.elements() {
            fresh.push(f.iter().map(|&s| q.tensor(u, s)).collect::<Vec<_>>());
            fresh.push(f.iter().map(|&s| q.hom(u, s)).collect());
        }
        for g in &set {
            fresh.push(pointwise(&f, g, |s, t| q.join(s, t)));
            fresh.push(pointwise(&f, g, |s, t| q.meet(s, t)));
        }
        for h in fresh {
            if set.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// `(y, x) ↦ ⋀{φ(x) : φ ∈ R, φ(y) = ⊤}`.
pub fn induced_structure(x: &VCat, r: &[Vec<Elem>]) -> Result<VCat> {
    let q = x.quantale();
    require_lukasiewicz(q)?;
    let top = q.top();
    Ok(VCat::from_fn(x.quantale_arc().clone(), x.size(), |s, t| {
        q.meet_all(r.iter().filter(|f| f[s] == top).map(|f| f[t]))
    }))
}

/// `μ(α) = ⋀{φ ∈ R : α ≤ φ}`.
pub fn mu_from_r(q: &Quantale, r: &[Vec<Elem>], alpha: &[Elem]) -> Vec<Elem> {
    let mut out = vec![q.top(); alpha.len()];
    for f in r.iter().filter(|f| alpha.iter().zip(*f).all(|(&a, &b)| q.leq(a, b))) {
        out = pointwise(&out, f, |s, t| q.meet(s, t));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuReport {
    pub subsets_checked: usize,
    /// `(A, μ(χ_A), ⋁_{y∈A} a(y, −))` at the first mismatch.
    pub mismatch: Option<(Vec<usize>, Vec<Elem>, Vec<Elem>)>,
}

/// `μ(χ_A) = δ_A` for every `A ⊆ X`, with `R` the functors `X → (V, hom)`.
pub fn mu_formula_check(x: &VCat, budget: u64) -> Result<MuReport> {
    let q = x.quantale();
    require_lukasiewicz(q)?;
    check_budget("subset enumeration", space_size(2, x.size()), budget)?;
    let r = vietoris_carrier(x, budget)?;
    let mut checked = 0;
    for mask in 0u64..1 << x.size() {
        let a: Vec<usize> = x.points().filter(|&p| mask >> p & 1 == 1).collect();
        let chi: Vec<Elem> = x
            .points()
            .map(|p| if mask >> p & 1 == 1 { q.top() } else { q.bottom() })
            .collect();
        let mu = mu_from_r(q, &r, &chi);
        let delta = x.delta(&a);
        checked += 1;
        if mu != delta {
            return Ok(MuReport {
                subsets_checked: checked,
                mismatch: Some((a, mu, delta)),
            });
        }
    }
    Ok(MuReport {
        subsets_checked: checked,
        mismatch: None,
    })
}

/// A functor `X → (V, hom)` that is not the meet of the complements
/// `ψ^⊥ = hom(ψ, ⊥)` (`ψ ∈ CX`) lying above it.
pub fn girard_density_witness(x: &VCat, budget: u64) -> Result<Option<Vec<Elem>>> {
    let q = x.quantale();
    let cx = dual_object(x, budget)?;
    let complements: Vec<Vec<Elem>> = cx
        .carrier
        .iter()
        .map(|p| p.iter().map(|&u| q.negation(u)).collect())
        .collect();
    for phi in vietoris_carrier(x, budget)? {
        if mu_from_r(q, &complements, &phi) != phi {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// Evaluation `φ ↦ φ(x)` as a table on `CX`.
pub fn evaluation(cx: &DualObject, x: usize) -> Vec<Elem> {
    cx.carrier.iter().map(|phi| phi[x]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{build_two, godel, lukasiewicz};
    use crate::DEFAULT_BUDGET;
    use std::sync::Arc;

    const B: u64 = DEFAULT_BUDGET;

    fn down_pair(q: Quantale) -> VCat {
        // points 0 > 1
        VCat::from_order(Arc::new(q), &[vec![true, false], vec![true, true]])
    }

    #[test]
    fn godel_example_carrier() {
        let cx = dual_object(&down_pair(godel(3)), B).unwrap();
        let expected: Vec<Vec<usize>> = (0..3)
            .flat_map(|u| (0..3).map(move |v| vec![u, v]))
            .filter(|p| p[0] <= p[1])
            .collect();
        assert_eq!(cx.carrier(), expected.as_slice());
    }

    #[test]
    fn one_point_dual_is_v() {
        let q = Arc::new(lukasiewicz(2));
        let cx = dual_object(&VCat::discrete(q.clone(), 1), B).unwrap();
        assert_eq!(cx.size(), 3);
        let v = VCat::hom_object(q);
        assert_eq!(cx.as_vcat().matrix(), v.matrix());
    }

    #[test]
    fn two_chain_dual_has_three_elements() {
        let x = VCat::from_order(Arc::new(build_two()), &[vec![true, true], vec![false, true]]);
        assert_eq!(dual_object(&x, B).unwrap().size(), 3);
    }

    #[test]
    fn weighted_universal_properties() {
        let x = down_pair(lukasiewicz(3));
        let cx = dual_object(&x, B).unwrap();
        let q = x.quantale();
        for u in q.elements() {
            for f in 0..cx.size() {
                for g in 0..cx.size() {
                    assert_eq!(cx.structure(cx.copower(u, f), g), q.hom(u, cx.structure(f, g)));
                    assert_eq!(cx.structure(g, cx.power(u, f)), q.hom(u, cx.structure(g, f)));
                }
            }
        }
    }

    #[test]
    fn tensor_by_u_is_finsup() {
        let q = lukasiewicz(2);
        let cx = dual_object(&VCat::discrete(Arc::new(q.clone()), 1), B).unwrap();
        for u in q.elements() {
            let h: Vec<usize> = (0..3).map(|v| q.tensor(u, cx.element(v)[0])).collect();
            assert!(is_finsup_morphism(&cx, &q, &h));
            assert_eq!(h[cx.top()], u);
        }
    }

    #[test]
    fn phi_half_is_monoid_morphism() {
        let q = godel(3);
        let cx = dual_object(&down_pair(q.clone()), B).unwrap();
        let h: Vec<usize> = cx.carrier().iter().map(|p| q.join(p[0], q.meet(1, p[1]))).collect();
        assert!(is_monoid_morphism(&cx, &q, &h));
        assert_eq!(h[cx.index_of(&[0, 2]).unwrap()], 1);
    }

    #[test]
    fn search_matches_naive_enumeration() {
        for q in [lukasiewicz(2), godel(3), build_two()] {
            for x in [down_pair(q.clone()), VCat::discrete(Arc::new(q.clone()), 1)] {
                let cx = dual_object(&x, B).unwrap();
                for kind in [
                    MorphismKind::FinSup,
                    MorphismKind::FinLat,
                    MorphismKind::Monoid,
                    MorphismKind::LaxMonoid,
                ] {
                    assert_eq!(
                        enumerate_morphisms(&cx, &q, kind, B).unwrap(),
                        enumerate_morphisms_naive(&cx, &q, kind, B).unwrap(),
                        "{kind:?} on {}",
                        q.name()
                    );
                }
            }
        }
    }

    #[test]
    fn j_is_bijective_on_l2_point() {
        let x = VCat::discrete(Arc::new(lukasiewicz(2)), 1);
        let r = verify_j_iso(&x, B).unwrap();
        assert!(r.bijective());
        assert_eq!(r.morphism_count, 3);
    }

    #[test]
    fn vietoris_of_point_is_vop() {
        let q = Arc::new(lukasiewicz(2));
        let (_, v1) = vietoris(&VCat::discrete(q.clone(), 1), B).unwrap();
        assert_eq!(v1.matrix(), crate::priestley::vop_object(q).matrix());
    }

    #[test]
    fn kleisli_unit_laws() {
        let q = Arc::new(lukasiewicz(2));
        let x = VCat::new(q.clone(), vec![vec![2, 1], vec![0, 2]]).unwrap();
        let (vx, _) = vietoris(&x, B).unwrap();
        let eta = kleisli_unit(&x);
        assert!(is_kleisli_arrow(&x, &x, &eta));
        let phi: KleisliArrow = vec![vx[1].clone(), vx[vx.len() - 1].clone()];
        if is_kleisli_arrow(&x, &x, &phi) {
            assert_eq!(kleisli_compose(&q, &eta, &phi), phi);
            assert_eq!(kleisli_compose(&q, &phi, &eta), phi);
        }
    }

    #[test]
    fn full_faithfulness_small() {
        let q = Arc::new(lukasiewicz(2));
        let pt = VCat::discrete(q.clone(), 1);
        let r = verify_full_faithfulness(&pt, &pt, B).unwrap();
        assert_eq!((r.functor_count, r.finlat_count), (1, 1));
        let chain = VCat::from_order(q, &[vec![true, true], vec![false, true]]);
        let r = verify_full_faithfulness(&chain, &pt, B).unwrap();
        assert_eq!((r.functor_count, r.finlat_count), (2, 2));
        assert!(r.bijective());
    }

    #[test]
    fn induced_structure_of_all_functors() {
        let q = Arc::new(lukasiewicz(2));
        let x = VCat::new(q, vec![vec![2, 1, 0], vec![0, 2, 0], vec![1, 1, 2]]).unwrap();
        let r = vietoris_carrier(&x, B).unwrap();
        assert_eq!(induced_structure(&x, &r).unwrap(), x);
        assert!(mu_formula_check(&x, B).unwrap().mismatch.is_none());
    }

    #[test]
    fn closure_requires_lukasiewicz() {
        let x = VCat::discrete(Arc::new(godel(3)), 1);
        assert!(matches!(closed_subcategory(&x, &[]), Err(Error::NotLukasiewicz)));
    }

    #[test]
    fn girard_density_on_l3() {
        let q = Arc::new(lukasiewicz(3));
        let x = VCat::new(q, vec![vec![3, 1], vec![2, 3]]).unwrap();
        assert_eq!(girard_density_witness(&x, B).unwrap(), None);
    }
}
