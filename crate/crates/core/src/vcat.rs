//! Finite V-categories and V-functors.
//!
//! A finite V-categorical compact Hausdorff space carries the discrete
//! topology, so at this scale those spaces are just finite V-categories.

use std::sync::Arc;

use thiserror::Error;

use crate::error::{check_budget, space_size, Result};
use crate::quantale::Quantale;
use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VCatError {
    #[error("reflexivity fails at {x}: k is not below a({x}, {x})")]
    ReflexivityFails { x: usize },

    #[error("transitivity fails at ({x}, {y}, {z})")]
    TransitivityFails { x: usize, y: usize, z: usize },

    #[error("not a V-functor: a({x}, {y}) is not below b(f{x}, f{y})")]
    NotAFunctor { x: usize, y: usize },

    #[error("V-categories are over different quantales")]
    QuantaleMismatch,

    #[error("malformed structure: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone)]
pub struct VCat {
    q: Arc<Quantale>,
    name: String,
    labels: Vec<String>,
    m: usize,
    a: Vec<Elem>,
}

impl PartialEq for VCat {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.a == other.a && same_quantale(&self.q, &other.q)
    }
}

impl Eq for VCat {}

pub(crate) fn same_quantale(p: &Arc<Quantale>, q: &Arc<Quantale>) -> bool {
    Arc::ptr_eq(p, q) || **p == **q
}

/// Checks the V-category laws on a raw matrix, reporting the first failure.
pub fn validate(q: &Quantale, a: &[Vec<Elem>]) -> Result<(), VCatError> {
    let m = a.len();
    if a.iter().any(|r| r.len() != m) {
        return Err(VCatError::Malformed(format!("structure must be {m}x{m}")));
    }
    if let Some(bad) = a.iter().flatten().find(|&&u| u >= q.size()) {
        return Err(VCatError::Malformed(format!("entry {bad} is not an element")));
    }
    for x in 0..m {
        if !q.leq(q.unit(), a[x][x]) {
            return Err(VCatError::ReflexivityFails { x });
        }
    }
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                if !q.leq(q.tensor(a[x][y], a[y][z]), a[x][z]) {
                    return Err(VCatError::TransitivityFails { x, y, z });
                }
            }
        }
    }
    Ok(())
}

impl VCat {
    pub fn new(q: Arc<Quantale>, a: Vec<Vec<Elem>>) -> Result<Self, VCatError> {
        validate(&q, &a)?;
        let m = a.len();
        Ok(Self::from_flat(q, m, a.into_iter().flatten().collect()))
    }

    /// Builds without validation; callers guarantee the laws.
    pub(crate) fn from_flat(q: Arc<Quantale>, m: usize, a: Vec<Elem>) -> Self {
        debug_assert_eq!(a.len(), m * m);
        Self {
            q,
            name: String::new(),
            labels: (0..m).map(|i| i.to_string()).collect(),
            m,
            a,
        }
    }

    pub(crate) fn from_fn(q: Arc<Quantale>, m: usize, f: impl Fn(usize, usize) -> Elem) -> Self {
        let a = (0..m)
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Self::from_flat(q, m, a)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.m, "one label per point");
        self.labels = labels;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn quantale(&self) -> &Quantale {
        &self.q
    }

    pub fn quantale_arc(&self) -> &Arc<Quantale> {
        &self.q
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.m
    }

    pub fn a(&self, x: usize, y: usize) -> Elem {
        self.a[x * self.m + y]
    }

    pub fn matrix(&self) -> Vec<Vec<Elem>> {
        self.a.chunks(self.m.max(1)).take(self.m).map(|r| r.to_vec()).collect()
    }

    /// `(V, hom)`.
    pub fn hom_object(q: Arc<Quantale>) -> Self {
        let n = q.size();
        let labels = q.labels().to_vec();
        let qq = q.clone();
        Self::from_fn(q, n, move |u, v| qq.hom(u, v))
            .with_labels(labels)
            .with_name("V")
    }

    /// A partial order viewed as a V-category: `⊤` if `x ≤ y`, else `⊥`.
    pub fn from_order(q: Arc<Quantale>, leq: &[Vec<bool>]) -> Self {
        let (top, bottom) = (q.top(), q.bottom());
        Self::from_fn(q, leq.len(), |x, y| if leq[x][y] { top } else { bottom })
    }

    pub fn discrete(q: Arc<Quantale>, m: usize) -> Self {
        let (k, bottom) = (q.unit(), q.bottom());
        Self::from_fn(q, m, |x, y| if x == y { k } else { bottom })
    }

    pub fn indiscrete(q: Arc<Quantale>, m: usize) -> Self {
        let top = q.top();
        Self::from_fn(q, m, |_, _| top)
    }

    /// A pair of distinct points at mutual distance at least `k`.
    pub fn separation_witness(&self) -> Option<(usize, usize)> {
        let k = self.q.unit();
        for x in self.points() {
            for y in x + 1..self.m {
                if self.q.leq(k, self.a(x, y)) && self.q.leq(k, self.a(y, x)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_separated(&self) -> bool {
        self.separation_witness().is_none()
    }

    pub fn dual(&self) -> Self {
        let mut d = Self::from_fn(self.q.clone(), self.m, |x, y| self.a(y, x));
        d.labels = self.labels.clone();
        d.name = self.name.clone();
        d
    }

    /// Carrier `X × Y` (index `x * |Y| + y`) with the pointwise meet.
    pub fn product(&self, other: &Self) -> Result<Self, VCatError> {
        self.require_same(other)?;
        let (m, n) = (self.m, other.m);
        let q = self.q.clone();
        Ok(Self::from_fn(self.q.clone(), m * n, |p, r| {
            q.meet(self.a(p / n, r / n), other.a(p % n, r % n))
        }))
    }

    /// Disjoint union, `X` first, with `⊥` across the components.
    pub fn coproduct(&self, other: &Self) -> Result<Self, VCatError> {
        self.require_same(other)?;
        let m = self.m;
        let bottom = self.q.bottom();
        Ok(Self::from_fn(self.q.clone(), m + other.m, |x, y| {
            match (x < m, y < m) {
                (true, true) => self.a(x, y),
                (false, false) => other.a(x - m, y - m),
                _ => bottom,
            }
        }))
    }

    /// The full sub-V-category on `points` (kept in the given order).
    pub fn restrict(&self, points: &[usize]) -> Self {
        let labels = points.iter().map(|&p| self.labels[p].clone()).collect();
        Self::from_fn(self.q.clone(), points.len(), |i, j| self.a(points[i], points[j])).with_labels(labels)
    }

    /// Quotient by mutual `k`-closeness; classes are named by their least point.
    pub fn separated_reflection(&self) -> (VFun, VCat) {
        let k = self.q.unit();
        let close = |x: usize, y: usize| self.q.leq(k, self.a(x, y)) && self.q.leq(k, self.a(y, x));
        let mut reps: Vec<usize> = Vec::new();
        let mut map = vec![0; self.m];
        for x in self.points() {
            match reps.iter().position(|&r| close(r, x)) {
                Some(i) => map[x] = i,
                None => {
                    map[x] = reps.len();
                    reps.push(x);
                }
            }
        }
        let quotient = self.restrict(&reps);
        let f = VFun {
            dom: self.clone(),
            cod: quotient.clone(),
            map,
        };
        (f, quotient)
    }

    /// `δ_A(x) = ⋁_{y ∈ A} a(y, x)`.
    pub fn delta(&self, subset: &[usize]) -> Vec<Elem> {
        self.points()
            .map(|x| self.q.join_all(subset.iter().map(|&y| self.a(y, x))))
            .collect()
    }

    fn require_same(&self, other: &Self) -> Result<(), VCatError> {
        if same_quantale(&self.q, &other.q) {
            Ok(())
        } else {
            Err(VCatError::QuantaleMismatch)
        }
    }
}

/// First pair `(x, y)` where `map` expands distances.
pub fn functor_violation(dom: &VCat, cod: &VCat, map: &[usize]) -> Option<(usize, usize)> {
    let q = dom.quantale();
    for x in dom.points() {
        for y in dom.points() {
            if !q.leq(dom.a(x, y), cod.a(map[x], map[y])) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_vfunctor(dom: &VCat, cod: &VCat, map: &[usize]) -> bool {
    map.len() == dom.size() && map.iter().all(|&y| y < cod.size()) && functor_violation(dom, cod, map).is_none()
}

/// All V-functor maps `X → Y`, lexicographic in the map table.
///
/// Fails without searching if `|Y|^|X|` exceeds `budget`.
pub fn functor_maps(x: &VCat, y: &VCat, budget: u64) -> Result<Vec<Vec<usize>>> {
    check_budget("V-functor enumeration", space_size(y.size(), x.size()), budget)?;
    let q = x.quantale();
    let mut out = Vec::new();
    let mut cur = vec![0usize; x.size()];
    fn go(i: usize, x: &VCat, y: &VCat, q: &Quantale, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == x.size() {
            out.push(cur.clone());
            return;
        }
        for v in y.points() {
            cur[i] = v;
            let ok = (0..=i).all(|j| q.leq(x.a(i, j), y.a(v, cur[j])) && q.leq(x.a(j, i), y.a(cur[j], v)));
            if ok {
                go(i + 1, x, y, q, cur, out);
            }
        }
    }
    go(0, x, y, q, &mut cur, &mut out);
    Ok(out)
}

pub fn enumerate_vfunctors(x: &VCat, y: &VCat, budget: u64) -> Result<Vec<VFun>> {
    Ok(functor_maps(x, y, budget)?
        .into_iter()
        .map(|map| VFun {
            dom: x.clone(),
            cod: y.clone(),
            map,
        })
        .collect())
}

/// `a(x, y) = ⋀_i a_i(f_i x, f_i y)`; the empty cone gives the indiscrete structure.
pub fn initial_structure(q: Arc<Quantale>, m: usize, cone: &[(&[usize], &VCat)]) -> VCat {
    let qq = q.clone();
    VCat::from_fn(q, m, |x, y| qq.meet_all(cone.iter().map(|(f, c)| c.a(f[x], f[y]))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VFun {
    dom: VCat,
    cod: VCat,
    map: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub injective: bool,
    pub surjective: bool,
    pub embedding: bool,
}

impl VFun {
    pub fn new(dom: VCat, cod: VCat, map: Vec<usize>) -> Result<Self, VCatError> {
        dom.require_same(&cod)?;
        if map.len() != dom.size() || map.iter().any(|&y| y >= cod.size()) {
            return Err(VCatError::Malformed("map does not fit its domain and codomain".into()));
        }
        if let Some((x, y)) = functor_violation(&dom, &cod, &map) {
            return Err(VCatError::NotAFunctor { x, y });
        }
        Ok(Self { dom, cod, map })
    }

    pub(crate) fn new_unchecked(dom: VCat, cod: VCat, map: Vec<usize>) -> Self {
        Self { dom, cod, map }
    }

    pub fn identity(x: &VCat) -> Self {
        Self {
            dom: x.clone(),
            cod: x.clone(),
            map: x.points().collect(),
        }
    }

    pub fn dom(&self) -> &VCat {
        &self.dom
    }

    pub fn cod(&self) -> &VCat {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &VFun) -> Result<VFun, VCatError> {
        if self.cod != g.dom {
            return Err(VCatError::Malformed("composite does not type-check".into()));
        }
        Ok(VFun {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            map: self.map.iter().map(|&y| g.map[y]).collect(),
        })
    }

    /// Distinct values in increasing order.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.map.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.cod.size()
    }

    /// `a(x, x') = b(f x, f x')` for all points.
    pub fn is_initial(&self) -> bool {
        self.dom.points().all(|x| {
            self.dom
                .points()
                .all(|y| self.dom.a(x, y) == self.cod.a(self.map[x], self.map[y]))
        })
    }

    pub fn classify(&self) -> Classification {
        let injective = self.is_injective();
        Classification {
            injective,
            surjective: self.is_surjective(),
            embedding: injective && self.is_initial(),
        }
    }

    /// Surjection onto the image followed by the initial inclusion.
    pub fn factorize(&self) -> (VFun, VFun) {
        let img = self.image();
        let mid = self.cod.restrict(&img);
        let onto = self
            .map
            .iter()
            .map(|y| img.binary_search(y).expect("value is in the image"))
            .collect();
        (
            VFun::new_unchecked(self.dom.clone(), mid.clone(), onto),
            VFun::new_unchecked(mid, self.cod.clone(), img),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{build_two, lukasiewicz};
    use crate::DEFAULT_BUDGET;

    fn two_chain() -> VCat {
        VCat::from_order(Arc::new(build_two()), &[vec![true, true], vec![false, true]])
    }

    #[test]
    fn two_chain_is_separated() {
        let x = two_chain();
        assert!(validate(x.quantale(), &x.matrix()).is_ok());
        assert!(x.is_separated());
        assert_eq!(x.dual().dual(), x);
    }

    #[test]
    fn indiscrete_is_not_separated() {
        let x = VCat::new(Arc::new(lukasiewicz(2)), vec![vec![2, 2], vec![2, 2]]).unwrap();
        assert_eq!(x.separation_witness(), Some((0, 1)));
        let (f, r) = x.separated_reflection();
        assert_eq!(r.size(), 1);
        assert_eq!(f.map(), [0, 0]);
    }

    #[test]
    fn validate_reports_first_failure() {
        let q = lukasiewicz(2);
        assert_eq!(validate(&q, &[vec![1]]), Err(VCatError::ReflexivityFails { x: 0 }));
        assert!(matches!(
            validate(&q, &[vec![2, 2, 0], vec![0, 2, 2], vec![0, 0, 2]]),
            Err(VCatError::TransitivityFails { x: 0, y: 1, z: 2 })
        ));
    }

    #[test]
    fn functors_into_hom_object() {
        let q = Arc::new(lukasiewicz(2));
        let pt = VCat::discrete(q.clone(), 1);
        let v = VCat::hom_object(q);
        assert_eq!(functor_maps(&pt, &v, DEFAULT_BUDGET).unwrap().len(), 3);

        let two = Arc::new(build_two());
        let chain = two_chain();
        let v2 = VCat::hom_object(two);
        let maps = functor_maps(&chain, &v2, DEFAULT_BUDGET).unwrap();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn enumeration_respects_budget() {
        let q = Arc::new(lukasiewicz(4));
        let x = VCat::discrete(q.clone(), 10);
        assert!(matches!(
            functor_maps(&x, &VCat::hom_object(q), 1000),
            Err(crate::Error::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn product_of_two_chain() {
        let x = two_chain();
        let p = x.product(&x).unwrap();
        assert_eq!(p.size(), 4);
        // (0,1) and (1,0) are incomparable
        assert_eq!(p.a(1, 2), 0);
        assert_eq!(p.a(0, 3), 1);
        assert!(validate(p.quantale(), &p.matrix()).is_ok());
    }

    #[test]
    fn coproduct_and_discrete() {
        let q = Arc::new(lukasiewicz(2));
        let d = VCat::discrete(q.clone(), 2);
        assert_eq!(d.a(0, 1), 0);
        let c = d.coproduct(&VCat::indiscrete(q, 1)).unwrap();
        assert_eq!(c.size(), 3);
        assert_eq!(c.a(2, 0), 0);
    }

    #[test]
    fn empty_cone_is_indiscrete() {
        let q = Arc::new(lukasiewicz(2));
        let s = initial_structure(q, 2, &[]);
        assert!(s.matrix().iter().flatten().all(|&u| u == 2));
    }

    #[test]
    fn factorize_constant_map() {
        let x = two_chain();
        let f = VFun::new(x.clone(), x.clone(), vec![1, 1]).unwrap();
        let (s, e) = f.factorize();
        assert_eq!(s.cod().size(), 1);
        assert_eq!(s.then(&e).unwrap(), f);
        assert!(e.classify().embedding);
    }

    #[test]
    fn delta_is_join_of_columns() {
        let x = two_chain();
        assert_eq!(x.delta(&[0]), vec![1, 1]);
        assert_eq!(x.delta(&[1]), vec![0, 1]);
        assert_eq!(x.delta(&[]), vec![0, 0]);
    }
}
