//! Finite quantales with exact, table-driven arithmetic.
//!
//! Elements are dense indices `0..n`. The order and the tensor are the only
//! primary data; joins, meets and the residuation `hom` are always derived, so
//! a constructed [`Quantale`] cannot carry inconsistent tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error("malformed quantale tables: {0}")]
    Malformed(String),

    #[error("not a lattice: {reason}")]
    NotALattice { reason: String },

    #[error("tensor is not a commutative monoid: {law} fails at {witness:?}")]
    TensorNotMonoid { law: &'static str, witness: Vec<Elem> },

    #[error("adjunction fails: tensor({u}, {w}) <= {v} disagrees with {w} <= hom({u}, {v})")]
    AdjunctionFails { u: Elem, v: Elem, w: Elem },

    #[error("carrier has {size} elements, above the bound {bound}")]
    CarrierTooLarge { size: u128, bound: usize },

    #[error("lattice is not completely distributive (fails at element {witness})")]
    NotCompletelyDistributive { witness: Elem },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Tensor used on the finite chains `{0, 1/m, ..., 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainTensor {
    /// `u ⊙ v = max(0, u + v - 1)`.
    Lukasiewicz,
    /// `u ∧ v`.
    Minimum,
}

impl ChainTensor {
    /// The tensor on the level indices of an `m + 1` element chain.
    pub fn apply(self, m: usize, i: usize, j: usize) -> usize {
        match self {
            ChainTensor::Lukasiewicz => (i + j).saturating_sub(m),
            ChainTensor::Minimum => i.min(j),
        }
    }
}

/// Largest carrier the df-quantale constructor builds by default.
pub const DEFAULT_MAX_CARRIER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantale {
    name: String,
    labels: Vec<String>,
    n: usize,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    tensor: Vec<Elem>,
    hom: Vec<Elem>,
    unit: Elem,
    bottom: Elem,
    top: Elem,
    dense: Vec<Elem>,
}

/// `rel[v][u]` holds iff `v ≪ u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotallyBelowRel {
    n: usize,
    rel: Vec<bool>,
}

impl TotallyBelowRel {
    pub fn new(n: usize, rel: Vec<bool>) -> Self {
        assert_eq!(rel.len(), n * n);
        Self { n, rel }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Whether `v ≪ u`.
    pub fn holds(&self, v: Elem, u: Elem) -> bool {
        self.rel[v * self.n + u]
    }

    /// All `v` with `v ≪ u`.
    pub fn below(&self, u: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&v| self.holds(v, u)).collect()
    }

    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for v in 0..self.n {
            for u in 0..self.n {
                if self.holds(v, u) {
                    out.push((v, u));
                }
            }
        }
        out
    }
}

fn square<T: Clone>(rows: &[Vec<T>], n: usize, what: &str) -> Result<Vec<T>, QuantaleError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(QuantaleError::Malformed(format!("{what} must be {n}x{n}")));
    }
    Ok(rows.iter().flatten().cloned().collect())
}

impl Quantale {
    /// Validates an order and a tensor table and derives everything else.
    ///
    /// Laws are checked in a fixed order (partial order, lattice, monoid,
    /// adjunction) and the first failure is reported with its witnesses.
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        leq: &[Vec<bool>],
        tensor: &[Vec<Elem>],
        unit: Elem,
        dense: Option<Vec<Elem>>,
    ) -> Result<Self, QuantaleError> {
        let n = labels.len();
        if n == 0 {
            return Err(QuantaleError::Malformed("empty carrier".into()));
        }
        let leq = square(leq, n, "order")?;
        let tensor = square(tensor, n, "tensor")?;
        if let Some(bad) = tensor.iter().find(|&&t| t >= n) {
            return Err(QuantaleError::Malformed(format!("tensor entry {bad} out of range")));
        }
        if unit >= n {
            return Err(QuantaleError::Malformed(format!("unit {unit} out of range")));
        }
        let dense = match dense {
            Some(mut d) => {
                if let Some(bad) = d.iter().find(|&&u| u >= n) {
                    return Err(QuantaleError::Malformed(format!("dense element {bad} out of range")));
                }
                d.sort_unstable();
                d.dedup();
                d
            }
            None => (0..n).collect(),
        };
        let le = |a: usize, b: usize| leq[a * n + b];

        for x in 0..n {
            if !le(x, x) {
                return Err(QuantaleError::NotALattice {
                    reason: format!("order not reflexive at {x}"),
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && le(x, y) && le(y, x) {
                    return Err(QuantaleError::NotALattice {
                        reason: format!("order not antisymmetric at ({x}, {y})"),
                    });
                }
                for z in 0..n {
                    if le(x, y) && le(y, z) && !le(x, z) {
                        return Err(QuantaleError::NotALattice {
                            reason: format!("order not transitive at ({x}, {y}, {z})"),
                        });
                    }
                }
            }
        }

        let least_of = |set: &[usize]| set.iter().copied().find(|&c| set.iter().all(|&s| le(c, s)));
        let greatest_of = |set: &[usize]| set.iter().copied().find(|&c| set.iter().all(|&s| le(s, c)));
        let all: Vec<usize> = (0..n).collect();
        let bottom = least_of(&all).ok_or_else(|| QuantaleError::NotALattice {
            reason: "no bottom element".into(),
        })?;
        let top = greatest_of(&all).ok_or_else(|| QuantaleError::NotALattice {
            reason: "no top element".into(),
        })?;
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let ub: Vec<usize> = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
                join[x * n + y] = least_of(&ub).ok_or_else(|| QuantaleError::NotALattice {
                    reason: format!("no least upper bound for ({x}, {y})"),
                })?;
                let lb: Vec<usize> = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
                meet[x * n + y] = greatest_of(&lb).ok_or_else(|| QuantaleError::NotALattice {
                    reason: format!("no greatest lower bound for ({x}, {y})"),
                })?;
            }
        }

        let t = |a: usize, b: usize| tensor[a * n + b];
        for x in 0..n {
            if t(unit, x) != x || t(x, unit) != x {
                return Err(QuantaleError::TensorNotMonoid {
                    law: "unit",
                    witness: vec![x],
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if t(x, y) != t(y, x) {
                    return Err(QuantaleError::TensorNotMonoid {
                        law: "commutativity",
                        witness: vec![x, y],
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if t(t(x, y), z) != t(x, t(y, z)) {
                        return Err(QuantaleError::TensorNotMonoid {
                            law: "associativity",
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }

        let mut hom = vec![0; n * n];
        for u in 0..n {
            for v in 0..n {
                hom[u * n + v] = (0..n)
                    .filter(|&w| le(t(u, w), v))
                    .fold(bottom, |acc, w| join[acc * n + w]);
            }
        }
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if le(t(u, w), v) != le(w, hom[u * n + v]) {
                        return Err(QuantaleError::AdjunctionFails { u, v, w });
                    }
                }
            }
        }

        Ok(Self {
            name: name.into(),
            labels,
            n,
            leq,
            join,
            meet,
            tensor,
            hom,
            unit,
            bottom,
            top,
            dense,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, u: Elem) -> &str {
        &self.labels[u]
    }

    pub fn find_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, u: Elem, v: Elem) -> bool {
        self.leq[u * self.n + v]
    }

    pub fn join(&self, u: Elem, v: Elem) -> Elem {
        self.join[u * self.n + v]
    }

    pub fn meet(&self, u: Elem, v: Elem) -> Elem {
        self.meet[u * self.n + v]
    }

    pub fn tensor(&self, u: Elem, v: Elem) -> Elem {
        self.tensor[u * self.n + v]
    }

    /// The right adjoint of `u ⊗ -`.
    pub fn hom(&self, u: Elem, v: Elem) -> Elem {
        self.hom[u * self.n + v]
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn dense(&self) -> &[Elem] {
        &self.dense
    }

    /// One-element quantale, `⊥ = ⊤ = k`.
    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom, |a, b| self.join(a, b))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top, |a, b| self.meet(a, b))
    }

    /// `hom(u, ⊥)`.
    pub fn negation(&self, u: Elem) -> Elem {
        self.hom(u, self.bottom)
    }

    pub fn up_set(&self, u: Elem) -> Vec<Elem> {
        self.elements().filter(|&v| self.leq(u, v)).collect()
    }

    pub fn down_set(&self, u: Elem) -> Vec<Elem> {
        self.elements().filter(|&v| self.leq(v, u)).collect()
    }

    /// Whether the order is total.
    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|u| self.elements().all(|v| self.leq(u, v) || self.leq(v, u)))
    }

    /// Position of each element in a chain, or `None` if the order is not total.
    pub fn chain_ranks(&self) -> Option<Vec<usize>> {
        if !self.is_chain() {
            return None;
        }
        Some(
            self.elements()
                .map(|u| self.elements().filter(|&v| v != u && self.leq(v, u)).count())
                .collect(),
        )
    }

    /// Whether this is (isomorphic to) a Łukasiewicz chain with `k = ⊤`.
    pub fn is_lukasiewicz_chain(&self) -> bool {
        self.chain_tensor_kind() == Some(ChainTensor::Lukasiewicz)
    }

    /// Recognises the two chain tensors up to relabelling. A two-element chain
    /// reports `Minimum` since both tensors coincide there.
    pub fn chain_tensor_kind(&self) -> Option<ChainTensor> {
        let ranks = self.chain_ranks()?;
        if self.n < 2 || self.unit != self.top {
            return None;
        }
        let m = self.n - 1;
        [ChainTensor::Minimum, ChainTensor::Lukasiewicz]
            .into_iter()
            .find(|kind| {
                self.elements().all(|u| {
                    self.elements()
                        .all(|v| ranks[self.tensor(u, v)] == kind.apply(m, ranks[u], ranks[v]))
                })
            })
    }

    /// The totally-below relation.
    ///
    /// `v ≪ u` iff every `A` with `u ≤ ⋁A` meets `↑v`. The largest `A`
    /// avoiding `↑v` is `{a : v ≰ a}`, so it suffices to test that one set.
    pub fn totally_below(&self) -> TotallyBelowRel {
        let n = self.n;
        let mut rel = vec![false; n * n];
        for v in 0..n {
            let avoid = self.join_all(self.elements().filter(|&a| !self.leq(v, a)));
            for u in 0..n {
                rel[v * n + u] = !self.leq(u, avoid);
            }
        }
        TotallyBelowRel { n, rel }
    }

    /// First `v` with `v ≠ ⋁{u : u ≪ v}`.
    pub fn distributivity_witness(&self) -> Option<Elem> {
        let tb = self.totally_below();
        self.elements().find(|&v| self.join_all(tb.below(v)) != v)
    }

    pub fn is_completely_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// First `v` with `v ≠ ⋁{u ∈ D : u ≪ v}`.
    pub fn dense_witness(&self) -> Option<Elem> {
        let tb = self.totally_below();
        self.elements()
            .find(|&v| self.join_all(self.dense.iter().copied().filter(|&u| tb.holds(u, v))) != v)
    }

    /// Whether every element is the join of the dense elements totally below it.
    pub fn dense_subset_is_sufficient(&self) -> bool {
        self.dense_witness().is_none()
    }

    /// First `u` with `u ≠ hom(hom(u, ⊥), ⊥)`.
    pub fn girard_witness(&self) -> Option<Elem> {
        self.elements().find(|&u| self.negation(self.negation(u)) != u)
    }

    pub fn is_girard(&self) -> bool {
        self.girard_witness().is_none()
    }

    /// A triple `(v, u1, u2)` where `u1, u2 ≪ v` have no upper bound that is
    /// also totally below `v`.
    pub fn directedness_witness(&self) -> Option<(Elem, Elem, Elem)> {
        let tb = self.totally_below();
        for v in self.elements() {
            let below = tb.below(v);
            for &a in &below {
                for &b in &below {
                    let bounded = below.iter().any(|&c| self.leq(a, c) && self.leq(b, c));
                    if !bounded {
                        return Some((v, a, b));
                    }
                }
            }
        }
        None
    }

    /// Every `{u : u ≪ v}` is directed (pairs have an upper bound inside).
    pub fn assumption3_holds(&self) -> bool {
        self.directedness_witness().is_none()
    }

    fn require_cd(&self) -> Result<TotallyBelowRel, QuantaleError> {
        match self.distributivity_witness() {
            Some(witness) => Err(QuantaleError::NotCompletelyDistributive { witness }),
            None => Ok(self.totally_below()),
        }
    }

    /// Sets `{u : v ≪ u}` for `v ∈ D`, in the order of `D`.
    pub fn scott_subbase(&self) -> Result<Vec<Vec<Elem>>, QuantaleError> {
        let tb = self.require_cd()?;
        Ok(self
            .dense
            .iter()
            .map(|&v| self.elements().filter(|&u| tb.holds(v, u)).collect())
            .collect())
    }

    /// Closed sets `↑u` for `u ∈ D`.
    pub fn dual_scott_subbase(&self) -> Result<Vec<Vec<Elem>>, QuantaleError> {
        self.require_cd()?;
        Ok(self.dense.iter().map(|&u| self.up_set(u)).collect())
    }

    /// `{u : v ≪ u}` followed by `{u : v ≰ u}`, for each `v ∈ D`.
    pub fn lawson_subbase(&self) -> Result<Vec<Vec<Elem>>, QuantaleError> {
        let mut out = self.scott_subbase()?;
        out.extend(
            self.dense
                .iter()
                .map(|&v| self.elements().filter(|&u| !self.leq(v, u)).collect::<Vec<_>>()),
        );
        Ok(out)
    }
}

/// Smallest open neighbourhood of each point in the topology generated by
/// `family` on `{0..n}` (finite intersections and arbitrary unions).
pub fn minimal_neighbourhoods(n: usize, family: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    (0..n)
        .map(|x| {
            let mut nb = vec![true; n];
            for set in family.iter().filter(|s| s.contains(&x)) {
                for (y, keep) in nb.iter_mut().enumerate() {
                    *keep &= set.contains(&y);
                }
            }
            (0..n).filter(|&y| nb[y]).collect()
        })
        .collect()
}

/// Whether `family` generates the powerset of `{0..n}`.
pub fn generates_discrete_topology(n: usize, family: &[Vec<Elem>]) -> bool {
    minimal_neighbourhoods(n, family)
        .iter()
        .enumerate()
        .all(|(x, nb)| nb.as_slice() == [x])
}

fn fraction_label(i: usize, m: usize) -> String {
    if i == 0 {
        return "0".into();
    }
    if i == m {
        return "1".into();
    }
    let g = gcd(i, m);
    format!("{}/{}", i / g, m / g)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The two-element chain with `⊗ = ∧` and `k = 1`.
pub fn build_two() -> Quantale {
    build_chain(2, ChainTensor::Minimum)
        .expect("two-element chain is a quantale")
        .with_name("two")
}

/// The chain `{0, 1/m, ..., 1}` with `m = n_levels - 1` and unit `1`.
pub fn build_chain(n_levels: usize, kind: ChainTensor) -> Result<Quantale, QuantaleError> {
    if n_levels < 2 {
        return Err(QuantaleError::InvalidArgument(format!(
            "a chain needs at least 2 levels, got {n_levels}"
        )));
    }
    let m = n_levels - 1;
    let labels = (0..n_levels).map(|i| fraction_label(i, m)).collect();
    let leq: Vec<Vec<bool>> = (0..n_levels).map(|i| (0..n_levels).map(|j| i <= j).collect()).collect();
    let tensor: Vec<Vec<Elem>> = (0..n_levels)
        .map(|i| (0..n_levels).map(|j| kind.apply(m, i, j)).collect())
        .collect();
    let name = match kind {
        ChainTensor::Lukasiewicz => format!("L{m}"),
        ChainTensor::Minimum => format!("G{n_levels}"),
    };
    Quantale::from_tables(name, labels, &leq, &tensor, m, None)
}

/// Łukasiewicz chain with `m + 1` elements, `Ł_m`.
pub fn lukasiewicz(m: usize) -> Quantale {
    build_chain(m + 1, ChainTensor::Lukasiewicz).expect("m >= 1")
}

/// Gödel chain (`⊗ = ∧`) with `n` elements.
pub fn godel(n: usize) -> Quantale {
    build_chain(n, ChainTensor::Minimum).expect("n >= 2")
}

/// Generic constructor from an order matrix and a tensor table.
pub fn build_table(leq: &[Vec<bool>], tensor: &[Vec<Elem>], unit: Elem) -> Result<Quantale, QuantaleError> {
    let labels = (0..leq.len()).map(|i| i.to_string()).collect();
    Quantale::from_tables("table", labels, leq, tensor, unit, None)
}

/// The four-element Boolean lattice `0 < a, b < 1` with `⊗ = ∧`.
pub fn boolean_square() -> Quantale {
    let leq: Vec<Vec<bool>> = (0..4)
        .map(|x| (0..4).map(|y| x == y || x == 0 || y == 3).collect())
        .collect();
    let meet = |x: usize, y: usize| match (x, y) {
        (3, y) => y,
        (x, 3) => x,
        (x, y) if x == y => x,
        _ => 0,
    };
    let tensor: Vec<Vec<Elem>> = (0..4).map(|x| (0..4).map(|y| meet(x, y)).collect()).collect();
    let labels = ["0", "a", "b", "1"].map(String::from).to_vec();
    Quantale::from_tables("B4", labels, &leq, &tensor, 3, None).expect("Boolean square is a quantale")
}

/// The diamond `M₃` (`0 < a, b, c < 1`).
///
/// `∧` does not distribute over joins here, so it is no quantale tensor; any
/// unit `⊤` tensor fails too. The atom `a` serves as unit instead, with
/// `x ⊗ y = 1` for nonzero `x, y ∈ {b, c, 1}`.
pub fn diamond_m3() -> Quantale {
    let leq: Vec<Vec<bool>> = (0..5)
        .map(|x| (0..5).map(|y| x == y || x == 0 || y == 4).collect())
        .collect();
    let t = |x: usize, y: usize| match (x, y) {
        (0, _) | (_, 0) => 0,
        (1, y) => y,
        (x, 1) => x,
        _ => 4,
    };
    let tensor: Vec<Vec<Elem>> = (0..5).map(|x| (0..5).map(|y| t(x, y)).collect()).collect();
    let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    Quantale::from_tables("M3", labels, &leq, &tensor, 1, None).expect("M3 with atom unit is a quantale")
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Finite shadow of the distance-distribution quantale.
///
/// The time grid is `t₀ < t₁ < … < t_{p-1}` plus an isolated point `∞`.
/// A value `f(tᵢ)` (`i ≥ 1`) stands for the constant value of a
/// left-continuous step function on `(tᵢ₋₁, tᵢ]`; left continuity at `t₀`
/// forces `f(t₀) = 0`, and `f(∞)` is only bounded below by `f(t_{p-1})`.
/// With this reading the convolution becomes
/// `(f⊗g)(tₙ) = ⋁_{i+j ≤ n+1} f(tᵢ) * g(tⱼ)` and `(f⊗g)(∞) = f(∞) * g(∞)`,
/// and `κ` (0 at `t₀`, 1 elsewhere) is the unit.
pub fn build_df_quantale(
    time_points: usize,
    value_levels: usize,
    base: ChainTensor,
    max_carrier: usize,
) -> Result<Quantale, QuantaleError> {
    if time_points < 2 || value_levels < 2 {
        return Err(QuantaleError::InvalidArgument(
            "df-quantale needs at least 2 time points and 2 value levels".into(),
        ));
    }
    // Free coordinates: f(t1), ..., f(t_{p-1}), f(∞).
    let width = time_points;
    let size = binomial(width + value_levels - 1, width);
    if size > max_carrier as u128 {
        return Err(QuantaleError::CarrierTooLarge {
            size,
            bound: max_carrier,
        });
    }
    let m = value_levels - 1;
    let mut carrier: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0usize; width];
    fn fill(pos: usize, lo: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in lo..=m {
            cur[pos] = v;
            fill(pos + 1, v, m, cur, out);
        }
    }
    fill(0, 0, m, &mut current, &mut carrier);
    let n = carrier.len();
    let index = |f: &[usize]| carrier.iter().position(|g| g.as_slice() == f).expect("closed");

    let leq: Vec<Vec<bool>> = carrier
        .iter()
        .map(|f| carrier.iter().map(|g| f.iter().zip(g).all(|(a, b)| a <= b)).collect())
        .collect();
    let finite = width - 1;
    let convolve = |f: &[usize], g: &[usize]| -> Vec<usize> {
        let mut h = vec![0usize; width];
        for nn in 1..=finite {
            let mut best = 0;
            for i in 1..=finite {
                for j in 1..=finite {
                    if i + j <= nn + 1 {
                        best = best.max(base.apply(m, f[i - 1], g[j - 1]));
                    }
                }
            }
            h[nn - 1] = best;
        }
        h[finite] = base.apply(m, f[finite], g[finite]);
        h
    };
    let tensor: Vec<Vec<Elem>> = carrier
        .iter()
        .map(|f| carrier.iter().map(|g| index(&convolve(f, g))).collect())
        .collect();
    let unit = index(&vec![m; width]);
    let value_label = |v: usize| fraction_label(v, m);
    let labels = carrier
        .iter()
        .map(|f| {
            let body: Vec<String> = f[..finite].iter().map(|&v| value_label(v)).collect();
            format!("[0 {} | {}]", body.join(" "), value_label(f[finite]))
        })
        .collect();
    debug_assert_eq!(n as u128, size);
    let name = format!("df{time_points}x{value_levels}");
    Quantale::from_tables(name, labels, &leq, &tensor, unit, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_element_chain() {
        let q = build_two();
        assert_eq!(q.tensor(1, 1), 1);
        assert_eq!(q.hom(1, 0), 0);
        assert_eq!(q.hom(0, 0), 1);
    }

    #[test]
    fn lukasiewicz_and_godel_three() {
        let l2 = lukasiewicz(2);
        assert_eq!(l2.labels(), ["0", "1/2", "1"]);
        assert_eq!(l2.tensor(1, 1), 0);
        assert_eq!(l2.hom(1, 0), 1);
        let g3 = godel(3);
        assert_eq!(g3.hom(1, 0), 0);
        assert_eq!(l2.chain_tensor_kind(), Some(ChainTensor::Lukasiewicz));
        assert_eq!(g3.chain_tensor_kind(), Some(ChainTensor::Minimum));
    }

    #[test]
    fn chain_rejects_single_level() {
        assert!(matches!(
            build_chain(1, ChainTensor::Minimum),
            Err(QuantaleError::InvalidArgument(_))
        ));
    }

    #[test]
    fn boolean_square_is_valid() {
        let q = boolean_square();
        assert!(q.is_completely_distributive());
        assert_eq!(q.join(1, 2), 3);
    }

    #[test]
    fn broken_unit_is_rejected() {
        let leq = vec![vec![true, true], vec![false, true]];
        let tensor = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(
            build_table(&leq, &tensor, 1),
            Err(QuantaleError::TensorNotMonoid { law: "unit", .. })
        ));
    }

    #[test]
    fn non_lattice_is_rejected() {
        // two incomparable maximal elements
        let leq = vec![
            vec![true, true, true],
            vec![false, true, false],
            vec![false, false, true],
        ];
        let tensor = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
        assert!(matches!(
            build_table(&leq, &tensor, 1),
            Err(QuantaleError::NotALattice { .. })
        ));
    }

    #[test]
    fn tensor_not_preserving_joins_fails_adjunction() {
        // chain 0 < 1 < 2, tensor = max-like on the middle breaks u ⊗ ⊥ = ⊥
        let leq: Vec<Vec<bool>> = (0..3).map(|i| (0..3).map(|j| i <= j).collect()).collect();
        let tensor = vec![vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 2]];
        let err = build_table(&leq, &tensor, 2).unwrap_err();
        assert!(
            matches!(
                err,
                QuantaleError::AdjunctionFails { .. } | QuantaleError::TensorNotMonoid { .. }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn m3_is_not_completely_distributive() {
        let q = diamond_m3();
        assert!(!q.is_completely_distributive());
        let tb = q.totally_below();
        assert!(!tb.holds(1, 4));
        assert_eq!(q.distributivity_witness(), Some(1));
        assert!(matches!(
            q.scott_subbase(),
            Err(QuantaleError::NotCompletelyDistributive { .. })
        ));
    }

    #[test]
    fn totally_below_on_l2() {
        let q = lukasiewicz(2);
        let tb = q.totally_below();
        let expected: Vec<(usize, usize)> = (0..3)
            .flat_map(|v| (0..3).map(move |u| (v, u)))
            .filter(|&(v, u)| u != 0 && v <= u)
            .collect();
        assert_eq!(tb.pairs(), expected);
        assert!(!tb.holds(0, 0));
    }

    #[test]
    fn girard_diagnostics() {
        for m in 1..=9 {
            assert!(lukasiewicz(m).is_girard());
        }
        assert_eq!(godel(3).girard_witness(), Some(1));
    }

    #[test]
    fn subbases_on_l2() {
        let q = lukasiewicz(2);
        assert_eq!(q.scott_subbase().unwrap(), vec![vec![1, 2], vec![1, 2], vec![2]]);
        assert_eq!(
            q.dual_scott_subbase().unwrap(),
            vec![vec![0, 1, 2], vec![1, 2], vec![2]]
        );
        assert!(generates_discrete_topology(3, &q.lawson_subbase().unwrap()));
        let two = build_two();
        assert!(generates_discrete_topology(2, &two.lawson_subbase().unwrap()));
    }

    #[test]
    fn df_quantale_small() {
        let q = build_df_quantale(2, 2, ChainTensor::Lukasiewicz, DEFAULT_MAX_CARRIER).unwrap();
        assert_eq!(q.size(), 3);
        let kappa = q.unit();
        assert_eq!(q.tensor(kappa, kappa), kappa);
        for f in q.elements() {
            assert_eq!(q.tensor(q.bottom(), f), q.bottom());
        }
        assert!(q.is_completely_distributive());
    }

    #[test]
    fn df_quantale_bound() {
        assert!(matches!(
            build_df_quantale(6, 6, ChainTensor::Minimum, 100),
            Err(QuantaleError::CarrierTooLarge { .. })
        ));
    }

    #[test]
    fn trivial_quantale_is_accepted() {
        let q = build_table(&[vec![true]], &[vec![0]], 0).unwrap();
        assert!(q.is_trivial());
        assert_eq!(q.hom(0, 0), 0);
        assert!(q.is_girard());
    }

    #[test]
    fn assumption3_on_chains() {
        assert!(lukasiewicz(4).assumption3_holds());
        assert!(godel(3).assumption3_holds());
        // both atoms are totally below the top, but the top is not
        assert_eq!(boolean_square().directedness_witness(), Some((3, 1, 2)));
    }
}
