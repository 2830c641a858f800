//! Backtracking search for structure-preserving maps between finite weighted
//! lattices, with propagation of the preservation equations.

use crate::duality::{MorphismKind, WeightedLattice};
use crate::error::{Error, Result};
use crate::Elem;

#[derive(Debug, Clone, Copy)]
enum Op {
    Join,
    Meet,
    Copower(Elem),
    Power(Elem),
    Tensor,
}

impl Op {
    fn apply<T: WeightedLattice + ?Sized>(self, t: &T, a: usize, b: usize) -> Option<usize> {
        match self {
            Op::Join => Some(t.join(a, b)),
            Op::Meet => Some(t.meet(a, b)),
            Op::Copower(u) => Some(t.copower(u, a)),
            Op::Power(u) => Some(t.power(u, a)),
            Op::Tensor => t.tensor(a, b),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Con {
    /// `h(out) = val`.
    Const { out: usize, val: usize },
    /// `h(out) = op(h(a), h(b))`.
    Eq { out: usize, op: Op, a: usize, b: usize },
    /// `h(out) ≤ op(h(a), h(b))`.
    Le { out: usize, op: Op, a: usize, b: usize },
    /// `s(a, b) ≤ t(h a, h b)`.
    Functor { a: usize, b: usize },
}

impl Con {
    fn mentions(&self) -> Vec<usize> {
        match *self {
            Con::Const { out, .. } => vec![out],
            Con::Eq { out, a, b, .. } | Con::Le { out, a, b, .. } => vec![out, a, b],
            Con::Functor { a, b } => vec![a, b],
        }
    }
}

struct Problem<'a, S: ?Sized, T: ?Sized> {
    src: &'a S,
    tgt: &'a T,
    cons: Vec<Con>,
    watch: Vec<Vec<usize>>,
    budget: u64,
    nodes: u64,
    found: Vec<Vec<usize>>,
}

/// Constraints that a map of the given kind must satisfy.
fn constraints<S, T>(src: &S, tgt: &T, kind: MorphismKind) -> Option<Vec<Con>>
where
    S: WeightedLattice + ?Sized,
    T: WeightedLattice + ?Sized,
{
    let n = src.size();
    let q = src.quantale();
    let mut cons = vec![Con::Const {
        out: src.bottom(),
        val: tgt.bottom(),
    }];
    let pairs = || (0..n).flat_map(move |a| (a..n).map(move |b| (a, b)));
    for (a, b) in pairs() {
        cons.push(Con::Eq {
            out: src.join(a, b),
            op: Op::Join,
            a,
            b,
        });
    }
    for u in q.elements() {
        for a in 0..n {
            cons.push(Con::Eq {
                out: src.copower(u, a),
                op: Op::Copower(u),
                a,
                b: a,
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            cons.push(Con::Functor { a, b });
        }
    }
    match kind {
        MorphismKind::FinSup => {}
        MorphismKind::FinLat => {
            cons.push(Con::Const {
                out: src.top(),
                val: tgt.top(),
            });
            for (a, b) in pairs() {
                cons.push(Con::Eq {
                    out: src.meet(a, b),
                    op: Op::Meet,
                    a,
                    b,
                });
            }
            for u in q.elements() {
                for a in 0..n {
                    cons.push(Con::Eq {
                        out: src.power(u, a),
                        op: Op::Power(u),
                        a,
                        b: a,
                    });
                }
            }
        }
        MorphismKind::Monoid | MorphismKind::LaxMonoid => {
            let strict = kind == MorphismKind::Monoid;
            if strict {
                cons.push(Con::Const {
                    out: src.unit()?,
                    val: tgt.unit()?,
                });
            }
            for (a, b) in pairs() {
                if let Some(out) = src.tensor(a, b) {
                    cons.push(if strict {
                        Con::Eq {
                            out,
                            op: Op::Tensor,
                            a,
                            b,
                        }
                    } else {
                        Con::Le {
                            out,
                            op: Op::Tensor,
                            a,
                            b,
                        }
                    });
                }
            }
        }
    }
    Some(cons)
}

impl<S, T> Problem<'_, S, T>
where
    S: WeightedLattice + ?Sized,
    T: WeightedLattice + ?Sized,
{
    fn propagate(&self, h: &mut [Option<usize>], mut queue: Vec<usize>) -> bool {
        while let Some(ci) = queue.pop() {
            let (out, val) = match self.cons[ci] {
                Con::Const { out, val } => (out, val),
                Con::Eq { out, op, a, b } => match (h[a], h[b]) {
                    (Some(x), Some(y)) => match op.apply(self.tgt, x, y) {
                        Some(v) => (out, v),
                        None => return false,
                    },
                    _ => continue,
                },
                Con::Le { out, op, a, b } => {
                    if let (Some(o), Some(x), Some(y)) = (h[out], h[a], h[b]) {
                        match op.apply(self.tgt, x, y) {
                            Some(v) if self.tgt.leq(o, v) => {}
                            _ => return false,
                        }
                    }
                    continue;
                }
                Con::Functor { a, b } => {
                    if let (Some(x), Some(y)) = (h[a], h[b]) {
                        let q = self.src.quantale();
                        if !q.leq(self.src.structure(a, b), self.tgt.structure(x, y)) {
                            return false;
                        }
                    }
                    continue;
                }
            };
            match h[out] {
                Some(cur) if cur != val => return false,
                Some(_) => {}
                None => {
                    h[out] = Some(val);
                    queue.extend(&self.watch[out]);
                }
            }
        }
        true
    }

    fn search(&mut self, mut h: Vec<Option<usize>>, queue: Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchSpaceTooLarge {
                what: "morphism search",
                cardinality: self.nodes as u128,
                budget: self.budget,
            });
        }
        if !self.propagate(&mut h, queue) {
            return Ok(());
        }
        match h.iter().position(Option::is_none) {
            None => self.found.push(h.into_iter().map(Option::unwrap).collect()),
            Some(i) => {
                for v in 0..self.tgt.size() {
                    let mut next = h.clone();
                    next[i] = Some(v);
                    self.search(next, self.watch[i].clone())?;
                }
            }
        }
        Ok(())
    }
}

/// All maps `src → tgt` of the given kind, sorted lexicographically.
///
/// The budget bounds the number of search nodes visited.
pub(crate) fn morphisms<S, T>(src: &S, tgt: &T, kind: MorphismKind, budget: u64) -> Result<Vec<Vec<usize>>>
where
    S: WeightedLattice + ?Sized,
    T: WeightedLattice + ?Sized,
{
    let Some(cons) = constraints(src, tgt, kind) else {
        return Ok(Vec::new());
    };
    let mut watch = vec![Vec::new(); src.size()];
    for (ci, c) in cons.iter().enumerate() {
        for e in c.mentions() {
            if watch[e].last() != Some(&ci) {
                watch[e].push(ci);
            }
        }
    }
    let queue: Vec<usize> = (0..cons.len()).rev().collect();
    let mut p = Problem {
        src,
        tgt,
        cons,
        watch,
        budget,
        nodes: 0,
        found: Vec::new(),
    };
    p.search(vec![None; src.size()], queue)?;
    let mut found = p.found;
    found.sort();
    Ok(found)
}
