//! Level-set encoding of V-valued maps and structures.
//!
//! A map `φ: X → V` is recorded by the sets `B_u = φ⁻¹(↑u)` for `u` in the
//! dense subset `D`; a structure `a` by the relations
//! `R_u = {(x, y) : u ≤ a(x, y)}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantale::Quantale;
use crate::vcat::VCat;
use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelFamily {
    base_size: usize,
    dense: Vec<Elem>,
    sets: Vec<Vec<bool>>,
}

impl LevelFamily {
    /// `sets[i]` is the level set for `dense[i]`.
    pub fn new(base_size: usize, dense: Vec<Elem>, sets: Vec<Vec<bool>>) -> Result<Self> {
        if sets.len() != dense.len() || sets.iter().any(|s| s.len() != base_size) {
            return Err(Error::InvalidArgument(
                "level family needs one subset of the base per dense element".into(),
            ));
        }
        Ok(Self { base_size, dense, sets })
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn dense(&self) -> &[Elem] {
        &self.dense
    }

    /// `B_u` for `u ∈ D`.
    pub fn level(&self, u: Elem) -> Option<&[bool]> {
        self.dense.iter().position(|&d| d == u).map(|i| self.sets[i].as_slice())
    }

    pub fn level_points(&self, u: Elem) -> Option<Vec<usize>> {
        self.level(u).map(|s| (0..self.base_size).filter(|&x| s[x]).collect())
    }
}

/// `B_u = φ⁻¹(↑u)` for every `u ∈ D`.
pub fn encode(phi: &[Elem], q: &Quantale) -> LevelFamily {
    let sets = q
        .dense()
        .iter()
        .map(|&u| phi.iter().map(|&v| q.leq(u, v)).collect())
        .collect();
    LevelFamily {
        base_size: phi.len(),
        dense: q.dense().to_vec(),
        sets,
    }
}

/// First `(u, x)` where `B_u` differs from `⋂{B_v : v ≪ u}`.
pub fn compatibility_witness(fam: &LevelFamily, q: &Quantale) -> Option<(Elem, usize)> {
    let tb = q.totally_below();
    for (i, &u) in fam.dense.iter().enumerate() {
        for x in 0..fam.base_size {
            let meet = fam
                .dense
                .iter()
                .enumerate()
                .filter(|&(_, &v)| tb.holds(v, u))
                .all(|(j, _)| fam.sets[j][x]);
            if meet != fam.sets[i][x] {
                return Some((u, x));
            }
        }
    }
    None
}

/// `x ↦ ⋁{u ∈ D : x ∈ B_u}`, after checking compatibility.
pub fn decode(fam: &LevelFamily, q: &Quantale) -> Result<Vec<Elem>> {
    if let Some((u, witness)) = compatibility_witness(fam, q) {
        return Err(Error::IncompatibleFamily { u, witness });
    }
    Ok((0..fam.base_size)
        .map(|x| {
            q.join_all(
                fam.dense
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| fam.sets[i][x])
                    .map(|(_, &u)| u),
            )
        })
        .collect())
}

/// Relations `R_u` on at most 64 points, one bitset row per point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFamily {
    points: usize,
    dense: Vec<Elem>,
    rows: Vec<Vec<u64>>,
}

/// A violated relational law, with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum RelationViolation {
    Reflexivity {
        x: usize,
    },
    Transitivity {
        u: Elem,
        v: Elem,
        x: usize,
        y: usize,
        z: usize,
    },
    Antisymmetry {
        x: usize,
        y: usize,
    },
}

pub const MAX_RELATION_POINTS: usize = 64;

/// `R_u = {(x, y) : u ≤ a(x, y)}` for a raw matrix, lawful or not.
pub fn relations_from_matrix(q: &Quantale, a: &[Vec<Elem>]) -> Result<RelationFamily> {
    let m = a.len();
    if m > MAX_RELATION_POINTS {
        return Err(Error::InvalidArgument(format!(
            "relation families support at most {MAX_RELATION_POINTS} points"
        )));
    }
    let rows = q
        .dense()
        .iter()
        .map(|&u| {
            a.iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(_, &v)| q.leq(u, v))
                        .fold(0u64, |bits, (y, _)| bits | (1 << y))
                })
                .collect()
        })
        .collect();
    Ok(RelationFamily {
        points: m,
        dense: q.dense().to_vec(),
        rows,
    })
}

pub fn structure_to_relations(x: &VCat) -> Result<RelationFamily> {
    relations_from_matrix(x.quantale(), &x.matrix())
}

impl RelationFamily {
    pub fn points(&self) -> usize {
        self.points
    }

    pub fn dense(&self) -> &[Elem] {
        &self.dense
    }

    pub fn contains(&self, u: Elem, x: usize, y: usize) -> Option<bool> {
        let i = self.dense.iter().position(|&d| d == u)?;
        Some(self.rows[i][x] >> y & 1 == 1)
    }

    /// `R_u` for any `u`, as `⋂{R_v : v ∈ D, v ≪ u}`.
    fn derived_level(&self, q: &Quantale, u: Elem) -> Vec<u64> {
        let tb = q.totally_below();
        let full = if self.points == 64 {
            u64::MAX
        } else {
            (1u64 << self.points) - 1
        };
        let mut rel = vec![full; self.points];
        for (i, &v) in self.dense.iter().enumerate() {
            if tb.holds(v, u) {
                for (r, s) in rel.iter_mut().zip(&self.rows[i]) {
                    *r &= s;
                }
            }
        }
        rel
    }

    pub fn reflexivity_witness(&self, q: &Quantale) -> Option<usize> {
        let rk = self.derived_level(q, q.unit());
        (0..self.points).find(|&x| rk[x] >> x & 1 == 0)
    }

    pub fn transitivity_witness(&self, q: &Quantale) -> Option<RelationViolation> {
        for (i, &u) in self.dense.iter().enumerate() {
            for (j, &v) in self.dense.iter().enumerate() {
                let target = self.derived_level(q, q.tensor(u, v));
                for x in 0..self.points {
                    let mut composed = 0u64;
                    let mut mids = self.rows[i][x];
                    while mids != 0 {
                        let y = mids.trailing_zeros() as usize;
                        composed |= self.rows[j][y];
                        mids &= mids - 1;
                    }
                    let extra = composed & !target[x];
                    if extra != 0 {
                        let z = extra.trailing_zeros() as usize;
                        let y = (0..self.points)
                            .find(|&y| self.rows[i][x] >> y & 1 == 1 && self.rows[j][y] >> z & 1 == 1)
                            .expect("some middle point exists");
                        return Some(RelationViolation::Transitivity { u, v, x, y, z });
                    }
                }
            }
        }
        None
    }

    pub fn antisymmetry_witness(&self, q: &Quantale) -> Option<(usize, usize)> {
        let rk = self.derived_level(q, q.unit());
        for x in 0..self.points {
            for y in x + 1..self.points {
                if rk[x] >> y & 1 == 1 && rk[y] >> x & 1 == 1 {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// All violated laws in a fixed order: reflexivity, transitivity, antisymmetry.
    pub fn violations(&self, q: &Quantale) -> Vec<RelationViolation> {
        let mut out = Vec::new();
        if let Some(x) = self.reflexivity_witness(q) {
            out.push(RelationViolation::Reflexivity { x });
        }
        if let Some(t) = self.transitivity_witness(q) {
            out.push(t);
        }
        if let Some((x, y)) = self.antisymmetry_witness(q) {
            out.push(RelationViolation::Antisymmetry { x, y });
        }
        out
    }
}

/// `Δ ⊆ R_k`.
pub fn relations_reflexive(fam: &RelationFamily, q: &Quantale) -> bool {
    fam.reflexivity_witness(q).is_none()
}

/// `R_u ∘ R_v ⊆ R_{u⊗v}` for all `u, v ∈ D`.
pub fn relations_transitive(fam: &RelationFamily, q: &Quantale) -> bool {
    fam.transitivity_witness(q).is_none()
}

pub fn r_k_antisymmetric(fam: &RelationFamily, q: &Quantale) -> bool {
    fam.antisymmetry_witness(q).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{build_two, lukasiewicz};
    use crate::vcat::validate;
    use proptest::prelude::*;
    use std::sync::Arc;

    #[test]
    fn encode_example_on_l2() {
        let q = lukasiewicz(2);
        let fam = encode(&[1, 0], &q);
        assert_eq!(fam.level_points(0), Some(vec![0, 1]));
        assert_eq!(fam.level_points(1), Some(vec![0]));
        assert_eq!(fam.level_points(2), Some(vec![]));
        assert_eq!(decode(&fam, &q).unwrap(), vec![1, 0]);
    }

    #[test]
    fn top_map_has_full_levels() {
        let q = lukasiewicz(3);
        let fam = encode(&[3, 3, 3], &q);
        assert!(q.elements().all(|u| fam.level_points(u).unwrap() == vec![0, 1, 2]));
    }

    #[test]
    fn incompatible_family_is_rejected() {
        let q = lukasiewicz(2);
        // B_1 = {p} but B_1/2 = {}: not nested
        let fam = LevelFamily::new(1, vec![0, 1, 2], vec![vec![true], vec![false], vec![true]]).unwrap();
        assert!(matches!(
            decode(&fam, &q),
            Err(Error::IncompatibleFamily { u: 2, witness: 0 })
        ));
    }

    #[test]
    fn two_chain_relations() {
        let x = VCat::from_order(Arc::new(build_two()), &[vec![true, true], vec![false, true]]);
        let fam = structure_to_relations(&x).unwrap();
        let q = x.quantale();
        assert!(relations_reflexive(&fam, q));
        assert!(relations_transitive(&fam, q));
        assert!(r_k_antisymmetric(&fam, q));
    }

    #[test]
    fn symmetric_top_is_not_antisymmetric() {
        let q = lukasiewicz(2);
        let fam = relations_from_matrix(&q, &[vec![2, 2], vec![2, 2]]).unwrap();
        assert_eq!(fam.antisymmetry_witness(&q), Some((0, 1)));
    }

    proptest! {
        #[test]
        fn relational_laws_match_validation(entries in proptest::collection::vec(0usize..4, 16)) {
            let q = lukasiewicz(3);
            let a: Vec<Vec<usize>> = entries.chunks(4).map(|r| r.to_vec()).collect();
            let fam = relations_from_matrix(&q, &a).unwrap();
            let lawful = relations_reflexive(&fam, &q) && relations_transitive(&fam, &q);
            prop_assert_eq!(lawful, validate(&q, &a).is_ok());
        }

        #[test]
        fn round_trip(phi in proptest::collection::vec(0usize..5, 0..6)) {
            let q = lukasiewicz(4);
            prop_assert_eq!(decode(&encode(&phi, &q), &q).unwrap(), phi);
        }
    }
}
