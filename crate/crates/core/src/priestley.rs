//! The Priestley condition and the reflection `π₀`.
//!
//! `X` is Priestley when the cone of all functors `X → V^op` separates points
//! and is initial. Only the `V^op` cone is used for the definition; the `V`
//! cone is available for comparison.

use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::quantale::Quantale;
use crate::vcat::{functor_maps, VCat, VFun};
use crate::Elem;

/// `V^op`: carrier of `V` with `hom°(u, v) = hom(v, u)`.
pub fn vop_object(q: Arc<Quantale>) -> VCat {
    VCat::hom_object(q).dual().with_name("V^op")
}

/// All functors `X → V^op`, in lexicographic order.
pub fn vop_cone(x: &VCat, budget: u64) -> Result<Vec<Vec<Elem>>> {
    functor_maps(x, &vop_object(x.quantale_arc().clone()), budget)
}

/// All functors `X → (V, hom)`.
pub fn v_cone(x: &VCat, budget: u64) -> Result<Vec<Vec<Elem>>> {
    functor_maps(x, &VCat::hom_object(x.quantale_arc().clone()), budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InitialityGap {
    pub x: usize,
    pub y: usize,
    pub structure: Elem,
    pub induced: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PriestleyReport {
    pub point_separating: bool,
    pub inseparable: Option<(usize, usize)>,
    pub initial: bool,
    pub worst: Option<InitialityGap>,
    pub cone_size: usize,
}

impl PriestleyReport {
    pub fn holds(&self) -> bool {
        self.point_separating && self.initial
    }
}

/// `⋀_φ hom(φ(y), φ(x))`, the structure induced by the cone.
fn induced(q: &Quantale, cone: &[Vec<Elem>], x: usize, y: usize) -> Elem {
    q.meet_all(cone.iter().map(|f| q.hom(f[y], f[x])))
}

pub fn is_priestley(x: &VCat, budget: u64) -> Result<PriestleyReport> {
    let cone = vop_cone(x, budget)?;
    let q = x.quantale();
    let mut inseparable = None;
    'outer: for s in x.points() {
        for t in s + 1..x.size() {
            if cone.iter().all(|f| f[s] == f[t]) {
                inseparable = Some((s, t));
                break 'outer;
            }
        }
    }
    // The worst gap is the one whose induced value is lowest in the
    // enumeration order of pairs; any gap disproves initiality.
    let mut worst: Option<InitialityGap> = None;
    for s in x.points() {
        for t in x.points() {
            let ind = induced(q, &cone, s, t);
            if ind != x.a(s, t) {
                let better = match &worst {
                    None => true,
                    Some(w) => q.leq(ind, w.induced) && ind != w.induced,
                };
                if better {
                    worst = Some(InitialityGap {
                        x: s,
                        y: t,
                        structure: x.a(s, t),
                        induced: ind,
                    });
                }
            }
        }
    }
    Ok(PriestleyReport {
        point_separating: inseparable.is_none(),
        inseparable,
        initial: worst.is_none(),
        worst,
        cone_size: cone.len(),
    })
}

/// The reflection: kernel classes of the cone, with the initial structure.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub quotient: VFun,
    pub space: VCat,
    /// Least point of each class.
    pub representatives: Vec<usize>,
}

pub fn reflect_pi0(x: &VCat, budget: u64) -> Result<Reflection> {
    let cone = vop_cone(x, budget)?;
    let q = x.quantale_arc().clone();
    let mut reps: Vec<usize> = Vec::new();
    let mut map = vec![0; x.size()];
    for p in x.points() {
        match reps.iter().position(|&r| cone.iter().all(|f| f[r] == f[p])) {
            Some(i) => map[p] = i,
            None => {
                map[p] = reps.len();
                reps.push(p);
            }
        }
    }
    let qq = q.clone();
    let labels = reps.iter().map(|&r| x.labels()[r].clone()).collect();
    let space = VCat::from_fn(q, reps.len(), |i, j| induced(&qq, &cone, reps[i], reps[j])).with_labels(labels);
    let quotient = VFun::new_unchecked(x.clone(), space.clone(), map);
    Ok(Reflection {
        quotient,
        space,
        representatives: reps,
    })
}

/// `π₀ f`, defined by `π₀ f ∘ q_X = q_Y ∘ f`.
pub fn pi0_map(f: &VFun, budget: u64) -> Result<VFun> {
    let rx = reflect_pi0(f.dom(), budget)?;
    let ry = reflect_pi0(f.cod(), budget)?;
    let map = rx
        .representatives
        .iter()
        .map(|&r| ry.quotient.apply(f.apply(r)))
        .collect();
    Ok(VFun::new_unchecked(rx.space, ry.space, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{build_two, lukasiewicz};
    use crate::DEFAULT_BUDGET;

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn two_chain_is_priestley() {
        let x = VCat::from_order(Arc::new(build_two()), &[vec![true, true], vec![false, true]]);
        let r = is_priestley(&x, B).unwrap();
        assert!(r.holds());
        assert_eq!(r.cone_size, 3);
        assert_eq!(vop_cone(&x, B).unwrap(), vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn vop_of_l2() {
        let v = vop_object(Arc::new(lukasiewicz(2)));
        assert!(crate::vcat::validate(v.quantale(), &v.matrix()).is_ok());
        assert!(v.is_separated());
        assert!(is_priestley(&v, B).unwrap().holds());
    }

    #[test]
    fn indiscrete_reflects_to_a_point() {
        let x = VCat::indiscrete(Arc::new(lukasiewicz(2)), 2);
        let r = is_priestley(&x, B).unwrap();
        assert!(!r.point_separating);
        assert_eq!(r.inseparable, Some((0, 1)));
        let refl = reflect_pi0(&x, B).unwrap();
        assert_eq!(refl.space.size(), 1);
        assert!(is_priestley(&refl.space, B).unwrap().holds());
    }

    #[test]
    fn two_vop_is_reversed_chain() {
        let v = vop_object(Arc::new(build_two()));
        assert_eq!(v.matrix(), vec![vec![1, 0], vec![1, 1]]);
    }
}
