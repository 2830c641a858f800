//! Verification suites: each check runs a claim against brute-force oracles
//! on every small instance (or a seeded random sample) and records the first
//! counterexample.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cauchy::{
    cauchy_completion, is_cauchy_complete, is_closed_embedding, is_dense, is_epi_against, is_epi_sep,
    is_left_adjoint_pair, is_regmono_sep, l_closure, l_closure_against, representable_pair,
};
use crate::duality::{
    closed_subcategory, dual_object, dual_of_kleisli, girard_density_witness, induced_structure, is_kleisli_arrow,
    is_monoid_morphism, kleisli_compose, kleisli_unit, mu_formula_check, verify_full_faithfulness, verify_j_iso,
    vietoris_carrier, KleisliArrow, WeightedLattice,
};
use crate::encoding::{
    compatibility_witness, decode, encode, r_k_antisymmetric, relations_from_matrix, relations_reflexive,
    relations_transitive, LevelFamily,
};
use crate::error::Result;
use crate::oracle::{
    all_vcats_up_to_iso, left_adjoint_criterion_failure, quantale_law_failure, reflection_universal_failure,
    separated_codomains,
};
use crate::ordered::{
    all_posets, function_detection, irreducibility_equivalence, is_graph_of_map, monotone_relations, phi_table,
    verify_h_iso, FinPoset,
};
use crate::priestley::{is_priestley, reflect_pi0};
use crate::quantale::{
    boolean_square, build_df_quantale, build_two, diamond_m3, generates_discrete_topology, godel, lukasiewicz,
    ChainTensor, Quantale, DEFAULT_MAX_CARRIER,
};
use crate::random::{random_matrix, random_separated_vcat, random_subset, random_vcat, rng, InstanceRng};
use crate::vcat::{functor_maps, validate, VCat, VFun};
use crate::{Elem, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Duality,
    Ordered,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 4] = ["core", "duality", "ordered", "all"];

    fn includes(self, group: Suite) -> bool {
        self == Suite::All || self == group
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "core" => Ok(Suite::Core),
            "duality" => Ok(Suite::Duality),
            "ordered" => Ok(Suite::Ordered),
            "all" => Ok(Suite::All),
            _ => Err(format!(
                "unknown suite `{s}` (expected one of {})",
                Suite::NAMES.join(", ")
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Core => "core",
            Suite::Duality => "duality",
            Suite::Ordered => "ordered",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Config {
    pub seed: u64,
    /// Caps the number of points of every generated instance.
    pub max_size: Option<usize>,
    pub budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            seed: 1,
            max_size: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Config {
    fn cap(&self, n: usize) -> usize {
        self.max_size.map_or(n, |m| n.min(m))
    }

    fn rng(&self, stream: u64) -> InstanceRng {
        rng(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(stream))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub criterion: Option<u8>,
    pub name: &'static str,
    pub passed: bool,
    pub instances: usize,
    pub detail: String,
    pub witness: Option<Value>,
    /// Wall time; left out of JSON so reports stay reproducible.
    #[serde(skip)]
    pub runtime: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub config: Config,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

struct Outcome {
    passed: bool,
    instances: usize,
    detail: String,
    witness: Option<Value>,
}

impl Outcome {
    fn from_failure(instances: usize, detail: impl Into<String>, failure: Option<Value>) -> Self {
        Self {
            passed: failure.is_none(),
            instances,
            detail: detail.into(),
            witness: failure,
        }
    }
}

struct Check {
    criterion: Option<u8>,
    group: Suite,
    name: &'static str,
    run: fn(&Config) -> Result<Outcome>,
}

const CHECKS: &[Check] = &[
    Check {
        criterion: Some(1),
        group: Suite::Core,
        name: "quantale-laws",
        run: quantale_laws,
    },
    Check {
        criterion: Some(2),
        group: Suite::Core,
        name: "girard",
        run: girard,
    },
    Check {
        criterion: Some(3),
        group: Suite::Core,
        name: "encoding-bijection",
        run: encoding_bijection,
    },
    Check {
        criterion: Some(3),
        group: Suite::Core,
        name: "relation-axioms",
        run: relation_axioms,
    },
    Check {
        criterion: Some(4),
        group: Suite::Core,
        name: "l-closure",
        run: l_closure_operator,
    },
    Check {
        criterion: Some(4),
        group: Suite::Core,
        name: "epi-regmono",
        run: epi_regmono,
    },
    Check {
        criterion: Some(5),
        group: Suite::Core,
        name: "cauchy",
        run: cauchy,
    },
    Check {
        criterion: Some(6),
        group: Suite::Core,
        name: "priestley-random",
        run: priestley_random,
    },
    Check {
        criterion: Some(6),
        group: Suite::Core,
        name: "pi0-universal",
        run: pi0_universal,
    },
    Check {
        criterion: Some(7),
        group: Suite::Duality,
        name: "dual-object-example",
        run: dual_object_example,
    },
    Check {
        criterion: Some(7),
        group: Suite::Duality,
        name: "phi-half",
        run: phi_half,
    },
    Check {
        criterion: Some(7),
        group: Suite::Duality,
        name: "j-iso-lukasiewicz",
        run: j_iso_lukasiewicz,
    },
    Check {
        criterion: Some(7),
        group: Suite::Duality,
        name: "j-iso-godel-fails",
        run: j_iso_godel_fails,
    },
    Check {
        criterion: Some(7),
        group: Suite::Duality,
        name: "full-faithfulness",
        run: full_faithfulness,
    },
    Check {
        criterion: None,
        group: Suite::Duality,
        name: "kleisli-laws",
        run: kleisli_laws,
    },
    Check {
        criterion: None,
        group: Suite::Duality,
        name: "girard-density",
        run: girard_density,
    },
    Check {
        criterion: Some(8),
        group: Suite::Duality,
        name: "induced-structure",
        run: induced_and_mu,
    },
    Check {
        criterion: Some(8),
        group: Suite::Duality,
        name: "closed-subcategories",
        run: closed_subcategories,
    },
    Check {
        criterion: Some(9),
        group: Suite::Ordered,
        name: "irreducibility",
        run: irreducibility,
    },
    Check {
        criterion: Some(9),
        group: Suite::Ordered,
        name: "function-detection",
        run: function_detection_check,
    },
    Check {
        criterion: None,
        group: Suite::Ordered,
        name: "h-iso",
        run: h_iso,
    },
];

fn execute(check: &Check, cfg: &Config) -> CheckResult {
    let start = Instant::now();
    let outcome = (check.run)(cfg).unwrap_or_else(|e| Outcome {
        passed: false,
        instances: 0,
        detail: format!("error: {e}"),
        witness: None,
    });
    CheckResult {
        criterion: check.criterion,
        name: check.name,
        passed: outcome.passed,
        instances: outcome.instances,
        detail: outcome.detail,
        witness: outcome.witness,
        runtime: start.elapsed(),
    }
}

/// Names of all checks, in run order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

pub fn run_suite(suite: Suite, cfg: &Config) -> SuiteReport {
    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .filter(|c| suite.includes(c.group))
        .map(|c| execute(c, cfg))
        .collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    SuiteReport {
        suite,
        config: *cfg,
        passed: checks.len() - failed,
        failed,
        checks,
    }
}

/// The checks belonging to one numbered criterion.
pub fn run_criterion(criterion: u8, cfg: &Config) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .filter(|c| c.criterion == Some(criterion))
        .map(|c| execute(c, cfg))
        .collect()
}

pub fn run_check(name: &str, cfg: &Config) -> Option<CheckResult> {
    CHECKS.iter().find(|c| c.name == name).map(|c| execute(c, cfg))
}

/// Runs `f` on every item in parallel and returns the first failure in
/// item order.
fn first_failure<T, F>(items: &[T], f: F) -> Result<Option<Value>>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<Value>> + Sync + Send,
{
    let results: Vec<Result<Option<Value>>> = items.par_iter().map(f).collect();
    for r in results {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn spaces(q: &Arc<Quantale>, sizes: std::ops::RangeInclusive<usize>, budget: u64) -> Result<Vec<VCat>> {
    let mut out = Vec::new();
    for m in sizes {
        out.extend(all_vcats_up_to_iso(q, m, budget)?);
    }
    Ok(out)
}

fn size_in(rng: &mut InstanceRng, lo: usize, hi: usize) -> usize {
    if hi <= lo {
        hi
    } else {
        rng.gen_range(lo..=hi)
    }
}

/// Every map `0..len → 0..n`, first coordinate fastest.
fn all_maps(n: usize, len: usize) -> Vec<Vec<Elem>> {
    (0..n.pow(len as u32))
        .map(|mut code| {
            (0..len)
                .map(|_| {
                    let u = code % n;
                    code /= n;
                    u
                })
                .collect()
        })
        .collect()
}

fn space_json(x: &VCat) -> Value {
    json!({ "quantale": x.quantale().name(), "a": x.matrix() })
}

fn quantale_laws(_: &Config) -> Result<Outcome> {
    let mut qs: Vec<Quantale> = (1..=9).map(lukasiewicz).collect();
    qs.extend((2..=9).map(godel));
    qs.push(build_two());
    qs.push(boolean_square());
    for base in [ChainTensor::Lukasiewicz, ChainTensor::Minimum] {
        qs.push(build_df_quantale(2, 2, base, DEFAULT_MAX_CARRIER)?);
    }
    for q in &qs {
        if let Some(law) = quantale_law_failure(q) {
            return Ok(Outcome::from_failure(
                qs.len(),
                "",
                Some(json!({ "quantale": q.name(), "law": law })),
            ));
        }
        if let Some(v) = q.distributivity_witness() {
            return Ok(Outcome::from_failure(
                qs.len(),
                "",
                Some(json!({ "quantale": q.name(), "not_completely_distributive_at": q.label(v) })),
            ));
        }
        if !generates_discrete_topology(q.size(), &q.lawson_subbase()?) {
            return Ok(Outcome::from_failure(
                qs.len(),
                "",
                Some(json!({ "quantale": q.name(), "lawson_topology": "not discrete" })),
            ));
        }
    }
    let m3 = diamond_m3();
    let mut failure = quantale_law_failure(&m3).map(|law| json!({ "quantale": "M3", "law": law }));
    let witness = m3.distributivity_witness();
    if failure.is_none() && witness.is_none() {
        failure = Some(json!({ "quantale": "M3", "expected": "a complete-distributivity witness" }));
    }
    let detail = format!(
        "{} quantales lawful and completely distributive; M3 lawful, not completely distributive at {}",
        qs.len(),
        witness.map_or("-", |v| m3.label(v))
    );
    Ok(Outcome::from_failure(qs.len() + 1, detail, failure))
}

fn girard(_: &Config) -> Result<Outcome> {
    for m in 1..=9 {
        let q = lukasiewicz(m);
        if let Some(u) = q.girard_witness() {
            return Ok(Outcome::from_failure(
                m,
                "",
                Some(json!({ "quantale": q.name(), "u": q.label(u) })),
            ));
        }
    }
    let g3 = godel(3);
    let w = g3.girard_witness();
    let failure = match w {
        Some(1) => None,
        other => Some(json!({ "quantale": "G3", "expected": "1/2", "found": other.map(|u| g3.label(u)) })),
    };
    let detail = format!(
        "double negation is the identity on L1..L9; G3 fails at {}",
        w.map_or("-", |u| g3.label(u))
    );
    Ok(Outcome::from_failure(10, detail, failure))
}

fn encoding_bijection(cfg: &Config) -> Result<Outcome> {
    let q = lukasiewicz(3);
    let dense = q.dense().to_vec();
    let d = dense.len();
    let mut families = 0;
    for base in 0..=cfg.cap(4) {
        let maps = all_maps(q.size(), base);
        let mut images = Vec::with_capacity(maps.len());
        for phi in &maps {
            let fam = encode(phi, &q);
            if decode(&fam, &q)? != *phi {
                return Ok(Outcome::from_failure(
                    families,
                    "",
                    Some(json!({ "map": phi, "round_trip": "decode(encode) differs" })),
                ));
            }
            images.push(fam);
        }
        let mut compatible = 0;
        for bits in 0u64..1 << (d * base) {
            let sets = (0..d)
                .map(|i| (0..base).map(|x| bits >> (i * base + x) & 1 == 1).collect())
                .collect();
            let fam = LevelFamily::new(base, dense.clone(), sets)?;
            families += 1;
            let ok = compatibility_witness(&fam, &q).is_none();
            compatible += usize::from(ok);
            if ok != images.contains(&fam) {
                return Ok(Outcome::from_failure(
                    families,
                    "",
                    Some(json!({ "family": fam, "compatible": ok, "encoded": !ok })),
                ));
            }
        }
        if compatible != maps.len() {
            return Ok(Outcome::from_failure(
                families,
                "",
                Some(json!({ "base": base, "maps": maps.len(), "compatible": compatible })),
            ));
        }
    }
    let detail = format!("encode/decode bijective on L3 for bases of size 0..={}", cfg.cap(4));
    Ok(Outcome::from_failure(families, detail, None))
}

fn relation_check(q: &Quantale, rows: &[Vec<Elem>]) -> Result<Option<Value>> {
    let fam = relations_from_matrix(q, rows)?;
    let lawful = validate(q, rows).is_ok();
    let relational = relations_reflexive(&fam, q) && relations_transitive(&fam, q);
    if lawful != relational {
        return Ok(Some(json!({ "a": rows, "lawful": lawful, "relations": relational })));
    }
    if lawful {
        let x = VCat::new(Arc::new(q.clone()), rows.to_vec())?;
        if x.is_separated() != r_k_antisymmetric(&fam, q) {
            return Ok(Some(json!({ "a": rows, "separated": x.is_separated() })));
        }
    }
    Ok(None)
}

fn relation_axioms(cfg: &Config) -> Result<Outcome> {
    let l2 = Arc::new(lukasiewicz(2));
    let mut count = 0;
    for m in 2..=cfg.cap(3) {
        let flats = all_maps(l2.size(), m * m);
        let total = flats.len();
        let failure = first_failure(&flats, |flat| {
            let rows: Vec<Vec<Elem>> = flat.chunks(m).map(<[Elem]>::to_vec).collect();
            relation_check(&l2, &rows)
        })?;
        count += total;
        if failure.is_some() {
            return Ok(Outcome::from_failure(count, "", failure));
        }
    }
    let l3 = Arc::new(lukasiewicz(3));
    let mut r = cfg.rng(3);
    let m = cfg.cap(4);
    let samples: Vec<Vec<Vec<Elem>>> = (0..200)
        .map(|i| {
            if i % 2 == 0 {
                random_matrix(&l3, m, &mut r)
            } else {
                random_vcat(&l3, m, &mut r).matrix()
            }
        })
        .collect();
    let failure = first_failure(&samples, |rows| relation_check(&l3, rows))?;
    count += samples.len();
    let detail = format!(
        "relations match the axioms on every 2..={}-point L2 matrix and 200 random {m}-point L3 matrices",
        cfg.cap(3)
    );
    Ok(Outcome::from_failure(count, detail, failure))
}

fn l_closure_operator(cfg: &Config) -> Result<Outcome> {
    let qs = [Arc::new(lukasiewicz(2)), Arc::new(lukasiewicz(3))];
    let codomains: Vec<Vec<VCat>> = qs
        .iter()
        .map(|q| {
            let mut cs = separated_codomains(q, cfg.cap(3), cfg.budget)?;
            cs.push(VCat::hom_object(q.clone()));
            Ok(cs)
        })
        .collect::<Result<_>>()?;
    let mut r = cfg.rng(4);
    let instances: Vec<(usize, VCat, Vec<usize>, Vec<usize>)> = (0..100)
        .map(|i| {
            let q = i % 2;
            let m = size_in(&mut r, 1, cfg.cap(4));
            let x = random_separated_vcat(&qs[q], m, &mut r);
            let small = random_subset(m, &mut r);
            let extra = random_subset(m, &mut r);
            let large: Vec<usize> = (0..m).filter(|p| small.contains(p) || extra.contains(p)).collect();
            (q, x, small, large)
        })
        .collect();
    let budget = cfg.budget;
    let failure = first_failure(&instances, |(q, x, small, large)| {
        let c = l_closure(x, small, budget)?;
        let fail = |what: &str| Ok(Some(json!({ "space": space_json(x), "subset": small, "law": what })));
        if !small.iter().all(|p| c.contains(p)) {
            return fail("extensive");
        }
        if l_closure(x, &c, budget)? != c {
            return fail("idempotent");
        }
        let cl = l_closure(x, large, budget)?;
        if !c.iter().all(|p| cl.contains(p)) {
            return fail("monotone");
        }
        if l_closure_against(x, small, &codomains[*q], budget)? != c {
            return fail("closure against V differs from closure against all separated codomains");
        }
        Ok(None)
    })?;
    let detail = format!(
        "closure operator laws and V-only closure agree on 100 random separated spaces (L2/L3, 1..={} points)",
        cfg.cap(4)
    );
    Ok(Outcome::from_failure(instances.len(), detail, failure))
}

/// Boolean-square example whose two atoms are L-dense in a 3-point space.
pub fn dense_atoms_example() -> VFun {
    let q = Arc::new(boolean_square());
    let x = VCat::new(q, vec![vec![3, 1, 2], vec![1, 3, 0], vec![2, 0, 3]]).expect("lawful");
    VFun::new(x.restrict(&[1, 2]), x, vec![1, 2]).expect("inclusion")
}

fn epi_regmono(cfg: &Config) -> Result<Outcome> {
    let qs = [Arc::new(lukasiewicz(2)), Arc::new(lukasiewicz(3))];
    let codomains: Vec<Vec<VCat>> = qs
        .iter()
        .map(|q| {
            let mut cs = separated_codomains(q, cfg.cap(3), cfg.budget)?;
            cs.push(VCat::hom_object(q.clone()));
            Ok(cs)
        })
        .collect::<Result<_>>()?;
    let mut r = cfg.rng(5);
    let mut morphisms: Vec<(usize, VFun)> = Vec::new();
    for i in 0..100 {
        let q = i % 2;
        let m = size_in(&mut r, 1, cfg.cap(3));
        let y = random_separated_vcat(&qs[q], m, &mut r);
        let f = if i % 4 < 2 {
            let mut s = random_subset(m, &mut r);
            if s.is_empty() {
                s.push(r.gen_range(0..m));
            }
            VFun::new(y.restrict(&s), y, s)?
        } else {
            let k = size_in(&mut r, 1, cfg.cap(3));
            let x = random_separated_vcat(&qs[q], k, &mut r);
            let maps = functor_maps(&x, &y, cfg.budget)?;
            let map = maps[r.gen_range(0..maps.len())].clone();
            VFun::new(x, y, map)?
        };
        morphisms.push((q, f));
    }
    let extra = dense_atoms_example();
    let budget = cfg.budget;
    let check = |q: Option<usize>, f: &VFun| -> Result<Option<Value>> {
        let dense = is_dense(f, budget)?;
        let epi_bounded = match q {
            Some(q) => is_epi_against(f, &codomains[q], budget)?,
            None => is_epi_sep(f, budget)?,
        };
        let epi_sep = is_epi_sep(f, budget)?;
        let regmono = is_regmono_sep(f, f.cod().size(), budget)?;
        let closed = is_closed_embedding(f, budget)?;
        if dense != epi_bounded || dense != epi_sep || regmono != closed {
            return Ok(Some(json!({
                "codomain": space_json(f.cod()),
                "map": f.map(),
                "dense": dense,
                "epi": epi_bounded,
                "epi_against_v": epi_sep,
                "regular_mono": regmono,
                "closed_embedding": closed,
            })));
        }
        Ok(None)
    };
    let mut failure = first_failure(&morphisms, |(q, f)| check(Some(*q), f))?;
    if failure.is_none() {
        failure = check(None, &extra)?;
        if failure.is_none() && (!is_dense(&extra, budget)? || extra.is_surjective()) {
            failure = Some(json!({ "example": "boolean square atoms", "expected": "dense, not surjective" }));
        }
    }
    let dense_count = morphisms
        .iter()
        .map(|(_, f)| is_dense(f, budget))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|&d| d)
        .count();
    let detail = format!(
        "epi = dense and regular mono = closed embedding on 100 random morphisms ({dense_count} dense) and the boolean-square atom example"
    );
    Ok(Outcome::from_failure(morphisms.len() + 1, detail, failure))
}

fn cauchy(cfg: &Config) -> Result<Outcome> {
    let q = Arc::new(lukasiewicz(2));
    let xs = spaces(&q, 1..=cfg.cap(3), cfg.budget)?;
    let budget = cfg.budget;
    let failure = first_failure(&xs, |x| {
        let fail = |what: &str| Ok(Some(json!({ "space": space_json(x), "claim": what })));
        for p in x.points() {
            if !is_left_adjoint_pair(x, &representable_pair(x, p))? {
                return fail("representable pair is adjoint");
            }
        }
        if let Some(phi) = left_adjoint_criterion_failure(x, budget)? {
            return Ok(Some(
                json!({ "space": space_json(x), "claim": "left-adjoint criterion", "phi": phi }),
            ));
        }
        let c = cauchy_completion(x, budget)?;
        let isometric = x.points().all(|s| {
            x.points()
                .all(|t| c.space.a(c.yoneda.apply(s), c.yoneda.apply(t)) == x.a(s, t))
        });
        if !isometric {
            return fail("Yoneda is isometric");
        }
        if !is_cauchy_complete(&c.space, budget)? {
            return fail("completion is complete");
        }
        Ok(None)
    })?;
    let detail = format!(
        "all {} L2 spaces with 1..={} points up to isomorphism",
        xs.len(),
        cfg.cap(3)
    );
    Ok(Outcome::from_failure(xs.len(), detail, failure))
}

fn priestley_random(cfg: &Config) -> Result<Outcome> {
    let qs = [Arc::new(lukasiewicz(2)), Arc::new(lukasiewicz(3)), Arc::new(godel(3))];
    let mut r = cfg.rng(6);
    let xs: Vec<VCat> = (0..500)
        .map(|i| {
            let m = size_in(&mut r, 2, cfg.cap(4));
            random_separated_vcat(&qs[i % 3], m, &mut r)
        })
        .collect();
    let budget = cfg.budget;
    let failure = first_failure(&xs, |x| {
        let report = is_priestley(x, budget)?;
        Ok((!report.holds()).then(|| json!({ "space": space_json(x), "report": report })))
    })?;
    let detail = format!(
        "500 random separated spaces over L2/L3/G3 with up to {} points",
        cfg.cap(4)
    );
    Ok(Outcome::from_failure(xs.len(), detail, failure))
}

fn pi0_universal(cfg: &Config) -> Result<Outcome> {
    let q = Arc::new(lukasiewicz(2));
    let xs = spaces(&q, 1..=cfg.cap(3), cfg.budget)?;
    let ys = separated_codomains(&q, cfg.cap(3), cfg.budget)?;
    let budget = cfg.budget;
    let failure = first_failure(&xs, |x| {
        let refl = reflect_pi0(x, budget)?;
        if !is_priestley(&refl.space, budget)?.holds() {
            return Ok(Some(
                json!({ "space": space_json(x), "claim": "reflection is Priestley" }),
            ));
        }
        for y in &ys {
            if let Some((f, count)) = reflection_universal_failure(&refl.quotient, y, budget)? {
                return Ok(Some(json!({
                    "space": space_json(x),
                    "target": space_json(y),
                    "map": f,
                    "factorizations": count,
                })));
            }
        }
        Ok(None)
    })?;
    let detail = format!(
        "unique factorization for {} spaces against {} separated targets (L2, up to {} points)",
        xs.len(),
        ys.len(),
        cfg.cap(3)
    );
    Ok(Outcome::from_failure(xs.len() * ys.len(), detail, failure))
}

/// `{0 > 1}`: point 1 below point 0.
fn down_pair(q: Quantale) -> VCat {
    VCat::from_order(Arc::new(q), &[vec![true, false], vec![true, true]])
}

fn dual_object_example(cfg: &Config) -> Result<Outcome> {
    let q = godel(3);
    let cx = dual_object(&down_pair(q.clone()), cfg.budget)?;
    let expected: Vec<Vec<Elem>> = q
        .elements()
        .flat_map(|u| q.elements().map(move |v| vec![u, v]))
        .filter(|p| q.leq(p[0], p[1]))
        .collect();
    let mut got = cx.carrier().to_vec();
    got.sort();
    let failure = (got != expected).then(|| json!({ "carrier": got, "expected": expected }));
    let labels: Vec<String> = (0..cx.size()).map(|i| cx.label(i)).collect();
    Ok(Outcome::from_failure(
        cx.size(),
        format!("C{{0>1}} over G3 = {{(u,v) : u <= v}} = {}", labels.join(" ")),
        failure,
    ))
}

fn phi_half(cfg: &Config) -> Result<Outcome> {
    let q = godel(3);
    let half = 1;
    let poset = FinPoset::new(&[vec![true, false], vec![true, true]])?;
    let cx = dual_object(&poset.as_vcat(Arc::new(q.clone())), cfg.budget)?;
    let h: Vec<Elem> = cx.carrier().iter().map(|p| q.join(p[0], q.meet(half, p[1]))).collect();
    let at = cx.index_of(&[q.bottom(), q.top()]).map(|i| h[i]);
    let is_phi_a = poset.up_sets().into_iter().any(|a| phi_table(&cx, a) == h);
    let monoid = is_monoid_morphism(&cx, &q, &h);
    let failure = (!monoid || at != Some(half) || is_phi_a)
        .then(|| json!({ "table": h, "monoid_morphism": monoid, "value_at_(0,1)": at, "is_phi_a": is_phi_a }));
    Ok(Outcome::from_failure(
        1,
        "Phi_1/2(u,v) = u v (1/2 ^ v) is a monoid morphism, Phi_1/2(0,1) = 1/2, and no up-set gives it",
        failure,
    ))
}

fn j_iso_lukasiewicz(cfg: &Config) -> Result<Outcome> {
    let mut xs = Vec::new();
    for m in [2, 4] {
        xs.extend(spaces(&Arc::new(lukasiewicz(m)), 1..=cfg.cap(2), cfg.budget)?);
    }
    let budget = cfg.budget;
    let failure = first_failure(&xs, |x| {
        let r = verify_j_iso(x, budget)?;
        Ok((!r.bijective()).then(|| json!({ "space": space_json(x), "report": r })))
    })?;
    let detail = format!(
        "j is a bijection onto the finsup morphisms for all {} L2/L4 spaces with 1..={} points",
        xs.len(),
        cfg.cap(2)
    );
    Ok(Outcome::from_failure(xs.len(), detail, failure))
}

/// Asserts the expected failure of `j` over G3. `j` is in fact bijective
/// for every finite space (representables generate `CX` under copowers
/// and joins), so no witness is found and this check fails.
fn j_iso_godel_fails(cfg: &Config) -> Result<Outcome> {
    let xs = spaces(&Arc::new(godel(3)), 1..=cfg.cap(3), cfg.budget)?;
    let budget = cfg.budget;
    let reports: Vec<Result<_>> = xs.par_iter().map(|x| verify_j_iso(x, budget)).collect();
    for (x, r) in xs.iter().zip(reports) {
        let r = r?;
        if !r.bijective() {
            return Ok(Outcome {
                passed: true,
                instances: xs.len(),
                detail: "j fails to be bijective over G3".into(),
                witness: Some(json!({ "space": space_json(x), "report": r })),
            });
        }
    }
    Ok(Outcome {
        passed: false,
        instances: xs.len(),
        detail: format!(
            "expected a G3 space where j is not bijective; j is bijective on all {} G3 spaces with 1..={} points",
            xs.len(),
            cfg.cap(3)
        ),
        witness: None,
    })
}

fn full_faithfulness(cfg: &Config) -> Result<Outcome> {
    let q = Arc::new(lukasiewicz(2));
    let xs = separated_codomains(&q, cfg.cap(2), cfg.budget)?;
    let pairs: Vec<(&VCat, &VCat)> = xs.iter().flat_map(|x| xs.iter().map(move |y| (x, y))).collect();
    let budget = cfg.budget;
    let failure = first_failure(&pairs, |(x, y)| {
        let r = verify_full_faithfulness(x, y, budget)?;
        Ok((!r.bijective()).then(|| json!({ "x": space_json(x), "y": space_json(y), "report": r })))
    })?;
    let detail = format!(
        "functors Y -> X match FinLat morphisms CX -> CY for all {} pairs of separated L2 spaces with 1..={} points",
        pairs.len(),
        cfg.cap(2)
    );
    Ok(Outcome::from_failure(pairs.len(), detail, failure))
}

/// `Φ(x) = ⋁_{x'} a(x, x') ⊗ g(x')` for an arbitrary assignment `g`.
fn random_kleisli(x: &VCat, vy: &[Vec<Elem>], r: &mut InstanceRng) -> KleisliArrow {
    let q = x.quantale();
    let g: Vec<&Vec<Elem>> = x.points().map(|_| &vy[r.gen_range(0..vy.len())]).collect();
    let width = vy[0].len();
    x.points()
        .map(|s| {
            (0..width)
                .map(|t| q.join_all(x.points().map(|p| q.tensor(x.a(s, p), g[p][t]))))
                .collect()
        })
        .collect()
}

fn kleisli_laws(cfg: &Config) -> Result<Outcome> {
    let q = Arc::new(lukasiewicz(2));
    let mut r = cfg.rng(15);
    let mut triples = Vec::new();
    for _ in 0..30 {
        let sizes: Vec<usize> = (0..3).map(|_| size_in(&mut r, 1, cfg.cap(2))).collect();
        let [x, y, z] = [0, 1, 2].map(|i| random_vcat(&q, sizes[i], &mut r));
        let vy = vietoris_carrier(&y, cfg.budget)?;
        let vz = vietoris_carrier(&z, cfg.budget)?;
        let phi = random_kleisli(&x, &vy, &mut r);
        let psi = random_kleisli(&y, &vz, &mut r);
        triples.push((x, y, z, phi, psi));
    }
    let budget = cfg.budget;
    let failure = first_failure(&triples, |(x, y, z, phi, psi)| {
        let fail = |what: &str| {
            Ok(Some(
                json!({ "x": space_json(x), "y": space_json(y), "z": space_json(z), "law": what }),
            ))
        };
        if !is_kleisli_arrow(x, y, phi) || !is_kleisli_arrow(y, z, psi) {
            return fail("generated arrow is a functor into the Vietoris object");
        }
        let composite = kleisli_compose(&q, phi, psi);
        if !is_kleisli_arrow(x, z, &composite) {
            return fail("composite is a Kleisli arrow");
        }
        if kleisli_compose(&q, &kleisli_unit(x), phi) != *phi || kleisli_compose(&q, phi, &kleisli_unit(y)) != *phi {
            return fail("unit laws");
        }
        let (cx, cy, cz) = (
            dual_object(x, budget)?,
            dual_object(y, budget)?,
            dual_object(z, budget)?,
        );
        let c_phi = dual_of_kleisli(&cx, &cy, phi)?;
        let c_psi = dual_of_kleisli(&cy, &cz, psi)?;
        let c_comp = dual_of_kleisli(&cx, &cz, &composite)?;
        if c_comp != c_psi.iter().map(|&i| c_phi[i]).collect::<Vec<_>>() {
            return fail("C reverses composition");
        }
        let c_unit = dual_of_kleisli(&cx, &cx, &kleisli_unit(x))?;
        if c_unit != (0..cx.size()).collect::<Vec<_>>() {
            return fail("C preserves identities");
        }
        Ok(None)
    })?;
    let detail = format!(
        "Kleisli laws and contravariant functoriality of C on 30 random L2 triples with up to {} points",
        cfg.cap(2)
    );
    Ok(Outcome::from_failure(triples.len(), detail, failure))
}

fn girard_density(cfg: &Config) -> Result<Outcome> {
    let mut xs = Vec::new();
    for m in [2, 3] {
        xs.extend(spaces(&Arc::new(lukasiewicz(m)), 1..=cfg.cap(2), cfg.budget)?);
    }
    let budget = cfg.budget;
    let failure = first_failure(&xs, |x| {
        Ok(girard_density_witness(x, budget)?.map(|phi| json!({ "space": space_json(x), "phi": phi })))
    })?;
    let detail = format!(
        "every functor X -> V is a meet of complements of CX, for all {} L2/L3 spaces with 1..={} points",
        xs.len(),
        cfg.cap(2)
    );
    Ok(Outcome::from_failure(xs.len(), detail, failure))
}

fn induced_and_mu(cfg: &Config) -> Result<Outcome> {
    let xs = spaces(&Arc::new(lukasiewicz(2)), 1..=cfg.cap(3), cfg.budget)?;
    let budget = cfg.budget;
    let failure = first_failure(&xs, |x| {
        let r = vietoris_carrier(x, budget)?;
        let induced = induced_structure(x, &r)?;
        if induced.matrix() != x.matrix() {
            return Ok(Some(json!({ "space": space_json(x), "induced": induced.matrix() })));
        }
        let mu = mu_formula_check(x, budget)?;
        Ok(mu.mismatch.map(|m| json!({ "space": space_json(x), "mu_mismatch": m })))
    })?;
    let detail = format!(
        "induced structure reproduces a and mu(chi_A) = delta_A on all {} L2 spaces with 1..={} points",
        xs.len(),
        cfg.cap(3)
    );
    Ok(Outcome::from_failure(xs.len(), detail, failure))
}

fn closed_subcategories(cfg: &Config) -> Result<Outcome> {
    let q = Arc::new(lukasiewicz(2));
    let m = cfg.cap(2);
    let xs = all_vcats_up_to_iso(&q, m, cfg.budget)?;
    let maps = all_maps(q.size(), m);
    crate::error::check_budget("seed enumeration", crate::error::space_size(2, maps.len()), cfg.budget)?;
    let results: Vec<Result<(usize, Option<Value>)>> = xs
        .par_iter()
        .map(|x| {
            let mut closed = std::collections::BTreeSet::new();
            for mask in 0u64..1 << maps.len() {
                let seed: Vec<Vec<Elem>> = (0..maps.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| maps[i].clone())
                    .collect();
                closed.insert(closed_subcategory(x, &seed)?);
            }
            let mut by_structure = std::collections::BTreeMap::new();
            for r in &closed {
                let s = induced_structure(x, r)?.matrix();
                if let Some(prev) = by_structure.insert(s.clone(), r.clone()) {
                    return Ok((
                        closed.len(),
                        Some(json!({ "space": space_json(x), "first": prev, "second": r, "induced": s })),
                    ));
                }
            }
            Ok((closed.len(), None))
        })
        .collect();
    let mut total = 0;
    for r in results {
        let (n, w) = r?;
        total += n;
        if w.is_some() {
            return Ok(Outcome::from_failure(total, "", w));
        }
    }
    let detail = format!(
        "{total} closed subcategories over {} {m}-point L2 spaces, each determined by its induced structure",
        xs.len()
    );
    Ok(Outcome::from_failure(total, detail, None))
}

fn irreducibility(cfg: &Config) -> Result<Outcome> {
    let posets: Vec<FinPoset> = (0..=cfg.cap(4)).flat_map(all_posets).collect();
    let qs = [Arc::new(lukasiewicz(2)), Arc::new(godel(3))];
    let items: Vec<(&FinPoset, &Arc<Quantale>)> = qs.iter().flat_map(|q| posets.iter().map(move |p| (p, q))).collect();
    let budget = cfg.budget;
    let failure = first_failure(&items, |(p, q)| {
        let r = irreducibility_equivalence(p, (*q).clone(), budget)?;
        Ok(r.mismatch
            .map(|m| json!({ "quantale": q.name(), "leq": p.matrix(), "mismatch": m })))
    })?;
    let detail = format!(
        "A irreducible iff Phi_A multiplicative on all {} posets with 0..={} points, over L2 and G3",
        posets.len(),
        cfg.cap(4)
    );
    Ok(Outcome::from_failure(items.len(), detail, failure))
}

fn function_detection_check(cfg: &Config) -> Result<Outcome> {
    let q = Arc::new(lukasiewicz(2));
    let posets: Vec<FinPoset> = (1..=cfg.cap(3)).flat_map(all_posets).collect();
    let duals = posets
        .iter()
        .map(|p| dual_object(&p.as_vcat(q.clone()), cfg.budget))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..posets.len())
        .flat_map(|i| (0..posets.len()).map(move |j| (i, j)))
        .collect();
    let counts: Vec<Result<(usize, Option<Value>)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (p, pq) = (&posets[i], &posets[j]);
            let rels = monotone_relations(p, pq);
            for r in &rels {
                let detected = function_detection(p, pq, r, &duals[i], &duals[j])?;
                let graph = is_graph_of_map(p, pq, r);
                if detected != graph {
                    return Ok((
                        rels.len(),
                        Some(json!({ "x": p.matrix(), "y": pq.matrix(), "relation": r, "detected": detected, "graph": graph })),
                    ));
                }
            }
            Ok((rels.len(), None))
        })
        .collect();
    let mut total = 0;
    for c in counts {
        let (n, w) = c?;
        total += n;
        if w.is_some() {
            return Ok(Outcome::from_failure(total, "", w));
        }
    }
    let detail = format!(
        "CR is a monoid morphism iff R is the graph of a map, for {total} monotone relations between posets with 1..={} points",
        cfg.cap(3)
    );
    Ok(Outcome::from_failure(total, detail, None))
}

fn h_iso(cfg: &Config) -> Result<Outcome> {
    let posets: Vec<FinPoset> = (0..=cfg.cap(3)).flat_map(all_posets).collect();
    let budget = cfg.budget;
    let mut count = 0;
    for q in [lukasiewicz(2), lukasiewicz(3)] {
        let q = Arc::new(q);
        let failure = first_failure(&posets, |p| {
            let r = verify_h_iso(p, q.clone(), budget)?;
            Ok((!r.bijective).then(|| json!({ "quantale": q.name(), "leq": p.matrix(), "report": r })))
        })?;
        count += posets.len();
        if failure.is_some() {
            return Ok(Outcome::from_failure(count, "", failure));
        }
    }
    let g3 = Arc::new(godel(3));
    let mut g3_witness = None;
    for p in &posets {
        let r = verify_h_iso(p, g3.clone(), budget)?;
        if let Some(missed) = r.missed {
            g3_witness = Some((p.matrix(), missed));
            break;
        }
    }
    count += posets.len();
    let failure = g3_witness
        .is_none()
        .then(|| json!({ "quantale": "G3", "expected": "a lax morphism that is no Phi_A" }));
    let detail = match &g3_witness {
        Some((p, missed)) => format!(
            "up-sets match lax monoid finsup morphisms CP -> V over L2/L3 on posets with 0..={} points; over G3 the poset {p:?} has the extra morphism {missed:?}",
            cfg.cap(3)
        ),
        None => String::new(),
    };
    Ok(Outcome::from_failure(count, detail, failure))
}
