use std::sync::Arc;

use proptest::prelude::*;

use qdw_core::cauchy::{cauchy_completion, is_cauchy_complete, l_closure};
use qdw_core::docs::{parse_documents, Workspace};
use qdw_core::encoding::{decode, encode};
use qdw_core::oracle::quantale_law_failure;
use qdw_core::priestley::{is_priestley, reflect_pi0};
use qdw_core::random::{random_separated_vcat, random_subset, random_vcat, rng};
use qdw_core::vcat::validate;
use qdw_core::{build_chain, ChainTensor, Quantale, VCat, DEFAULT_BUDGET};

const B: u64 = DEFAULT_BUDGET;

fn chain() -> impl Strategy<Value = Quantale> {
    (
        2usize..8,
        prop_oneof![Just(ChainTensor::Lukasiewicz), Just(ChainTensor::Minimum)],
    )
        .prop_map(|(n, kind)| build_chain(n, kind).unwrap())
}

fn small_chain() -> impl Strategy<Value = Arc<Quantale>> {
    (
        2usize..5,
        prop_oneof![Just(ChainTensor::Lukasiewicz), Just(ChainTensor::Minimum)],
    )
        .prop_map(|(n, kind)| Arc::new(build_chain(n, kind).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chains_are_lawful(q in chain()) {
        prop_assert_eq!(quantale_law_failure(&q), None);
        prop_assert!(q.is_completely_distributive());
    }

    #[test]
    fn hom_is_right_adjoint(q in chain(), u in 0usize..8, v in 0usize..8, w in 0usize..8) {
        let n = q.size();
        let (u, v, w) = (u % n, v % n, w % n);
        prop_assert_eq!(q.leq(q.tensor(u, w), v), q.leq(w, q.hom(u, v)));
    }

    #[test]
    fn encoding_round_trips(q in small_chain(), phi in prop::collection::vec(0usize..4, 0..6)) {
        let phi: Vec<usize> = phi.into_iter().map(|u| u % q.size()).collect();
        prop_assert_eq!(decode(&encode(&phi, &q), &q).unwrap(), phi);
    }

    #[test]
    fn generated_spaces_are_lawful(q in small_chain(), m in 0usize..6, seed: u64) {
        let x = random_vcat(&q, m, &mut rng(seed));
        prop_assert!(validate(&q, &x.matrix()).is_ok());
        prop_assert_eq!(x.dual().dual(), x.clone());
        let (_, sep) = x.separated_reflection();
        prop_assert!(sep.is_separated());
    }

    #[test]
    fn products_and_coproducts_are_lawful(q in small_chain(), m in 1usize..4, k in 1usize..4, seed: u64) {
        let mut r = rng(seed);
        let x = random_vcat(&q, m, &mut r);
        let y = random_vcat(&q, k, &mut r);
        prop_assert!(validate(&q, &x.product(&y).unwrap().matrix()).is_ok());
        prop_assert!(validate(&q, &x.coproduct(&y).unwrap().matrix()).is_ok());
    }

    #[test]
    fn l_closure_is_a_closure(q in small_chain(), m in 1usize..5, seed: u64) {
        let mut r = rng(seed);
        let x = random_vcat(&q, m, &mut r);
        let s = random_subset(m, &mut r);
        let c = l_closure(&x, &s, B).unwrap();
        prop_assert!(s.iter().all(|p| c.contains(p)));
        prop_assert_eq!(l_closure(&x, &c, B).unwrap(), c);
    }

    #[test]
    fn finite_separated_spaces_are_priestley(q in small_chain(), m in 1usize..5, seed: u64) {
        let x = random_separated_vcat(&q, m, &mut rng(seed));
        prop_assert!(is_priestley(&x, B).unwrap().holds());
    }

    #[test]
    fn reflection_is_priestley_and_idempotent(q in small_chain(), m in 1usize..5, seed: u64) {
        let x = random_vcat(&q, m, &mut rng(seed));
        let r = reflect_pi0(&x, B).unwrap();
        prop_assert!(is_priestley(&r.space, B).unwrap().holds());
        prop_assert_eq!(reflect_pi0(&r.space, B).unwrap().space.size(), r.space.size());
    }

    #[test]
    fn completion_is_complete(m in 1usize..4, seed: u64) {
        let q = Arc::new(qdw_core::lukasiewicz(2));
        let x = random_vcat(&q, m, &mut rng(seed));
        let c = cauchy_completion(&x, B).unwrap();
        prop_assert!(is_cauchy_complete(&c.space, B).unwrap());
    }

    #[test]
    fn documents_round_trip_through_json(m in 1usize..4, seed: u64) {
        let q = Arc::new(qdw_core::lukasiewicz(3));
        let x = random_vcat(&q, m, &mut rng(seed));
        let doc = serde_json::json!({
            "name": "x",
            "quantale": "L3",
            "points": (0..m).map(|p| format!("p{p}")).collect::<Vec<_>>(),
            "a": x.matrix(),
        });
        let docs = parse_documents(&doc.to_string(), "mem").unwrap();
        let mut ws = Workspace::default();
        prop_assert!(ws.add(&docs).iter().all(Result::is_ok));
        prop_assert_eq!(ws.vcats["x"].matrix(), x.matrix());
    }
}

#[test]
fn indiscrete_reflects_to_one_point() {
    let q = Arc::new(qdw_core::lukasiewicz(2));
    let r = reflect_pi0(&VCat::indiscrete(q, 4), B).unwrap();
    assert_eq!(r.space.size(), 1);
}
