mod support;

use origami_forge::classify::{sigma_class_representative, sigma_conjugates};
use origami_forge::construction::validate_minimal_origami_permutation;
use origami_forge::sl2z::{act_s, act_t, act_t_inv, apply_word};
use origami_forge::{CanonicalForm, Origami, Permutation};
use proptest::prelude::*;
use support::*;

fn arb_origami(max_degree: usize) -> impl Strategy<Value = Origami> {
    perm_pair(max_degree).prop_map(|(h, v)| connected_origami(h, v))
}

fn arb_full_cycle(n: usize) -> impl Strategy<Value = Permutation> {
    Just((2..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |rest| {
            let mut cycle = vec![1];
            cycle.extend(rest);
            Permutation::from_full_cycle(&cycle).unwrap()
        })
}

proptest! {
    #[test]
    fn composition_is_associative((p, q, r) in perm_triple(12)) {
        check_associativity(&p, &q, &r)?;
    }

    #[test]
    fn conjugation_preserves_cycle_type((p, t) in perm_pair(12)) {
        check_conjugation_preserves_cycle_type(&p, &t)?;
    }

    #[test]
    fn text_forms_round_trip(p in arb_perm(20)) {
        check_round_trips(&p)?;
    }

    #[test]
    fn pow_agrees_with_repeated_composition(p in arb_perm(9), e in -6i64..=6) {
        let mut expected = Permutation::identity(p.degree());
        let step = if e >= 0 { p.clone() } else { p.inverse() };
        for _ in 0..e.unsigned_abs() {
            expected = expected.compose(&step).unwrap();
        }
        prop_assert_eq!(p.pow(e), expected);
    }

    #[test]
    fn group_order_matches_closure((a, b) in perm_pair(6)) {
        check_group_order(&[a, b])?;
    }

    #[test]
    fn canonical_form_ignores_relabeling(
        (o, relabelings) in (2usize..=9).prop_flat_map(|n| (
            perm_pair(n).prop_filter("degree n", move |(h, _)| h.degree() == n)
                .prop_map(|(h, v)| connected_origami(h, v)),
            proptest::collection::vec(perm_of_degree(n), 100),
        ))
    ) {
        check_relabeling_invariance(&o, &relabelings)?;
    }

    #[test]
    fn canonical_text_round_trips(o in arb_origami(10)) {
        let key = o.canonical_form();
        prop_assert_eq!(CanonicalForm::from_text(&key.to_text()).unwrap(), key);
    }

    #[test]
    fn sl2z_relations(o in arb_origami(9)) {
        let key = o.canonical_form();
        prop_assert_eq!(&apply_word(&o, "SSSS").unwrap(), &o);
        prop_assert_eq!(apply_word(&o, "STSTSTSTSTST").unwrap().canonical_form(), key.clone());
        prop_assert_eq!(&act_t_inv(&act_t(&o)), &o);
        // S² acts as −I, which is central: it commutes with T up to relabeling
        let a = act_t(&act_s(&act_s(&o)));
        let b = act_s(&act_s(&act_t(&o)));
        prop_assert_eq!(a.canonical_form(), b.canonical_form());
    }

    #[test]
    fn sl2z_preserves_invariants(o in arb_origami(8), word in "[STt]{0,12}") {
        let image = apply_word(&o, &word).unwrap();
        prop_assert_eq!(image.n(), o.n());
        prop_assert_eq!(image.singularities(), o.singularities());
        prop_assert_eq!(image.genus().unwrap(), o.genus().unwrap());
        prop_assert_eq!(image.monodromy_order().unwrap(), o.monodromy_order().unwrap());
    }

    #[test]
    fn sigma_class_is_idempotent_and_invariant(tau in (3usize..=8).prop_flat_map(|g| arb_full_cycle(2 * g - 1)), m in 0i64..20) {
        let sigma = Permutation::standard_cycle(tau.degree());
        let rep = sigma_class_representative(&tau);
        prop_assert_eq!(sigma_class_representative(&rep), rep.clone());
        let conj = tau.conjugate(&sigma.pow(m)).unwrap();
        prop_assert_eq!(sigma_class_representative(&conj), rep.clone());
        let class = sigma_conjugates(&tau);
        prop_assert!(class.len() <= tau.degree() && tau.degree() % class.len() == 0);
        prop_assert_eq!(class[0].clone(), rep);
        let valid = validate_minimal_origami_permutation(&tau).unwrap();
        for c in &class {
            prop_assert_eq!(validate_minimal_origami_permutation(c).unwrap(), valid);
        }
    }

    #[test]
    fn genus_formula_matches_stratum(o in arb_origami(10)) {
        let g = o.genus().unwrap();
        prop_assert_eq!(o.singularities().genus(), g);
        prop_assert_eq!(o.singularities().orders().iter().sum::<usize>() + 2, 2 * g);
    }
}

#[test]
fn group_order_on_every_pair_in_s4() {
    let all = all_permutations(4);
    for a in &all {
        for b in &all {
            check_group_order(&[a.clone(), b.clone()]).unwrap();
        }
    }
}
