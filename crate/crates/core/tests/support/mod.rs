//! Shared oracles and property checks for the integration targets.
#![allow(dead_code)]

use std::collections::HashSet;

use origami_forge::perm::{group_order, parse_permutation};
use origami_forge::{Origami, Permutation};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Closure of the generators under right multiplication; the group order by
/// brute force.
pub fn closure_order(gens: &[Permutation]) -> usize {
    let n = gens[0].degree();
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.compose(g).unwrap();
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

/// Every permutation of `1..=n` in lexicographic one-line order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation::from_images(&cur).unwrap());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Minimal origami permutations of degree `n` by the definition: `τ` and
/// `[τ, σ]` are both `n`-cycles, checked over all of `S_n`.
pub fn brute_force_minimal(n: usize) -> Vec<Permutation> {
    let sigma = Permutation::standard_cycle(n);
    all_permutations(n)
        .into_iter()
        .filter(|t| t.is_full_cycle() && t.commutator(&sigma).unwrap().is_full_cycle())
        .collect()
}

pub fn arb_perm(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree).prop_flat_map(perm_of_degree)
}

pub fn perm_of_degree(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

pub fn perm_triple(
    max_degree: usize,
) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max_degree).prop_flat_map(|n| (perm_of_degree(n), perm_of_degree(n), perm_of_degree(n)))
}

pub fn perm_pair(max_degree: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_degree).prop_flat_map(|n| (perm_of_degree(n), perm_of_degree(n)))
}

pub fn check_associativity(
    p: &Permutation,
    q: &Permutation,
    r: &Permutation,
) -> Result<(), TestCaseError> {
    let left = p.compose(q).unwrap().compose(r).unwrap();
    let right = p.compose(&q.compose(r).unwrap()).unwrap();
    prop_assert_eq!(left, right);
    Ok(())
}

pub fn check_conjugation_preserves_cycle_type(
    p: &Permutation,
    t: &Permutation,
) -> Result<(), TestCaseError> {
    let c = p.conjugate(t).unwrap();
    prop_assert_eq!(c.cycle_type(), p.cycle_type());
    // conjugation renames each cycle entry x to t(x)
    for x in 1..=p.degree() {
        prop_assert_eq!(c.apply(t.apply(x)), t.apply(p.apply(x)));
    }
    Ok(())
}

pub fn check_round_trips(p: &Permutation) -> Result<(), TestCaseError> {
    let n = p.degree();
    prop_assert_eq!(&parse_permutation(&p.to_cycle_string(), n).unwrap(), p);
    prop_assert_eq!(&parse_permutation(&p.to_one_line_string(), n).unwrap(), p);
    prop_assert_eq!(&p.cycle_decomposition().to_permutation(), p);
    prop_assert_eq!(&p.inverse().inverse(), p);
    prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
    Ok(())
}

/// `relabelings` random simultaneous relabelings leave the canonical form
/// unchanged.
pub fn check_relabeling_invariance(
    o: &Origami,
    relabelings: &[Permutation],
) -> Result<(), TestCaseError> {
    let key = o.canonical_form();
    for pi in relabelings {
        let moved = o.relabel(pi).unwrap();
        prop_assert_eq!(&moved.canonical_form(), &key, "relabeling by {}", pi);
    }
    prop_assert_eq!(key.to_origami().canonical_form(), key);
    Ok(())
}

pub fn check_group_order(gens: &[Permutation]) -> Result<(), TestCaseError> {
    prop_assert_eq!(group_order(gens).unwrap(), closure_order(gens) as u128);
    Ok(())
}

/// A connected origami from an arbitrary pair: pairs generating an
/// intransitive group are joined by appending the standard cycle to `h`.
pub fn connected_origami(h: Permutation, v: Permutation) -> Origami {
    match Origami::new(h.clone(), v.clone()) {
        Ok(o) => o,
        Err(_) => {
            let h = h.compose(&Permutation::standard_cycle(h.degree())).unwrap();
            Origami::new(h.clone(), v.clone())
                .or_else(|_| Origami::new(Permutation::standard_cycle(h.degree()), v))
                .unwrap()
        }
    }
}
