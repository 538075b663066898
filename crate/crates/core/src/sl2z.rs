//! The SL(2,Z) action on origamis and orbit enumeration.
//!
//! Generators are `S = [[0,−1],[1,0]]` (quarter turn) and `T = [[1,1],[0,1]]`
//! (horizontal shear), acting by
//!
//! * `S · (h, v) = (v, h⁻¹)`
//! * `T · (h, v) = (h, v h⁻¹)`
//!
//! with left-to-right products. `S⁴` is the identity on labeled origamis and
//! `(ST)⁶` is the identity up to relabeling.
//!
//! The orbit size equals the index of the Veech group in SL(2,Z) when the
//! origami is reduced (its period lattice is `Z²`); otherwise it is the index
//! of the stabilizer of the labeled-up-to-relabeling surface, which is what
//! this module computes.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::origami::{CanonicalForm, Origami, Stratum};
use crate::perm::PermError;

pub fn act_t(o: &Origami) -> Origami {
    Origami::new_unchecked(o.h().clone(), o.v().then(&o.h().inverse()))
}

pub fn act_t_inv(o: &Origami) -> Origami {
    Origami::new_unchecked(o.h().clone(), o.v().then(o.h()))
}

pub fn act_s(o: &Origami) -> Origami {
    Origami::new_unchecked(o.v().clone(), o.h().inverse())
}

/// Applies a word over `S`, `T`, `t` (= `T⁻¹`), leftmost letter first.
pub fn apply_word(o: &Origami, word: &str) -> Result<Origami, OrbitError> {
    let mut cur = o.clone();
    for c in word.chars() {
        cur = match c {
            'S' => act_s(&cur),
            'T' => act_t(&cur),
            't' => act_t_inv(&cur),
            other => return Err(OrbitError::BadWord(other)),
        };
    }
    Ok(cur)
}

const GENERATORS: [(char, fn(&Origami) -> Origami); 3] =
    [('T', act_t), ('t', act_t_inv), ('S', act_s)];

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("orbit exceeded the cap of {cap} members; {} found, {} still queued", .state.seen.len(), .state.frontier.len())]
    CapExceeded { cap: usize, state: Box<OrbitSearch> },
    #[error("generator word contains unknown letter {0:?}")]
    BadWord(char),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Invariants shared by every member of an orbit, plus the cylinder
/// statistics over members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub n: usize,
    pub stratum: Stratum,
    pub monodromy_order: u128,
    /// `(horizontal, vertical)` cylinder counts with their multiplicities, sorted.
    pub cylinder_pairs: Vec<((usize, usize), usize)>,
}

/// A closed SL(2,Z)-orbit, as a set of canonical forms.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub seed: CanonicalForm,
    // member -> generator word reaching it from the seed
    members: BTreeMap<CanonicalForm, String>,
    pub summary: OrbitSummary,
}

impl OrbitRecord {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Members in key order.
    pub fn members(&self) -> impl Iterator<Item = &CanonicalForm> {
        self.members.keys()
    }

    pub fn contains(&self, key: &CanonicalForm) -> bool {
        self.members.contains_key(key)
    }

    /// A word over `S`, `T`, `t` carrying the seed to `key`.
    pub fn word_to(&self, key: &CanonicalForm) -> Option<&str> {
        self.members.get(key).map(String::as_str)
    }

    /// Smallest member key; identical for every seed of the same orbit.
    pub fn min_member(&self) -> &CanonicalForm {
        self.members.keys().next().expect("orbits are non-empty")
    }
}

/// Resumable breadth-first search state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitSearch {
    pub seed: CanonicalForm,
    pub seen: BTreeMap<CanonicalForm, String>,
    pub frontier: VecDeque<CanonicalForm>,
}

impl OrbitSearch {
    pub fn new(seed: &Origami) -> OrbitSearch {
        let key = seed.canonical_form();
        OrbitSearch {
            seed: key.clone(),
            seen: BTreeMap::from([(key.clone(), String::new())]),
            frontier: VecDeque::from([key]),
        }
    }

    /// Expands until closed, or until more than `cap` members would be known.
    pub fn run(mut self, cap: usize) -> Result<OrbitRecord, OrbitError> {
        while let Some(key) = self.frontier.pop_front() {
            let o = key.to_origami();
            let word = self.seen[&key].clone();
            for (letter, act) in GENERATORS {
                let image = act(&o).canonical_form();
                if self.seen.contains_key(&image) {
                    continue;
                }
                if self.seen.len() >= cap {
                    // re-expanding a node is idempotent, so put it back
                    self.frontier.push_front(key);
                    return Err(OrbitError::CapExceeded {
                        cap,
                        state: Box::new(self),
                    });
                }
                let mut w = word.clone();
                w.push(letter);
                self.seen.insert(image.clone(), w);
                self.frontier.push_back(image);
            }
        }
        self.finish()
    }

    fn finish(self) -> Result<OrbitRecord, OrbitError> {
        let seed = self.seed.to_origami();
        let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for key in self.seen.keys() {
            *pairs.entry(key.to_origami().cylinder_counts()).or_default() += 1;
        }
        let summary = OrbitSummary {
            n: seed.n(),
            stratum: seed.singularities(),
            monodromy_order: seed.monodromy_order()?,
            cylinder_pairs: pairs.into_iter().collect(),
        };
        Ok(OrbitRecord {
            seed: self.seed,
            members: self.seen,
            summary,
        })
    }
}

/// Closes `{seed}` under `T`, `T⁻¹` and `S`; `cap` bounds the member count.
pub fn orbit(seed: &Origami, cap: usize) -> Result<OrbitRecord, OrbitError> {
    OrbitSearch::new(seed).run(cap)
}

/// Orbit cardinality, i.e. `[SL(2,Z) : Veech group]` for reduced origamis.
pub fn veech_index(rec: &OrbitRecord) -> usize {
    rec.size()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{parse_permutation, Permutation};

    fn g3() -> Origami {
        Origami::from_vertical_perm(parse_permutation("(1,3,4,2,5)", 5).unwrap())
    }

    #[test]
    fn torus_is_fixed() {
        let t = Origami::torus();
        assert_eq!(act_t(&t), t);
        assert_eq!(act_s(&t), t);
        let rec = orbit(&t, 10).unwrap();
        assert_eq!(rec.size(), 1);
        assert_eq!(veech_index(&rec), 1);
    }

    #[test]
    fn shear_keeps_horizontal_cylinders() {
        let o = g3();
        let sheared = act_t(&o);
        assert_eq!(sheared.h(), o.h());
        let expected_v = parse_permutation("(1,3,4,2,5)", 5)
            .unwrap()
            .compose(&Permutation::standard_cycle(5).inverse())
            .unwrap();
        assert_eq!(sheared.v(), &expected_v);
        assert_eq!(sheared.cylinder_counts().0, o.cylinder_counts().0);
        assert_eq!(sheared.singularities().orders(), &[4]);
        assert_eq!(act_t_inv(&sheared), o);
    }

    #[test]
    fn rotation_swaps_cylinders_and_squares_to_minus_identity() {
        let o = Origami::new(
            parse_permutation("(1,2,3)(4)", 4).unwrap(),
            parse_permutation("(1,4)", 4).unwrap(),
        )
        .unwrap();
        let r = act_s(&o);
        let (ch, cv) = o.cylinder_counts();
        assert_eq!(r.cylinder_counts(), (cv, ch));
        let minus_id = act_s(&r);
        assert_eq!(minus_id.h(), &o.h().inverse());
        assert_eq!(minus_id.v(), &o.v().inverse());
        assert_eq!(apply_word(&o, "SSSS").unwrap(), o);
    }

    #[test]
    fn relations_hold_on_canonical_forms() {
        let o = g3();
        assert_eq!(
            apply_word(&o, "STSTSTSTSTST").unwrap().canonical_form(),
            o.canonical_form()
        );
        assert_eq!(apply_word(&o, "Tt").unwrap(), o);
        assert!(matches!(apply_word(&o, "X"), Err(OrbitError::BadWord('X'))));
    }

    #[test]
    fn orbit_is_seed_independent() {
        let rec = orbit(&g3(), 1_000_000).unwrap();
        assert!(rec.size() > 1);
        let last = rec.members().last().unwrap().to_origami();
        let again = orbit(&last, 1_000_000).unwrap();
        assert_eq!(
            rec.members().collect::<Vec<_>>(),
            again.members().collect::<Vec<_>>()
        );
        assert_eq!(rec.summary, again.summary);
        for key in rec.members() {
            let word = rec.word_to(key).unwrap();
            assert_eq!(&apply_word(&g3(), word).unwrap().canonical_form(), key);
        }
    }

    #[test]
    fn cap_exceeded_is_resumable() {
        let full = orbit(&g3(), usize::MAX).unwrap();
        let err = orbit(&g3(), 2).unwrap_err();
        let OrbitError::CapExceeded { state, .. } = err else {
            panic!("expected cap error");
        };
        assert_eq!(state.seen.len(), 2);
        let json = serde_json::to_string(&state).unwrap();
        let restored: OrbitSearch = serde_json::from_str(&json).unwrap();
        let resumed = restored.run(usize::MAX).unwrap();
        assert_eq!(
            resumed.members().collect::<Vec<_>>(),
            full.members().collect::<Vec<_>>()
        );
    }
}
