//! Two-row constructions of minimal origami permutations.
//!
//! Every construction produces a pair `(ρ, τ)` of `N`-cycles, `N = 2g − 1`,
//! with `τ⁻¹ρτ = σ_N` and `ρσ_N⁻¹` an `N`-cycle. Then `[τ, σ_N] = ρσ_N⁻¹`,
//! so `τ` is the vertical permutation of a one-cylinder origami in `H(2g−2)`.
//!
//! Odd genus: the bottom row is `3,4,…,N,1,2`. The top row starts with `1`
//! over `3`; the pair `(3,2)` is placed over a slot `(j, j+1)` with `j` even,
//! after which the pair `(j+1, j)` is placed, and so on. The last pair always
//! lands over `(1,2)`. `ρ` is the top row read as one cycle and `τ` maps each
//! top entry to the entry below it.
//!
//! Even genus: an odd-genus result of genus `g − 1` with conjugator `η` is
//! spliced at an odd `k`, redirecting `k → 2g−1 → 2g−2 → η(k)`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("genus {genus} is not valid here: {reason}")]
    BadGenus { genus: usize, reason: &'static str },
    #[error("choice sequence for genus {genus}: {reason}")]
    BadChoices { genus: usize, reason: String },
    #[error("k = {k} is the preimage of 1 under the parent τ; the spliced ρσ⁻¹ would split into several cycles")]
    KHitsPreimageOfOne { k: usize },
    #[error("k = {k} must be odd and in 3..={max}")]
    BadK { k: usize, max: usize },
    #[error("parent has genus {parent}, expected {expected}")]
    ParentGenus { parent: usize, expected: usize },
    #[error("minimal origami permutations need odd degree 2g-1 >= 5, got {degree}")]
    BadDegree { degree: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Order in which the even slots `(4,5), (6,7), …, (2g−2, 2g−1)` receive pairs,
/// recorded by their even entries. The last slot is forced and always stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OddChoiceSequence {
    genus: usize,
    slots: Vec<usize>,
}

impl OddChoiceSequence {
    /// Accepts either the `g − 3` free choices (the forced last slot is
    /// appended) or a complete ordering of all `g − 2` slots.
    pub fn new(genus: usize, choices: &[usize]) -> Result<Self, ConstructionError> {
        check_odd_genus(genus)?;
        let free = genus - 3;
        if choices.len() != free && choices.len() != free + 1 {
            return Err(ConstructionError::BadChoices {
                genus,
                reason: format!(
                    "expected {} free choices (or all {} slots), got {}",
                    free,
                    free + 1,
                    choices.len()
                ),
            });
        }
        let mut used = vec![false; 2 * genus];
        for &j in choices {
            if j % 2 != 0 || j < 4 || j > 2 * genus - 2 {
                return Err(ConstructionError::BadChoices {
                    genus,
                    reason: format!("slot {} is not an even number in 4..={}", j, 2 * genus - 2),
                });
            }
            if std::mem::replace(&mut used[j], true) {
                return Err(ConstructionError::BadChoices {
                    genus,
                    reason: format!("slot {} used twice", j),
                });
            }
        }
        let mut slots = choices.to_vec();
        if slots.len() == free {
            let last = (4..=2 * genus - 2)
                .step_by(2)
                .find(|&j| !used[j])
                .expect("exactly one slot remains");
            slots.push(last);
        }
        Ok(OddChoiceSequence { genus, slots })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// All `g − 2` slots in placement order.
    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    /// The `g − 3` free choices (the last slot is forced).
    pub fn free_choices(&self) -> &[usize] {
        &self.slots[..self.slots.len() - 1]
    }
}

/// An odd-genus parent spliced at `k`.
#[derive(Debug, Clone)]
pub struct EvenExtensionSpec {
    pub parent: ConstructionResult,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstructionProvenance {
    OddChoices { choices: OddChoiceSequence },
    EvenExtension { parent: OddChoiceSequence, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub genus: usize,
    pub rho: Permutation,
    pub tau: Permutation,
    pub provenance: ConstructionProvenance,
}

impl ConstructionResult {
    pub fn degree(&self) -> usize {
        2 * self.genus - 1
    }

    /// The row `τ` is read against: `3,…,N,1,2` for odd genus, `1,…,N` for even.
    pub fn bottom_row(&self) -> Vec<usize> {
        let n = self.degree();
        match self.provenance {
            ConstructionProvenance::OddChoices { .. } => (3..=n).chain([1, 2]).collect(),
            ConstructionProvenance::EvenExtension { .. } => (1..=n).collect(),
        }
    }

    /// The top row: entry `i` sits over `bottom_row()[i]`, so it is `τ⁻¹` of it.
    pub fn top_row(&self) -> Vec<usize> {
        let inv = self.tau.inverse();
        self.bottom_row()
            .into_iter()
            .map(|b| inv.apply(b))
            .collect()
    }

    /// `ρσ_N⁻¹`, which equals `[τ, σ_N]`.
    pub fn rho_sigma_inverse(&self) -> Permutation {
        self.rho
            .then(&Permutation::standard_cycle(self.degree()).inverse())
    }

    fn parent_choices(&self) -> Option<&OddChoiceSequence> {
        match &self.provenance {
            ConstructionProvenance::OddChoices { choices } => Some(choices),
            ConstructionProvenance::EvenExtension { .. } => None,
        }
    }
}

fn check_odd_genus(genus: usize) -> Result<(), ConstructionError> {
    if genus < 3 || genus % 2 == 0 {
        return Err(ConstructionError::BadGenus {
            genus,
            reason: "the two-row construction needs odd genus >= 3",
        });
    }
    Ok(())
}

fn check_even_genus(genus: usize) -> Result<(), ConstructionError> {
    if genus < 4 || genus % 2 != 0 {
        return Err(ConstructionError::BadGenus {
            genus,
            reason: "the splice construction needs even genus >= 4",
        });
    }
    Ok(())
}

/// Runs the odd-genus two-row placement.
pub fn build_odd(choices: &OddChoiceSequence) -> ConstructionResult {
    let g = choices.genus;
    let n = 2 * g - 1;
    let bottom: Vec<usize> = (3..=n).chain([1, 2]).collect();
    // column holding bottom value b
    let column = |b: usize| if b >= 3 { b - 3 } else { n - 3 + b };
    let mut top = vec![0usize; n];
    top[0] = 1;
    let mut pair = (3, 2);
    for &j in choices.slots.iter().chain(std::iter::once(&1)) {
        top[column(j)] = pair.0;
        top[column(j + 1)] = pair.1;
        pair = (j + 1, j);
    }
    let rho = Permutation::from_full_cycle(&top).expect("top row is a permutation of 1..N");
    let mut tau_images = vec![0usize; n];
    for (t, b) in top.iter().zip(&bottom) {
        tau_images[t - 1] = *b;
    }
    let tau = Permutation::from_images(&tau_images).expect("columns define a bijection");
    ConstructionResult {
        genus: g,
        rho,
        tau,
        provenance: ConstructionProvenance::OddChoices {
            choices: choices.clone(),
        },
    }
}

/// All `(g − 2)!` odd-genus results, in lexicographic order of the slot sequence.
pub fn enumerate_odd(
    genus: usize,
) -> Result<impl Iterator<Item = ConstructionResult>, ConstructionError> {
    check_odd_genus(genus)?;
    let slots: Vec<usize> = (4..=2 * genus - 2).step_by(2).collect();
    let k = slots.len();
    Ok(slots.into_iter().permutations(k).map(move |order| {
        let seq = OddChoiceSequence {
            genus,
            slots: order,
        };
        build_odd(&seq)
    }))
}

/// The splice recipe without admissibility checks: `τ = η` except
/// `k → 2g−1 → 2g−2 → η(k)`, and `ρ = τ σ_N τ⁻¹`. Returns `(ρ, τ)`.
///
/// `eta` has degree `2g − 3`; the result has degree `2g − 1`.
pub fn splice_even(eta: &Permutation, k: usize) -> (Permutation, Permutation) {
    let n = eta.degree() + 2;
    let (top, next) = (n, n - 1);
    let mut images: Vec<usize> = (1..=n)
        .map(|x| if x <= eta.degree() { eta.apply(x) } else { x })
        .collect();
    images[k - 1] = top;
    images[top - 1] = next;
    images[next - 1] = eta.apply(k);
    let tau = Permutation::from_images(&images).expect("splice keeps a bijection");
    let rho = tau
        .then(&Permutation::standard_cycle(n))
        .then(&tau.inverse());
    (rho, tau)
}

fn check_k(parent: &ConstructionResult, k: usize) -> Result<(), ConstructionError> {
    let max = 2 * parent.genus - 1;
    if k % 2 == 0 || k < 3 || k > max {
        return Err(ConstructionError::BadK { k, max });
    }
    if parent.tau.inverse().apply(1) == k {
        return Err(ConstructionError::KHitsPreimageOfOne { k });
    }
    Ok(())
}

/// Extends an odd-genus result to genus `parent.genus + 1`.
pub fn build_even(spec: &EvenExtensionSpec) -> Result<ConstructionResult, ConstructionError> {
    let parent = &spec.parent;
    let Some(parent_choices) = parent.parent_choices() else {
        return Err(ConstructionError::BadGenus {
            genus: parent.genus,
            reason: "the parent must come from the odd-genus construction",
        });
    };
    check_k(parent, spec.k)?;
    let (rho, tau) = splice_even(&parent.tau, spec.k);
    Ok(ConstructionResult {
        genus: parent.genus + 1,
        rho,
        tau,
        provenance: ConstructionProvenance::EvenExtension {
            parent: parent_choices.clone(),
            k: spec.k,
        },
    })
}

/// Admissible splice points for a parent: odd `k` in `3..=2g−3`, `k ≠ η⁻¹(1)`.
pub fn admissible_even_choices(parent: &ConstructionResult) -> Vec<usize> {
    let max = 2 * parent.genus - 1;
    (3..=max)
        .step_by(2)
        .filter(|&k| check_k(parent, k).is_ok())
        .collect()
}

/// Splice points whose results cannot be `⟨σ⟩`-conjugate to another result:
/// the admissible `k` minus `2g−3` and `η⁻¹(2g−4)` (the odd partner of
/// `η⁻¹(2g−3)` in its placed pair). Normally `g − 5` values; `g − 4` when
/// `η⁻¹(1) = 2g−3` already removed one of them.
pub fn safe_even_choices(
    parent: &ConstructionResult,
    genus: usize,
) -> Result<Vec<usize>, ConstructionError> {
    check_even_genus(genus)?;
    if parent.genus + 1 != genus {
        return Err(ConstructionError::ParentGenus {
            parent: parent.genus,
            expected: genus - 1,
        });
    }
    let eta_inv = parent.tau.inverse();
    let top_odd = 2 * genus - 3;
    let partner = eta_inv.apply(top_odd - 1);
    Ok(admissible_even_choices(parent)
        .into_iter()
        .filter(|&k| k != top_odd && k != partner)
        .collect())
}

fn enumerate_even_with(
    genus: usize,
    safe_only: bool,
) -> Result<impl Iterator<Item = ConstructionResult>, ConstructionError> {
    check_even_genus(genus)?;
    let parents = enumerate_odd(genus - 1)?;
    Ok(parents.flat_map(move |parent| {
        let ks = if safe_only {
            safe_even_choices(&parent, genus).expect("genus checked above")
        } else {
            admissible_even_choices(&parent)
        };
        ks.into_iter().map(move |k| {
            build_even(&EvenExtensionSpec {
                parent: parent.clone(),
                k,
            })
            .expect("admissible k")
        })
    }))
}

/// All `(g − 3)·(g − 3)!` even-genus results: every parent crossed with every admissible `k`.
pub fn enumerate_even(
    genus: usize,
) -> Result<impl Iterator<Item = ConstructionResult>, ConstructionError> {
    enumerate_even_with(genus, false)
}

/// Even-genus results restricted to [`safe_even_choices`].
pub fn enumerate_even_safe(
    genus: usize,
) -> Result<impl Iterator<Item = ConstructionResult>, ConstructionError> {
    enumerate_even_with(genus, true)
}

/// True iff `tau` is an `N`-cycle and `[tau, σ_N]` is an `N`-cycle.
pub fn validate_minimal_origami_permutation(tau: &Permutation) -> Result<bool, ConstructionError> {
    let n = tau.degree();
    if n % 2 == 0 || n < 5 {
        return Err(ConstructionError::BadDegree { degree: n });
    }
    Ok(is_minimal_origami_perm0(tau.zero_based()))
}

/// Allocation-free check on a zero-based one-line array of odd length `n <= 64`.
///
/// `[τ, σ](x) = σ⁻¹(τ⁻¹(σ(τ(x))))` under left-to-right composition.
pub(crate) fn is_minimal_origami_perm0(tau: &[u32]) -> bool {
    let n = tau.len();
    debug_assert!(n <= 64);
    crate::perm::is_full_cycle0(tau) && commutator_is_full_cycle0(tau)
}

/// The second half of [`is_minimal_origami_perm0`], for callers that already
/// know `tau` is an `n`-cycle.
pub(crate) fn commutator_is_full_cycle0(tau: &[u32]) -> bool {
    let n = tau.len();
    let mut inv = [0u32; 64];
    for (i, &x) in tau.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    let n32 = n as u32;
    let mut comm = [0u32; 64];
    for x in 0..n {
        let a = tau[x];
        let b = if a + 1 == n32 { 0 } else { a + 1 };
        let c = inv[b as usize];
        comm[x] = if c == 0 { n32 - 1 } else { c - 1 };
    }
    crate::perm::is_full_cycle0(&comm[..n])
}
