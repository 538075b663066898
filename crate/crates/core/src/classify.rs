//! σ-conjugacy classes of minimal origami permutations and exhaustive search.
//!
//! Two minimal origami permutations give the same origami up to relabeling
//! with `h = σ_N` fixed exactly when they are conjugate by a power of `σ_N`,
//! the centralizer of `σ_N`. Conjugating by `σ^m` adds `m` (mod `N`) to
//! every entry of the cycle expression.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construction::commutator_is_full_cycle0;
use crate::perm::{parse_permutation, PermError, Permutation};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("exhaustive search supports genus 3..=6 (7 with the expensive flag), got {genus}")]
    GenusOutOfRange { genus: usize },
    #[error("permutations of degrees {first} and {other} cannot be classified together")]
    MixedDegrees { first: usize, other: usize },
    #[error("checkpoint {path}: {msg}")]
    Checkpoint { path: PathBuf, msg: String },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Conjugate `σ^{-m} τ σ^m` as a zero-based one-line array.
fn shifted(tau: &[u32], m: u32, out: &mut [u32]) {
    let n = tau.len() as u32;
    for x in 0..n {
        let src = (x + n - m) % n;
        out[x as usize] = (tau[src as usize] + m) % n;
    }
}

/// Lexicographically least one-line form among the conjugates of `tau` by
/// powers of `σ_N`.
pub fn sigma_class_representative(tau: &Permutation) -> Permutation {
    let images = tau.zero_based();
    let n = images.len();
    let mut best = images.to_vec();
    let mut cand = vec![0u32; n];
    for m in 1..n as u32 {
        shifted(images, m, &mut cand);
        if cand < best {
            best.copy_from_slice(&cand);
        }
    }
    Permutation::from_zero_based(best.into_boxed_slice())
}

/// All distinct conjugates of `tau` by powers of `σ_N`, sorted.
pub fn sigma_conjugates(tau: &Permutation) -> Vec<Permutation> {
    let images = tau.zero_based();
    let n = images.len();
    let mut out: Vec<Permutation> = (0..n as u32)
        .map(|m| {
            let mut cand = vec![0u32; n];
            shifted(images, m, &mut cand);
            Permutation::from_zero_based(cand.into_boxed_slice())
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaClass {
    pub representative: Permutation,
    /// Number of distinct inputs falling in this class.
    pub members_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModOrbitCount {
    /// Distinct permutations.
    pub p: usize,
    /// σ-classes.
    pub o: usize,
    /// Classes sorted by representative.
    pub classes: Vec<SigmaClass>,
}

/// Deduplicates and groups permutations by σ-class.
pub fn count_mod_orbits<I>(perms: I) -> Result<ModOrbitCount, ClassifyError>
where
    I: IntoIterator<Item = Permutation>,
{
    let mut seen = std::collections::HashSet::new();
    let mut classes: BTreeMap<Permutation, usize> = BTreeMap::new();
    let mut degree = None;
    for tau in perms {
        match degree {
            None => degree = Some(tau.degree()),
            Some(d) if d != tau.degree() => {
                return Err(ClassifyError::MixedDegrees {
                    first: d,
                    other: tau.degree(),
                })
            }
            _ => {}
        }
        let rep = sigma_class_representative(&tau);
        if seen.insert(tau) {
            *classes.entry(rep).or_default() += 1;
        }
    }
    let classes: Vec<SigmaClass> = classes
        .into_iter()
        .map(|(representative, members_count)| SigmaClass {
            representative,
            members_count,
        })
        .collect();
    Ok(ModOrbitCount {
        p: seen.len(),
        o: classes.len(),
        classes,
    })
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct Checkpoint {
    genus: usize,
    // second cycle entry -> hits (one-line text) for that finished partition
    completed: BTreeMap<usize, Vec<String>>,
}

/// Scan of every `N`-cycle `(1, a₂, …, a_N)` for minimality.
///
/// The scan is split into `N − 1` partitions by `a₂`; partitions run in
/// parallel on the current rayon pool and results are concatenated in
/// partition order, so output order is fixed: lexicographic in
/// `(a₂, …, a_N)`.
#[derive(Debug, Clone)]
pub struct ExhaustiveSearch {
    genus: usize,
    allow_expensive: bool,
    checkpoint: Option<PathBuf>,
}

impl ExhaustiveSearch {
    pub fn new(genus: usize) -> ExhaustiveSearch {
        ExhaustiveSearch {
            genus,
            allow_expensive: false,
            checkpoint: None,
        }
    }

    /// Permits genus 7 (about 4.8 × 10⁸ candidates).
    pub fn allow_expensive(mut self, yes: bool) -> Self {
        self.allow_expensive = yes;
        self
    }

    /// Records each finished partition in `path` and skips partitions already
    /// recorded there.
    pub fn checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint = Some(path.into());
        self
    }

    pub fn run(&self) -> Result<Vec<Permutation>, ClassifyError> {
        let g = self.genus;
        let max = if self.allow_expensive { 7 } else { 6 };
        if !(3..=max).contains(&g) {
            return Err(ClassifyError::GenusOutOfRange { genus: g });
        }
        let n = 2 * g - 1;
        let state = Mutex::new(match &self.checkpoint {
            Some(path) => load_checkpoint(path, g)?,
            None => Checkpoint {
                genus: g,
                ..Default::default()
            },
        });
        let pending: Vec<usize> = (2..=n)
            .filter(|a2| !state.lock().unwrap().completed.contains_key(a2))
            .collect();
        pending.par_iter().try_for_each(|&a2| {
            let hits: Vec<String> = scan_partition(n, a2)
                .iter()
                .map(Permutation::to_one_line_string)
                .collect();
            let mut st = state.lock().unwrap();
            st.completed.insert(a2, hits);
            if let Some(path) = &self.checkpoint {
                save_checkpoint(path, &st)?;
            }
            Ok::<(), ClassifyError>(())
        })?;
        let state = state.into_inner().unwrap();
        let mut out = Vec::new();
        for hits in state.completed.values() {
            for text in hits {
                out.push(parse_permutation(text, n)?);
            }
        }
        Ok(out)
    }
}

/// All minimal origami permutations of genus `g` in `3..=6`.
pub fn exhaustive_minimal_origami_perms(genus: usize) -> Result<Vec<Permutation>, ClassifyError> {
    ExhaustiveSearch::new(genus).run()
}

fn scan_partition(n: usize, a2: usize) -> Vec<Permutation> {
    // cycle[0] = 0, cycle[1] = a2 - 1, the rest runs over all orderings
    let mut cycle: Vec<u32> = vec![0, (a2 - 1) as u32];
    cycle.extend((1..n as u32).filter(|&x| x != (a2 - 1) as u32));
    let mut tau = vec![0u32; n];
    let mut hits = Vec::new();
    loop {
        for i in 0..n {
            tau[cycle[i] as usize] = cycle[(i + 1) % n];
        }
        if commutator_is_full_cycle0(&tau) {
            hits.push(Permutation::from_zero_based(tau.clone().into_boxed_slice()));
        }
        if !next_permutation(&mut cycle[2..]) {
            break;
        }
    }
    hits
}

fn next_permutation(xs: &mut [u32]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

fn load_checkpoint(path: &Path, genus: usize) -> Result<Checkpoint, ClassifyError> {
    let err = |msg: String| ClassifyError::Checkpoint {
        path: path.to_path_buf(),
        msg,
    };
    if !path.exists() {
        return Ok(Checkpoint {
            genus,
            ..Default::default()
        });
    }
    let text = fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
    if cp.genus != genus {
        return Err(err(format!(
            "written for genus {}, not {}",
            cp.genus, genus
        )));
    }
    Ok(cp)
}

fn save_checkpoint(path: &Path, cp: &Checkpoint) -> Result<(), ClassifyError> {
    let err = |msg: String| ClassifyError::Checkpoint {
        path: path.to_path_buf(),
        msg,
    };
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| err(e.to_string()))?;
    let tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| err(e.to_string()))?;
    serde_json::to_writer(&tmp, cp).map_err(|e| err(e.to_string()))?;
    tmp.persist(path).map_err(|e| err(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{
        enumerate_even, enumerate_odd, validate_minimal_origami_permutation,
    };
    use itertools::Itertools;

    // Independent oracle: every permutation of 1..N, filtered by the slow
    // validator built on Permutation algebra.
    fn brute_force(n: usize) -> Vec<Permutation> {
        (1..=n)
            .permutations(n)
            .map(|images| Permutation::from_images(&images).unwrap())
            .filter(|tau| {
                let sigma = Permutation::standard_cycle(n);
                tau.is_full_cycle() && tau.commutator(&sigma).unwrap().is_full_cycle()
            })
            .sorted()
            .collect()
    }

    #[test]
    fn exhaustive_matches_brute_force() {
        for g in [3, 4] {
            let mut fast = exhaustive_minimal_origami_perms(g).unwrap();
            fast.sort();
            assert_eq!(fast, brute_force(2 * g - 1), "genus {}", g);
        }
    }

    #[test]
    fn exhaustive_contains_constructions() {
        for g in 3..=6 {
            let all: std::collections::HashSet<_> = exhaustive_minimal_origami_perms(g)
                .unwrap()
                .into_iter()
                .collect();
            let built: Vec<_> = if g % 2 == 1 {
                enumerate_odd(g).unwrap().map(|r| r.tau).collect()
            } else {
                enumerate_even(g).unwrap().map(|r| r.tau).collect()
            };
            assert!(!built.is_empty());
            for tau in built {
                assert!(all.contains(&tau), "genus {} missing {}", g, tau);
            }
        }
    }

    #[test]
    fn exhaustive_outputs_validate_and_are_unique() {
        let perms = exhaustive_minimal_origami_perms(5).unwrap();
        let unique: std::collections::HashSet<_> = perms.iter().collect();
        assert_eq!(unique.len(), perms.len());
        for tau in &perms {
            assert!(validate_minimal_origami_permutation(tau).unwrap());
            assert_eq!(tau.apply(1), tau.one_line()[0]);
        }
    }

    #[test]
    fn genus_range_is_enforced() {
        for g in [0, 2, 7, 8] {
            assert!(matches!(
                exhaustive_minimal_origami_perms(g),
                Err(ClassifyError::GenusOutOfRange { .. })
            ));
        }
        assert!(matches!(
            ExhaustiveSearch::new(8).allow_expensive(true).run(),
            Err(ClassifyError::GenusOutOfRange { .. })
        ));
    }

    #[test]
    fn checkpoint_resume_gives_identical_output() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g5.json");
        let direct = exhaustive_minimal_origami_perms(5).unwrap();
        let first = ExhaustiveSearch::new(5).checkpoint(&path).run().unwrap();
        assert_eq!(first, direct);
        // drop half the partitions, as if interrupted
        let mut cp: Checkpoint = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        cp.completed.retain(|&a2, _| a2 % 2 == 0);
        fs::write(&path, serde_json::to_string(&cp).unwrap()).unwrap();
        let resumed = ExhaustiveSearch::new(5).checkpoint(&path).run().unwrap();
        assert_eq!(resumed, direct);
        assert!(ExhaustiveSearch::new(4).checkpoint(&path).run().is_err());
    }

    #[test]
    fn representative_of_sigma_is_sigma() {
        let s = Permutation::standard_cycle(7);
        assert_eq!(sigma_class_representative(&s), s);
        assert_eq!(sigma_conjugates(&s), vec![s]);
    }

    #[test]
    fn representative_is_conjugation_invariant_and_idempotent() {
        let sigma = Permutation::standard_cycle(9);
        for tau in exhaustive_minimal_origami_perms(5)
            .unwrap()
            .into_iter()
            .take(50)
        {
            let rep = sigma_class_representative(&tau);
            let conj = tau.conjugate(&sigma).unwrap();
            assert_eq!(sigma_class_representative(&conj), rep);
            assert_eq!(sigma_class_representative(&rep), rep);
            assert!(validate_minimal_origami_permutation(&rep).unwrap());
            assert!(sigma_conjugates(&tau).contains(&conj));
        }
    }

    #[test]
    fn entrywise_shift_equals_conjugation() {
        let tau = parse_permutation("(1,3,8,13,4,7,10,2,9,12,5,6,11)", 13).unwrap();
        let sigma = Permutation::standard_cycle(13);
        let mut out = vec![0u32; 13];
        for m in 0..13 {
            shifted(tau.zero_based(), m as u32, &mut out);
            let expected = tau.conjugate(&sigma.pow(m)).unwrap();
            assert_eq!(out.as_slice(), expected.zero_based(), "m = {}", m);
        }
    }

    #[test]
    fn odd_family_classes_are_singletons() {
        let counts = count_mod_orbits(enumerate_odd(7).unwrap().map(|r| r.tau)).unwrap();
        assert_eq!(counts.p, 120);
        assert_eq!(counts.o, 120);
        assert!(counts.classes.iter().all(|c| c.members_count == 1));
    }

    #[test]
    fn full_class_of_one_permutation() {
        let tau = parse_permutation("(1,3,4,2,5)", 5).unwrap();
        let conj = sigma_conjugates(&tau);
        assert_eq!(conj.len(), 5);
        let mut input = conj.clone();
        input.extend(conj);
        let counts = count_mod_orbits(input).unwrap();
        assert_eq!((counts.p, counts.o), (5, 1));
        assert_eq!(counts.classes[0].members_count, 5);
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let r = count_mod_orbits([
            Permutation::standard_cycle(5),
            Permutation::standard_cycle(7),
        ]);
        assert!(matches!(
            r,
            Err(ClassifyError::MixedDegrees { first: 5, other: 7 })
        ));
        let empty = count_mod_orbits(Vec::new()).unwrap();
        assert_eq!((empty.p, empty.o), (0, 0));
    }
}
