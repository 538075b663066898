//! Permutations of `{1..N}` with left-to-right composition.
//!
//! A product `pq` means "apply `p`, then `q`". Conjugation of `p` by `t` is
//! `t⁻¹pt`, which rewrites every entry of the cycle expression of `p` by its
//! image under `t`. The commutator is `[t, s] = t s t⁻¹ s⁻¹`.
//!
//! Storage is one-line notation. Cycle notation is only an I/O format.

mod group;
mod parse;

use std::fmt;

use thiserror::Error;

pub use group::{group_order, is_transitive, orbit_of_point, StabilizerChain, MAX_GROUP_DEGREE};
pub use parse::{parse_permutation, parse_permutation_inferred};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("not a bijection of 1..{degree}: {reason}")]
    NotBijection { degree: usize, reason: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("degree {degree} exceeds the supported bound {max} for group computations")]
    DegreeTooLarge { degree: usize, max: usize },
}

/// A bijection of `{1..N}`.
///
/// Ordering is lexicographic on the one-line form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // zero-based images: images[i] is the image of i+1, minus one
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        assert!(degree >= 1, "permutation degree must be at least 1");
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// The standard cycle `(1,2,…,N)`.
    pub fn standard_cycle(degree: usize) -> Permutation {
        assert!(degree >= 1, "permutation degree must be at least 1");
        let n = degree as u32;
        Permutation {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// Builds a permutation from its one-line images, 1-indexed.
    pub fn from_images(images: &[usize]) -> Result<Permutation, PermError> {
        let degree = images.len();
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; degree];
        let mut zero_based = Vec::with_capacity(degree);
        for (i, &x) in images.iter().enumerate() {
            if x == 0 || x > degree {
                return Err(PermError::NotBijection {
                    degree,
                    reason: format!("image {} of {} is out of range", x, i + 1),
                });
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(PermError::NotBijection {
                    degree,
                    reason: format!("{} appears twice", x),
                });
            }
            zero_based.push((x - 1) as u32);
        }
        Ok(Permutation {
            images: zero_based.into_boxed_slice(),
        })
    }

    /// Builds a permutation from disjoint cycles; unlisted symbols are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(
        degree: usize,
        cycles: &[C],
    ) -> Result<Permutation, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (idx, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree {
                    return Err(PermError::NotBijection {
                        degree,
                        reason: format!("symbol {} out of range", x),
                    });
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(PermError::NotBijection {
                        degree,
                        reason: format!("symbol {} repeated", x),
                    });
                }
                let next = cycle[(idx + 1) % cycle.len()];
                images[x - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds the single cycle `(c₀,c₁,…)` on `{1..N}` where `N = cycle.len()`.
    pub fn from_full_cycle(cycle: &[usize]) -> Result<Permutation, PermError> {
        Permutation::from_cycles(cycle.len(), &[cycle])
    }

    pub(crate) fn from_zero_based(images: Box<[u32]>) -> Permutation {
        debug_assert!(is_bijection(&images));
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `x` (1-indexed).
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn apply0(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub(crate) fn zero_based(&self) -> &[u32] {
        &self.images
    }

    /// One-line images, 1-indexed.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    fn check_degree(&self, other: &Permutation) -> Result<(), PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// `self` first, then `other`: the result maps `x` to `other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(other)?;
        Ok(self.then(other))
    }

    // Unchecked composition for call sites that already know the degrees agree.
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `t⁻¹ · self · t`, i.e. every cycle entry of `self` replaced by its image under `t`.
    pub fn conjugate(&self, t: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(t)?;
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[t.images[i] as usize] = t.images[x as usize];
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// `[self, s] = self · s · self⁻¹ · s⁻¹`.
    pub fn commutator(&self, s: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(s)?;
        Ok(self.then(s).then(&self.inverse()).then(&s.inverse()))
    }

    /// `self` composed with itself `exp` times; negative exponents use the inverse.
    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut result = Permutation::identity(self.degree());
        let mut acc = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&acc);
            }
            acc = acc.then(&acc);
            e >>= 1;
        }
        result
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            cycles.push(cycle);
        }
        CycleDecomposition { degree: n, cycles }
    }

    pub fn cycle_count(&self) -> usize {
        count_cycles(&self.images)
    }

    /// True iff `self` is a single cycle of length `N`.
    pub fn is_full_cycle(&self) -> bool {
        is_full_cycle0(&self.images)
    }

    /// Cycle lengths, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        self.cycle_decomposition().cycle_type()
    }

    pub fn to_one_line_string(&self) -> String {
        let mut out = String::with_capacity(self.degree() * 3);
        for (i, &x) in self.images.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&(x + 1).to_string());
        }
        out
    }

    pub fn to_cycle_string(&self) -> String {
        self.cycle_decomposition().to_string()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.cycle_decomposition(), f)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self.to_one_line_string())
    }
}

/// Disjoint cycles covering `{1..N}`, fixed points included.
///
/// Each cycle starts at its smallest element and cycles are sorted by that
/// element, which is exactly the order produced by scanning symbols upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    degree: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.degree, &self.cycles)
            .expect("a cycle decomposition always describes a bijection")
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn is_bijection(images: &[u32]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&x| (x as usize) < images.len() && !std::mem::replace(&mut seen[x as usize], true))
}

/// Number of cycles of a zero-based one-line permutation.
pub(crate) fn count_cycles(images: &[u32]) -> usize {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
        }
    }
    count
}

/// True iff the zero-based one-line permutation is a single `N`-cycle.
#[inline]
pub(crate) fn is_full_cycle0(images: &[u32]) -> bool {
    let n = images.len();
    let mut x = images[0] as usize;
    let mut steps = 1;
    while x != 0 {
        x = images[x] as usize;
        steps += 1;
        if steps > n {
            return false;
        }
    }
    steps == n
}
