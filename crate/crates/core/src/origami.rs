//! Square-tiled surfaces as pairs of permutations.
//!
//! `h` sends a square to its right neighbour and `v` to the square above.
//! Corners of squares are traced by the commutator `[v, h] = v h v⁻¹ h⁻¹`:
//! each of its cycles of length `ℓ` is a cone point of angle `2πℓ`, i.e. a
//! zero of order `ℓ − 1`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{group_order, is_transitive, parse_permutation, PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrigamiError {
    #[error("h and v generate an intransitive group: the surface is disconnected")]
    Disconnected,
    #[error("Euler characteristic {chi} is odd; (h, v) cannot describe a closed surface")]
    ParityViolation { chi: i64 },
    #[error("malformed canonical key: {0}")]
    BadKey(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A connected square-tiled surface with `n` squares.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Origami {
    h: Permutation,
    v: Permutation,
}

impl Origami {
    pub fn new(h: Permutation, v: Permutation) -> Result<Origami, OrigamiError> {
        if h.degree() != v.degree() {
            return Err(PermError::DegreeMismatch {
                left: h.degree(),
                right: v.degree(),
            }
            .into());
        }
        if !is_transitive(&[h.clone(), v.clone()])? {
            return Err(OrigamiError::Disconnected);
        }
        Ok(Origami { h, v })
    }

    // For maps known to preserve connectivity (relabelings, SL(2,Z) moves).
    pub(crate) fn new_unchecked(h: Permutation, v: Permutation) -> Origami {
        debug_assert!(is_transitive(&[h.clone(), v.clone()]).unwrap());
        Origami { h, v }
    }

    /// The single-square torus.
    pub fn torus() -> Origami {
        Origami {
            h: Permutation::identity(1),
            v: Permutation::identity(1),
        }
    }

    /// One horizontal row of squares: `h = σ_n`, `v = tau`.
    ///
    /// Always connected, since `σ_n` alone is transitive.
    pub fn from_vertical_perm(tau: Permutation) -> Origami {
        Origami {
            h: Permutation::standard_cycle(tau.degree()),
            v: tau,
        }
    }

    pub fn n(&self) -> usize {
        self.h.degree()
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    /// `[v, h]`, whose cycles correspond to the corner points of the tiling.
    pub fn corner_permutation(&self) -> Permutation {
        self.v.commutator(&self.h).expect("h and v share a degree")
    }

    pub fn singularities(&self) -> Stratum {
        let mut orders: Vec<usize> = self
            .corner_permutation()
            .cycle_type()
            .into_iter()
            .filter(|&len| len > 1)
            .map(|len| len - 1)
            .collect();
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Stratum(orders)
    }

    /// Genus from the Euler characteristic `χ = V − n` of the square tiling
    /// (`V` vertices, `2n` edges, `n` faces).
    pub fn genus(&self) -> Result<usize, OrigamiError> {
        let vertices = self.corner_permutation().cycle_count() as i64;
        let chi = vertices - self.n() as i64;
        if chi % 2 != 0 {
            return Err(OrigamiError::ParityViolation { chi });
        }
        Ok(((2 - chi) / 2) as usize)
    }

    /// Number of horizontal and vertical cylinders.
    pub fn cylinder_counts(&self) -> (usize, usize) {
        (self.h.cycle_count(), self.v.cycle_count())
    }

    /// Genus ≥ 2, `2g − 1` squares, one cylinder each way, stratum `H(2g−2)`.
    pub fn is_minimal_origami(&self) -> bool {
        let Ok(g) = self.genus() else {
            return false;
        };
        g >= 2
            && self.n() == 2 * g - 1
            && self.cylinder_counts() == (1, 1)
            && self.singularities().orders() == [2 * g - 2]
    }

    /// Order of the monodromy group `⟨h, v⟩`; needs `n <= 32`.
    pub fn monodromy_order(&self) -> Result<u128, PermError> {
        group_order(&[self.h.clone(), self.v.clone()])
    }

    /// Simultaneous relabeling `(π⁻¹hπ, π⁻¹vπ)`.
    pub fn relabel(&self, pi: &Permutation) -> Result<Origami, PermError> {
        Ok(Origami {
            h: self.h.conjugate(pi)?,
            v: self.v.conjugate(pi)?,
        })
    }

    /// If `h` is an `n`-cycle, relabels squares along it so that `h = σ_n`.
    ///
    /// The resulting `v` is determined up to conjugation by powers of `σ_n`.
    pub fn normalize_horizontal(&self) -> Option<Origami> {
        if !self.h.is_full_cycle() {
            return None;
        }
        let n = self.n();
        let mut images = vec![0usize; n];
        let mut x = 1;
        for label in 1..=n {
            images[x - 1] = label;
            x = self.h.apply(x);
        }
        let pi = Permutation::from_images(&images).expect("h is a full cycle");
        Some(self.relabel(&pi).expect("same degree"))
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        CanonicalForm::of_connected(&self.h, &self.v)
    }
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h={} v={}", self.h, self.v)
    }
}

/// Zero orders of the abelian differential, largest first. Empty for the torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Stratum(Vec<usize>);

impl Stratum {
    pub fn new(mut orders: Vec<usize>) -> Stratum {
        orders.retain(|&m| m > 0);
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Stratum(orders)
    }

    pub fn orders(&self) -> &[usize] {
        &self.0
    }

    /// `(Σ mᵢ + 2) / 2`.
    pub fn genus(&self) -> usize {
        (self.0.iter().sum::<usize>() + 2) / 2
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", m)?;
        }
        write!(f, ")")
    }
}

/// Representative of an origami up to simultaneous relabeling of squares.
///
/// For each starting square, squares are relabeled in breadth-first
/// discovery order along `h, h⁻¹, v, v⁻¹`; the key is the lexicographically
/// least concatenation of the relabeled one-line forms of `h` and `v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    // 1-based one-line h followed by 1-based one-line v
    key: Box<[u16]>,
}

impl CanonicalForm {
    /// Canonical form of an arbitrary pair; rejects intransitive pairs.
    pub fn of_pair(h: &Permutation, v: &Permutation) -> Result<CanonicalForm, OrigamiError> {
        let o = Origami::new(h.clone(), v.clone())?;
        Ok(o.canonical_form())
    }

    fn of_connected(h: &Permutation, v: &Permutation) -> CanonicalForm {
        let n = h.degree();
        assert!(
            n < u16::MAX as usize,
            "canonical keys support fewer than 65535 squares"
        );
        let h_inv = h.inverse();
        let v_inv = v.inverse();
        let edges = [
            h.zero_based(),
            h_inv.zero_based(),
            v.zero_based(),
            v_inv.zero_based(),
        ];
        let mut best: Option<Vec<u16>> = None;
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut candidate = vec![0u16; 2 * n];
        for base in 0..n {
            label.iter_mut().for_each(|l| *l = u32::MAX);
            order.clear();
            label[base] = 0;
            order.push(base);
            let mut head = 0;
            while head < order.len() {
                let x = order[head];
                head += 1;
                for e in &edges {
                    let y = e[x] as usize;
                    if label[y] == u32::MAX {
                        label[y] = order.len() as u32;
                        order.push(y);
                    }
                }
            }
            debug_assert_eq!(order.len(), n, "canonical form needs a connected origami");
            // relabeled h'(label[x]) = label[h(x)]; fill in new-label order
            for (new, &old) in order.iter().enumerate() {
                candidate[new] = (label[h.zero_based()[old] as usize] + 1) as u16;
                candidate[n + new] = (label[v.zero_based()[old] as usize] + 1) as u16;
            }
            match &best {
                Some(b) if b.as_slice() <= candidate.as_slice() => {}
                _ => best = Some(candidate.clone()),
            }
        }
        CanonicalForm {
            key: best.expect("at least one square").into_boxed_slice(),
        }
    }

    pub fn n(&self) -> usize {
        self.key.len() / 2
    }

    /// The relabeled origami this key encodes.
    pub fn to_origami(&self) -> Origami {
        let n = self.n();
        let to_perm = |slice: &[u16]| {
            let images: Vec<usize> = slice.iter().map(|&x| x as usize).collect();
            Permutation::from_images(&images).expect("canonical keys hold permutations")
        };
        Origami::new_unchecked(to_perm(&self.key[..n]), to_perm(&self.key[n..]))
    }

    /// Big-endian 16-bit labels; byte order agrees with key order.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.key.iter().flat_map(|x| x.to_be_bytes()).collect()
    }

    /// Text form `h₁,…,hₙ|v₁,…,vₙ`.
    pub fn to_text(&self) -> String {
        let n = self.n();
        let join = |s: &[u16]| {
            s.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}|{}", join(&self.key[..n]), join(&self.key[n..]))
    }

    /// Parses [`CanonicalForm::to_text`] output and checks it is canonical.
    pub fn from_text(text: &str) -> Result<CanonicalForm, OrigamiError> {
        let (h_text, v_text) = text
            .split_once('|')
            .ok_or_else(|| OrigamiError::BadKey("missing '|' separator".into()))?;
        let h_count = h_text.split(',').count();
        let h = parse_permutation(h_text, h_count)?;
        let v = parse_permutation(v_text, h_count)?;
        let form = CanonicalForm::of_pair(&h, &v)?;
        if form.to_text() != text {
            return Err(OrigamiError::BadKey(format!(
                "{} is not in canonical form",
                text
            )));
        }
        Ok(form)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_text())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        CanonicalForm::from_text(&text).map_err(serde::de::Error::custom)
    }
}

/// Connected components of the square graph, for callers holding raw pairs.
pub fn components(h: &Permutation, v: &Permutation) -> Vec<Vec<usize>> {
    let n = h.degree();
    let mut seen = vec![false; n + 1];
    let mut out = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in [h.apply(x), v.apply(x)] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}
