//! Group order via a deterministic Schreier–Sims stabilizer chain.
//!
//! Base points are chosen in increasing order: each new level is based at
//! the smallest point moved by the sifted residue that created it. The group
//! order is the product of the basic orbit lengths.

use super::{PermError, Permutation};

/// Largest degree accepted by [`group_order`] and [`StabilizerChain::new`].
pub const MAX_GROUP_DEGREE: usize = 32;

struct Level {
    base: usize,
    // transversal[x] maps the base point to x
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

/// A base and strong generating set for a permutation group.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
    // each strong generator with the index of the deepest level whose base
    // prefix it fixes: it belongs to S^(i) for every i <= that index
    strong: Vec<(Permutation, usize)>,
}

impl StabilizerChain {
    pub fn new(generators: &[Permutation]) -> Result<StabilizerChain, PermError> {
        let degree = common_degree(generators)?.unwrap_or(1);
        if degree > MAX_GROUP_DEGREE {
            return Err(PermError::DegreeTooLarge {
                degree,
                max: MAX_GROUP_DEGREE,
            });
        }
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
            strong: Vec::new(),
        };
        for g in generators {
            if g.is_identity() {
                continue;
            }
            let (residue, depth) = chain.sift(g.clone(), 0);
            if !residue.is_identity() {
                chain.add_strong(residue, 0, depth);
                chain.complete(depth);
            }
        }
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Base points, 1-indexed.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base + 1).collect()
    }

    /// Basic orbit lengths, one per base point.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift(p.clone(), 0).0.is_identity()
    }

    // Sifts `g` from `level` downward; returns the residue and the level at
    // which sifting stopped (== levels.len() when every level was passed).
    fn sift(&self, mut g: Permutation, level: usize) -> (Permutation, usize) {
        for (i, lvl) in self.levels.iter().enumerate().skip(level) {
            let image = g.apply0(lvl.base);
            match &lvl.transversal[image] {
                None => return (g, i),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    fn generators_at(&self, level: usize) -> Vec<Permutation> {
        self.strong
            .iter()
            .filter(|(_, depth)| *depth >= level)
            .map(|(g, _)| g.clone())
            .collect()
    }

    // Registers `h` as a strong generator for levels from..=to, creating a
    // new level when `to` is past the end, and rebuilds the affected orbits.
    fn add_strong(&mut self, h: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let base = (0..self.degree)
                .find(|&x| h.apply0(x) != x)
                .expect("a non-identity residue moves some point");
            self.levels.push(Level {
                base,
                transversal: Vec::new(),
                orbit: Vec::new(),
            });
        }
        self.strong.push((h, to));
        for level in from..=to {
            self.rebuild_orbit(level);
        }
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let gens = self.generators_at(level);
        let base = self.levels[level].base;
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[base] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![base];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for s in &gens {
                let y = s.apply0(x);
                if transversal[y].is_none() {
                    let u = transversal[x].as_ref().unwrap().then(s);
                    transversal[y] = Some(u);
                    orbit.push(y);
                }
            }
        }
        let lvl = &mut self.levels[level];
        lvl.transversal = transversal;
        lvl.orbit = orbit;
    }

    // Checks Schreier generators level by level, starting at `start` and
    // moving upward; any residue that fails to sift is added and the check
    // restarts at the level where it dropped out.
    fn complete(&mut self, start: usize) {
        let mut level = start.min(self.levels.len().saturating_sub(1)) as isize;
        'outer: while level >= 0 {
            let i = level as usize;
            let gens = self.generators_at(i);
            let orbit = self.levels[i].orbit.clone();
            for &x in &orbit {
                for s in &gens {
                    let y = s.apply0(x);
                    let ux = self.levels[i].transversal[x].as_ref().unwrap();
                    let uy = self.levels[i].transversal[y].as_ref().unwrap();
                    let schreier = ux.then(s).then(&uy.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, depth) = self.sift(schreier, i + 1);
                    if !residue.is_identity() {
                        self.add_strong(residue, i + 1, depth);
                        level = depth as isize;
                        continue 'outer;
                    }
                }
            }
            level -= 1;
        }
    }
}

fn common_degree(generators: &[Permutation]) -> Result<Option<usize>, PermError> {
    let Some(first) = generators.first() else {
        return Ok(None);
    };
    for g in generators {
        if g.degree() != first.degree() {
            return Err(PermError::DegreeMismatch {
                left: first.degree(),
                right: g.degree(),
            });
        }
    }
    Ok(Some(first.degree()))
}

/// Exact order of the group generated by `generators`; 1 for an empty list.
pub fn group_order(generators: &[Permutation]) -> Result<u128, PermError> {
    Ok(StabilizerChain::new(generators)?.order())
}

/// Orbit of `point` (1-indexed) under the generated group, in discovery order.
pub fn orbit_of_point(point: usize, generators: &[Permutation]) -> Result<Vec<usize>, PermError> {
    let Some(degree) = common_degree(generators)? else {
        return Ok(vec![point]);
    };
    let mut seen = vec![false; degree];
    let mut orbit = vec![point - 1];
    seen[point - 1] = true;
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        head += 1;
        for g in generators {
            let y = g.apply0(x);
            if !std::mem::replace(&mut seen[y], true) {
                orbit.push(y);
            }
        }
    }
    Ok(orbit.into_iter().map(|x| x + 1).collect())
}

/// True iff the orbit of 1 is all of `{1..N}`. An empty generator list has
/// no degree and is reported as not transitive.
pub fn is_transitive(generators: &[Permutation]) -> Result<bool, PermError> {
    match common_degree(generators)? {
        None => Ok(false),
        Some(n) => Ok(orbit_of_point(1, generators)?.len() == n),
    }
}
