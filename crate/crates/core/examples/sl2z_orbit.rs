//! SL(2,Z)-orbits of minimal origamis.
//!
//! Prints the orbit of the genus-3 origami `τ = (1,3,4,2,5)` member by member,
//! then partitions every minimal origami of genus 3..=G into orbits.
//!
//! ```text
//! cargo run --release --example sl2z_orbit -- 5
//! ```

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use origami_forge::classify::exhaustive_minimal_origami_perms;
use origami_forge::perm::parse_permutation;
use origami_forge::sl2z::{orbit, veech_index};
use origami_forge::{CanonicalForm, Origami};

fn main() -> anyhow::Result<()> {
    let max_genus: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(4);

    let seed = Origami::from_vertical_perm(parse_permutation("(1,3,4,2,5)", 5)?);
    let rec = orbit(&seed, 1_000_000)?;
    println!("orbit of {} has {} members", seed, veech_index(&rec));
    for key in rec.members() {
        let o = key.to_origami();
        println!(
            "  {:<24} word {:<8} cylinders {:?}",
            key.to_text(),
            rec.word_to(key).unwrap_or(""),
            o.cylinder_counts()
        );
    }
    println!("summary: {:?}\n", rec.summary);

    for g in 3..=max_genus {
        let start = Instant::now();
        let mut covered: HashSet<CanonicalForm> = HashSet::new();
        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        let mut largest = 0;
        for tau in exhaustive_minimal_origami_perms(g)? {
            let o = Origami::from_vertical_perm(tau);
            if covered.contains(&o.canonical_form()) {
                continue;
            }
            let rec = orbit(&o, 1_000_000)?;
            *sizes.entry(rec.size()).or_default() += 1;
            largest = largest.max(rec.size());
            covered.extend(rec.members().cloned());
        }
        println!(
            "genus {}: {} orbits, sizes {:?}, {} origamis visited, {:.2?}",
            g,
            sizes.values().sum::<usize>(),
            sizes,
            covered.len(),
            start.elapsed()
        );
    }
    Ok(())
}
