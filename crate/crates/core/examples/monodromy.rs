//! Monodromy groups of minimal origamis at genus 5 and 6.
//!
//! Finds one-row origamis whose monodromy has order 504 on 9 points and 7920
//! on 11 points, and prints the stabilizer chain data.

use origami_forge::classify::{count_mod_orbits, exhaustive_minimal_origami_perms};
use origami_forge::perm::{is_transitive, StabilizerChain};
use origami_forge::Origami;

fn main() -> anyhow::Result<()> {
    for (g, target) in [(5, 504u128), (6, 7920)] {
        let classes = count_mod_orbits(exhaustive_minimal_origami_perms(g)?)?.classes;
        let hit = classes
            .iter()
            .map(|c| Origami::from_vertical_perm(c.representative.clone()))
            .find(|o| o.monodromy_order().ok() == Some(target))
            .expect("target order occurs");
        let gens = [hit.h().clone(), hit.v().clone()];
        let chain = StabilizerChain::new(&gens)?;
        println!("genus {}: tau = {}", g, hit.v());
        println!(
            "  order {} on {} points, transitive {}, base {:?}, orbit lengths {:?}",
            chain.order(),
            chain.degree(),
            is_transitive(&gens)?,
            chain.base(),
            chain.orbit_lengths()
        );
    }
    Ok(())
}
