//! Exhaustive search for minimal origami permutations, grouped into
//! σ-conjugacy classes.
//!
//! ```text
//! cargo run --example exhaustive_classify -- 6
//! ```

use std::time::Instant;

use origami_forge::classify::{count_mod_orbits, exhaustive_minimal_origami_perms};
use origami_forge::Origami;

fn main() -> anyhow::Result<()> {
    let max_genus: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(5);
    println!(
        "{:>5} {:>6} {:>8} {:>6} {:>10}",
        "genus", "N", "P_g", "O_g", "time"
    );
    for g in 3..=max_genus {
        let start = Instant::now();
        let perms = exhaustive_minimal_origami_perms(g)?;
        let counts = count_mod_orbits(perms.iter().cloned())?;
        println!(
            "{:>5} {:>6} {:>8} {:>6} {:>9.2?}",
            g,
            2 * g - 1,
            counts.p,
            counts.o,
            start.elapsed()
        );
        assert!(counts.o * (2 * g - 1) >= counts.p);

        let mut sizes = std::collections::BTreeMap::<usize, usize>::new();
        for c in &counts.classes {
            *sizes.entry(c.members_count).or_default() += 1;
        }
        println!("      class sizes (size: count): {:?}", sizes);

        let mut orders = std::collections::BTreeMap::<u128, usize>::new();
        for c in &counts.classes {
            let o = Origami::from_vertical_perm(c.representative.clone());
            *orders.entry(o.monodromy_order()?).or_default() += 1;
        }
        println!("      monodromy orders per class: {:?}", orders);
    }
    Ok(())
}
