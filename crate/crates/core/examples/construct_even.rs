//! The even-genus splice: an odd-genus parent extended at a column `k`.
//!
//! Shows a genus-10 extension, the rejected genus-4 choice `k = 5`, and the
//! family counts for genus 4, 6 and 8.

use origami_forge::classify::count_mod_orbits;
use origami_forge::construction::{
    admissible_even_choices, build_even, build_odd, enumerate_even, enumerate_even_safe,
    enumerate_odd, safe_even_choices, splice_even, EvenExtensionSpec, OddChoiceSequence,
};
use origami_forge::perm::parse_permutation;
use origami_forge::Permutation;

fn main() -> anyhow::Result<()> {
    let xi = parse_permutation("(1,11,10,15,14,3,2,7,6,17,16,9,8,5,4,13,12)", 17)?;
    let parent = enumerate_odd(9)?
        .find(|r| r.rho == xi)
        .expect("xi is in the genus-9 family");
    println!("parent tau {}", parent.tau);
    println!("parent provenance {:?}", parent.provenance);
    println!("admissible k {:?}", admissible_even_choices(&parent));
    println!("safe k       {:?}", safe_even_choices(&parent, 10)?);
    let r = build_even(&EvenExtensionSpec { parent, k: 11 })?;
    println!("top    {:?}", r.top_row());
    println!("tau    {}", r.tau);
    println!("rho sigma^-1 = {}", r.rho_sigma_inverse());

    let g3 = build_odd(&OddChoiceSequence::new(3, &[])?);
    match build_even(&EvenExtensionSpec {
        parent: g3.clone(),
        k: 5,
    }) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("\nk = 5 rejected: {}", e),
    }
    let (rho, _) = splice_even(&g3.tau, 5);
    println!(
        "forced: rho sigma^-1 = {}",
        rho.compose(&Permutation::standard_cycle(7).inverse())?
    );

    println!("\ngenus  all  classes  safe  safe-classes");
    for g in [4, 6, 8] {
        let all = count_mod_orbits(enumerate_even(g)?.map(|r| r.tau))?;
        let safe = count_mod_orbits(enumerate_even_safe(g)?.map(|r| r.tau))?;
        println!(
            "{:>5} {:>4} {:>8} {:>5} {:>13}",
            g, all.p, all.o, safe.p, safe.o
        );
    }
    Ok(())
}
