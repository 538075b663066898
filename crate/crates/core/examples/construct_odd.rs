//! The odd-genus two-row construction.
//!
//! ```text
//! cargo run --example construct_odd            # the genus-7 example
//! cargo run --example construct_odd -- 9       # count a whole family
//! ```

use std::time::Instant;

use origami_forge::classify::count_mod_orbits;
use origami_forge::construction::{
    build_odd, enumerate_odd, validate_minimal_origami_permutation, OddChoiceSequence,
};

fn main() -> anyhow::Result<()> {
    let seq = OddChoiceSequence::new(7, &[8, 12, 4, 6])?;
    let r = build_odd(&seq);
    println!("slots  {:?} (last one forced)", seq.slots());
    println!("top    {:?}", r.top_row());
    println!("bottom {:?}", r.bottom_row());
    println!("rho    {}", r.rho);
    println!("tau    {}", r.tau);
    println!("rho sigma^-1 = {}", r.rho_sigma_inverse());
    println!("valid: {}", validate_minimal_origami_permutation(&r.tau)?);

    if let Some(g) = std::env::args().nth(1) {
        let g: usize = g.parse()?;
        let start = Instant::now();
        let counts = count_mod_orbits(enumerate_odd(g)?.map(|r| r.tau))?;
        println!(
            "genus {}: {} permutations, {} sigma-classes, {:.2?}",
            g,
            counts.p,
            counts.o,
            start.elapsed()
        );
    }
    Ok(())
}
