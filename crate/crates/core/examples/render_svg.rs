//! Writes strip diagrams for the genus-3 and genus-7 examples.
//!
//! ```text
//! cargo run --example render_svg -- /tmp
//! ```

use std::path::PathBuf;

use origami_forge::catalog::{render_svg, CatalogRecord};
use origami_forge::construction::{build_odd, OddChoiceSequence};

fn main() -> anyhow::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    for (g, choices) in [(3, vec![]), (7, vec![8, 12, 4, 6])] {
        let r = build_odd(&OddChoiceSequence::new(g, &choices)?);
        let rec = CatalogRecord::from_construction(&r)?;
        let path = dir.join(format!("minimal-g{}.svg", g));
        render_svg(&rec, &path)?;
        println!("{} ({} squares, tau = {})", path.display(), rec.n, r.tau);
    }
    Ok(())
}
