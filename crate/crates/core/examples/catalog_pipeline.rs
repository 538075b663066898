//! End-to-end catalog: exhaustive search, orbit ids, JSONL, summary CSV.
//!
//! ```text
//! cargo run --release --example catalog_pipeline -- 5 /tmp/catalog.jsonl
//! ```

use std::path::PathBuf;

use origami_forge::catalog::{
    assign_orbits, read_catalog, summarize, write_catalog, CatalogRecord,
};
use origami_forge::classify::exhaustive_minimal_origami_perms;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_genus: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let path = PathBuf::from(args.next().unwrap_or_else(|| "catalog.jsonl".into()));

    let mut records = Vec::new();
    for g in 3..=max_genus {
        for tau in exhaustive_minimal_origami_perms(g)? {
            records.push(CatalogRecord::from_exhaustive(&tau)?);
        }
    }
    let orbits = assign_orbits(&mut records, 1_000_000)?;
    for (id, rec) in &orbits {
        println!(
            "{:<6} size {:>6}  monodromy {:>9}  {}",
            id,
            rec.size(),
            rec.summary.monodromy_order,
            rec.summary.stratum
        );
    }
    let n = write_catalog(records, &path)?;
    println!("wrote {} records to {}", n, path.display());

    let back = read_catalog(&path)?;
    let bad: usize = back.records.iter().map(|r| r.verify().len()).sum();
    println!(
        "reloaded {} records, {} verification problems",
        back.records.len(),
        bad
    );
    print!("{}", summarize(&path)?.to_csv());
    Ok(())
}
