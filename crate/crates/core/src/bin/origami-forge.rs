use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use origami_forge::catalog::{
    self, assign_orbits, class_report, orbit_member_records, read_catalog, render_svg, summarize,
    write_catalog, CatalogRecord, CLASS_CSV_HEADER,
};
use origami_forge::classify::{count_mod_orbits, ExhaustiveSearch};
use origami_forge::construction::{
    build_even, build_odd, enumerate_even, enumerate_even_safe, enumerate_odd, safe_even_choices,
    splice_even, ConstructionError, ConstructionResult, EvenExtensionSpec, OddChoiceSequence,
};
use origami_forge::perm::{parse_permutation_inferred, Permutation};
use origami_forge::sl2z::{OrbitError, OrbitSearch};
use origami_forge::{CanonicalForm, Origami};

// println! that exits quietly when stdout is closed (e.g. piped into head)
macro_rules! println {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if let Err(e) = writeln!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            eprintln!("error: {}", e);
            std::process::exit(1);
        }
    }};
}

const CACHE_ENV: &str = "ORIGAMI_FORGE_CACHE";

#[derive(Parser)]
#[command(
    name = "origami-forge",
    version,
    about = "Minimal origamis: construction, search, orbits, catalogs"
)]
struct Cli {
    /// Output file (catalog, CSV or SVG depending on the command).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build minimal origami permutations from the explicit families.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Scan every N-cycle for minimality.
    Exhaust {
        #[arg(long)]
        genus: usize,
        /// Progress file; defaults to $ORIGAMI_FORGE_CACHE/exhaust-g<G>.json when set.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Permit genus 7.
        #[arg(long)]
        allow_expensive: bool,
    },
    /// Group catalog records into σ-classes, optionally into SL(2,Z)-orbits.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Per-class CSV report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Compute SL(2,Z)-orbits and store orbit ids (written to --out).
        #[arg(long)]
        orbits: bool,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// SL(2,Z)-orbit of one origami.
    Orbit {
        /// Vertical permutation of a one-row origami (h = σ_n).
        #[arg(long, conflicts_with_all = ["h", "v", "canonical", "resume"])]
        tau: Option<String>,
        #[arg(long, requires = "v")]
        h: Option<String>,
        #[arg(long, requires = "h")]
        v: Option<String>,
        #[arg(long)]
        canonical: Option<String>,
        /// Continue a search saved after hitting the cap.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Draw a one-cylinder origami as an SVG strip.
    Render {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Record number in the catalog, from 1.
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long, conflicts_with = "input")]
        tau: Option<String>,
    },
    /// Per-genus CSV summary of a catalog.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Recompute every derived field and spot-check canonical forms.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Random relabelings per record.
        #[arg(long, default_value_t = 3)]
        relabelings: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Odd genus from a choice sequence (g−3 free slots, or all g−2).
    Odd {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_delimiter = ',', required_unless_present = "all")]
        choices: Vec<usize>,
        /// Every choice sequence.
        #[arg(long)]
        all: bool,
    },
    /// Even genus by splicing an odd-genus parent at k.
    Even {
        #[arg(long)]
        genus: usize,
        /// Parent choice sequence at genus g−1.
        #[arg(long, value_delimiter = ',', required_unless_present = "all")]
        parent: Vec<usize>,
        #[arg(long, required_unless_present = "all")]
        k: Option<usize>,
        /// Build even when k is rejected, and report the result.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        all: bool,
        /// With --all, only the safe choices of k.
        #[arg(long)]
        safe: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {}", e);
            return ExitCode::FAILURE;
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Construct { family } => construct(family, out),
        Command::Exhaust {
            genus,
            checkpoint,
            allow_expensive,
        } => exhaust(genus, checkpoint, allow_expensive, out),
        Command::Classify {
            input,
            report,
            orbits,
            cap,
        } => classify(&input, report.as_deref(), orbits, cap, out),
        Command::Orbit {
            tau,
            h,
            v,
            canonical,
            resume,
            cap,
        } => orbit_cmd(tau, h, v, canonical, resume, cap, out),
        Command::Render { input, index, tau } => render(input.as_deref(), index, tau, out),
        Command::Stats { input } => stats(&input, out),
        Command::Verify { input, relabelings } => verify(&input, relabelings, cli.seed),
    }
}

fn print_result(r: &ConstructionResult) {
    println!("genus  {}", r.genus);
    println!("top    {}", join(&r.top_row()));
    println!("bottom {}", join(&r.bottom_row()));
    println!("rho    {}", r.rho);
    println!("tau    {}", r.tau);
    println!("[tau,sigma] = rho sigma^-1 = {}", r.rho_sigma_inverse());
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn write_records(records: Vec<CatalogRecord>, out: Option<&Path>) -> Result<()> {
    if let Some(path) = out {
        let n = write_catalog(records, path)?;
        eprintln!("wrote {} records to {}", n, path.display());
    }
    Ok(())
}

fn construct(family: Family, out: Option<&Path>) -> Result<ExitCode> {
    let results: Vec<ConstructionResult> = match family {
        Family::Odd {
            genus, all: true, ..
        } => enumerate_odd(genus)?.collect(),
        Family::Odd { genus, choices, .. } => {
            let r = build_odd(&OddChoiceSequence::new(genus, &choices)?);
            print_result(&r);
            vec![r]
        }
        Family::Even {
            genus,
            all: true,
            safe,
            ..
        } => {
            if safe {
                enumerate_even_safe(genus)?.collect()
            } else {
                enumerate_even(genus)?.collect()
            }
        }
        Family::Even {
            genus,
            parent,
            k,
            force,
            ..
        } => {
            let k = k.expect("clap requires k");
            let parent = build_odd(&OddChoiceSequence::new(genus.saturating_sub(1), &parent)?);
            let safe = safe_even_choices(&parent, genus)?;
            match build_even(&EvenExtensionSpec {
                parent: parent.clone(),
                k,
            }) {
                Ok(r) => {
                    print_result(&r);
                    println!("safe choices of k: {}", join(&safe));
                    vec![r]
                }
                Err(e @ ConstructionError::KHitsPreimageOfOne { .. }) if force => {
                    eprintln!("rejected: {}", e);
                    let (rho, tau) = splice_even(&parent.tau, k);
                    let sigma = Permutation::standard_cycle(tau.degree());
                    println!("tau    {}", tau);
                    println!("rho    {}", rho);
                    println!("[tau,sigma] = rho sigma^-1 = {}", tau.commutator(&sigma)?);
                    return Ok(ExitCode::from(2));
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    if results.len() > 1 {
        let counts = count_mod_orbits(results.iter().map(|r| r.tau.clone()))?;
        println!("{} permutations in {} sigma-classes", counts.p, counts.o);
    }
    let records = results
        .iter()
        .map(CatalogRecord::from_construction)
        .collect::<Result<Vec<_>, _>>()?;
    write_records(records, out)?;
    Ok(ExitCode::SUCCESS)
}

fn exhaust(
    genus: usize,
    checkpoint: Option<PathBuf>,
    allow_expensive: bool,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let checkpoint = checkpoint.or_else(|| {
        std::env::var_os(CACHE_ENV)
            .map(|dir| PathBuf::from(dir).join(format!("exhaust-g{}.json", genus)))
    });
    let mut search = ExhaustiveSearch::new(genus).allow_expensive(allow_expensive);
    if let Some(cp) = &checkpoint {
        eprintln!("checkpoint: {}", cp.display());
        search = search.checkpoint(cp);
    }
    let perms = search.run()?;
    let counts = count_mod_orbits(perms.iter().cloned())?;
    println!("genus {}: P = {}, O = {}", genus, counts.p, counts.o);
    let records = perms
        .iter()
        .map(CatalogRecord::from_exhaustive)
        .collect::<Result<Vec<_>, _>>()?;
    write_records(records, out)?;
    Ok(ExitCode::SUCCESS)
}

fn load(path: &Path) -> Result<Vec<CatalogRecord>> {
    let contents = read_catalog(path)?;
    for e in &contents.errors {
        eprintln!("{}:{}: {}", path.display(), e.line, e.msg);
    }
    Ok(contents.records)
}

fn classify(
    input: &Path,
    report: Option<&Path>,
    orbits: bool,
    cap: usize,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let mut records = load(input)?;
    if orbits {
        let found = assign_orbits(&mut records, cap)?;
        for (id, rec) in &found {
            println!(
                "{} size {} monodromy {}",
                id,
                rec.size(),
                rec.summary.monodromy_order
            );
        }
    }
    let rows = class_report(&records);
    let mut by_genus = std::collections::BTreeMap::<usize, usize>::new();
    for row in &rows {
        *by_genus.entry(row.genus).or_default() += 1;
    }
    for (g, o) in by_genus {
        println!("genus {}: {} sigma-classes", g, o);
    }
    if let Some(path) = report {
        let mut csv = format!("{}\n", CLASS_CSV_HEADER);
        for row in &rows {
            csv.push_str(&row.to_csv());
            csv.push('\n');
        }
        fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    }
    write_records(records, out)?;
    Ok(ExitCode::SUCCESS)
}

fn orbit_cmd(
    tau: Option<String>,
    h: Option<String>,
    v: Option<String>,
    canonical: Option<String>,
    resume: Option<PathBuf>,
    cap: usize,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let search = if let Some(path) = resume {
        let text =
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str::<OrbitSearch>(&text)?
    } else {
        let seed = match (tau, h, v, canonical) {
            (Some(t), ..) => Origami::from_vertical_perm(parse_permutation_inferred(&t)?),
            (None, Some(h), Some(v), _) => {
                let h = parse_permutation_inferred(&h)?;
                let v = origami_forge::perm::parse_permutation(&v, h.degree())?;
                Origami::new(h, v)?
            }
            (None, None, None, Some(key)) => CanonicalForm::from_text(&key)?.to_origami(),
            _ => bail!("give --tau, --h and --v, --canonical or --resume"),
        };
        OrbitSearch::new(&seed)
    };
    let rec = match search.run(cap) {
        Ok(rec) => rec,
        Err(OrbitError::CapExceeded { cap, state }) => {
            eprintln!("orbit exceeds the cap of {} members", cap);
            if let Some(dir) = std::env::var_os(CACHE_ENV) {
                let path = PathBuf::from(dir).join("orbit-state.json");
                fs::create_dir_all(path.parent().unwrap())?;
                fs::write(&path, serde_json::to_string(&state)?)?;
                eprintln!(
                    "search state saved to {}; continue with --resume",
                    path.display()
                );
            }
            return Ok(ExitCode::from(3));
        }
        Err(e) => return Err(e.into()),
    };
    println!("seed      {}", rec.seed);
    println!("size      {}", rec.size());
    println!("n         {}", rec.summary.n);
    println!("stratum   {}", rec.summary.stratum);
    println!("monodromy {}", rec.summary.monodromy_order);
    for ((ch, cv), count) in &rec.summary.cylinder_pairs {
        println!("cylinders ({},{}) x {}", ch, cv, count);
    }
    if out.is_some() {
        write_records(orbit_member_records(&rec, None)?, out)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn render(
    input: Option<&Path>,
    index: usize,
    tau: Option<String>,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let record = match (input, tau) {
        (_, Some(t)) => CatalogRecord::new(
            &Origami::from_vertical_perm(parse_permutation_inferred(&t)?),
            catalog::Provenance::Exhaustive,
        )?,
        (Some(path), None) => {
            let records = load(path)?;
            records
                .get(index.wrapping_sub(1))
                .cloned()
                .with_context(|| format!("{} has {} records", path.display(), records.len()))?
        }
        (None, None) => bail!("give --in or --tau"),
    };
    match out {
        Some(path) => render_svg(&record, path)?,
        None => print!("{}", catalog::svg_document(&record.origami()?)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn stats(input: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let summary = summarize(input)?;
    for e in &summary.errors {
        eprintln!("{}:{}: {}", input.display(), e.line, e.msg);
    }
    let csv = summary.to_csv();
    match out {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{}", csv),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(input: &Path, relabelings: usize, seed: u64) -> Result<ExitCode> {
    let contents = read_catalog(input)?;
    let mut failures = contents.errors.len();
    for e in &contents.errors {
        eprintln!("{}:{}: {}", input.display(), e.line, e.msg);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut minimal = 0;
    for (i, r) in contents.records.iter().enumerate() {
        let mut problems = r.verify();
        let claims_minimal = !matches!(r.provenance, catalog::Provenance::Sl2zImage { .. });
        if claims_minimal && !r.is_minimal() {
            problems.push(format!(
                "not minimal: n {}, stratum {:?}, cylinders ({},{})",
                r.n, r.stratum, r.cyl_h, r.cyl_v
            ));
        }
        if r.is_minimal() {
            minimal += 1;
        }
        if let (Ok(o), Ok(key)) = (r.origami(), r.canonical_form()) {
            let mut labels: Vec<usize> = (1..=r.n).collect();
            for _ in 0..relabelings {
                labels.shuffle(&mut rng);
                let pi = Permutation::from_images(&labels)?;
                if o.relabel(&pi)?.canonical_form() != key {
                    problems.push(format!("canonical form changes under relabeling by {}", pi));
                }
            }
        }
        for p in &problems {
            eprintln!("record {} ({}): {}", i + 1, r.canonical, p);
        }
        failures += problems.len();
    }
    println!(
        "{} records, {} minimal, {} problems",
        contents.records.len(),
        minimal,
        failures
    );
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
