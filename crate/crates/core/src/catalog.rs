//! JSON Lines catalogs of origamis, per-genus statistics and SVG diagrams.
//!
//! One [`CatalogRecord`] per line, permutations in 1-based one-line text.
//! Files are written sorted by `(genus, canonical)` and replaced atomically,
//! so the same records always produce the same bytes.

mod report;
mod svg;

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufRead, BufReader, Write as _};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::sigma_class_representative;
use crate::construction::{ConstructionProvenance, ConstructionResult};
use crate::origami::{CanonicalForm, Origami, OrigamiError};
use crate::perm::{parse_permutation, PermError, Permutation};
use crate::sl2z::{orbit, OrbitError, OrbitRecord};

pub use report::{
    class_report, summarize, summarize_records, ClassRow, Summary, SummaryRow, CLASS_CSV_HEADER,
    SUMMARY_CSV_HEADER,
};
pub use svg::{render_svg, svg_document};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
    #[error("cannot lay out as a single strip: {reason}")]
    UnsupportedLayout { reason: String },
    #[error("genus {genus}: {o} classes for {p} permutations violates O >= P/(2g-1)")]
    CountingBound { genus: usize, p: usize, o: usize },
    #[error("record {canonical}: {msg}")]
    InvalidRecord { canonical: String, msg: String },
    #[error(transparent)]
    Origami(#[from] OrigamiError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CatalogError + '_ {
    move |source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Where a record came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    /// Odd-genus construction; all `g − 2` slots, the last one forced.
    OddChoices {
        choices: Vec<usize>,
    },
    /// Even-genus splice of the odd parent with the given slots at `k`.
    EvenExtension {
        parent: Vec<usize>,
        k: usize,
    },
    Exhaustive,
    /// Image of `parent` (a canonical key) under a word in `S`, `T`, `t = T⁻¹`.
    Sl2zImage {
        parent: String,
        word: String,
    },
}

impl From<&ConstructionProvenance> for Provenance {
    fn from(p: &ConstructionProvenance) -> Self {
        match p {
            ConstructionProvenance::OddChoices { choices } => Provenance::OddChoices {
                choices: choices.slots().to_vec(),
            },
            ConstructionProvenance::EvenExtension { parent, k } => Provenance::EvenExtension {
                parent: parent.slots().to_vec(),
                k: *k,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub schema_version: u32,
    pub genus: usize,
    pub n: usize,
    pub h: String,
    pub v: String,
    pub canonical: String,
    pub stratum: Vec<usize>,
    pub cyl_h: usize,
    pub cyl_v: usize,
    pub monodromy_order: u128,
    /// σ-class representative of `v` after relabeling `h` to `σ_n`; absent
    /// when `h` is not an `n`-cycle.
    pub sigma_class: Option<String>,
    pub orbit_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<usize>,
    pub provenance: Provenance,
}

impl CatalogRecord {
    /// Computes every derived field from the origami. Needs `n <= 32`.
    pub fn new(o: &Origami, provenance: Provenance) -> Result<CatalogRecord, CatalogError> {
        let (cyl_h, cyl_v) = o.cylinder_counts();
        let sigma_class = o
            .normalize_horizontal()
            .map(|norm| sigma_class_representative(norm.v()).to_one_line_string());
        Ok(CatalogRecord {
            schema_version: SCHEMA_VERSION,
            genus: o.genus()?,
            n: o.n(),
            h: o.h().to_one_line_string(),
            v: o.v().to_one_line_string(),
            canonical: o.canonical_form().to_text(),
            stratum: o.singularities().orders().to_vec(),
            cyl_h,
            cyl_v,
            monodromy_order: o.monodromy_order()?,
            sigma_class,
            orbit_id: None,
            orbit_size: None,
            provenance,
        })
    }

    pub fn from_construction(r: &ConstructionResult) -> Result<CatalogRecord, CatalogError> {
        CatalogRecord::new(
            &Origami::from_vertical_perm(r.tau.clone()),
            (&r.provenance).into(),
        )
    }

    pub fn from_exhaustive(tau: &Permutation) -> Result<CatalogRecord, CatalogError> {
        CatalogRecord::new(
            &Origami::from_vertical_perm(tau.clone()),
            Provenance::Exhaustive,
        )
    }

    pub fn origami(&self) -> Result<Origami, CatalogError> {
        let h = parse_permutation(&self.h, self.n)?;
        let v = parse_permutation(&self.v, self.n)?;
        Ok(Origami::new(h, v)?)
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm, CatalogError> {
        Ok(CanonicalForm::from_text(&self.canonical)?)
    }

    /// One cylinder each way, `n = 2g − 1`, stratum `[2g − 2]`.
    pub fn is_minimal(&self) -> bool {
        self.genus >= 2
            && self.n == 2 * self.genus - 1
            && self.cyl_h == 1
            && self.cyl_v == 1
            && self.stratum == [2 * self.genus - 2]
    }

    /// Recomputes derived fields from `h` and `v`; returns one message per
    /// disagreeing field.
    pub fn verify(&self) -> Vec<String> {
        let o = match self.origami() {
            Ok(o) => o,
            Err(e) => return vec![format!("h/v do not describe an origami: {}", e)],
        };
        let fresh = match CatalogRecord::new(&o, self.provenance.clone()) {
            Ok(r) => r,
            Err(e) => return vec![format!("cannot recompute invariants: {}", e)],
        };
        let mut problems = Vec::new();
        let mut check = |field: &str, stored: String, computed: String| {
            if stored != computed {
                problems.push(format!(
                    "{}: stored {} but recomputed {}",
                    field, stored, computed
                ));
            }
        };
        check(
            "schema_version",
            self.schema_version.to_string(),
            SCHEMA_VERSION.to_string(),
        );
        check("genus", self.genus.to_string(), fresh.genus.to_string());
        check("canonical", self.canonical.clone(), fresh.canonical);
        check(
            "stratum",
            format!("{:?}", self.stratum),
            format!("{:?}", fresh.stratum),
        );
        check("cyl_h", self.cyl_h.to_string(), fresh.cyl_h.to_string());
        check("cyl_v", self.cyl_v.to_string(), fresh.cyl_v.to_string());
        check(
            "monodromy_order",
            self.monodromy_order.to_string(),
            fresh.monodromy_order.to_string(),
        );
        check(
            "sigma_class",
            format!("{:?}", self.sigma_class),
            format!("{:?}", fresh.sigma_class),
        );
        problems
    }

    fn sort_key(&self) -> (usize, &str) {
        (self.genus, &self.canonical)
    }
}

/// Sorts by `(genus, canonical)`, ties broken by the serialized line, and
/// atomically replaces `path`. Returns the number of records written.
pub fn write_catalog<I>(records: I, path: &Path) -> Result<usize, CatalogError>
where
    I: IntoIterator<Item = CatalogRecord>,
{
    let mut lines: Vec<(CatalogRecord, String)> = records
        .into_iter()
        .map(|r| serde_json::to_string(&r).map(|line| (r, line)))
        .collect::<Result<_, _>>()?;
    lines.sort_by(|(a, la), (b, lb)| a.sort_key().cmp(&b.sort_key()).then_with(|| la.cmp(lb)));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    {
        let mut w = std::io::BufWriter::new(tmp.as_file_mut());
        for (_, line) in &lines {
            w.write_all(line.as_bytes()).map_err(io_err(path))?;
            w.write_all(b"\n").map_err(io_err(path))?;
        }
        w.flush().map_err(io_err(path))?;
    }
    tmp.persist(path).map_err(|e| io_err(path)(e.error))?;
    Ok(lines.len())
}

/// A line that failed to parse, numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Default)]
pub struct CatalogContents {
    pub records: Vec<CatalogRecord>,
    pub errors: Vec<LineError>,
}

/// Reads every parseable record; blank lines are skipped, corrupt lines are
/// collected in `errors` and reading continues.
pub fn read_catalog(path: &Path) -> Result<CatalogContents, CatalogError> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    let mut out = CatalogContents::default();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<CatalogRecord>(&line) {
            Ok(r) => out.records.push(r),
            Err(e) => out.errors.push(LineError {
                line: i + 1,
                msg: e.to_string(),
            }),
        }
    }
    Ok(out)
}

/// Computes the SL(2,Z)-orbit of every record not already covered and fills
/// in `orbit_id` and `orbit_size`.
///
/// Ids are `g{genus}-{index}`, with orbits of each genus numbered from 1 in
/// order of their smallest member key, so they do not depend on record order.
/// Returns the orbits found, keyed by id.
pub fn assign_orbits(
    records: &mut [CatalogRecord],
    cap: usize,
) -> Result<BTreeMap<String, OrbitRecord>, CatalogError> {
    let mut orbits: Vec<(usize, OrbitRecord)> = Vec::new();
    let mut owner: HashMap<CanonicalForm, usize> = HashMap::new();
    let mut record_orbit = Vec::with_capacity(records.len());
    for r in records.iter() {
        let key = r.canonical_form()?;
        let idx = match owner.get(&key) {
            Some(&idx) => idx,
            None => {
                let rec = orbit(&key.to_origami(), cap)?;
                let idx = orbits.len();
                for m in rec.members() {
                    owner.insert(m.clone(), idx);
                }
                orbits.push((r.genus, rec));
                idx
            }
        };
        record_orbit.push(idx);
    }
    let mut order: Vec<usize> = (0..orbits.len()).collect();
    order.sort_by(|&a, &b| {
        (orbits[a].0, orbits[a].1.min_member()).cmp(&(orbits[b].0, orbits[b].1.min_member()))
    });
    let mut ids = vec![String::new(); orbits.len()];
    let mut per_genus: BTreeMap<usize, usize> = BTreeMap::new();
    for &idx in &order {
        let counter = per_genus.entry(orbits[idx].0).or_default();
        *counter += 1;
        ids[idx] = format!("g{}-{}", orbits[idx].0, counter);
    }
    for (r, &idx) in records.iter_mut().zip(&record_orbit) {
        r.orbit_id = Some(ids[idx].clone());
        r.orbit_size = Some(orbits[idx].1.size());
    }
    Ok(orbits
        .into_iter()
        .enumerate()
        .map(|(idx, (_, rec))| (ids[idx].clone(), rec))
        .collect())
}

/// One record per orbit member, each tagged with the word reaching it from
/// the orbit's seed.
pub fn orbit_member_records(
    rec: &OrbitRecord,
    orbit_id: Option<&str>,
) -> Result<Vec<CatalogRecord>, CatalogError> {
    let parent = rec.seed.to_text();
    rec.members()
        .map(|key| {
            let word = rec.word_to(key).unwrap_or_default().to_string();
            let mut r = CatalogRecord::new(
                &key.to_origami(),
                Provenance::Sl2zImage {
                    parent: parent.clone(),
                    word,
                },
            )?;
            r.orbit_id = orbit_id.map(str::to_string);
            r.orbit_size = Some(rec.size());
            Ok(r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::exhaustive_minimal_origami_perms;
    use crate::construction::{build_odd, OddChoiceSequence};

    fn g3_records() -> Vec<CatalogRecord> {
        exhaustive_minimal_origami_perms(3)
            .unwrap()
            .iter()
            .map(|t| CatalogRecord::from_exhaustive(t).unwrap())
            .collect()
    }

    #[test]
    fn record_fields_for_genus_seven_example() {
        let r = build_odd(&OddChoiceSequence::new(7, &[8, 12, 4, 6]).unwrap());
        let rec = CatalogRecord::from_construction(&r).unwrap();
        assert_eq!(rec.genus, 7);
        assert_eq!(rec.n, 13);
        assert_eq!(rec.stratum, vec![12]);
        assert_eq!((rec.cyl_h, rec.cyl_v), (1, 1));
        assert!(rec.is_minimal());
        assert_eq!(rec.h, "2,3,4,5,6,7,8,9,10,11,12,13,1");
        assert_eq!(
            rec.provenance,
            Provenance::OddChoices {
                choices: vec![8, 12, 4, 6, 10]
            }
        );
        assert!(rec.verify().is_empty());
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains(r#""provenance":{"kind":"odd-choices","choices":[8,12,4,6,10]}"#));
        assert!(json.contains(r#""orbit_id":null"#));
        assert!(!json.contains("orbit_size"));
    }

    #[test]
    fn provenance_tags() {
        let cases = [
            (Provenance::Exhaustive, r#"{"kind":"exhaustive"}"#),
            (
                Provenance::EvenExtension {
                    parent: vec![3],
                    k: 3,
                },
                r#"{"kind":"even-extension","parent":[3],"k":3}"#,
            ),
            (
                Provenance::Sl2zImage {
                    parent: "1|1".into(),
                    word: "TS".into(),
                },
                r#"{"kind":"sl2z-image","parent":"1|1","word":"TS"}"#,
            ),
        ];
        for (p, text) in cases {
            assert_eq!(serde_json::to_string(&p).unwrap(), text);
            assert_eq!(serde_json::from_str::<Provenance>(text).unwrap(), p);
        }
    }

    #[test]
    fn write_read_round_trip_is_sorted_and_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.jsonl");
        let b = dir.path().join("b.jsonl");
        let recs = g3_records();
        let mut reversed = recs.clone();
        reversed.reverse();
        assert_eq!(write_catalog(recs.clone(), &a).unwrap(), recs.len());
        write_catalog(reversed, &b).unwrap();
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
        let back = read_catalog(&a).unwrap();
        assert!(back.errors.is_empty());
        let mut sorted = recs;
        sorted.sort_by_key(|r| {
            (
                r.genus,
                r.canonical.clone(),
                serde_json::to_string(r).unwrap(),
            )
        });
        assert_eq!(back.records, sorted);
    }

    #[test]
    fn empty_catalog() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.jsonl");
        assert_eq!(write_catalog(Vec::new(), &path).unwrap(), 0);
        assert_eq!(fs::read(&path).unwrap(), b"");
        assert!(read_catalog(&path).unwrap().records.is_empty());
    }

    #[test]
    fn unwritable_path_is_an_error() {
        let r = write_catalog(Vec::new(), Path::new("/nonexistent-dir/x.jsonl"));
        assert!(matches!(r, Err(CatalogError::Io { .. })));
    }

    #[test]
    fn corrupt_lines_are_reported_with_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let good = serde_json::to_string(&g3_records()[0]).unwrap();
        fs::write(
            &path,
            format!("{}\nnot json\n\n{}\n{{\"genus\":3}}\n", good, good),
        )
        .unwrap();
        let c = read_catalog(&path).unwrap();
        assert_eq!(c.records.len(), 2);
        assert_eq!(
            c.errors.iter().map(|e| e.line).collect::<Vec<_>>(),
            vec![2, 5]
        );
    }

    #[test]
    fn verify_flags_tampered_fields() {
        let mut rec = g3_records()[0].clone();
        rec.monodromy_order += 1;
        rec.cyl_v = 7;
        let problems = rec.verify();
        assert_eq!(problems.len(), 2);
        assert!(problems[0].starts_with("cyl_v"));
        rec.h = "1,1,2,3,4".into();
        assert_eq!(rec.verify().len(), 1);
    }

    #[test]
    fn orbit_ids_do_not_depend_on_record_order() {
        let mut a = g3_records();
        let mut b = a.clone();
        b.reverse();
        let orbits_a = assign_orbits(&mut a, 100_000).unwrap();
        let orbits_b = assign_orbits(&mut b, 100_000).unwrap();
        assert_eq!(
            orbits_a.keys().collect::<Vec<_>>(),
            orbits_b.keys().collect::<Vec<_>>()
        );
        b.reverse();
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|r| r.orbit_id.as_deref().unwrap().starts_with("g3-")));
        for (id, rec) in &orbits_a {
            let members = orbit_member_records(rec, Some(id)).unwrap();
            assert_eq!(members.len(), rec.size());
            assert!(members.iter().all(|m| m.verify().is_empty()));
        }
    }

    #[test]
    fn sigma_class_absent_without_a_single_horizontal_cylinder() {
        let grid = Origami::new(
            parse_permutation("(1,2)(3,4)", 4).unwrap(),
            parse_permutation("(1,3)(2,4)", 4).unwrap(),
        )
        .unwrap();
        let rec = CatalogRecord::new(&grid, Provenance::Exhaustive).unwrap();
        assert_eq!(rec.sigma_class, None);
        assert!(!rec.is_minimal());
    }
}
