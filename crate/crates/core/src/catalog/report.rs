//! Per-genus statistics and per-class reports as CSV.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use super::{read_catalog, CatalogError, CatalogRecord, LineError};

pub const SUMMARY_CSV_HEADER: &str = "genus,p_g,o_g,sl2z_orbits,orbit_sizes,monodromy_orders";
pub const CLASS_CSV_HEADER: &str = "representative,class_size,monodromy_order,orbit_id";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummaryRow {
    pub genus: usize,
    /// Distinct `v` among minimal records with `h = σ_n`.
    pub p: usize,
    /// Distinct σ-classes among minimal records.
    pub o: usize,
    /// Distinct orbit ids.
    pub sl2z_orbits: usize,
    /// Orbit size → number of orbits of that size.
    pub orbit_sizes: BTreeMap<usize, usize>,
    /// Monodromy order → number of records.
    pub monodromy_orders: BTreeMap<u128, usize>,
}

impl SummaryRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.genus,
            self.p,
            self.o,
            self.sl2z_orbits,
            multiset(&self.orbit_sizes),
            multiset(&self.monodromy_orders)
        )
    }
}

// `value:count` pairs joined by `;`, values ascending
fn multiset<K: std::fmt::Display>(m: &BTreeMap<K, usize>) -> String {
    m.iter()
        .map(|(k, c)| format!("{}:{}", k, c))
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Debug, Clone, Default)]
pub struct Summary {
    pub rows: Vec<SummaryRow>,
    /// Corrupt catalog lines, skipped during summarizing.
    pub errors: Vec<LineError>,
}

impl Summary {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SUMMARY_CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_csv());
            out.push('\n');
        }
        out
    }
}

/// One row per genus present. Fails if some genus has `O·(2g−1) < P`.
pub fn summarize_records(records: &[CatalogRecord]) -> Result<Vec<SummaryRow>, CatalogError> {
    let mut by_genus: BTreeMap<usize, Vec<&CatalogRecord>> = BTreeMap::new();
    for r in records {
        by_genus.entry(r.genus).or_default().push(r);
    }
    let mut rows = Vec::new();
    for (genus, recs) in by_genus {
        let mut perms = BTreeSet::new();
        let mut classes = BTreeSet::new();
        let mut orbits: BTreeMap<&str, (Option<usize>, usize)> = BTreeMap::new();
        let mut monodromy_orders = BTreeMap::new();
        for r in &recs {
            if r.is_minimal() {
                if is_standard_cycle_text(&r.h, r.n) {
                    perms.insert(r.v.as_str());
                }
                if let Some(c) = &r.sigma_class {
                    classes.insert(c.as_str());
                }
            }
            if let Some(id) = &r.orbit_id {
                let entry = orbits.entry(id.as_str()).or_insert((r.orbit_size, 0));
                entry.1 += 1;
            }
            *monodromy_orders.entry(r.monodromy_order).or_default() += 1;
        }
        let mut orbit_sizes = BTreeMap::new();
        for (size, seen) in orbits.values() {
            *orbit_sizes.entry(size.unwrap_or(*seen)).or_default() += 1;
        }
        let (p, o) = (perms.len(), classes.len());
        if genus >= 1 && o * (2 * genus - 1) < p {
            return Err(CatalogError::CountingBound { genus, p, o });
        }
        rows.push(SummaryRow {
            genus,
            p,
            o,
            sl2z_orbits: orbits.len(),
            orbit_sizes,
            monodromy_orders,
        });
    }
    Ok(rows)
}

fn is_standard_cycle_text(h: &str, n: usize) -> bool {
    h.split(',')
        .enumerate()
        .all(|(i, x)| x.trim().parse::<usize>().ok() == Some((i + 1) % n + 1))
}

/// Reads `path` and summarizes whatever parses.
pub fn summarize(path: &Path) -> Result<Summary, CatalogError> {
    let contents = read_catalog(path)?;
    Ok(Summary {
        rows: summarize_records(&contents.records)?,
        errors: contents.errors,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRow {
    pub genus: usize,
    pub representative: String,
    /// Distinct `(h, v)` pairs in the catalog belonging to the class.
    pub class_size: usize,
    pub monodromy_order: u128,
    pub orbit_id: Option<String>,
}

/// One row per σ-class of minimal records, sorted by genus then representative.
pub fn class_report(records: &[CatalogRecord]) -> Vec<ClassRow> {
    let mut classes: BTreeMap<(usize, &str), (BTreeSet<(&str, &str)>, u128, Option<&str>)> =
        BTreeMap::new();
    for r in records.iter().filter(|r| r.is_minimal()) {
        let Some(rep) = &r.sigma_class else { continue };
        let entry = classes.entry((r.genus, rep.as_str())).or_insert((
            BTreeSet::new(),
            r.monodromy_order,
            None,
        ));
        entry.0.insert((r.h.as_str(), r.v.as_str()));
        if entry.2.is_none() {
            entry.2 = r.orbit_id.as_deref();
        }
    }
    classes
        .into_iter()
        .map(|((genus, rep), (members, order, orbit))| ClassRow {
            genus,
            representative: rep.to_string(),
            class_size: members.len(),
            monodromy_order: order,
            orbit_id: orbit.map(str::to_string),
        })
        .collect()
}

impl ClassRow {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        write!(
            out,
            "\"{}\",{},{},{}",
            self.representative,
            self.class_size,
            self.monodromy_order,
            self.orbit_id.as_deref().unwrap_or("")
        )
        .unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Provenance;
    use crate::classify::{count_mod_orbits, exhaustive_minimal_origami_perms};
    use crate::origami::Origami;
    use crate::perm::Permutation;

    fn records(g: usize) -> Vec<CatalogRecord> {
        exhaustive_minimal_origami_perms(g)
            .unwrap()
            .iter()
            .map(|t| CatalogRecord::from_exhaustive(t).unwrap())
            .collect()
    }

    #[test]
    fn empty_catalog_gives_header_only() {
        let s = Summary::default();
        assert_eq!(s.to_csv(), format!("{}\n", SUMMARY_CSV_HEADER));
        assert!(summarize_records(&[]).unwrap().is_empty());
    }

    #[test]
    fn single_record() {
        let rows = summarize_records(&records(3)[..1]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].p, rows[0].o, rows[0].sl2z_orbits), (1, 1, 0));
    }

    #[test]
    fn counts_agree_with_classifier() {
        let recs = records(4);
        let rows = summarize_records(&recs).unwrap();
        let direct = count_mod_orbits(exhaustive_minimal_origami_perms(4).unwrap()).unwrap();
        assert_eq!((rows[0].p, rows[0].o), (direct.p, direct.o));
        let report = class_report(&recs);
        assert_eq!(report.len(), direct.o);
        let sizes: Vec<_> = report.iter().map(|r| r.class_size).collect();
        let expected: Vec<_> = direct.classes.iter().map(|c| c.members_count).collect();
        assert_eq!(sizes, expected);
    }

    #[test]
    fn bound_violation_is_a_hard_error() {
        let mut recs = records(3);
        // forge every record into one class
        let first = recs[0].sigma_class.clone();
        for r in &mut recs {
            r.sigma_class = first.clone();
        }
        assert!(recs.len() > 5);
        assert!(matches!(
            summarize_records(&recs),
            Err(CatalogError::CountingBound { genus: 3, .. })
        ));
    }

    #[test]
    fn multiset_format() {
        let torus = CatalogRecord::new(&Origami::torus(), Provenance::Exhaustive).unwrap();
        let mut a = torus.clone();
        a.orbit_id = Some("g1-1".into());
        a.orbit_size = Some(1);
        let rows = summarize_records(&[a.clone(), a]).unwrap();
        assert_eq!(rows[0].to_csv(), "1,0,0,1,1:1,1:2");
        assert!(is_standard_cycle_text(
            &Permutation::standard_cycle(5).to_one_line_string(),
            5
        ));
        assert!(!is_standard_cycle_text("1,2,3", 3));
    }
}
