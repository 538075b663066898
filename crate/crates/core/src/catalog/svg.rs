//! SVG 1.1 drawings of one-cylinder origamis as a horizontal strip.
//!
//! Squares are laid out left to right along `h` (relabeled to `σ_n` first).
//! The top edge of square `x` carries the label `v(x)` and the bottom edge of
//! square `y` carries `y`, so edges with equal labels are glued. The outer
//! vertical edges are glued to each other.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{io_err, CatalogError, CatalogRecord};
use crate::origami::Origami;

const UNIT: usize = 60;
const MARGIN: usize = 40;

/// The drawing as a string.
pub fn svg_document(o: &Origami) -> Result<String, CatalogError> {
    let o = o
        .normalize_horizontal()
        .ok_or_else(|| CatalogError::UnsupportedLayout {
            reason: format!(
                "{} horizontal cylinders; a strip needs exactly one",
                o.cylinder_counts().0
            ),
        })?;
    let n = o.n();
    let width = n * UNIT + 2 * MARGIN;
    let height = UNIT + 2 * MARGIN;
    let top = MARGIN;
    let bottom = MARGIN + UNIT;
    let mid_y = MARGIN + UNIT / 2;

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = width,
        h = height
    )
    .unwrap();
    writeln!(s, "  <title>origami with {} squares</title>", n).unwrap();
    s.push_str(concat!(
        "  <defs>\n",
        "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">\n",
        "      <path d=\"M0,0 L10,5 L0,10 z\" fill=\"#666\"/>\n",
        "    </marker>\n",
        "  </defs>\n",
        "  <g font-family=\"sans-serif\" text-anchor=\"middle\">\n",
    ));
    for x in 1..=n {
        let left = MARGIN + (x - 1) * UNIT;
        let cx = left + UNIT / 2;
        writeln!(
            s,
            r##"    <rect class="square" data-square="{x}" x="{left}" y="{top}" width="{UNIT}" height="{UNIT}" fill="#f4f1e8" stroke="#222" stroke-width="1.5"/>"##
        )
        .unwrap();
        writeln!(
            s,
            r##"    <line class="core-h" x1="{}" y1="{mid_y}" x2="{}" y2="{mid_y}" stroke="#666" stroke-dasharray="4 3" marker-end="url(#arrow)"/>"##,
            left + 4,
            left + UNIT - 4
        )
        .unwrap();
        writeln!(
            s,
            r##"    <line class="core-v" x1="{cx}" y1="{}" x2="{cx}" y2="{}" stroke="#666" stroke-dasharray="4 3" marker-end="url(#arrow)"/>"##,
            bottom - 4,
            top + 4
        )
        .unwrap();
        writeln!(
            s,
            r#"    <text class="square-label" data-square="{x}" x="{}" y="{}" font-size="16">{x}</text>"#,
            cx + UNIT / 5,
            mid_y - 6
        )
        .unwrap();
        writeln!(
            s,
            r##"    <text class="top-label" data-square="{x}" x="{cx}" y="{}" font-size="13" fill="#a03020">{}</text>"##,
            top - 6,
            o.v().apply(x)
        )
        .unwrap();
        writeln!(
            s,
            r##"    <text class="bottom-label" data-square="{x}" x="{cx}" y="{}" font-size="13" fill="#a03020">{x}</text>"##,
            bottom + 18
        )
        .unwrap();
    }
    for side_x in [MARGIN - 10, MARGIN + n * UNIT + 10] {
        writeln!(
            s,
            r##"    <text class="side-label" x="{side_x}" y="{}" font-size="13" fill="#2050a0">s</text>"##,
            mid_y + 5
        )
        .unwrap();
    }
    s.push_str("  </g>\n</svg>\n");
    Ok(s)
}

/// Writes [`svg_document`] of the record's origami to `path`.
pub fn render_svg(record: &CatalogRecord, path: &Path) -> Result<(), CatalogError> {
    let doc = svg_document(&record.origami()?)?;
    fs::write(path, doc).map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Provenance;
    use crate::construction::{build_odd, OddChoiceSequence};
    use crate::perm::parse_permutation;

    fn labels(doc: &str, class: &str) -> Vec<usize> {
        let needle = format!(r#"class="{}""#, class);
        doc.lines()
            .filter(|l| l.contains(&needle))
            .map(|l| {
                let start = l.find('>').unwrap() + 1;
                let end = l.rfind("</text>").unwrap();
                l[start..end].parse().unwrap()
            })
            .collect()
    }

    #[test]
    fn torus_is_one_self_glued_square() {
        let doc = svg_document(&Origami::torus()).unwrap();
        assert_eq!(doc.matches(r#"class="square""#).count(), 1);
        assert_eq!(labels(&doc, "top-label"), vec![1]);
        assert_eq!(labels(&doc, "bottom-label"), vec![1]);
    }

    #[test]
    fn genus_three_strip() {
        let tau = parse_permutation("(1,3,4,2,5)", 5).unwrap();
        let doc = svg_document(&Origami::from_vertical_perm(tau.clone())).unwrap();
        assert_eq!(doc.matches(r#"class="square""#).count(), 5);
        assert_eq!(labels(&doc, "top-label"), tau.one_line());
        assert_eq!(labels(&doc, "bottom-label"), vec![1, 2, 3, 4, 5]);
        assert!(doc.starts_with("<?xml"));
        assert!(doc.contains(r#"version="1.1""#));
    }

    #[test]
    fn genus_seven_gluing_table_is_tau() {
        let r = build_odd(&OddChoiceSequence::new(7, &[8, 12, 4, 6]).unwrap());
        let rec = CatalogRecord::from_construction(&r).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g7.svg");
        render_svg(&rec, &path).unwrap();
        let doc = fs::read_to_string(&path).unwrap();
        let top = labels(&doc, "top-label");
        for (i, &t) in top.iter().enumerate() {
            assert_eq!(t, r.tau.apply(i + 1));
        }
        assert_eq!(doc.matches("marker-end").count(), 26);
    }

    #[test]
    fn relabeled_strip_draws_the_same_picture() {
        let tau = parse_permutation("(1,3,4,2,5)", 5).unwrap();
        let o = Origami::from_vertical_perm(tau);
        let moved = o.relabel(&parse_permutation("(2,4)", 5).unwrap()).unwrap();
        assert_eq!(svg_document(&o).unwrap(), svg_document(&moved).unwrap());
    }

    #[test]
    fn several_horizontal_cylinders_are_rejected() {
        let grid = Origami::new(
            parse_permutation("(1,2)(3,4)", 4).unwrap(),
            parse_permutation("(1,3)(2,4)", 4).unwrap(),
        )
        .unwrap();
        let rec = CatalogRecord::new(&grid, Provenance::Exhaustive).unwrap();
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            render_svg(&rec, &dir.path().join("x.svg")),
            Err(CatalogError::UnsupportedLayout { .. })
        ));
    }
}
