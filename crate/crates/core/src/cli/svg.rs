//! Static SVG of the subdivision of `2Δ_2` induced by a 3×3 matrix.

use std::fmt::Write;

use crate::error::{rejected, Result};
use crate::subdiv::{lattice_points, lower_subdivision, LatticePoint};
use crate::tropical::SymMatrix;

const WIDTH: i64 = 400;
const HEIGHT: i64 = 400;
/// Screen positions of `2e_1`, `2e_2`, `2e_3`. Every lattice point is a
/// midpoint of two of these, so all coordinates stay integral.
const VERTICES: [(i64, i64); 3] = [(40, 360), (360, 360), (200, 40)];

fn position(p: LatticePoint) -> (i64, i64) {
    let (a, b) = (VERTICES[p.i], VERTICES[p.j]);
    ((a.0 + b.0) / 2, (a.1 + b.1) / 2)
}

/// Convex polygon of a cell's points in monotone-chain order, collinear
/// points dropped.
fn hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn render_svg(a: &SymMatrix) -> Result<String> {
    if a.n() != 3 {
        return Err(rejected(format!(
            "svg rendering needs n = 3, got n = {}",
            a.n()
        )));
    }
    let sub = lower_subdivision(a)?;
    let mut s = String::new();
    let w = &mut s;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    let verdict = if sub.cells.len() == 1 {
        "trivial subdivision".to_string()
    } else {
        format!("{} cells", sub.cells.len())
    };
    writeln!(
        w,
        r#"  <text x="{}" y="20" font-family="monospace" font-size="14" text-anchor="middle">{verdict}</text>"#,
        WIDTH / 2
    )
    .unwrap();
    let outline: Vec<String> = VERTICES.iter().map(|(x, y)| format!("{x},{y}")).collect();
    writeln!(
        w,
        r##"  <polygon points="{}" fill="#f4f4f4" stroke="#999999" stroke-width="1"/>"##,
        outline.join(" ")
    )
    .unwrap();
    for cell in &sub.cells {
        let poly = hull(cell.iter().map(|&p| position(p)).collect());
        let pts: Vec<String> = poly.iter().map(|(x, y)| format!("{x},{y}")).collect();
        writeln!(
            w,
            r##"  <polygon class="cell" points="{}" fill="none" stroke="#000000" stroke-width="2"/>"##,
            pts.join(" ")
        )
        .unwrap();
    }
    for p in lattice_points(3) {
        let (x, y) = position(p);
        let on_cell = sub.cells.iter().any(|c| c.contains(&p));
        let fill = if on_cell { "#000000" } else { "#ffffff" };
        writeln!(
            w,
            r##"  <circle cx="{x}" cy="{y}" r="5" fill="{fill}" stroke="#000000" stroke-width="1"/>"##
        )
        .unwrap();
        writeln!(
            w,
            r#"  <text x="{}" y="{}" font-family="monospace" font-size="12">a{}{}={}</text>"#,
            x + 8,
            y - 8,
            p.i + 1,
            p.j + 1,
            a.get(p.i, p.j)
        )
        .unwrap();
    }
    writeln!(w, "</svg>").unwrap();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn trivial_has_single_cell_polygon() {
        let svg = render_svg(&sym(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap();
        assert_eq!(svg.matches(r#"class="cell""#).count(), 1);
        assert!(svg.contains("trivial subdivision"));
        assert!(svg.contains(r#"points="40,360 360,360 200,40""#));
    }

    #[test]
    fn nontrivial_draws_several_cells() {
        let svg = render_svg(&sym(&[&[0, -1, 0], &[-1, 0, 0], &[0, 0, 0]])).unwrap();
        assert!(svg.matches(r#"class="cell""#).count() >= 2);
    }

    #[test]
    fn deterministic_and_n3_only() {
        let a = sym(&[&[0, -1, 0], &[-1, 0, 0], &[0, 0, 0]]);
        assert_eq!(render_svg(&a).unwrap(), render_svg(&a).unwrap());
        assert!(render_svg(&SymMatrix::zeros(2)).is_err());
    }

    #[test]
    fn hull_drops_collinear_points() {
        assert_eq!(
            hull(vec![(0, 0), (2, 0), (1, 0), (0, 2)]),
            vec![(0, 0), (2, 0), (0, 2)]
        );
    }
}
