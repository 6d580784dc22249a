//! SVG drawings of a patch of the tiling.
//!
//! Sides are coloured by class: opposite sides `k̄` and `k̄+3` share a
//! colour (red, blue, green for `k = 0, 1, 2`).

use std::fmt::Write as _;

use hextorus::construct::TorusTiling;
use hextorus::geom::{Point2, Polygon};

const SIDE_COLOURS: [&str; 3] = ["#d62728", "#1f77b4", "#2ca02c"];
const FILLS: [&str; 6] = ["#f2f2f2", "#d9d9d9", "#e8e0cf", "#cfdce8", "#e0cfe8", "#d4e8cf"];
const SIZE: f64 = 800.0;

/// Label of the side from stored corner `k` to `k + 1`.
fn side_label(p: &Polygon, k: usize) -> usize {
    let n = p.len();
    let (a, b) = (p.labels()[k], p.labels()[(k + 1) % n]);
    if b == (a + 1) % n {
        a
    } else {
        b
    }
}

/// Translates `jα + kβ` for `0 ≤ j, k < extent`, with the fundamental
/// parallelogram outlined.
pub fn svg(t: &TorusTiling, extent: u32) -> String {
    let mut tiles = Vec::new();
    for k in 0..extent as i64 {
        for j in 0..extent as i64 {
            let v = Point2::from_complex(t.lattice.point(j, k));
            tiles.extend(t.tiles.iter().enumerate().map(|(idx, p)| (idx, p.translated(v))));
        }
    }
    let pts = tiles.iter().flat_map(|(_, p)| p.corners().iter().copied());
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let scale = SIZE / (x1 - x0).max(y1 - y0);
    let margin = 10.0;
    let (w, h) = ((x1 - x0) * scale + 2.0 * margin, (y1 - y0) * scale + 2.0 * margin);
    // SVG's y axis points down
    let map = |p: Point2| ((p.x - x0) * scale + margin, (y1 - p.y) * scale + margin);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    for (idx, p) in &tiles {
        let d: Vec<String> = p
            .corners()
            .iter()
            .map(|&c| {
                let (x, y) = map(c);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{}" stroke="none"/>"#,
            d.join(" "),
            FILLS[idx % FILLS.len()]
        );
    }
    for (_, p) in &tiles {
        for k in 0..p.len() {
            let ((ax, ay), (bx, by)) = (map(p.corner(k)), map(p.corner(k + 1)));
            let colour = SIDE_COLOURS[side_label(p, k) % 3];
            let _ = writeln!(
                out,
                r#"<line x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}" stroke="{colour}" stroke-width="1.5"/>"#
            );
        }
    }
    let l = &t.lattice;
    let corners = [l.point(0, 0), l.point(1, 0), l.point(1, 1), l.point(0, 1)];
    let d: Vec<String> = corners
        .iter()
        .map(|&z| {
            let (x, y) = map(Point2::from_complex(z));
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(
        out,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-dasharray="4 3" stroke-width="1"/>"#,
        d.join(" ")
    );
    out.push_str("</svg>\n");
    out
}
