//! Deterministic SVG for 2-dimensional fans and templates, in the style of
//! the usual pictures: rays as arrows, chambers as hatched sectors marked
//! `+`/`−` (black for `w⁺`, red for `w⁻`), polygons with folds in red.

use std::fmt::Write;

use malachite::num::conversion::traits::RoundingFrom;
use malachite::rounding_modes::RoundingMode;

use origami_core::multifan::MultiFan;
use origami_core::{Error, FoldEntry, LatticeVector, OrigamiTemplate, Orientation, Rational};

const SIZE: f64 = 400.0;
const RADIUS: f64 = 160.0;

fn f(x: &Rational) -> f64 {
    f64::rounding_from(x, RoundingMode::Nearest).0
}

fn float_vector(v: &LatticeVector) -> (f64, f64) {
    let c: Vec<f64> = v.to_rationals().iter().map(f).collect();
    (c[0], c[1])
}

fn head(out: &mut String) {
    let _ = write!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">
<defs>
<pattern id="plus" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="6" stroke="black" stroke-width="1"/></pattern>
<pattern id="minus" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(135)"><line x1="0" y1="0" x2="0" y2="6" stroke="red" stroke-width="1"/></pattern>
<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker>
</defs>
<rect width="{SIZE}" height="{SIZE}" fill="white"/>
"##
    );
}

fn require_2d(dim: usize) -> Result<(), Error> {
    if dim == 2 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: 2, found: dim })
    }
}

/// Point of the canvas in direction `(x, y)` at distance `r` from the centre.
fn polar(x: f64, y: f64, r: f64) -> (f64, f64) {
    let n = x.hypot(y);
    (SIZE / 2.0 + r * x / n, SIZE / 2.0 - r * y / n)
}

pub fn fan(mf: &MultiFan) -> Result<String, Error> {
    require_2d(mf.dim())?;
    let mut out = String::new();
    head(&mut out);
    let c = SIZE / 2.0;
    // Chambers on the same cone are drawn on top of each other; their marks
    // are spread along the bisector.
    let mut seen: Vec<(Vec<LatticeVector>, usize)> = Vec::new();
    for ch in mf.chambers() {
        let vs = mf.vectors_of(&ch.edges);
        let (a, b) = (float_vector(&vs[0]), float_vector(&vs[1]));
        let cross = a.0 * b.1 - a.1 * b.0;
        if cross == 0.0 {
            continue;
        }
        // Counterclockwise in the plane is sweep 0 once y points down.
        let (a, b) = if cross > 0.0 { (a, b) } else { (b, a) };
        let (p, q) = (polar(a.0, a.1, RADIUS), polar(b.0, b.1, RADIUS));
        let key = mf.cone_key(&ch.edges);
        let k = match seen.iter_mut().find(|(c, _)| *c == key) {
            Some((_, n)) => {
                *n += 1;
                *n
            }
            None => {
                seen.push((key, 0));
                0
            }
        };
        for (w, pattern, mark, colour) in [(ch.w_plus, "plus", "+", "black"), (ch.w_minus, "minus", "−", "red")] {
            if w == 0 {
                continue;
            }
            let _ = writeln!(
                out,
                r#"<path d="M{c:.3},{c:.3} L{:.3},{:.3} A{RADIUS},{RADIUS} 0 0 0 {:.3},{:.3} Z" fill="url(#{pattern})" stroke="none"/>"#,
                p.0, p.1, q.0, q.1
            );
            let (an, bn) = (a.0.hypot(a.1), b.0.hypot(b.1));
            let (mx, my) = (a.0 / an + b.0 / bn, a.1 / an + b.1 / bn);
            let shift = if pattern == "plus" { 0.0 } else { 14.0 };
            let (tx, ty) = polar(mx, my, 0.45 * RADIUS + 22.0 * k as f64 + shift);
            let label = if w == 1 { mark.to_string() } else { format!("{mark}{w}") };
            let _ = writeln!(
                out,
                r#"<text x="{tx:.3}" y="{ty:.3}" font-family="sans-serif" font-size="14" fill="{colour}" text-anchor="middle">{label}</text>"#
            );
        }
    }
    for e in mf.edges() {
        let (x, y) = float_vector(&e.vector);
        let (px, py) = polar(x, y, RADIUS);
        let (lx, ly) = polar(x, y, RADIUS + 16.0);
        let coords: Vec<String> = e.vector.coords().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(
            out,
            r#"<line x1="{c:.3}" y1="{c:.3}" x2="{px:.3}" y2="{py:.3}" stroke="black" stroke-width="1.5" marker-end="url(#arrow)"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{lx:.3}" y="{ly:.3}" font-family="sans-serif" font-size="11" text-anchor="middle">({})</text>"#,
            coords.join(",")
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Vertices of a polygon in counterclockwise order around their centroid.
fn ring(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let n = points.len() as f64;
    let (cx, cy) = points.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0 / n, y + p.1 / n));
    let mut ps = points.to_vec();
    ps.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
    ps
}

pub fn template(t: &OrigamiTemplate) -> Result<String, Error> {
    require_2d(t.dim())?;
    let polys: Vec<Vec<(f64, f64)>> = t
        .pieces()
        .iter()
        .map(|p| p.polytope.vertices().iter().map(|v| (f(&v.point[0]), f(&v.point[1]))).collect())
        .collect();
    let all = polys.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in all {
        (x0, x1, y0, y1) = (x0.min(x), x1.max(x), y0.min(y), y1.max(y));
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = (SIZE - 80.0) / span;
    let to_canvas = |(x, y): (f64, f64)| {
        (40.0 + (x - x0) * scale + (span - (x1 - x0)) * scale / 2.0, SIZE - 40.0 - (y - y0) * scale - (span - (y1 - y0)) * scale / 2.0)
    };
    let mut out = String::new();
    head(&mut out);
    for (piece, pts) in t.pieces().iter().zip(&polys) {
        let ring: Vec<String> = ring(pts)
            .into_iter()
            .map(to_canvas)
            .map(|(x, y)| format!("{x:.3},{y:.3}"))
            .collect();
        let fill = match piece.orientation {
            Some(Orientation::Negative) => "url(#minus)",
            Some(Orientation::Positive) => "url(#plus)",
            None => "lightgray",
        };
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{fill}" fill-opacity="0.6" stroke="black" stroke-width="1"/>"#,
            ring.join(" ")
        );
    }
    for entry in t.folds() {
        let dashed = matches!(entry, FoldEntry::Single(_));
        for r in entry.facets() {
            let p = t.polytope(r.polytope);
            let ends: Vec<(f64, f64)> = p
                .facet_vertices(r.facet)
                .iter()
                .map(|&v| to_canvas((f(&p.vertices()[v].point[0]), f(&p.vertices()[v].point[1]))))
                .collect();
            if let [a, b] = ends[..] {
                let dash = if dashed { r#" stroke-dasharray="6,4""# } else { "" };
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="red" stroke-width="3"{dash}/>"#,
                    a.0, a.1, b.0, b.1
                );
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
