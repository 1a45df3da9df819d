//! Deterministic SVG drawings of two-variable Newton polyhedra and monomial
//! staircases. Coordinates are printed with fixed precision so identical
//! input gives byte-identical files.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::exact::ExpVec;
use crate::ideal::MonomialIdeal;
use crate::newton::NewtonPolyhedron;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 48.0;

struct Frame {
    unit: f64,
    extent: u64,
}

impl Frame {
    fn new(extent: u64) -> Self {
        let extent = extent.max(1);
        Frame {
            unit: (SIZE - 2.0 * MARGIN) / extent as f64,
            extent,
        }
    }

    fn x(&self, v: f64) -> f64 {
        MARGIN + v * self.unit
    }

    fn y(&self, v: f64) -> f64 {
        SIZE - MARGIN - v * self.unit
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE:.0}" height="{SIZE:.0}" viewBox="0 0 {SIZE:.0} {SIZE:.0}" font-family="monospace" font-size="11">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
}

fn axes(out: &mut String, f: &Frame) {
    let end = f.extent as f64 + 0.5;
    let _ = writeln!(
        out,
        r##"<g stroke="#000000" stroke-width="1"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/></g>"##,
        f.x(0.0),
        f.y(0.0),
        f.x(end),
        f.y(0.0),
        f.x(0.0),
        f.y(0.0),
        f.x(0.0),
        f.y(end)
    );
    let step = (f.extent / 10).max(1);
    let mut k = 0;
    while k <= f.extent {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{k}</text>"#,
            f.x(k as f64),
            f.y(0.0) + 16.0
        );
        if k > 0 {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{k}</text>"#,
                f.x(0.0) - 6.0,
                f.y(k as f64) + 4.0
            );
        }
        k += step;
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn coords2(e: &ExpVec) -> (f64, f64) {
    (e.coords()[0] as f64, e.coords()[1] as f64)
}

/// The Newton polyhedron of a two-variable point set: shaded region, compact
/// facets labelled with their primitive normals, and the points numbered in
/// sequence order.
pub fn render_newton(np: &NewtonPolyhedron, title: &str) -> Result<String> {
    if np.dim() != 2 {
        return Err(Error::Unsupported(format!("rendering in {} variables", np.dim())));
    }
    let pts = np.points();
    let extent = pts.iter().flat_map(|p| p.coords().iter().copied()).max().unwrap_or(1) + 1;
    let f = Frame::new(extent);
    let mut out = String::new();
    header(&mut out, title);

    // boundary vertices from the top-left pure power down to the bottom-right
    let mut verts: Vec<(f64, f64)> = np
        .facets()
        .iter()
        .flat_map(|fc| fc.vertices.iter().map(|&i| coords2(&pts[i])))
        .collect();
    verts.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    verts.dedup();
    let top = extent as f64;
    let mut poly = String::new();
    if let (Some(first), Some(last)) = (verts.first(), verts.last()) {
        let _ = write!(poly, "{:.2},{:.2} ", f.x(first.0), f.y(top));
        for v in &verts {
            let _ = write!(poly, "{:.2},{:.2} ", f.x(v.0), f.y(v.1));
        }
        let _ = write!(
            poly,
            "{:.2},{:.2} {:.2},{:.2}",
            f.x(top),
            f.y(last.1),
            f.x(top),
            f.y(top)
        );
    }
    let _ = writeln!(out, r##"<polygon points="{poly}" fill="#dde8f4" stroke="none"/>"##);
    axes(&mut out, &f);

    for fc in np.facets() {
        let mut ends: Vec<(f64, f64)> = fc.vertices.iter().map(|&i| coords2(&pts[i])).collect();
        ends.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (a, b) = (ends[0], ends[ends.len() - 1]);
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f4e8c" stroke-width="2"/>"##,
            f.x(a.0),
            f.y(a.1),
            f.x(b.0),
            f.y(b.1)
        );
        let label: Vec<String> = fc.normal.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" fill="#1f4e8c">({})</text>"##,
            f.x(0.5 * (a.0 + b.0)) + 6.0,
            f.y(0.5 * (a.1 + b.1)) - 6.0,
            label.join(",")
        );
    }
    // rays along the axes
    if let (Some(first), Some(last)) = (verts.first(), verts.last()) {
        let _ = writeln!(
            out,
            r##"<g stroke="#1f4e8c" stroke-width="2" stroke-dasharray="4 3"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/></g>"##,
            f.x(first.0),
            f.y(first.1),
            f.x(first.0),
            f.y(top),
            f.x(last.0),
            f.y(last.1),
            f.x(top),
            f.y(last.1)
        );
    }
    for (j, p) in pts.iter().enumerate() {
        let (x, y) = coords2(p);
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="#c0392b"/><text x="{:.2}" y="{:.2}">{}</text>"##,
            f.x(x),
            f.y(y),
            f.x(x) + 5.0,
            f.y(y) + 13.0,
            j + 1
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// The staircase of a two-variable monomial ideal: its generators and the
/// outline of the region of exponents it contains.
pub fn render_staircase(ideal: &MonomialIdeal, title: &str) -> Result<String> {
    if ideal.dim() != 2 {
        return Err(Error::Unsupported(format!("rendering in {} variables", ideal.dim())));
    }
    let gens: Vec<(f64, f64)> = ideal.gens().iter().map(coords2).collect();
    let extent = ideal
        .gens()
        .iter()
        .flat_map(|g| g.coords().iter().copied())
        .max()
        .unwrap_or(1)
        + 1;
    let f = Frame::new(extent);
    let top = extent as f64;
    let mut out = String::new();
    header(&mut out, title);

    // gens are sorted by the first coordinate, so the second decreases
    let mut path = String::new();
    if let Some(first) = gens.first() {
        let _ = write!(path, "{:.2},{:.2} ", f.x(first.0), f.y(top));
        for (k, g) in gens.iter().enumerate() {
            if k > 0 {
                let _ = write!(path, "{:.2},{:.2} ", f.x(g.0), f.y(gens[k - 1].1));
            }
            let _ = write!(path, "{:.2},{:.2} ", f.x(g.0), f.y(g.1));
        }
        let last = gens[gens.len() - 1];
        let _ = write!(
            path,
            "{:.2},{:.2} {:.2},{:.2}",
            f.x(top),
            f.y(last.1),
            f.x(top),
            f.y(top)
        );
    }
    let _ = writeln!(
        out,
        r##"<polygon points="{path}" fill="#e8f0dd" stroke="#3d6b1f" stroke-width="2"/>"##
    );
    axes(&mut out, &f);
    for g in &gens {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="#3d6b1f"/><text x="{:.2}" y="{:.2}">({},{})</text>"##,
            f.x(g.0),
            f.y(g.1),
            f.x(g.0) + 5.0,
            f.y(g.1) - 5.0,
            g.0,
            g.1
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
