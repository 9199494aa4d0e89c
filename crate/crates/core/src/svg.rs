//! SVG drawings of coverings: one color per forest, one `<line>` per edge
//! per forest, and dotted markers for edges flagged as absent.

use std::fmt::Write;

use crate::model::{Covering, Edge};

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    /// Width and height of the drawing in pixels.
    pub size: f64,
    /// Edges drawn as dotted markers of absence.
    pub absent: Vec<Edge>,
    /// Distance between parallel copies of an edge lying in several forests.
    pub spread: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { size: 480.0, absent: Vec::new(), spread: 3.0 }
    }
}

pub fn forest_color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

/// Screen positions of the vertices: the attached coordinates scaled into
/// the frame (each axis separately, which keeps convex position), or a
/// clockwise circle starting at the top when the covering is abstract.
fn layout(c: &Covering, size: f64) -> Vec<(f64, f64)> {
    let margin = 0.08 * size;
    let inner = size - 2.0 * margin;
    match &c.geometry {
        Some(ps) if !ps.is_empty() => {
            let xs: Vec<f64> = ps.points().iter().map(|p| p.x() as f64).collect();
            let ys: Vec<f64> = ps.points().iter().map(|p| p.y() as f64).collect();
            let fit = |vals: &[f64], v: f64| {
                let (lo, hi) = vals.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &x| (lo.min(x), hi.max(x)));
                if hi > lo {
                    (v - lo) / (hi - lo)
                } else {
                    0.5
                }
            };
            xs.iter()
                .zip(&ys)
                .map(|(&x, &y)| (margin + inner * fit(&xs, x), margin + inner * (1.0 - fit(&ys, y))))
                .collect()
        }
        _ => (0..c.n)
            .map(|i| {
                let angle = std::f64::consts::TAU * i as f64 / c.n.max(1) as f64;
                (size / 2.0 + inner / 2.0 * angle.sin(), size / 2.0 - inner / 2.0 * angle.cos())
            })
            .collect(),
    }
}

pub fn render_svg(c: &Covering, opts: &RenderOptions) -> String {
    let size = opts.size;
    let pos = layout(c, size);
    let at = |v: usize| pos.get(v.wrapping_sub(1)).copied();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r#"<rect width="{size}" height="{size}" fill="white"/>"#);

    for &e in &opts.absent {
        if let (Some((x1, y1)), Some((x2, y2))) = (at(e.u()), at(e.v())) {
            let _ = writeln!(
                out,
                r#"<path d="M {x1:.2} {y1:.2} L {x2:.2} {y2:.2}" stroke="black" stroke-width="1.5" stroke-dasharray="2 4" fill="none" class="absent"/>"#
            );
        }
    }

    for (i, f) in c.forests.iter().enumerate() {
        let _ = writeln!(out, r#"<g class="forest" data-forest="{i}" stroke="{}" stroke-width="2">"#, forest_color(i));
        for e in f.edges() {
            let (Some((x1, y1)), Some((x2, y2))) = (at(e.u()), at(e.v())) else { continue };
            // parallel copies of a shared edge are fanned out sideways
            let copies = c.multiplicity(e);
            let rank = c.forests[..i].iter().filter(|g| g.contains_edge(e)).count();
            let shift = opts.spread * (rank as f64 - (copies as f64 - 1.0) / 2.0);
            let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt().max(1e-9);
            let (dx, dy) = (-(y2 - y1) / len * shift, (x2 - x1) / len * shift);
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                x1 + dx,
                y1 + dy,
                x2 + dx,
                y2 + dy
            );
        }
        let _ = writeln!(out, "</g>");
    }

    for (i, &(x, y)) in pos.iter().enumerate() {
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">P{}</text>"#,
            x + 6.0,
            y - 6.0,
            i + 1
        );
    }
    out.push_str("</svg>\n");
    out
}
