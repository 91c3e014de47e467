use std::fmt::Write as _;

use num_traits::ToPrimitive;

use super::{to_affine, Realization};
use crate::structure::IncidenceStructure;

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Width and height of the canvas in pixels.
    pub size: f64,
    /// Fraction of the drawing's extent added as a border.
    pub margin: f64,
    pub labels: bool,
    /// Seed for the affine chart, used only if `z = 0` hits a point.
    pub chart_seed: u64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { size: 600.0, margin: 0.15, labels: true, chart_seed: 0 }
    }
}

const STYLE: &str = "line{stroke:#000;stroke-width:1.5}line.highlight{stroke:#1f5fd6;stroke-width:2.5}\
circle{fill:#000}text{font:14px sans-serif;fill:#333}";

/// Draws points as dots and lines as segments across the bounding box. The
/// lines of size two and four are drawn in the highlight style.
pub fn render_svg(s: &IncidenceStructure, r: &Realization, options: &SvgOptions) -> String {
    let size = options.size;
    let mut out = String::new();
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size:.0}\" height=\"{size:.0}\" viewBox=\"0 0 {size:.0} {size:.0}\">\n<style>{STYLE}</style>\n"
    );
    if r.points.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let chart = to_affine(r, options.chart_seed);
    let pts: Vec<(f64, f64)> = chart
        .points
        .iter()
        .map(|(x, y)| (x.to_f64().unwrap_or(0.0), y.to_f64().unwrap_or(0.0)))
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let extent = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = extent * options.margin;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let half = extent / 2.0 + pad;
    let (bx0, bx1, by0, by1) = (cx - half, cx + half, cy - half, cy + half);
    let scale = size / (2.0 * half);
    let to_px = |x: f64, y: f64| ((x - bx0) * scale, (by1 - y) * scale);

    for (l, coord) in chart.lines.iter().enumerate() {
        let [a, b, c] = coord.to_f64().into_array();
        let Some(((ax, ay), (bx, by))) = clip(a, b, c, bx0, bx1, by0, by1) else { continue };
        let (px, py) = to_px(ax, ay);
        let (qx, qy) = to_px(bx, by);
        let class = match s.line(l).len() {
            2 | 4 => " class=\"highlight\"",
            _ => "",
        };
        let _ = writeln!(
            out,
            "<line{class} x1=\"{px:.3}\" y1=\"{py:.3}\" x2=\"{qx:.3}\" y2=\"{qy:.3}\"/>"
        );
    }
    for (p, &(x, y)) in pts.iter().enumerate() {
        let (px, py) = to_px(x, y);
        let _ = writeln!(out, "<circle cx=\"{px:.3}\" cy=\"{py:.3}\" r=\"4\"/>");
        if options.labels {
            let _ = writeln!(
                out,
                "<text x=\"{:.3}\" y=\"{:.3}\">{}</text>",
                px + 6.0,
                py - 6.0,
                escape(s.point_name(p))
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// The segment of `a x + b y + c = 0` inside the box, if it crosses it.
fn clip(a: f64, b: f64, c: f64, x0: f64, x1: f64, y0: f64, y1: f64) -> Option<((f64, f64), (f64, f64))> {
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if b.abs() > 1e-300 {
        for x in [x0, x1] {
            let y = -(a * x + c) / b;
            if (y0..=y1).contains(&y) {
                hits.push((x, y));
            }
        }
    }
    if a.abs() > 1e-300 {
        for y in [y0, y1] {
            let x = -(b * y + c) / a;
            if (x0..=x1).contains(&x) {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).unwrap_or(std::cmp::Ordering::Equal));
    let first = *hits.first()?;
    let last = *hits.last()?;
    (first != last).then_some((first, last))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
