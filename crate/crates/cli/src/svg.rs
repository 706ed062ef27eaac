//! Static SVG drawing of an instance above its separating line.
//!
//! The picture is drawn in normalized coordinates (line at `y = 0`), scaled to
//! a fixed width. Output depends only on the input, so reruns are
//! byte-identical.

use std::fmt::Write;

use sepcover::instance::normalize;
use sepcover::{Instance, Shape, Solution};

const WIDTH: f64 = 800.0;
const CHOSEN: &str = "#d62728";
const OTHER: &str = "#9e9e9e";

struct View {
    xmin: f64,
    ymax: f64,
    scale: f64,
}

impl View {
    fn x(&self, x: f64) -> f64 {
        (x - self.xmin) * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        (self.ymax - y) * self.scale
    }
}

pub fn render(raw: &Instance, sol: Option<&Solution>) -> String {
    let inst = normalize(raw).unwrap_or_else(|_| raw.clone());
    let chosen = |id: usize| sol.is_some_and(|s| s.chosen.contains(&id));

    let (mut xmin, mut xmax, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for p in &inst.points {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
        ymax = ymax.max(p.y);
    }
    for s in &inst.regions {
        if let Shape::Disk { cx, cy, r } = s.shape {
            if cy + r > 0.0 {
                let w = (r * r - cy * cy).sqrt();
                xmin = xmin.min(cx - w);
                xmax = xmax.max(cx + w);
                ymax = ymax.max(cy + r);
            }
        }
    }
    if xmin.partial_cmp(&xmax) != Some(std::cmp::Ordering::Less) {
        xmin = if xmin.is_finite() { xmin - 1.0 } else { -1.0 };
        xmax = xmin + 2.0;
    }
    if ymax <= 0.0 {
        ymax = 1.0;
    }
    let pad = 0.05 * (xmax - xmin).max(ymax);
    let (xmin, xmax, ymin, ymax) = (xmin - pad, xmax + pad, -pad, ymax + pad);
    let v = View { xmin, ymax, scale: WIDTH / (xmax - xmin) };
    let height = (ymax - ymin) * v.scale;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH:.0}" height="{height:.3}" viewBox="0 0 {WIDTH:.0} {height:.3}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<line x1="0" y1="{0:.3}" x2="{WIDTH:.0}" y2="{0:.3}" stroke="black"/>"#, v.y(0.0));

    // unchosen regions first so the chosen ones are drawn on top
    for pass in [false, true] {
        for r in inst.regions.iter().filter(|r| chosen(r.id) == pass) {
            let (stroke, width) = if pass { (CHOSEN, 2.0) } else { (OTHER, 1.0) };
            match r.shape {
                Shape::Disk { cx, cy, r: rad } => {
                    if cy + rad <= 0.0 {
                        continue;
                    }
                    let w = (rad * rad - cy * cy).sqrt();
                    let _ = writeln!(
                        s,
                        r#"<path id="region-{}" d="M {:.3} {:.3} A {:.3} {:.3} 0 0 1 {:.3} {:.3}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
                        r.id,
                        v.x(cx - w),
                        v.y(0.0),
                        rad * v.scale,
                        rad * v.scale,
                        v.x(cx + w),
                        v.y(0.0),
                    );
                }
                Shape::LowerHalfPlane { slope, intercept } => {
                    let _ = writeln!(
                        s,
                        r#"<line id="region-{}" x1="0" y1="{:.3}" x2="{WIDTH:.0}" y2="{:.3}" stroke="{stroke}" stroke-width="{width}"/>"#,
                        r.id,
                        v.y(slope * xmin + intercept),
                        v.y(slope * xmax + intercept),
                    );
                }
            }
        }
    }
    for p in &inst.points {
        let fill = if sol.and_then(|s| s.witness) == Some(p.id) { CHOSEN } else { "black" };
        let _ = writeln!(s, r#"<circle id="point-{}" cx="{:.3}" cy="{:.3}" r="2.5" fill="{fill}"/>"#, p.id, v.x(p.x), v.y(p.y));
    }
    s.push_str("</svg>\n");
    s
}
