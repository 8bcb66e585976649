//! SVG 1.1 rendering of planar scenes in the Poincaré disk.
//!
//! Geodesics, hypercycles and circles are drawn as circular arcs through
//! three points computed in the disk; everything is written with three
//! decimals so the output is byte-stable.

use std::fmt::Write as _;
use std::path::Path;

use crate::document::{write, DocumentError};
use crate::scene::{Element, Scene, Style};

/// Pixels between the disk and the picture border.
const MARGIN: f64 = 8.0;
/// Radius of point markers in pixels.
const POINT_RADIUS: f64 = 3.0;
/// Arcs whose pixel radius exceeds this are drawn as straight segments.
const MAX_ARC_RADIUS: f64 = 1e7;

type P = [f64; 2];

fn num(x: f64) -> String {
    let r = (x * 1000.0).round() / 1000.0;
    // Avoid "-0.000".
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:.3}")
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Klein to Poincaré; ideal points stay where they are.
fn poincare(k: &P) -> P {
    let s = 1.0 + (1.0 - k[0] * k[0] - k[1] * k[1]).max(0.0).sqrt();
    [k[0] / s, k[1] / s]
}

struct Canvas {
    half: f64,
    scale: f64,
}

impl Canvas {
    fn new(size: u32) -> Self {
        let half = size as f64 / 2.0;
        Canvas {
            half,
            scale: (half - MARGIN).max(1.0),
        }
    }

    /// Poincaré disk to pixels, y pointing down.
    fn px(&self, p: &P) -> P {
        [self.half + self.scale * p[0], self.half - self.scale * p[1]]
    }

    fn pt(&self, p: &P) -> String {
        let q = self.px(p);
        format!("{} {}", num(q[0]), num(q[1]))
    }
}

/// Path command continuing from `a` to `b` along the circle through
/// `a`, `m`, `b` (all in pixels).
fn arc_to(a: &P, m: &P, b: &P) -> String {
    let end = format!("{} {}", num(b[0]), num(b[1]));
    let (ax, ay) = (m[0] - a[0], m[1] - a[1]);
    let (bx, by) = (b[0] - m[0], b[1] - m[1]);
    let cross = ax * by - ay * bx;
    let (ab, am, mb) = (
        (b[0] - a[0]).hypot(b[1] - a[1]),
        ax.hypot(ay),
        bx.hypot(by),
    );
    if cross.abs() < 1e-9 * (1.0 + ab * ab) {
        return format!(" L {end}");
    }
    // Circumradius: product of the sides over twice the doubled area.
    let r = ab * am * mb / (2.0 * cross.abs());
    if r > MAX_ARC_RADIUS {
        return format!(" L {end}");
    }
    // The arc through m is the large one exactly when the inscribed angle
    // at m is acute.
    let dot = (a[0] - m[0]) * (b[0] - m[0]) + (a[1] - m[1]) * (b[1] - m[1]);
    let large = u8::from(dot > 0.0);
    let sweep = u8::from(cross > 0.0);
    format!(" A {} {} 0 {large} {sweep} {end}", num(r), num(r))
}

/// Intersections of the Klein chord through `a` and `b` with the unit
/// circle, ordered from the `a` side to the `b` side.
fn chord_ends(a: &P, b: &P) -> (P, P) {
    let d = [b[0] - a[0], b[1] - a[1]];
    let dd = d[0] * d[0] + d[1] * d[1];
    let ad = a[0] * d[0] + a[1] * d[1];
    let aa = a[0] * a[0] + a[1] * a[1];
    let disc = (ad * ad - dd * (aa - 1.0)).max(0.0).sqrt();
    let t0 = (-ad - disc) / dd;
    let t1 = (-ad + disc) / dd;
    (
        [a[0] + t0 * d[0], a[1] + t0 * d[1]],
        [a[0] + t1 * d[0], a[1] + t1 * d[1]],
    )
}

fn mid(a: &P, b: &P) -> P {
    [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]
}

/// Path segment along the geodesic between two Klein points.
fn geodesic_to(c: &Canvas, a: &P, b: &P) -> String {
    let m = poincare(&mid(a, b));
    arc_to(&c.px(&poincare(a)), &c.px(&m), &c.px(&poincare(b)))
}

fn attrs(style: &Style, stroke: &str, fill: &str, width: f64) -> String {
    let mut s = format!(
        " fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\"",
        escape(style.fill.as_deref().unwrap_or(fill)),
        escape(style.stroke.as_deref().unwrap_or(stroke)),
        num(style.width.unwrap_or(width)),
    );
    if let Some(d) = &style.dash {
        let _ = write!(s, " stroke-dasharray=\"{}\"", escape(d));
    }
    if let Some(o) = style.opacity {
        let _ = write!(s, " opacity=\"{}\"", num(o));
    }
    s
}

/// Euclidean center and radius (Poincaré disk) of a hyperbolic circle.
fn circle_disk(center: &P, radius: f64) -> (P, f64) {
    let p = poincare(center);
    let s = p[0].hypot(p[1]);
    let dir = if s > 0.0 { [p[0] / s, p[1] / s] } else { [1.0, 0.0] };
    let d0 = 2.0 * s.atanh();
    let near = ((d0 - radius) / 2.0).tanh();
    let far = ((d0 + radius) / 2.0).tanh();
    let m = 0.5 * (near + far);
    ([m * dir[0], m * dir[1]], 0.5 * (far - near))
}

fn render_element(c: &Canvas, e: &Element, out: &mut String) {
    match e {
        Element::Body { vertices, style } => {
            let attr = attrs(style, "black", "none", 1.5);
            if vertices.len() == 1 {
                let q = c.px(&poincare(&vertices[0]));
                let _ = writeln!(
                    out,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"{attr}/>",
                    num(q[0]),
                    num(q[1]),
                    num(POINT_RADIUS)
                );
                return;
            }
            let mut d = format!("M {}", c.pt(&poincare(&vertices[0])));
            let n = vertices.len();
            let closing = if n == 2 { 1 } else { n };
            for i in 0..closing {
                d.push_str(&geodesic_to(c, &vertices[i], &vertices[(i + 1) % n]));
            }
            if n > 2 {
                d.push_str(" Z");
            }
            let _ = writeln!(out, "<path d=\"{d}\"{attr}/>");
        }
        Element::Geodesic { from, to, full, style } => {
            let (a, b) = if *full { chord_ends(from, to) } else { (*from, *to) };
            let d = format!("M {}{}", c.pt(&poincare(&a)), geodesic_to(c, &a, &b));
            let _ = writeln!(out, "<path d=\"{d}\"{}/>", attrs(style, "black", "none", 1.5));
        }
        Element::Circle { center, radius, style } => {
            let (m, r) = circle_disk(center, *radius);
            let q = c.px(&m);
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"{}/>",
                num(q[0]),
                num(q[1]),
                num(r * c.scale),
                attrs(style, "black", "none", 1.5)
            );
        }
        Element::Horocycle { ideal, through, style } => {
            let s = ideal[0].hypot(ideal[1]);
            let xi = [ideal[0] / s, ideal[1] / s];
            let q = poincare(through);
            let qq = q[0] * q[0] + q[1] * q[1];
            let qx = q[0] * xi[0] + q[1] * xi[1];
            let rho = (1.0 + qq - 2.0 * qx) / (2.0 * (1.0 - qx));
            let m = c.px(&[(1.0 - rho) * xi[0], (1.0 - rho) * xi[1]]);
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"{}/>",
                num(m[0]),
                num(m[1]),
                num(rho * c.scale),
                attrs(style, "black", "none", 1.5)
            );
        }
        Element::HypercyclePair { from, to, distance, style } => {
            let (i, j) = chord_ends(from, to);
            // Foot of the origin on the chord; the perpendicular through it
            // is radial in both models.
            let f = mid(&i, &j);
            let delta = f[0].hypot(f[1]);
            let nrm = if delta > 1e-15 {
                [f[0] / delta, f[1] / delta]
            } else {
                let d = [j[0] - i[0], j[1] - i[1]];
                let l = d[0].hypot(d[1]);
                [-d[1] / l, d[0] / l]
            };
            let s0 = delta.atanh();
            let attr = attrs(style, "black", "none", 1.0);
            for side in [1.0, -1.0] {
                let t = ((s0 + side * distance) / 2.0).tanh();
                let m = [t * nrm[0], t * nrm[1]];
                let d = format!(
                    "M {}{}",
                    c.pt(&i),
                    arc_to(&c.px(&i), &c.px(&m), &c.px(&j))
                );
                let _ = writeln!(out, "<path d=\"{d}\"{attr}/>");
            }
        }
        Element::Point { at, style } => {
            let q = c.px(&poincare(at));
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"{}/>",
                num(q[0]),
                num(q[1]),
                num(POINT_RADIUS),
                attrs(style, "none", "black", 0.0)
            );
        }
        Element::Label { at, text, style } => {
            let q = c.px(&poincare(at));
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"{}\">{}</text>",
                num(q[0] + 5.0),
                num(q[1] - 5.0),
                escape(style.fill.as_deref().unwrap_or("black")),
                escape(text)
            );
        }
    }
}

/// The scene as an SVG document of `size` by `size` pixels.
pub fn render_svg(scene: &Scene, size: u32) -> String {
    let c = Canvas::new(size);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(
        out,
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"white\" stroke=\"black\" stroke-width=\"1.000\"/>",
        num(c.half),
        num(c.half),
        num(c.scale)
    );
    for e in &scene.elements {
        render_element(&c, e, &mut out);
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(scene: &Scene, path: &Path, size: u32) -> Result<(), DocumentError> {
    write(path, &render_svg(scene, size))
}
