//! G. Horváth width: the largest extended width over lines through a given
//! ideal point.

use crate::body::{klein_facet_to_hyperplane, Body};
use crate::error::{degenerate, Result};
use crate::hyperboloid::{Hyperplane, IdealPoint};
use crate::planar::require_planar;
use crate::vector::Vector;

use super::extended_from_range;
use super::search::{golden_max, local_minima};

/// Grid size over the pencil of lines through the ideal point.
const GH_GRID: usize = 256;

#[derive(Clone, Debug)]
pub struct GhResult {
    pub value: f64,
    /// The other ideal point of the maximizing line.
    pub second: IdealPoint,
    pub evaluations: usize,
}

/// The line of `H^2` with ideal points `i` and `j`.
pub fn gh_line(i: &IdealPoint, j: &IdealPoint) -> Result<Hyperplane> {
    require_planar(i.dim(), "a line between two ideal points")?;
    let (a, b) = (i.direction(), j.direction());
    let d = b - a;
    let r = d.norm();
    if r < 1e-12 {
        return Err(degenerate("the two ideal points coincide"));
    }
    let c = Vector::from_slice(&[-d[1] / r, d[0] / r]);
    klein_facet_to_hyperplane(c.as_slice(), c.dot(&a))
}

/// Klein picture of the pencil at `i`: the chord from `a` in direction
/// `f0 cos t + f1 sin t`, with `f0 = -a` pointing into the disk.
struct Pencil {
    a: Vector,
    f0: Vector,
    f1: Vector,
}

impl Pencil {
    fn new(i: &IdealPoint) -> Self {
        let a = i.direction();
        let f0 = -a;
        let f1 = Vector::from_slice(&[-f0[1], f0[0]]);
        Pencil { a, f0, f1 }
    }

    fn angle_of(&self, k: &Vector) -> f64 {
        let d = *k - self.a;
        d.dot(&self.f1).atan2(d.dot(&self.f0))
    }

    fn dir(&self, t: f64) -> Vector {
        self.f0 * t.cos() + self.f1 * t.sin()
    }

    /// Unit normal `c` and offset of the Klein chord at angle `t`.
    fn plane(&self, t: f64) -> (Vector, f64) {
        let d = self.dir(t);
        let c = Vector::from_slice(&[-d[1], d[0]]);
        (c, c.dot(&self.a))
    }

    fn second(&self, t: f64) -> IdealPoint {
        let d = self.dir(t);
        let end = self.a + d * (2.0 * t.cos());
        IdealPoint::from_direction(end.as_slice()).expect("chord end is a unit vector")
    }
}

/// Extended width of `k` about the chord at angle `t`; the lift of the chord
/// is `(c, b) / sqrt(1 - b^2)`, evaluated directly for speed.
fn width_at(k: &Body, pencil: &Pencil, t: f64) -> f64 {
    let (c, b) = pencil.plane(t);
    let q = (1.0 - b * b).sqrt();
    let u = c.push(b) * (1.0 / q);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in k.vertices() {
        let s = v.form(&u);
        lo = lo.min(s);
        hi = hi.max(s);
    }
    extended_from_range(lo.asinh(), hi.asinh())
}

/// The G. Horváth width of a planar body at the ideal point `i`.
///
/// Lines through `i` meeting the body form the angular interval spanned by
/// the vertices in the Klein pencil at `i`; the extended width is maximized
/// over that interval by a grid followed by golden-section refinement.
pub fn width_gh(k: &Body, i: &IdealPoint) -> Result<GhResult> {
    require_planar(k.dim(), "the G. Horváth width")?;
    require_planar(i.dim(), "the G. Horváth width")?;
    let pencil = Pencil::new(i);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for kv in k.klein_vertices() {
        let t = pencil.angle_of(kv);
        lo = lo.min(t);
        hi = hi.max(t);
    }
    if hi - lo < 1e-15 {
        return Ok(GhResult {
            value: width_at(k, &pencil, lo),
            second: pencil.second(lo),
            evaluations: 1,
        });
    }
    let step = (hi - lo) / (GH_GRID - 1) as f64;
    let ts: Vec<f64> = (0..GH_GRID).map(|j| lo + step * j as f64).collect();
    let neg: Vec<f64> = ts.iter().map(|&t| -width_at(k, &pencil, t)).collect();
    let mut evals = GH_GRID;
    let mut best = (ts[0], -neg[0]);
    for &j in &local_minima(&neg, false, 3) {
        let a = (ts[j] - step).max(lo);
        let b = (ts[j] + step).min(hi);
        let mut count = 0;
        let (t, v) = golden_max(
            |t| {
                count += 1;
                width_at(k, &pencil, t)
            },
            a,
            b,
            1e-12,
        );
        evals += count;
        let (t, v) = if -neg[j] > v { (ts[j], -neg[j]) } else { (t, v) };
        if v > best.1 {
            best = (t, v);
        }
    }
    Ok(GhResult {
        value: best.1,
        second: pencil.second(best.0),
        evaluations: evals,
    })
}
