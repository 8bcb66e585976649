//! Width via supporting lines with equal alternating angles.
//!
//! For a supporting line `l_z` at `z` and a candidate `z'` on the boundary,
//! the half-turn about the midpoint of `[z, z']` swaps `z` and `z'` and maps
//! `l_z` to the unique line through `z'` making the same alternating angle
//! with the segment. `z'` is an opposite point exactly when that image
//! supports the body at `z'`, i.e. when the image of the outer normal of
//! `l_z` lies in the outer normal cone at `z'`.

use std::f64::consts::FRAC_PI_2;

use crate::body::{Body, EPS_GEO};
use crate::error::{GeomError, Result};
use crate::hyperboloid::{hyperplane_gap, HPoint, Hyperplane, UnitTangent};
use crate::planar::{half_turn, require_planar, signed_angle};
use crate::vector::Vector;

use super::outward_normal;

#[derive(Clone, Copy, Debug)]
pub struct JcjlOptions {
    /// Samples of the mismatch function per boundary edge.
    pub samples_per_edge: usize,
    /// Incidence tolerance for the supporting line at `z`.
    pub support_tol: f64,
}

impl Default for JcjlOptions {
    fn default() -> Self {
        JcjlOptions {
            samples_per_edge: 16,
            support_tol: EPS_GEO,
        }
    }
}

/// An opposite point, its supporting line (body on the nonnegative side)
/// and the distance between the two supporting lines.
#[derive(Clone, Debug)]
pub struct JcjlSolution {
    pub opposite: HPoint,
    pub line: Hyperplane,
    pub width: f64,
}

/// All opposite points of `(z, lz)` with their JCJL widths, in boundary
/// order.
pub fn width_jcjl(
    k: &Body,
    z: &HPoint,
    lz: &Hyperplane,
    opts: &JcjlOptions,
) -> Result<Vec<JcjlSolution>> {
    require_planar(k.dim(), "the JCJL width")?;
    let facets = k.require_facets()?;
    if lz.side(z).abs() > opts.support_tol {
        return Err(crate::error::usage("the point does not lie on the supporting line"));
    }
    let u_out = outward_normal(k, lz, opts.support_tol)?;
    let u = *UnitTangent::project(*z, u_out)?.vec();
    let lz_out = Hyperplane::from_spacelike(u_out)?;

    let image = |zp: &HPoint| -> Vector {
        let m = HPoint::from_timelike_unchecked(*z.coords() + *zp.coords());
        half_turn(&m, &u)
    };
    let near_z = |zp: &HPoint| zp.distance(z) < 1e-9;

    let mut found: Vec<HPoint> = Vec::new();
    let mut closest = f64::INFINITY;
    let samples = opts.samples_per_edge.max(2);
    let verts = k.vertices();
    let m = verts.len();

    for (fi, f) in facets.iter().enumerate() {
        let edge = &k.edges()[fi];
        let n_e = *f.hyperplane().normal();
        let len = edge.length();
        let mismatch = |s: f64| -> f64 {
            let zp = edge.line().point_at(s);
            if near_z(&zp) {
                return f64::NAN;
            }
            signed_angle(&zp, &n_e, &image(&zp))
        };
        let ss: Vec<f64> = (0..=samples).map(|j| len * j as f64 / samples as f64).collect();
        let fs: Vec<f64> = ss.iter().map(|&s| mismatch(s)).collect();
        for j in 0..samples {
            let (a, b) = (fs[j], fs[j + 1]);
            if a.is_finite() {
                closest = closest.min(a.abs());
            }
            if !(a.abs() < FRAC_PI_2 && b.abs() < FRAC_PI_2) {
                continue;
            }
            if a == 0.0 {
                found.push(edge.line().point_at(ss[j]));
            } else if a * b < 0.0 {
                let (mut lo, mut hi, mut flo) = (ss[j], ss[j + 1], a);
                while hi - lo > 1e-12 * (1.0 + len) {
                    let mid = 0.5 * (lo + hi);
                    let fm = mismatch(mid);
                    if fm == 0.0 {
                        lo = mid;
                        hi = mid;
                        break;
                    }
                    if (fm < 0.0) == (flo < 0.0) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                found.push(edge.line().point_at(0.5 * (lo + hi)));
            }
        }
    }

    // Vertices: the image normal must lie in the cone spanned by the
    // normals of the two incident edges.
    for v in 0..m {
        let p = &verts[v];
        if near_z(p) {
            continue;
        }
        let n_in = *facets[(v + m - 1) % m].hyperplane().normal();
        let n_out = *facets[v].hyperplane().normal();
        let w = image(p);
        let a1 = signed_angle(p, &n_in, &w);
        let a2 = signed_angle(p, &w, &n_out);
        if a1 >= -1e-12 && a2 >= -1e-12 {
            found.push(*p);
        }
    }

    let mut sols: Vec<JcjlSolution> = Vec::new();
    for zp in found {
        if sols.iter().any(|s| s.opposite.distance(&zp) < 1e-7) {
            continue;
        }
        let w = image(&zp);
        let line = match Hyperplane::from_spacelike(w) {
            Ok(h) => h,
            Err(_) => continue,
        };
        // Intersecting or asymptotic supporting lines have no gap.
        if let Ok(width) = hyperplane_gap(&lz_out, &line) {
            sols.push(JcjlSolution {
                opposite: zp,
                line,
                width,
            });
        }
    }
    if sols.is_empty() {
        return Err(GeomError::NoResult(format!(
            "no opposite point found ({} edges, {} samples each, smallest sampled angle mismatch {:.3e})",
            facets.len(),
            samples,
            closest
        )));
    }
    Ok(sols)
}
