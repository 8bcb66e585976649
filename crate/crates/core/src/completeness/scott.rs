//! Completion by repeatedly adding the farthest diameter-preserving point.
//!
//! `U(K)` is the set of points of the circumscribed ball `B` whose addition
//! keeps the diameter; it equals `B ∩ ⋂_v B(v, D)` over the vertices of
//! `K`. Distance to `K` is convex, so its maximum over `U(K)` is attained on
//! the boundary of `U(K)`, which is sampled by rays from the circumcenter.
//! Along a ray from the circumcenter (a point of `K`) the distance to `K`
//! is nondecreasing, and both `U` shrinks and `K` grows during the
//! iteration, so a score once computed bounds all later scores of the same
//! ray. The argmax is therefore found lazily from a priority queue.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::body::Body;
use crate::error::{usage, Result};
use crate::hyperboloid::{tangent_frame, HPoint};
use crate::vector::Vector;
use crate::widths::search::{compass_min, fibonacci_sphere, golden_max, spherical, to_spherical};

use super::certify::ray_boundary;
use super::radii::circumball;

#[derive(Clone, Copy, Debug)]
pub struct ScottOptions {
    /// Stop once the farthest admissible point is within `tol` of the body.
    pub tol: f64,
    pub max_iter: usize,
    /// Number of boundary rays.
    pub candidates: usize,
    /// Rotates the ray grid.
    pub seed: u64,
}

impl Default for ScottOptions {
    fn default() -> Self {
        ScottOptions {
            tol: 1e-3,
            max_iter: 200,
            candidates: 10_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    TolReached,
    MaxIter,
}

/// One added point `x_j`. `rho` is the largest distance from a ray
/// sample of the boundary of `U(K_j)` to `K_j`; it is nonincreasing along
/// the trace. `refined` is the value after local refinement of the best
/// ray, the distance of `x_j` itself. `K_{j+1}` is the hull of the first
/// `vertices` trace points (initial vertices, then added points).
#[derive(Clone, Copy, Debug)]
pub struct TraceStep {
    pub point: HPoint,
    pub rho: f64,
    pub refined: f64,
    pub vertices: usize,
}

#[derive(Clone, Debug)]
pub struct CompletionTrace {
    pub diameter: f64,
    pub tol: f64,
    /// Slack allowed on the diameter of the completed body.
    pub tol_diameter: f64,
    pub candidates: usize,
    pub seed: u64,
    pub circumcenter: HPoint,
    pub circumradius: f64,
    pub initial: Vec<HPoint>,
    pub steps: Vec<TraceStep>,
    /// Grid and refined estimates of the largest distance from an
    /// admissible point to the final body.
    pub final_rho: f64,
    pub final_refined: f64,
    pub termination: Termination,
    pub body: Body,
}

impl CompletionTrace {
    /// `K_j`: the hull of the initial body and the first `j` added points.
    pub fn snapshot(&self, j: usize) -> Result<Body> {
        let mut pts = self.initial.clone();
        pts.extend(self.steps.iter().take(j).map(|s| s.point));
        Body::hull(&pts)
    }

    /// The grid estimates `rho_0, rho_1, ...` including the final one.
    pub fn rhos(&self) -> Vec<f64> {
        let mut r: Vec<f64> = self.steps.iter().map(|s| s.rho).collect();
        r.push(self.final_rho);
        r
    }

    pub fn to_json(&self) -> serde_json::Value {
        let k = |p: &HPoint| p.klein().to_vec();
        json!({
            "diameter": self.diameter,
            "tol": self.tol,
            "tol_diameter": self.tol_diameter,
            "candidates": self.candidates,
            "seed": self.seed,
            "circumcenter": k(&self.circumcenter),
            "circumradius": self.circumradius,
            "initial": self.initial.iter().map(k).collect::<Vec<_>>(),
            "steps": self.steps.iter().map(|s| json!({
                "point": k(&s.point),
                "rho": s.rho,
                "refined": s.refined,
                "vertices": s.vertices,
            })).collect::<Vec<_>>(),
            "final_rho": self.final_rho,
            "final_refined": self.final_refined,
            "termination": self.termination,
        })
    }
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    // Larger score first; on ties the smaller index.
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.total_cmp(&o.0).then(o.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Ray directions as coordinates in the tangent frame at the circumcenter.
fn ray_grid(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let offset = if seed == 0 {
        0.0
    } else {
        ChaCha8Rng::seed_from_u64(seed).random::<f64>()
    };
    match n {
        2 => (0..count)
            .map(|j| {
                let t = 2.0 * PI * (j as f64 + offset) / count as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        _ => fibonacci_sphere(count)
            .into_iter()
            .map(|p| {
                let (th, ph) = to_spherical(&p);
                spherical(th, ph + 2.0 * PI * offset).to_vec()
            })
            .collect(),
    }
}

/// Completes `k` to a body of the same diameter and circumscribed ball.
pub fn scott_completion(k: &Body, opts: &ScottOptions) -> Result<CompletionTrace> {
    k.require_facets()?;
    let d = k.diameter();
    if !(d > 0.0) {
        return Err(usage("completion needs a body of positive diameter"));
    }
    if opts.candidates < 8 {
        return Err(usage("at least 8 candidate rays are required"));
    }
    let n = k.dim();
    let tol_d = 1e-7 * (1.0 + d);
    let (c, r) = circumball(k);
    let frame = tangent_frame(&c);
    let dir = |coef: &[f64]| -> Vector {
        let mut v = Vector::zeros(n + 1);
        for (f, x) in frame.iter().zip(coef) {
            v = v.axpy(*x, f.vec());
        }
        v
    };
    let coefs = ray_grid(n, opts.candidates, opts.seed);
    let grid: Vec<Vector> = coefs.iter().map(|g| dir(g)).collect();
    let score = |u: &Vector, body: &Body| -> (f64, HPoint) {
        let (x, _) = ray_boundary(&c, u, body.vertices(), d, r);
        (body.distance_to(&x).unwrap_or(f64::NAN), x)
    };

    let mut body = k.clone();
    let initial: Vec<HPoint> = k.vertices().to_vec();
    let first: Vec<f64> = grid.par_iter().map(|u| score(u, &body).0).collect();
    let mut heap: BinaryHeap<Entry> = first.iter().enumerate().map(|(i, &s)| Entry(s, i)).collect();
    let mut stamp = vec![0usize; grid.len()];
    let mut steps: Vec<TraceStep> = Vec::new();
    let step_angle = match n {
        2 => 2.0 * PI / opts.candidates as f64,
        _ => (4.0 * PI / opts.candidates as f64).sqrt(),
    };

    let (final_rho, final_refined, termination) = loop {
        let j = steps.len();
        let best = loop {
            let e = heap.pop().expect("nonempty candidate queue");
            if stamp[e.1] == j {
                break e;
            }
            stamp[e.1] = j;
            heap.push(Entry(score(&grid[e.1], &body).0, e.1));
        };
        let i = best.1;
        heap.push(Entry(best.0, i));

        // Local refinement of the ray direction.
        let cf = &coefs[i];
        let (rho, x) = if n == 2 {
            let t0 = cf[1].atan2(cf[0]);
            let f = |t: f64| score(&dir(&[t.cos(), t.sin()]), &body).0;
            let (t, v) = golden_max(f, t0 - step_angle, t0 + step_angle, 1e-10);
            if v > best.0 {
                (v, score(&dir(&[t.cos(), t.sin()]), &body).1)
            } else {
                (best.0, score(&grid[i], &body).1)
            }
        } else {
            let (th, ph) = to_spherical(&[cf[0], cf[1], cf[2]]);
            let (y, fy, _) = compass_min(
                |a: &[f64]| -score(&dir(&spherical(a[0], a[1])), &body).0,
                &[th, ph],
                0.5 * step_angle,
                1e-9,
                400,
            );
            if -fy > best.0 {
                (-fy, score(&dir(&spherical(y[0], y[1])), &body).1)
            } else {
                (best.0, score(&grid[i], &body).1)
            }
        };

        if rho <= opts.tol {
            break (best.0, rho, Termination::TolReached);
        }
        if j >= opts.max_iter {
            break (best.0, rho, Termination::MaxIter);
        }
        let far = body
            .vertices()
            .iter()
            .map(|v| v.distance(&x))
            .fold(0.0, f64::max);
        if far > d + tol_d {
            return Err(usage(format!(
                "admissible point violates the diameter by {:.3e}",
                far - d
            )));
        }
        let mut pts = body.vertices().to_vec();
        pts.push(x);
        body = Body::hull(&pts)?;
        steps.push(TraceStep {
            point: x,
            rho: best.0,
            refined: rho,
            vertices: initial.len() + j + 1,
        });
    };
    Ok(CompletionTrace {
        diameter: d,
        tol: opts.tol,
        tol_diameter: tol_d,
        candidates: opts.candidates,
        seed: opts.seed,
        circumcenter: c,
        circumradius: r,
        initial,
        steps,
        final_rho,
        final_refined,
        termination,
        body,
    })
}
