//! Circumscribed and inscribed balls.

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::body::{Body, EPS_GEO};
use crate::error::{usage, Result};
use crate::hyperboloid::HPoint;
use crate::vector::{solve_linear, Vector};
use crate::widths::search::compass_min;

/// Circumscribed and inscribed balls of a body with their contact sets.
#[derive(Clone, Debug)]
pub struct RadiiReport {
    pub circumcenter: HPoint,
    pub circumradius: f64,
    /// Vertices on the circumsphere (within `1e-9`).
    pub touching_vertices: Vec<usize>,
    pub incenter: HPoint,
    pub inradius: f64,
    /// Facets tangent to the inscribed ball (within `1e-7`).
    pub touching_facets: Vec<usize>,
}

#[derive(Serialize)]
struct RadiiRecord {
    circumcenter_klein: Vec<f64>,
    circumradius: f64,
    touching_vertices: Vec<usize>,
    incenter_klein: Vec<f64>,
    inradius: f64,
    touching_facets: Vec<usize>,
}

impl RadiiReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RadiiRecord {
            circumcenter_klein: self.circumcenter.klein().to_vec(),
            circumradius: self.circumradius,
            touching_vertices: self.touching_vertices.clone(),
            incenter_klein: self.incenter.klein().to_vec(),
            inradius: self.inradius,
            touching_facets: self.touching_facets.clone(),
        })
        .expect("plain record")
    }
}

pub fn radii(k: &Body) -> Result<RadiiReport> {
    let (circumcenter, circumradius) = circumball(k);
    let (incenter, inradius) = inball(k)?;
    let touching_vertices = k
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.distance(&circumcenter) >= circumradius - 1e-9)
        .map(|(i, _)| i)
        .collect();
    let touching_facets = k
        .facets()
        .unwrap_or(&[])
        .iter()
        .enumerate()
        .filter(|(_, f)| f.hyperplane().side(&incenter).asinh() <= inradius + 1e-7)
        .map(|(i, _)| i)
        .collect();
    Ok(RadiiReport {
        circumcenter,
        circumradius,
        touching_vertices,
        incenter,
        inradius,
        touching_facets,
    })
}

/// `cosh R` of the regular simplex of edge length `d` in `H^n`, the upper
/// bound of the circumradius of any body of diameter `d`.
pub fn simplex_circumradius(n: usize, d: f64) -> f64 {
    let c = 1.0 + (d.cosh() - 1.0) * n as f64 / (n as f64 + 1.0);
    c.sqrt().acosh()
}

/// The smallest ball `{x : B(x, p) >= c}` with all of `r` on its boundary:
/// `p` is proportional to `sum l_i r_i` where `G l = 1` for the Gram matrix
/// `G` of `r`. Returns `(p, c)` with `c = cosh` of the radius.
fn ball_through(r: &[Vector]) -> Option<(Vector, f64)> {
    let m = r.len();
    let g: Vec<Vec<f64>> = (0..m)
        .map(|i| (0..m).map(|j| r[i].lorentz(&r[j])).collect())
        .collect();
    let l = solve_linear(g, vec![1.0; m])?;
    let mut q = Vector::zeros(r[0].len());
    for (v, li) in r.iter().zip(&l) {
        q = q.axpy(*li, v);
    }
    let nq = q.lorentz(&q);
    if !(nq > 0.0) || q.time() <= 0.0 {
        return None;
    }
    let p = q * (1.0 / nq.sqrt());
    Some((p, 1.0 / nq.sqrt()))
}

fn outside(ball: &Option<(Vector, f64)>, x: &Vector) -> bool {
    match ball {
        None => true,
        Some((p, c)) => p.lorentz(x) > c * (1.0 + 1e-13),
    }
}

/// Move-to-front recursion over `list[..end]` with boundary set `r`.
fn mtf(list: &mut Vec<Vector>, end: usize, r: &mut Vec<Vector>, cap: usize) -> Option<(Vector, f64)> {
    let mut ball = if r.is_empty() { None } else { ball_through(r) };
    if r.len() == cap {
        return ball;
    }
    for i in 0..end {
        let x = list[i];
        if outside(&ball, &x) {
            r.push(x);
            let b = mtf(list, i, r, cap);
            r.pop();
            if b.is_some() {
                ball = b;
            }
            list.remove(i);
            list.insert(0, x);
        }
    }
    ball
}

/// The smallest ball containing `k`: center and radius.
///
/// Balls are the intersections of the hyperboloid with half-spaces
/// `B(x, p) >= c`, so the problem has the combinatorial structure of the
/// Euclidean smallest enclosing ball and is solved exactly by the
/// move-to-front recursion on at most `n + 1` boundary points.
pub fn circumball(k: &Body) -> (HPoint, f64) {
    let mut list: Vec<Vector> = k.vertices().iter().map(|v| *v.coords()).collect();
    list.shuffle(&mut ChaCha8Rng::seed_from_u64(0x00c1_5c0b));
    let end = list.len();
    let mut r = Vec::new();
    let ball = mtf(&mut list, end, &mut r, k.dim() + 1);
    let center = match ball {
        Some((p, _)) => HPoint::from_timelike_unchecked(p),
        None => k.vertices()[0],
    };
    let radius = k
        .vertices()
        .iter()
        .map(|v| v.distance(&center))
        .fold(0.0, f64::max);
    (center, radius)
}

/// Minimum signed distance from `x` to the facet hyperplanes.
fn clearance(u: &[Vector], x: &Vector) -> f64 {
    u.iter().map(|n| x.lorentz(n)).fold(f64::INFINITY, f64::min).asinh()
}

/// A largest ball contained in `k`: center and radius.
///
/// The clearance `min_f d(x, H_f)` is not concave in hyperbolic space, so
/// it is maximized from several starts (vertex centroid and eight seeded
/// interior points) by a compass search in Klein coordinates. Each result
/// is polished on its active facets: a critical point equidistant from the
/// facet set `A` is proportional to `sum m_f u_f` with `H m = 1`, `H` the
/// Gram matrix of the facet normals.
pub fn inball(k: &Body) -> Result<(HPoint, f64)> {
    let facets = k.require_facets()?;
    let n = k.dim();
    let u: Vec<Vector> = facets.iter().map(|f| *f.hyperplane().normal()).collect();
    let g = |kl: &[f64]| -> f64 {
        let r2: f64 = kl.iter().map(|x| x * x).sum();
        if !(r2 < 1.0) {
            return f64::INFINITY;
        }
        let x = HPoint::from_klein(kl).expect("inside the unit ball");
        -clearance(&u, x.coords())
    };
    let mut starts = vec![k.centroid()];
    let mut rng = ChaCha8Rng::seed_from_u64(0x1b_a11);
    for _ in 0..8 {
        let mut s = Vector::zeros(n + 1);
        for v in k.vertices() {
            let w = -(1.0 - rng.random::<f64>()).ln();
            s = s.axpy(w, v.coords());
        }
        starts.push(HPoint::from_timelike_unchecked(s));
    }
    let mut best: Option<(f64, HPoint)> = None;
    for s in &starts {
        let (xk, _, _) = compass_min(g, s.klein().as_slice(), 0.05, 1e-13, 20_000);
        let x = HPoint::from_klein(&xk)?;
        let x = polish(&u, &x, n).unwrap_or(x);
        let c = clearance(&u, x.coords());
        if best.as_ref().is_none_or(|(b, _)| c > *b) {
            best = Some((c, x));
        }
    }
    let (mut r, mut x) = best.expect("at least one start");
    if let Some((re, xe)) = inball_by_vertices(&u, n) {
        if re > r {
            (r, x) = (re, xe);
        }
    }
    if !(r > -EPS_GEO) {
        return Err(usage("no interior point found for the inscribed ball"));
    }
    Ok((x, r.max(0.0)))
}

/// Largest clearance over the vertices of `{y : B(y, u_f) >= 1}`, where
/// `B(y, y)` is smallest. That minimum is attained at a vertex because the
/// objective is concave on the cone, so this is exact; it is skipped when
/// there are too many facet subsets to enumerate.
fn inball_by_vertices(u: &[Vector], n: usize) -> Option<(f64, HPoint)> {
    const MAX_SUBSETS: f64 = 4e5;
    let f = u.len();
    let k = n + 1;
    if f < k {
        return None;
    }
    let subsets = (0..k).fold(1.0, |a, i| a * (f - i) as f64 / (i + 1) as f64);
    if subsets > MAX_SUBSETS {
        return None;
    }
    let row = |v: &Vector| -> Vec<f64> {
        let s = v.as_slice();
        s.iter().enumerate().map(|(i, x)| if i == n { *x } else { -x }).collect()
    };
    let rows: Vec<Vec<f64>> = u.iter().map(row).collect();
    let mut best: Option<(f64, Vector)> = None;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let a: Vec<Vec<f64>> = idx.iter().map(|&i| rows[i].clone()).collect();
        if let Some(y) = solve_linear(a, vec![1.0; k]) {
            let y = Vector::from_slice(&y);
            let q = y.lorentz(&y);
            if q > 0.0
                && y.time() > 0.0
                && best.as_ref().is_none_or(|(b, _)| q < *b)
                && u.iter().all(|g| y.lorentz(g) >= 1.0 - 1e-9)
            {
                best = Some((q, y));
            }
        }
        // Next k-subset in lexicographic order.
        let mut i = k;
        while i > 0 && idx[i - 1] == f - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    let (_, y) = best?;
    let x = HPoint::from_timelike_unchecked(y);
    Some((clearance(u, x.coords()), x))
}

fn polish(u: &[Vector], x: &HPoint, n: usize) -> Option<HPoint> {
    let c0 = clearance(u, x.coords());
    let mut active: Vec<usize> = (0..u.len())
        .filter(|&f| x.coords().lorentz(&u[f]).asinh() <= c0 + 1e-5)
        .collect();
    active.sort_by(|&a, &b| x.coords().lorentz(&u[a]).total_cmp(&x.coords().lorentz(&u[b])));
    active.truncate(8);
    let mut best: Option<(f64, HPoint)> = None;
    let m = active.len();
    for mask in 1u32..(1 << m) {
        let set: Vec<Vector> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| u[active[i]]).collect();
        if set.len() < 2 || set.len() > n + 1 {
            continue;
        }
        let h: Vec<Vec<f64>> = set.iter().map(|a| set.iter().map(|b| a.lorentz(b)).collect()).collect();
        let Some(mu) = solve_linear(h, vec![1.0; set.len()]) else { continue };
        if mu.iter().any(|&w| w < 0.0) {
            continue;
        }
        let mut q = Vector::zeros(n + 1);
        for (v, w) in set.iter().zip(&mu) {
            q = q.axpy(*w, v);
        }
        if !(q.lorentz(&q) > 0.0) || q.time() <= 0.0 {
            continue;
        }
        let y = HPoint::from_timelike_unchecked(q);
        let c = clearance(u, y.coords());
        if c >= c0 - 1e-12 && best.as_ref().is_none_or(|(b, _)| c > *b) {
            best = Some((c, y));
        }
    }
    best.map(|(_, y)| y)
}
