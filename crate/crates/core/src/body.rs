//! Convex polytopes in `H^n`, stored through their Klein-model vertices.

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, usage, Result};
use crate::hull::{self, KleinHull};
use crate::hyperboloid::{
    check_dim, tangent_frame, HPoint, Hyperplane, IdealPoint, Line, UnitTangent,
};
use crate::minnorm::distance_to_hull;
use crate::vector::Vector;

/// Incidence and side tolerance for geometric predicates.
pub const EPS_GEO: f64 = 1e-9;

/// Largest admissible Euclidean norm of a Klein vertex.
const KLEIN_RADIUS: f64 = 1.0 - 1e-9;

/// A facet: the supporting hyperplane, oriented so that the body lies on
/// its nonnegative side, and the incident vertices. Read as a tangent
/// vector, the normal points out of the body.
#[derive(Clone, Debug)]
pub struct Facet {
    hyperplane: Hyperplane,
    vertices: Vec<usize>,
    klein_normal: Vector,
    klein_offset: f64,
}

impl Facet {
    pub fn hyperplane(&self) -> &Hyperplane {
        &self.hyperplane
    }

    /// Incident vertex indices; in 3D they are in boundary order,
    /// counter-clockwise seen from outside.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// The Euclidean facet `{<a, k> = b}` in Klein coordinates, `|a| = 1`,
    /// with the body on the side `<a, k> <= b`.
    pub fn klein_plane(&self) -> (&Vector, f64) {
        (&self.klein_normal, self.klein_offset)
    }
}

/// A geodesic edge between two vertices.
#[derive(Clone, Debug)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    line: Line,
    length: f64,
}

impl Edge {
    /// The carrying line, anchored at vertex `a` and pointing towards `b`.
    pub fn line(&self) -> &Line {
        &self.line
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Distance from `x` to the segment.
    #[inline]
    pub fn distance(&self, x: &HPoint) -> f64 {
        let t = self.line.foot_param(x.coords()).clamp(0.0, self.length);
        x.distance(&self.line.point_at(t))
    }
}

/// A compact convex polytope of `H^n`.
#[derive(Clone, Debug)]
pub struct Body {
    dim: usize,
    vertices: Vec<HPoint>,
    klein: Vec<Vector>,
    facets: Option<Vec<Facet>>,
    edges: Vec<Edge>,
    affine_dim: usize,
    /// Carrier of a flat polygon in `H^3`.
    flat_plane: Option<Hyperplane>,
}

/// Convex hull of a finite point set.
pub fn convex_hull(points: &[HPoint]) -> Result<Body> {
    Body::hull(points)
}

impl Body {
    pub fn hull(points: &[HPoint]) -> Result<Self> {
        let klein: Vec<Vector> = points.iter().map(|p| p.klein()).collect();
        Self::build(points, klein)
    }

    /// Hull of points given in Klein coordinates. The Klein coordinates of
    /// the vertices are kept exactly as given.
    pub fn from_klein(points: &[Vector]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|k| HPoint::from_klein(k.as_slice()))
            .collect::<Result<Vec<_>>>()?;
        Self::build(&pts, points.to_vec())
    }

    fn build(points: &[HPoint], klein: Vec<Vector>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| usage("convex hull of an empty point set"))?;
        let dim = first.dim();
        check_dim(dim)?;
        if points.iter().any(|p| p.dim() != dim) {
            return Err(usage("points of different dimensions"));
        }
        if let Some(k) = klein.iter().find(|k| !(k.norm() < KLEIN_RADIUS)) {
            return Err(domain(format!(
                "point too close to the ideal boundary (Klein norm {})",
                k.norm()
            )));
        }
        let h = hull::hull(&klein);
        Ok(Self::from_hull(points, &klein, h))
    }

    fn from_hull(points: &[HPoint], klein: &[Vector], h: KleinHull) -> Self {
        let dim = points[0].dim();
        let vertices: Vec<HPoint> = h.vertices.iter().map(|&i| points[i]).collect();
        let kv: Vec<Vector> = h.vertices.iter().map(|&i| klein[i]).collect();
        let facets = h.facets.map(|fs| {
            fs.into_iter()
                .map(|f| Facet {
                    hyperplane: lift_klein_plane(&f.a, f.b),
                    vertices: f.verts,
                    klein_normal: f.a,
                    klein_offset: f.b,
                })
                .collect::<Vec<_>>()
        });
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        match (&facets, dim, h.affine_dim) {
            (_, _, 1) => pairs.push((0, 1)),
            (Some(_), 2, 2) | (None, 3, 2) => {
                let m = vertices.len();
                pairs.extend((0..m).map(|k| (k, (k + 1) % m)));
            }
            (Some(fs), 3, 3) => {
                for f in fs {
                    let m = f.vertices.len();
                    for k in 0..m {
                        let (a, b) = (f.vertices[k], f.vertices[(k + 1) % m]);
                        pairs.push((a.min(b), a.max(b)));
                    }
                }
                pairs.sort_unstable();
                pairs.dedup();
            }
            _ => {}
        }
        let edges = pairs
            .into_iter()
            .filter_map(|(a, b)| {
                let line = Line::through(&vertices[a], &vertices[b]).ok()?;
                Some(Edge {
                    a,
                    b,
                    line,
                    length: vertices[a].distance(&vertices[b]),
                })
            })
            .collect();
        let flat_plane = if dim == 3 && h.affine_dim == 2 {
            let (k0, k1, k2) = (kv[0], kv[1], kv[2]);
            let d1 = k1 - k0;
            let d2 = k2 - k0;
            let a = Vector::from_slice(&[
                d1[1] * d2[2] - d1[2] * d2[1],
                d1[2] * d2[0] - d1[0] * d2[2],
                d1[0] * d2[1] - d1[1] * d2[0],
            ]);
            let a = a * (1.0 / a.norm());
            Some(lift_klein_plane(&a, a.dot(&k0)))
        } else {
            None
        };
        Body {
            dim,
            vertices,
            klein: kv,
            facets,
            edges,
            affine_dim: h.affine_dim,
            flat_plane,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[HPoint] {
        &self.vertices
    }

    pub fn klein_vertices(&self) -> &[Vector] {
        &self.klein
    }

    /// Facets (available for nondegenerate bodies with `n <= 3`).
    pub fn facets(&self) -> Option<&[Facet]> {
        self.facets.as_deref()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Dimension of the affine hull of the Klein vertices.
    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    /// True for lower-dimensional hulls (no interior).
    pub fn is_degenerate(&self) -> bool {
        self.affine_dim < self.dim
    }

    pub fn require_facets(&self) -> Result<&[Facet]> {
        if self.is_degenerate() {
            return Err(usage(format!(
                "operation requires a body with interior; hull has affine dimension {} in H^{}",
                self.affine_dim, self.dim
            )));
        }
        self.facets().ok_or_else(|| {
            usage(format!(
                "facet enumeration is only available for n <= 3 (body lives in H^{})",
                self.dim
            ))
        })
    }

    /// Facets incident to vertex `v`.
    pub fn incident_facets(&self, v: usize) -> Vec<usize> {
        self.facets()
            .map(|fs| {
                fs.iter()
                    .enumerate()
                    .filter(|(_, f)| f.vertices.contains(&v))
                    .map(|(i, _)| i)
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Normalized vertex centroid, an interior point of nondegenerate bodies.
    pub fn centroid(&self) -> HPoint {
        let mut s = Vector::zeros(self.dim + 1);
        for v in &self.vertices {
            s += *v.coords();
        }
        HPoint::from_timelike_unchecked(s)
    }

    /// Vertex indices and value of the diameter.
    ///
    /// Distance is geodesically convex in each argument, so its maximum over
    /// `K x K` is attained at a pair of extreme points.
    pub fn diametral_pair(&self) -> (usize, usize, f64) {
        let mut best = (0, 0, 1.0);
        for i in 0..self.vertices.len() {
            let vi = self.vertices[i].coords();
            for j in i + 1..self.vertices.len() {
                let b = self.vertices[j].form(vi);
                if b > best.2 {
                    best = (i, j, b);
                }
            }
        }
        let (i, j, _) = best;
        (i, j, self.vertices[i].distance(&self.vertices[j]))
    }

    pub fn diameter(&self) -> f64 {
        self.diametral_pair().2
    }

    /// Membership test with hyperbolic slack `tol`.
    pub fn contains_point(&self, x: &HPoint, tol: f64) -> bool {
        if let Some(fs) = self.facets() {
            let s = (-tol).sinh();
            return fs.iter().all(|f| f.hyperplane.side(x) >= s - 1e-15);
        }
        let k = x.klein();
        // Klein lengths shrink by at most the factor (1 - |k|^2) near k.
        let slack = tol.max(1e-12) * (1.0 - k.norm_sq()).max(0.0);
        hull::hull_contains(&self.klein, &k, slack.max(1e-14))
    }

    /// Distance from `x` to the body; zero inside.
    pub fn distance_to(&self, x: &HPoint) -> Result<f64> {
        if self.dim > 3 {
            return Err(usage("distance to a body is only supported for n <= 3"));
        }
        if self.vertices.len() == 1 {
            return Ok(x.distance(&self.vertices[0]));
        }
        if let Some(fs) = self.facets() {
            // The nearest boundary point lies on a facet that x violates:
            // its outer normal direction is in the normal cone there, which
            // is spanned by the normals of the incident facets.
            let mut best = f64::INFINITY;
            let mut near = vec![false; self.vertices.len()];
            let mut violated = false;
            for (fi, f) in fs.iter().enumerate() {
                let s = f.hyperplane.side(x);
                if s >= 0.0 {
                    continue;
                }
                violated = true;
                if self.dim == 2 {
                    best = best.min(self.edges[fi].distance(x));
                    continue;
                }
                // Nearest point in the facet's relative interior.
                let foot = f.hyperplane.project(x).klein();
                if self.in_facet_polygon(f, &foot) {
                    best = best.min((-s).asinh());
                }
                for &v in &f.vertices {
                    near[v] = true;
                }
            }
            if !violated {
                return Ok(0.0);
            }
            if self.dim == 3 {
                for e in self.edges.iter().filter(|e| near[e.a] && near[e.b]) {
                    best = best.min(e.distance(x));
                }
            }
            return Ok(best);
        }
        // Degenerate hulls: segment, flat polygon in H^3.
        let mut best = self
            .vertices
            .iter()
            .map(|v| x.distance(v))
            .fold(f64::INFINITY, f64::min);
        for e in &self.edges {
            best = best.min(e.distance(x));
        }
        if let Some(h) = &self.flat_plane {
            let foot = h.project(x);
            if distance_to_hull(&self.klein, &foot.klein()) <= 1e-12 {
                best = best.min(h.side(x).abs().asinh());
            }
        }
        Ok(best)
    }

    fn in_facet_polygon(&self, f: &Facet, k: &Vector) -> bool {
        let m = f.vertices.len();
        let nrm = &f.klein_normal;
        (0..m).all(|i| {
            let a = self.klein[f.vertices[i]];
            let b = self.klein[f.vertices[(i + 1) % m]];
            let e = b - a;
            let d = *k - a;
            let c = [
                e[1] * d[2] - e[2] * d[1],
                e[2] * d[0] - e[0] * d[2],
                e[0] * d[1] - e[1] * d[0],
            ];
            c[0] * nrm[0] + c[1] * nrm[1] + c[2] * nrm[2] >= -1e-14
        })
    }

    /// Range of foot-point parameters of the body on `line`.
    ///
    /// The foot parameter is monotone along every geodesic crossing the
    /// orthogonal hyperplanes, so its extremes over `K` sit at vertices.
    pub fn support_along_line(&self, line: &Line) -> (f64, f64) {
        let (lo, hi) = self.support_along_line_indexed(line);
        (lo.1, hi.1)
    }

    /// As [`support_along_line`](Self::support_along_line) with the
    /// attaining vertex indices.
    pub fn support_along_line_indexed(&self, line: &Line) -> ((usize, f64), (usize, f64)) {
        let mut lo = (0, f64::INFINITY);
        let mut hi = (0, f64::NEG_INFINITY);
        for (i, v) in self.vertices.iter().enumerate() {
            let t = line.foot_param(v.coords());
            if t < lo.1 {
                lo = (i, t);
            }
            if t > hi.1 {
                hi = (i, t);
            }
        }
        (lo, hi)
    }

    /// Levels `(min, max)` of `B(z, x)` over the body, `z` the null vector
    /// of `i`; the horoballs at `i` with these levels are the two
    /// supporting ones.
    ///
    /// Horoballs `{B(z, .) <= s}` are convex, so the maximum sits at a
    /// vertex. The minimum can lie inside an edge or facet and is found
    /// face by face.
    pub fn supporting_horoball_levels(&self, i: &IdealPoint) -> (f64, f64) {
        let z = i.null_vec();
        let (lo, hi) = self
            .vertices
            .iter()
            .map(|v| v.form(z))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), b| {
                (lo.min(b), hi.max(b))
            });
        (lo.min(self.min_level_off_vertices(z)), hi)
    }

    /// Smallest value of `B(z, x)` at points of the body that are not
    /// vertices (infinity if none is smaller than the neighbouring vertices).
    fn min_level_off_vertices(&self, z: &Vector) -> f64 {
        let mut best = f64::INFINITY;
        for e in &self.edges {
            best = best.min(segment_min_level(e.line(), e.length(), z));
        }
        let mut planes: Vec<(Hyperplane, Option<&Facet>)> = Vec::new();
        if self.dim == 3 {
            if let Some(fs) = &self.facets {
                planes.extend(fs.iter().map(|f| (f.hyperplane.clone(), Some(f))));
            }
        }
        if let Some(h) = &self.flat_plane {
            planes.push((h.clone(), None));
        }
        for (h, facet) in planes {
            // On the plane with unit normal u, B(z, .) is smallest at the
            // normalization of z + B(z,u) u, with value |B(z,u)|.
            let u = h.normal();
            let c = z.lorentz(u);
            if c.abs() < 1e-300 {
                continue;
            }
            let x = HPoint::from_timelike_unchecked(z.axpy(c, u));
            let k = x.klein();
            let inside = match facet {
                Some(f) => self.in_facet_polygon(f, &k),
                None => distance_to_hull(&self.klein, &k) <= 1e-12,
            };
            if inside {
                best = best.min(c.abs());
            }
        }
        if self.dim > 3 && self.affine_dim >= 2 {
            best = best.min(hull_min_level(&self.klein, z));
        }
        best
    }

    /// Minimum signed facet distance of `p` (positive inside).
    pub fn facet_clearance(&self, p: &HPoint) -> Result<f64> {
        let fs = self.require_facets()?;
        Ok(fs
            .iter()
            .map(|f| f.hyperplane.side(p))
            .fold(f64::INFINITY, f64::min)
            .asinh())
    }
}

/// Minimum of `B(z, .)` over the geodesic segment of length `len` starting
/// at the anchor of `line`. Along the line `B(z, p_s) = A cosh s + U sinh s`.
fn segment_min_level(line: &Line, len: f64, z: &Vector) -> f64 {
    let a = line.anchor().form(z);
    let u = z.lorentz(line.direction().vec());
    if !(u < 0.0) || a <= -u {
        return f64::INFINITY;
    }
    let s = (-u / a).atanh();
    if s >= len {
        return f64::INFINITY;
    }
    ((a - u) * (a + u)).max(0.0).sqrt()
}

/// Minimum of `B(z, .)` over the hull of Klein points, by pairwise
/// Frank-Wolfe steps with exact line search along geodesics. The function
/// is smooth with convex sublevel sets, so the stationary point is the
/// minimum.
fn hull_min_level(klein: &[Vector], z: &Vector) -> f64 {
    let xi = z.space();
    let level = |k: &Vector| (1.0 - xi.dot(k)) / (1.0 - k.norm_sq()).sqrt();
    let start = (0..klein.len())
        .min_by(|&a, &b| level(&klein[a]).total_cmp(&level(&klein[b])))
        .expect("nonempty body");
    let mut lam = vec![0.0; klein.len()];
    lam[start] = 1.0;
    let mut k = klein[start];
    let mut best = level(&k);
    for _ in 0..20_000 {
        let w = 1.0 - k.norm_sq();
        let g = (k * (1.0 - xi.dot(&k)) - xi * w) * (1.0 / (w * w.sqrt()));
        let score = |i: usize| g.dot(&klein[i]);
        let fw = (0..klein.len())
            .min_by(|&a, &b| score(a).total_cmp(&score(b)))
            .expect("nonempty body");
        let away = (0..klein.len())
            .filter(|&i| lam[i] > 0.0)
            .max_by(|&a, &b| score(a).total_cmp(&score(b)))
            .expect("active vertex");
        if score(away) - score(fw) <= 1e-15 * (1.0 + g.norm()) || fw == away {
            break;
        }
        let d = klein[fw] - klein[away];
        let gmax = lam[away];
        let p0 = HPoint::from_timelike_unchecked(k.push(1.0));
        let p1 = HPoint::from_timelike_unchecked(k.axpy(gmax, &d).push(1.0));
        let Ok(line) = Line::through(&p0, &p1) else {
            break;
        };
        let len = p0.distance(&p1);
        let a = p0.form(z);
        let u = z.lorentz(line.direction().vec());
        let s = match (u < 0.0, a > -u) {
            (false, _) => 0.0,
            (true, true) => (-u / a).atanh().min(len),
            (true, false) => len,
        };
        let ks = line.point_at(s).klein();
        let gamma = ((ks - k).dot(&d) / d.norm_sq()).clamp(0.0, gmax);
        if gamma <= 0.0 {
            break;
        }
        lam[away] -= gamma;
        lam[fw] += gamma;
        if gamma >= gmax {
            lam[away] = 0.0;
        }
        k = k.axpy(gamma, &d);
        best = best.min(level(&k));
    }
    best
}

/// Lifts the Klein facet `{<a,k> = b}` to an oriented hyperplane whose
/// nonnegative side is `{<a,k> <= b}`.
pub fn klein_facet_to_hyperplane(a: &[f64], b: f64) -> Result<Hyperplane> {
    check_dim(a.len())?;
    let av = Vector::from_slice(a);
    let q = av.norm_sq() - b * b;
    if !(q > 0.0) {
        return Err(domain(format!(
            "Klein hyperplane misses the open ball (|a| = {}, |b| = {})",
            av.norm(),
            b.abs()
        )));
    }
    Ok(lift_klein_plane(&av, b))
}

fn lift_klein_plane(a: &Vector, b: f64) -> Hyperplane {
    let q = (a.norm_sq() - b * b).sqrt();
    Hyperplane::from_spacelike(a.push(b) * (1.0 / q))
        .expect("facet of a hull inside the ball meets H^n")
}

pub fn diameter(k: &Body) -> f64 {
    k.diameter()
}

pub fn contains_point(k: &Body, x: &HPoint, tol: f64) -> bool {
    k.contains_point(x, tol)
}

pub fn distance_to_body(x: &HPoint, k: &Body) -> Result<f64> {
    k.distance_to(x)
}

pub fn support_along_line(k: &Body, line: &Line) -> (f64, f64) {
    k.support_along_line(line)
}

pub fn supporting_horoball_levels(k: &Body, i: &IdealPoint) -> (f64, f64) {
    k.supporting_horoball_levels(i)
}

/// Hausdorff distance of two bodies.
///
/// `x -> d(x, C)` is geodesically convex for convex `C`, so the one-sided
/// maxima are attained at vertices.
pub fn hausdorff_distance(a: &Body, b: &Body) -> Result<f64> {
    if a.dim != b.dim {
        return Err(usage(format!(
            "dimension mismatch: H^{} vs H^{}",
            a.dim, b.dim
        )));
    }
    let mut worst: f64 = 0.0;
    for v in &a.vertices {
        worst = worst.max(b.distance_to(v)?);
    }
    for v in &b.vertices {
        worst = worst.max(a.distance_to(v)?);
    }
    Ok(worst)
}

/// Unit tangent directions used to sample spheres in `T_z`.
fn sphere_directions(z: &HPoint, m: usize) -> Vec<UnitTangent> {
    let frame = tangent_frame(z);
    let n = z.dim();
    let combine = |c: &[f64]| {
        let mut v = Vector::zeros(n + 1);
        for (f, x) in frame.iter().zip(c) {
            v = v.axpy(*x, f.vec());
        }
        UnitTangent::from_parts_unchecked(*z, v)
    };
    match n {
        2 => (0..m)
            .map(|k| {
                let th = 2.0 * PI * k as f64 / m as f64;
                combine(&[th.cos(), th.sin()])
            })
            .collect(),
        3 => {
            let count = sphere_count(m);
            let golden = PI * (3.0 - 5.0_f64.sqrt());
            (0..count)
                .map(|k| {
                    let h = 1.0 - (2 * k + 1) as f64 / count as f64;
                    let r = (1.0 - h * h).sqrt();
                    let phi = golden * k as f64;
                    combine(&[r * phi.cos(), r * phi.sin(), h])
                })
                .collect()
        }
        _ => {
            let mut dirs: Vec<UnitTangent> = Vec::new();
            for i in 0..n {
                let mut c = vec![0.0; n];
                c[i] = 1.0;
                dirs.push(combine(&c));
                c[i] = -1.0;
                dirs.push(combine(&c));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ba11);
            while dirs.len() < m.max(2 * n) {
                let c: Vec<f64> = (0..n).map(|_| gaussian(&mut rng)).collect();
                let r = c.iter().map(|x| x * x).sum::<f64>().sqrt();
                if r > 1e-9 {
                    dirs.push(combine(&c.iter().map(|x| x / r).collect::<Vec<_>>()));
                }
            }
            dirs
        }
    }
}

/// Number of sphere samples in `H^3` at resolution `m`: about the count
/// giving angular spacing `2 pi / m`.
fn sphere_count(m: usize) -> usize {
    ((m * m) as f64 / PI).ceil().max(12.0) as usize
}

pub(crate) fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// Inscribed polytope of the ball `B(z, r)` with vertices on its sphere:
/// `m` vertices for `n = 2`, about `m^2 / pi` for `n = 3`.
pub fn ball_body(z: &HPoint, r: f64, m: usize) -> Result<Body> {
    if !(r > 0.0) {
        return Err(usage(format!("ball radius must be positive, got {r}")));
    }
    if m < 8 {
        return Err(usage(format!("ball resolution must be at least 8, got {m}")));
    }
    let pts: Vec<HPoint> = sphere_directions(z, m)
        .into_iter()
        .map(|u| u.point_at(r))
        .collect();
    Body::hull(&pts)
}

/// Radial defect of the regular `m`-gon inscribed in a circle of radius `r`:
/// `r` minus the distance from the center to an edge.
pub fn polygon_sag(r: f64, m: usize) -> f64 {
    r - (r.tanh() * (PI / m as f64).cos()).atanh()
}

/// Radial defect of [`ball_body`]: `r` minus the smallest distance from the
/// center to a facet.
pub fn ball_sag(n: usize, r: f64, m: usize) -> Result<f64> {
    if n == 2 {
        return Ok(polygon_sag(r, m));
    }
    let e = HPoint::apex(n);
    let b = ball_body(&e, r, m)?;
    Ok(r - b.facet_clearance(&e)?)
}

/// Chord spacing along an equidistant curve at distance `rho` from a
/// geodesic for which the chord midpoint dips by at most `dip`.
fn equidistant_spacing(rho: f64, dip: f64) -> f64 {
    let h = (rho - dip).max(rho * 1e-3);
    let s2 = rho.sinh().powi(2);
    let c2 = (s2 / h.sinh().powi(2) + s2) / rho.cosh().powi(2);
    2.0 * c2.max(1.0).sqrt().acosh()
}

/// Polytopal inner approximation of the parallel domain `K^(rho)`.
///
/// Sample points are taken on the boundary of `K^(rho)`: on vertex spheres,
/// on equidistant surfaces over edges (3D) and over facets. The returned
/// error bound covers both the sphere sag and the equidistant chord dip.
pub fn parallel_domain(k: &Body, rho: f64, m: usize) -> Result<(Body, f64)> {
    if !(rho >= 0.0) {
        return Err(usage(format!("parallel distance must be nonnegative, got {rho}")));
    }
    if m < 8 {
        return Err(usage(format!("resolution must be at least 8, got {m}")));
    }
    if rho == 0.0 {
        return Ok((k.clone(), 0.0));
    }
    if k.dim > 3 {
        return Err(usage("parallel domains are only supported for n <= 3"));
    }
    let sag = ball_sag(k.dim, rho, m)?.max(polygon_sag(rho, m));
    let dip = 0.25 * sag;
    let step = equidistant_spacing(rho, dip);
    let (ch, sh) = (rho.cosh(), rho.sinh());

    let mut pts: Vec<HPoint> = Vec::new();
    for v in &k.vertices {
        for u in sphere_directions(v, m) {
            pts.push(u.point_at(rho));
        }
    }
    let along = |len: f64, step: f64| -> Vec<f64> {
        let cnt = (len / step).ceil().max(1.0) as usize;
        (0..=cnt).map(|i| len * i as f64 / cnt as f64).collect()
    };
    if k.dim == 3 || k.is_degenerate() {
        // Normal circles (n = 3) or normal pairs (degenerate n = 2) over edges.
        for e in &k.edges {
            for s in along(e.length, step) {
                let p = e.line.point_at(s);
                let t = e.line.tangent_at(s);
                for u in normal_directions(&p, &t, m) {
                    pts.push(u.point_at(rho));
                }
            }
        }
    }
    if let Some(fs) = k.facets() {
        for f in fs {
            let u = *f.hyperplane.normal();
            for p in facet_grid(k, f, step) {
                // p lies on the facet, so u is tangent there. As a tangent
                // vector the normal points away from the side B(x, u) >= 0.
                pts.push(HPoint::from_timelike_unchecked(*p.coords() * ch + u * sh));
            }
        }
    } else if k.dim == 3 && k.affine_dim == 2 {
        let h = k.flat_plane.unwrap();
        let u = *h.normal();
        let tri = flat_facet(k);
        for p in facet_grid(k, &tri, step) {
            pts.push(HPoint::from_timelike_unchecked(*p.coords() * ch - u * sh));
            pts.push(HPoint::from_timelike_unchecked(*p.coords() * ch + u * sh));
        }
    }
    Ok((Body::hull(&pts)?, sag + dip))
}

fn flat_facet(k: &Body) -> Facet {
    Facet {
        hyperplane: k.flat_plane.unwrap(),
        vertices: (0..k.vertices.len()).collect(),
        klein_normal: Vector::zeros(3),
        klein_offset: 0.0,
    }
}

/// Unit tangents at `p` orthogonal to `t`.
fn normal_directions(p: &HPoint, t: &UnitTangent, m: usize) -> Vec<UnitTangent> {
    let mut basis: Vec<Vector> = Vec::new();
    for f in tangent_frame(p) {
        let mut w = *f.vec();
        w = w.axpy(w.lorentz(t.vec()), t.vec());
        for b in &basis {
            w = w.axpy(w.lorentz(b), b);
        }
        let q = -w.lorentz(&w);
        if q > 1e-12 {
            basis.push(w * (1.0 / q.sqrt()));
        }
        if basis.len() + 1 == p.dim() {
            break;
        }
    }
    match basis.len() {
        1 => vec![
            UnitTangent::from_parts_unchecked(*p, basis[0]),
            UnitTangent::from_parts_unchecked(*p, -basis[0]),
        ],
        _ => (0..m)
            .map(|k| {
                let th = 2.0 * PI * k as f64 / m as f64;
                UnitTangent::from_parts_unchecked(*p, basis[0] * th.cos() + basis[1] * th.sin())
            })
            .collect(),
    }
}

/// Points of a facet polygon on a grid whose hyperbolic spacing is at most
/// about `step`. In 2D the facet is an edge.
fn facet_grid(k: &Body, f: &Facet, step: f64) -> Vec<HPoint> {
    let vs = &f.vertices;
    if vs.len() == 2 {
        let (a, b) = (&k.vertices[vs[0]], &k.vertices[vs[1]]);
        let len = a.distance(b);
        let cnt = (len / step).ceil().max(1.0) as usize;
        let line = match Line::through(a, b) {
            Ok(l) => l,
            Err(_) => return vec![*a],
        };
        return (0..=cnt)
            .map(|i| line.point_at(len * i as f64 / cnt as f64))
            .collect();
    }
    let mut out = Vec::new();
    for t in 1..vs.len() - 1 {
        let (a, b, c) = (vs[0], vs[t], vs[t + 1]);
        let longest = [(a, b), (b, c), (a, c)]
            .iter()
            .map(|&(x, y)| k.vertices[x].distance(&k.vertices[y]))
            .fold(0.0, f64::max);
        // Klein barycentric steps are uneven in hyperbolic length; the
        // factor 2 keeps every cell below `step` for bodies inside the ball.
        let cnt = (2.0 * longest / step).ceil().max(1.0) as usize;
        for i in 0..=cnt {
            for j in 0..=cnt - i {
                let (wa, wb) = (i as f64 / cnt as f64, j as f64 / cnt as f64);
                let wc = 1.0 - wa - wb;
                let q = k.klein[a] * wa + k.klein[b] * wb + k.klein[c] * wc;
                if let Ok(p) = HPoint::from_klein(q.as_slice()) {
                    out.push(p);
                }
            }
        }
    }
    out
}
