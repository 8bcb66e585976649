//! Minimal and maximal widths.
//!
//! Each method's parameter space is sampled on a coarse grid, the best grid
//! points are refined by a local search, and the best result is returned as
//! a witness. Maximal widths also get an analytic witness built from a
//! diametral chord, which attains the diameter exactly.

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::body::{gaussian, Body, EPS_GEO};
use crate::error::{usage, GeomError, Result};
use crate::hyperboloid::{
    ideal_points_of_line, tangent_frame, tangent_toward, HPoint, Hyperplane, IdealPoint, Line,
    UnitTangent,
};
use crate::planar::{quarter_turn_tangent, rotate, signed_angle};
use crate::vector::Vector;

use super::search::{compass_min, fibonacci_sphere, smallest_k};
use super::{
    check_interior, extended_from_range, santalo_along, width_extended, width_fillmore,
    width_gh, width_jcjl, width_leichtweiss, width_santalo, JcjlOptions, Method, WidthWitness,
    WitnessParams,
};

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Multiplies all grid sizes.
    pub resolution: usize,
    /// Seed for the randomized direction samples used in `n >= 4`.
    pub seed: u64,
    /// Interior point for the Leichtweiss width (vertex centroid if unset).
    pub leichtweiss_point: Option<HPoint>,
    pub jcjl: JcjlOptions,
    /// Number of grid points refined locally.
    pub refine_starts: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            resolution: 1,
            seed: 0,
            leichtweiss_point: None,
            jcjl: JcjlOptions::default(),
            refine_starts: 6,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sense {
    Min,
    Max,
}

impl Sense {
    fn key(self, v: f64) -> f64 {
        match self {
            Sense::Min => v,
            Sense::Max => -v,
        }
    }
}

/// A parameter space: grid points are `(piece, coordinates)`; the local
/// search varies the coordinates only.
struct Space<'a> {
    grid: Vec<(usize, Vec<f64>)>,
    step: f64,
    /// Width value, or NaN where the parameters are infeasible.
    value: Box<dyn Fn(usize, &[f64]) -> f64 + Sync + 'a>,
    realize: Box<dyn Fn(usize, &[f64]) -> Result<WitnessParams> + 'a>,
}

fn run(space: Space<'_>, sense: Sense, opts: &SearchOptions) -> Result<WidthWitness> {
    let scores: Vec<f64> = space
        .grid
        .par_iter()
        .map(|(p, x)| {
            let v = (space.value)(*p, x);
            if v.is_finite() {
                sense.key(v)
            } else {
                f64::INFINITY
            }
        })
        .collect();
    let starts = smallest_k(&scores, opts.refine_starts.max(1));
    if starts.is_empty() {
        return Err(GeomError::NoResult(
            "no admissible parameters on the search grid".into(),
        ));
    }
    let mut evals = space.grid.len();
    let refined: Vec<(usize, Vec<f64>, f64, usize)> = starts
        .par_iter()
        .map(|&s| {
            let (piece, x0) = &space.grid[s];
            let f = |x: &[f64]| {
                let v = (space.value)(*piece, x);
                if v.is_finite() {
                    sense.key(v)
                } else {
                    f64::INFINITY
                }
            };
            let (x, fx, n) = compass_min(f, x0, 0.5 * space.step, 1e-11, 4000);
            (*piece, x, fx, n)
        })
        .collect();
    let mut best: Option<(usize, Vec<f64>, f64)> = None;
    for (piece, x, fx, n) in refined {
        evals += n;
        if best.as_ref().is_none_or(|b| fx < b.2) {
            best = Some((piece, x, fx));
        }
    }
    let (piece, x, _) = best.unwrap();
    let params = (space.realize)(piece, &x)?;
    let value = (space.value)(piece, &x);
    Ok(WidthWitness {
        method: params.method(),
        value,
        params,
        evaluations: evals,
        analytic: false,
    })
}

/// Minimal width of `k` for `method`: an upper bound on the true minimum
/// from a grid search with local refinement.
pub fn minimal_width(k: &Body, method: Method, opts: &SearchOptions) -> Result<WidthWitness> {
    search(k, method, Sense::Min, opts)
}

/// Maximal width of `k` for `method`: the better of the analytic
/// diametral-chord witness and the numerical search.
pub fn maximal_width(k: &Body, method: Method, opts: &SearchOptions) -> Result<WidthWitness> {
    let analytic = analytic_witness(k, method, opts)?;
    match search(k, method, Sense::Max, opts) {
        Ok(w) if w.value > analytic.value => Ok(w),
        Ok(w) => Ok(WidthWitness {
            evaluations: w.evaluations,
            ..analytic
        }),
        Err(_) => Ok(analytic),
    }
}

fn search(k: &Body, method: Method, sense: Sense, opts: &SearchOptions) -> Result<WidthWitness> {
    if method.planar_only() && k.dim() != 2 {
        return Err(usage(format!(
            "the {method} width is only defined in the hyperbolic plane"
        )));
    }
    if method != Method::Fillmore && k.is_degenerate() {
        return Err(usage(format!(
            "the {method} width search needs a body with interior"
        )));
    }
    let res = opts.resolution.max(1);
    let space = match method {
        Method::Santalo if k.dim() == 2 => santalo_planar(k, res)?,
        Method::Santalo => santalo_spatial(k, res, opts.seed)?,
        Method::Fillmore => fillmore_space(k, res, opts.seed),
        Method::Leichtweiss => {
            let p = opts.leichtweiss_point.unwrap_or_else(|| k.centroid());
            check_interior(k, &p)?;
            leichtweiss_space(k, p, res, opts.seed)
        }
        Method::Extended => extended_space(k, res, opts.seed),
        Method::Jcjl => jcjl_space(k, res, opts.jcjl, sense)?,
        Method::Gh => gh_space(k, res),
    };
    run(space, sense, opts)
}

/// Unit tangent at `p` from unnormalized frame coefficients.
fn frame_dir(frame: &[UnitTangent], x: &[f64]) -> Option<UnitTangent> {
    let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    if !(r > 1e-12) {
        return None;
    }
    let base = *frame[0].base();
    let mut v = Vector::zeros(base.dim() + 1);
    for (f, c) in frame.iter().zip(x) {
        v = v.axpy(c / r, f.vec());
    }
    Some(UnitTangent::from_parts_unchecked(base, v))
}

/// Direction samples on the unit sphere of `R^n` for the grids; `half`
/// keeps one of each antipodal pair.
fn direction_grid(n: usize, count: usize, half: bool, seed: u64) -> Vec<Vec<f64>> {
    match n {
        2 => {
            let span = if half { PI } else { 2.0 * PI };
            (0..count)
                .map(|j| {
                    let t = span * j as f64 / count as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect()
        }
        3 => {
            let pts = fibonacci_sphere(if half { 2 * count } else { count });
            pts.into_iter()
                .filter(|p| !half || p[2] >= 0.0)
                .map(|p| p.to_vec())
                .collect()
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd1ec_7105);
            let mut out: Vec<Vec<f64>> = Vec::new();
            for i in 0..n {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                out.push(e.clone());
                if !half {
                    e[i] = -1.0;
                    out.push(e);
                }
            }
            while out.len() < count {
                let v: Vec<f64> = (0..n).map(|_| gaussian(&mut rng)).collect();
                out.push(v);
            }
            out
        }
    }
}

fn direction_count(n: usize, res: usize) -> usize {
    match n {
        2 => 720 * res,
        3 => 2000 * res,
        _ => 4000 * res,
    }
}

fn fillmore_space(k: &Body, res: usize, seed: u64) -> Space<'_> {
    let n = k.dim();
    let count = direction_count(n, res);
    let grid: Vec<(usize, Vec<f64>)> = direction_grid(n, count, false, seed)
        .into_iter()
        .map(|d| (0, d))
        .collect();
    let ideal = |x: &[f64]| IdealPoint::from_direction(x).ok();
    Space {
        grid,
        step: (4.0 * PI / count as f64).powf(1.0 / (n as f64 - 1.0)),
        value: Box::new(move |_, x| match ideal(x) {
            Some(i) => width_fillmore(k, &i).unwrap_or(f64::NAN),
            None => f64::NAN,
        }),
        realize: Box::new(move |_, x| {
            Ok(WitnessParams::Fillmore {
                ideal: IdealPoint::from_direction(x)?,
            })
        }),
    }
}

fn leichtweiss_space(k: &Body, p: HPoint, res: usize, seed: u64) -> Space<'_> {
    let n = k.dim();
    let count = direction_count(n, res) / 2;
    let frame = tangent_frame(&p);
    let grid: Vec<(usize, Vec<f64>)> = direction_grid(n, count, true, seed)
        .into_iter()
        .map(|d| (0, d))
        .collect();
    let f2 = frame.clone();
    Space {
        grid,
        step: (2.0 * PI / count as f64).powf(1.0 / (n as f64 - 1.0)),
        value: Box::new(move |_, x| match frame_dir(&frame, x) {
            Some(u) => width_extended(k, &Hyperplane::through_with_normal(&u)).unwrap_or(f64::NAN),
            None => f64::NAN,
        }),
        realize: Box::new(move |_, x| {
            let u = frame_dir(&f2, x).ok_or_else(|| usage("zero direction"))?;
            Ok(WitnessParams::Leichtweiss {
                p,
                hyperplane: Hyperplane::through_with_normal(&u),
            })
        }),
    }
}

/// Hyperplanes meeting `k`: orthogonal to a line from the centroid in
/// direction `x[..n]`, at the fraction `x[n]` of the body's support range.
fn extended_space(k: &Body, res: usize, seed: u64) -> Space<'_> {
    let n = k.dim();
    let c = k.centroid();
    let frame = tangent_frame(&c);
    let (dirs, offsets) = match n {
        2 => (180 * res, 33),
        3 => (600 * res, 17),
        _ => (1000 * res, 9),
    };
    let mut grid = Vec::new();
    for d in direction_grid(n, dirs, true, seed) {
        for j in 0..offsets {
            let mut x = d.clone();
            x.push(j as f64 / (offsets - 1) as f64);
            grid.push((0, x));
        }
    }
    let hyper = move |frame: &[UnitTangent], x: &[f64]| -> Option<Hyperplane> {
        let u = frame_dir(frame, &x[..n])?;
        let line = Line::new(u);
        let (lo, hi) = k.support_along_line(&line);
        let f = x[n].clamp(0.0, 1.0);
        Some(line.orthogonal_hyperplane(lo + f * (hi - lo)))
    };
    let f2 = frame.clone();
    Space {
        grid,
        step: (PI / dirs as f64).powf(1.0 / (n as f64 - 1.0)).max(1.0 / offsets as f64),
        value: Box::new(move |_, x| match hyper(&frame, x) {
            Some(h) => {
                let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
                for v in k.vertices() {
                    let s = h.side(v);
                    lo = lo.min(s);
                    hi = hi.max(s);
                }
                extended_from_range(lo.asinh(), hi.asinh())
            }
            None => f64::NAN,
        }),
        realize: Box::new(move |_, x| {
            let h = hyper(&f2, x).ok_or_else(|| usage("zero direction"))?;
            Ok(WitnessParams::Extended { hyperplane: h })
        }),
    }
}

/// The boundary normal bundle of a polygon, cut into pieces: the normal
/// cone of each vertex (parameter: angle from the incoming edge normal) and
/// each edge (parameter: arclength from its first vertex).
#[derive(Clone)]
enum Piece {
    Cone { p: HPoint, n_in: Vector, span: f64 },
    Edge { line: Line, len: f64, normal: Vector },
}

impl Piece {
    fn range(&self) -> f64 {
        match self {
            Piece::Cone { span, .. } => *span,
            Piece::Edge { len, .. } => *len,
        }
    }

    /// Boundary point and outer unit normal at parameter `t` (clamped).
    fn at(&self, t: f64) -> (HPoint, Vector) {
        let t = t.clamp(0.0, self.range());
        match self {
            Piece::Cone { p, n_in, .. } => (*p, *rotate(p, n_in, t).vec()),
            Piece::Edge { line, normal, .. } => (line.point_at(t), *normal),
        }
    }
}

fn normal_bundle(k: &Body) -> Result<Vec<Piece>> {
    let facets = k.require_facets()?;
    let m = k.vertices().len();
    let mut pieces = Vec::with_capacity(2 * m);
    for v in 0..m {
        let p = k.vertices()[v];
        let n_in = *facets[(v + m - 1) % m].hyperplane().normal();
        let n_out = *facets[v].hyperplane().normal();
        let span = signed_angle(&p, &n_in, &n_out).max(0.0);
        pieces.push(Piece::Cone { p, n_in, span });
        let e = &k.edges()[v];
        pieces.push(Piece::Edge {
            line: *e.line(),
            len: e.length(),
            normal: *facets[v].hyperplane().normal(),
        });
    }
    Ok(pieces)
}

/// Grid over the normal bundle with angular step `cone_step` and
/// `edge_samples + 1` points per edge.
fn bundle_grid(pieces: &[Piece], cone_step: f64, edge_samples: usize) -> Vec<(usize, Vec<f64>)> {
    let mut grid = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        let count = match piece {
            Piece::Cone { span, .. } => (span / cone_step).ceil() as usize,
            Piece::Edge { .. } => edge_samples,
        }
        .max(1);
        for j in 0..=count {
            grid.push((i, vec![piece.range() * j as f64 / count as f64]));
        }
    }
    grid
}

fn santalo_planar(k: &Body, res: usize) -> Result<Space<'_>> {
    let pieces = normal_bundle(k)?;
    let grid = bundle_grid(&pieces, PI / (256.0 * res as f64), 16 * res);
    let p2 = pieces.clone();
    let step = pieces.iter().map(|p| p.range()).fold(0.0, f64::max) / 16.0;
    Ok(Space {
        grid,
        step: step.min(PI / 256.0),
        value: Box::new(move |i, x| {
            let (z, u) = pieces[i].at(x[0]);
            santalo_along(k, &Line::new(UnitTangent::from_parts_unchecked(z, u)))
        }),
        realize: Box::new(move |i, x| {
            let (z, u) = p2[i].at(x[0]);
            Ok(WitnessParams::Santalo {
                z,
                hyperplane: Hyperplane::from_spacelike(u)?,
            })
        }),
    })
}

/// Santaló parameters in `H^3`: facet points with the facet normal, edge
/// points with normals in the dihedral arc, and vertex normals sampled from
/// the cone spanned by the incident facet normals.
fn santalo_spatial(k: &Body, res: usize, seed: u64) -> Result<Space<'_>> {
    let facets = k.require_facets()?;
    let mut cands: Vec<(HPoint, Vector)> = Vec::new();
    for f in facets {
        let vs = f.vertices();
        let u = *f.hyperplane().normal();
        let steps = 6 * res;
        for t in 1..vs.len() - 1 {
            let (a, b, c) = (k.klein_vertices()[vs[0]], k.klein_vertices()[vs[t]], k.klein_vertices()[vs[t + 1]]);
            for i in 0..=steps {
                for j in 0..=steps - i {
                    let (wa, wb) = (i as f64 / steps as f64, j as f64 / steps as f64);
                    let q = a * wa + b * wb + c * (1.0 - wa - wb);
                    if let Ok(z) = HPoint::from_klein(q.as_slice()) {
                        cands.push((z, u));
                    }
                }
            }
        }
    }
    for e in k.edges() {
        let adj: Vec<&crate::body::Facet> = facets
            .iter()
            .filter(|f| f.vertices().contains(&e.a) && f.vertices().contains(&e.b))
            .collect();
        if adj.len() != 2 {
            continue;
        }
        let (n1, n2) = (*adj[0].hyperplane().normal(), *adj[1].hyperplane().normal());
        let alpha = (-n1.lorentz(&n2)).clamp(-1.0, 1.0).acos();
        for s in 0..=8 * res {
            let z = e.line().point_at(e.length() * s as f64 / (8 * res) as f64);
            for a in 0..=16 * res {
                let lam = a as f64 / (16 * res) as f64;
                let u = if alpha < 1e-12 {
                    n1
                } else {
                    (n1 * ((1.0 - lam) * alpha).sin() + n2 * (lam * alpha).sin())
                        * (1.0 / alpha.sin())
                };
                cands.push((z, u));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a17_a10);
    for v in 0..k.vertices().len() {
        let p = k.vertices()[v];
        let normals: Vec<Vector> = k
            .incident_facets(v)
            .iter()
            .map(|&f| *facets[f].hyperplane().normal())
            .collect();
        for _ in 0..1000 * res {
            let w: Vec<f64> = normals.iter().map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
            let mut u = Vector::zeros(4);
            for (n, wi) in normals.iter().zip(&w) {
                u = u.axpy(*wi, n);
            }
            if let Ok(t) = UnitTangent::project(p, u) {
                cands.push((p, *t.vec()));
            }
        }
        for n in &normals {
            cands.push((p, *n));
        }
    }
    let c2 = cands.clone();
    let grid = (0..cands.len()).map(|i| (i, Vec::new())).collect();
    Ok(Space {
        grid,
        step: 0.0,
        value: Box::new(move |i, _| {
            let (z, u) = cands[i];
            santalo_along(k, &Line::new(UnitTangent::from_parts_unchecked(z, u)))
        }),
        realize: Box::new(move |i, _| {
            let (z, u) = c2[i];
            Ok(WitnessParams::Santalo {
                z,
                hyperplane: Hyperplane::from_spacelike(u)?,
            })
        }),
    })
}

fn jcjl_space(k: &Body, res: usize, jopts: JcjlOptions, sense: Sense) -> Result<Space<'_>> {
    let pieces = normal_bundle(k)?;
    // Budget of about 256 boundary samples, shared by angle and length.
    let total: f64 = pieces.iter().map(|p| p.range()).sum();
    let step = total / (256.0 * res as f64);
    let mut grid = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        let count = (piece.range() / step).ceil().max(1.0) as usize;
        for j in 0..=count {
            grid.push((i, vec![piece.range() * j as f64 / count as f64]));
        }
    }
    let p2 = pieces.clone();
    let eval = move |pieces: &[Piece], i: usize, t: f64| -> Option<(HPoint, Hyperplane, Vec<super::JcjlSolution>)> {
        let (z, u) = pieces[i].at(t);
        let lz = Hyperplane::from_spacelike(u).ok()?;
        let sols = width_jcjl(k, &z, &lz, &jopts).ok()?;
        Some((z, lz, sols))
    };
    Ok(Space {
        grid,
        step: step.min(0.05),
        value: Box::new(move |i, x| match eval(&pieces, i, x[0]) {
            // For a fixed (z, l_z) all opposite points are admissible; keep
            // the one extreme in the direction of the search.
            Some((_, _, sols)) => {
                let lo = sols.iter().map(|s| s.width).fold(f64::INFINITY, f64::min);
                let hi = sols.iter().map(|s| s.width).fold(f64::NEG_INFINITY, f64::max);
                if sense == Sense::Max { hi } else { lo }
            }
            None => f64::NAN,
        }),
        realize: Box::new(move |i, x| {
            let (z, lz, sols) = eval(&p2, i, x[0])
                .ok_or_else(|| GeomError::NoResult("JCJL witness vanished on refinement".into()))?;
            let pick = if sense == Sense::Max {
                sols.iter().max_by(|a, b| a.width.total_cmp(&b.width))
            } else {
                sols.iter().min_by(|a, b| a.width.total_cmp(&b.width))
            }
            .unwrap();
            Ok(WitnessParams::Jcjl {
                z,
                line: lz,
                opposite: pick.opposite,
                opposite_line: pick.line,
            })
        }),
    })
}

fn gh_space(k: &Body, res: usize) -> Space<'_> {
    let count = 128 * res;
    let grid = (0..count)
        .map(|j| (0, vec![2.0 * PI * j as f64 / count as f64]))
        .collect();
    let ideal = |t: f64| IdealPoint::from_direction(&[t.cos(), t.sin()]).unwrap();
    Space {
        grid,
        step: 2.0 * PI / count as f64,
        value: Box::new(move |_, x| width_gh(k, &ideal(x[0])).map(|r| r.value).unwrap_or(f64::NAN)),
        realize: Box::new(move |_, x| {
            let i = ideal(x[0]);
            let r = width_gh(k, &i)?;
            Ok(WitnessParams::Gh {
                ideal: i,
                second: r.second,
            })
        }),
    }
}

/// Random boundary points with outer unit normals, covering facets, edges
/// and vertex normal cones.
pub(crate) struct BoundarySampler<'a> {
    k: &'a Body,
    pieces: Vec<Piece>,
}

impl<'a> BoundarySampler<'a> {
    pub(crate) fn new(k: &'a Body) -> Result<Self> {
        let pieces = if k.dim() == 2 {
            normal_bundle(k)?
        } else {
            k.require_facets()?;
            Vec::new()
        };
        Ok(BoundarySampler { k, pieces })
    }

    pub(crate) fn sample(&self, rng: &mut ChaCha8Rng) -> (HPoint, Vector) {
        if !self.pieces.is_empty() {
            let p = &self.pieces[rng.random_range(0..self.pieces.len())];
            let t: f64 = rng.random();
            return p.at(t * p.range());
        }
        let k = self.k;
        let facets = k.facets().expect("checked in new");
        match rng.random_range(0..3) {
            0 => {
                let f = &facets[rng.random_range(0..facets.len())];
                let vs = f.vertices();
                let t = rng.random_range(1..vs.len() - 1);
                let kv = k.klein_vertices();
                let (a, b) = (rng.random::<f64>(), rng.random::<f64>());
                let (a, b) = if a + b > 1.0 { (1.0 - a, 1.0 - b) } else { (a, b) };
                let q = kv[vs[0]] * (1.0 - a - b) + kv[vs[t]] * a + kv[vs[t + 1]] * b;
                let z = HPoint::from_klein(q.as_slice()).expect("inside a facet");
                (z, *f.hyperplane().normal())
            }
            1 => {
                let e = &k.edges()[rng.random_range(0..k.edges().len())];
                let adj: Vec<Vector> = facets
                    .iter()
                    .filter(|f| f.vertices().contains(&e.a) && f.vertices().contains(&e.b))
                    .map(|f| *f.hyperplane().normal())
                    .collect();
                let z = e.line().point_at(rng.random::<f64>() * e.length());
                let lam: f64 = rng.random();
                let u = adj[0] * (1.0 - lam) + adj[adj.len() - 1] * lam;
                (z, *UnitTangent::project(z, u).expect("normals of adjacent facets").vec())
            }
            _ => {
                let v = rng.random_range(0..k.vertices().len());
                let z = k.vertices()[v];
                let mut u = Vector::zeros(k.dim() + 1);
                for f in k.incident_facets(v) {
                    let w = -(1.0 - rng.random::<f64>()).ln();
                    u = u.axpy(w, facets[f].hyperplane().normal());
                }
                (z, *UnitTangent::project(z, u).expect("cone of facet normals").vec())
            }
        }
    }
}

/// Witness of the maximal width built from a diametral chord `[x, y]`.
fn analytic_witness(k: &Body, method: Method, opts: &SearchOptions) -> Result<WidthWitness> {
    if method.planar_only() && k.dim() != 2 {
        return Err(usage(format!(
            "the {method} width is only defined in the hyperbolic plane"
        )));
    }
    let (i, j, d) = k.diametral_pair();
    let (x, y) = (k.vertices()[i], k.vertices()[j]);
    if d <= 0.0 {
        return Err(usage("a single point has no diametral chord"));
    }
    let line = Line::through(&x, &y)?;
    let params = match method {
        // The hyperplane orthogonal to [x, y] at x is tangent to B(y, D),
        // which contains the body, so it supports the body at x.
        Method::Santalo => {
            let out = tangent_toward(&x, &y)?.negated();
            WitnessParams::Santalo {
                z: x,
                hyperplane: Hyperplane::through_with_normal(&out),
            }
        }
        Method::Fillmore => WitnessParams::Fillmore {
            ideal: ideal_points_of_line(&line).0,
        },
        Method::Leichtweiss => {
            let p = opts.leichtweiss_point.unwrap_or_else(|| k.centroid());
            let t = line.foot_param(p.coords());
            let h = line.orthogonal_hyperplane(t);
            // Re-anchor the hyperplane exactly at p.
            let u = UnitTangent::project(p, *h.normal())?;
            WitnessParams::Leichtweiss {
                p,
                hyperplane: Hyperplane::through_with_normal(&u),
            }
        }
        Method::Extended => WitnessParams::Extended {
            hyperplane: line.orthogonal_hyperplane(0.5 * d),
        },
        // Both orthogonal supporting lines make right angles with [x, y].
        Method::Jcjl => WitnessParams::Jcjl {
            z: x,
            line: line.orthogonal_hyperplane(0.0),
            opposite: y,
            opposite_line: line.orthogonal_hyperplane(d),
        },
        Method::Gh => {
            let bis = Line::new(quarter_turn_tangent(&line.tangent_at(0.5 * d)));
            let (a, b) = ideal_points_of_line(&bis);
            WitnessParams::Gh {
                ideal: a,
                second: b,
            }
        }
    };
    let value = match &params {
        WitnessParams::Santalo { z, hyperplane } => width_santalo(k, z, hyperplane)?,
        WitnessParams::Leichtweiss { p, hyperplane } => width_leichtweiss(k, p, hyperplane)?,
        other => super::evaluate(k, other, EPS_GEO)?,
    };
    Ok(WidthWitness {
        method,
        value,
        params,
        evaluations: 0,
        analytic: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::ball_body;

    fn kp(k: &[f64]) -> HPoint {
        HPoint::from_klein(k).unwrap()
    }

    fn pentagon() -> Body {
        Body::hull(&[
            kp(&[0.6, 0.0]),
            kp(&[0.1, 0.5]),
            kp(&[-0.5, 0.3]),
            kp(&[-0.4, -0.4]),
            kp(&[0.2, -0.5]),
        ])
        .unwrap()
    }

    #[test]
    fn maximal_widths_equal_the_diameter() {
        let k = pentagon();
        let d = k.diameter();
        for m in Method::ALL {
            let w = maximal_width(&k, m, &SearchOptions::default()).unwrap();
            assert!((w.value - d).abs() < 1e-9, "{m}: {} vs {d}", w.value);
            assert!((w.reevaluate(&k).unwrap() - w.value).abs() < 1e-9, "{m}");
        }
    }

    #[test]
    fn minimal_widths_do_not_exceed_maximal() {
        let k = pentagon();
        let d = k.diameter();
        for m in Method::ALL {
            let w = minimal_width(&k, m, &SearchOptions::default()).unwrap();
            assert!(w.value <= d + 1e-9, "{m}: {}", w.value);
            assert!(w.value > 0.0);
            assert!((w.reevaluate(&k).unwrap() - w.value).abs() < 1e-9, "{m}");
        }
    }

    #[test]
    fn ball_minimal_widths_are_the_diameter() {
        let b = ball_body(&kp(&[0.1, 0.2]), 0.5, 256).unwrap();
        for m in Method::ALL {
            let w = minimal_width(&b, m, &SearchOptions::default()).unwrap();
            assert!((w.value - 1.0).abs() < 1e-3, "{m}: {}", w.value);
        }
    }
}
