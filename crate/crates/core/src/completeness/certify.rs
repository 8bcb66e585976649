//! Completeness and constant-width certificates.

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::body::{gaussian, polygon_sag, Body};
use crate::error::{usage, GeomError, Result};
use crate::hyperboloid::{tangent_frame, tangent_toward, HPoint, Hyperplane, IdealPoint, Line, UnitTangent};
use crate::planar::{rotate, signed_angle};
use crate::vector::Vector;
use crate::widths::search::fibonacci_sphere;
use crate::widths::{
    santalo_along, width_extended, width_gh, width_jcjl, BoundarySampler, JcjlOptions, Method,
    WitnessParams,
};

use super::radii::circumball;

/// Arclength `t` at which the geodesic `c cosh t + u sinh t` leaves the
/// ball `{x : B(x, v) <= cosh_d}`; `c` must lie inside the ball.
pub(crate) fn ray_exit(c: &Vector, u: &Vector, v: &Vector, cosh_d: f64) -> f64 {
    exp_ray_exit(c, u, v, cosh_d).ln()
}

/// `e^t` for [`ray_exit`].
#[inline]
fn exp_ray_exit(c: &Vector, u: &Vector, v: &Vector, cosh_d: f64) -> f64 {
    let a = c.lorentz(v);
    let b = u.lorentz(v);
    // a cosh t + b sinh t = C is a quadratic in e^t with roots on both
    // sides of 1; a + b = B(c + u, v) > 0.
    let disc = (cosh_d * cosh_d - a * a + b * b).max(0.0);
    (cosh_d + disc.sqrt()) / (a + b)
}

/// Boundary point of `B(c, r) ∩ ⋂_v B(v, d)` on the ray from `c` in
/// direction `u`, with the index of the limiting vertex (`None` for the
/// outer ball).
pub(crate) fn ray_boundary(
    c: &HPoint,
    u: &Vector,
    verts: &[HPoint],
    d: f64,
    r: f64,
) -> (HPoint, Option<usize>) {
    let cd = d.cosh();
    let mut best = (r.exp(), None);
    for (i, v) in verts.iter().enumerate() {
        let y = exp_ray_exit(c.coords(), u, v.coords(), cd);
        if y < best.0 {
            best = (y, Some(i));
        }
    }
    let t = best.0.ln().max(0.0);
    let x = HPoint::from_timelike_unchecked(*c.coords() * t.cosh() + *u * t.sinh());
    (x, best.1)
}

/// Polytopal approximation of `⋂_v B(v, d)` over the vertices of `k`, with
/// an estimate of its distance to the true intersection.
///
/// In the plane the boundary is a cycle of circular arcs; their endpoints
/// are located by bisection on rays from the circumcenter and each arc is
/// sampled so that consecutive samples subtend at most `2 pi / m` at its
/// center. In `H^3` the boundary is sampled by `m^2` rays from the
/// circumcenter. The vertices of `k` are added, so the result contains `k`.
pub fn ball_intersection_body(k: &Body, d: f64, m: usize) -> Result<(Body, f64)> {
    let diam = k.diameter();
    if !(d >= diam - 1e-9) {
        return Err(usage(format!(
            "ball radius {d} is smaller than the diameter {diam}"
        )));
    }
    if m < 8 {
        return Err(usage(format!("resolution must be at least 8, got {m}")));
    }
    if k.dim() > 3 {
        return Err(usage("ball intersections are only supported for n <= 3"));
    }
    let (c, _) = circumball(k);
    let verts = k.vertices();
    let frame = tangent_frame(&c);
    let dir = |coef: &[f64]| -> Vector {
        let mut v = Vector::zeros(k.dim() + 1);
        for (f, x) in frame.iter().zip(coef) {
            v = v.axpy(*x, f.vec());
        }
        v
    };
    let mut pts: Vec<HPoint> = verts.to_vec();
    let err;
    if k.dim() == 2 {
        let ray = |th: f64| ray_boundary(&c, &dir(&[th.cos(), th.sin()]), verts, d, f64::INFINITY);
        let n = (8 * verts.len()).max(4096);
        let th: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect();
        let act: Vec<Option<usize>> = th.iter().map(|&t| ray(t).1).collect();
        // Arc breakpoints.
        let mut breaks: Vec<f64> = Vec::new();
        for j in 0..n {
            let (a, b) = (act[j], act[(j + 1) % n]);
            if a == b {
                continue;
            }
            // Only the two limiting balls matter near the breakpoint.
            let (Some(a), Some(b)) = (a, b) else { continue };
            let cd = d.cosh();
            let gap = |t: f64| {
                let u = dir(&[t.cos(), t.sin()]);
                ray_exit(c.coords(), &u, verts[a].coords(), cd)
                    - ray_exit(c.coords(), &u, verts[b].coords(), cd)
            };
            let (mut lo, mut hi) = (th[j], th[j] + 2.0 * PI / n as f64);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if gap(mid) <= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            breaks.push(0.5 * (lo + hi));
        }
        if breaks.is_empty() {
            breaks.push(0.0);
            breaks.push(2.0 * PI);
        } else {
            breaks.push(breaks[0] + 2.0 * PI);
        }
        for w in breaks.windows(2) {
            let (s, e) = (w[0], w[1]);
            let Some(ci) = ray(0.5 * (s + e)).1 else { continue };
            let v = &verts[ci];
            // Sum over quarters, so arcs up to a full turn are unambiguous.
            let ts: Vec<Vector> = (0..=4)
                .map(|q| Ok(*tangent_toward(v, &ray(s + (e - s) * q as f64 / 4.0).0)?.vec()))
                .collect::<Result<_>>()?;
            let alpha: f64 = ts.windows(2).map(|w| signed_angle(v, &w[0], &w[1])).sum();
            let ts = ts[0];
            let count = ((m as f64) * alpha.abs() / (2.0 * PI)).ceil() as usize + 1;
            let count = count.max(2);
            for i in 0..count {
                pts.push(rotate(v, &ts, alpha * i as f64 / (count - 1) as f64).point_at(d));
            }
        }
        err = polygon_sag(d, m);
    } else {
        let rays = fibonacci_sphere(m * m);
        for r in &rays {
            pts.push(ray_boundary(&c, &dir(r), verts, d, f64::INFINITY).0);
        }
        let spacing = (4.0 * PI / (m * m) as f64).sqrt();
        err = d - (d.tanh() * spacing.cos()).atanh();
    }
    Ok((Body::hull(&pts)?, err))
}

/// Outcome of [`is_complete`].
#[derive(Clone, Debug)]
pub struct CompletenessCertificate {
    pub complete: bool,
    pub diameter: f64,
    /// Hausdorff distance between the body and the intersection of the
    /// balls of radius `diameter` about its points.
    pub gap: f64,
    pub tolerance: f64,
    /// Approximation error of the ball intersection.
    pub resolution_error: f64,
    /// A point that can be added without increasing the diameter, as far
    /// from the body as found; present when the body is not complete.
    pub witness: Option<HPoint>,
}

impl CompletenessCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "complete": self.complete,
            "diameter": self.diameter,
            "gap": self.gap,
            "tolerance": self.tolerance,
            "resolution_error": self.resolution_error,
            "witness_klein": self.witness.map(|w| w.klein().to_vec()),
        })
    }
}

/// Completeness test at tolerance `tol`: a body of diameter `D` is complete
/// exactly when it equals the intersection of the balls of radius `D` about
/// its points, and that intersection only needs the vertices as centers.
pub fn is_complete(k: &Body, tol: f64, m: usize) -> Result<CompletenessCertificate> {
    k.require_facets()?;
    let d = k.diameter();
    let (big, err) = ball_intersection_body(k, d, m)?;
    // k is contained in the intersection, so only one side of the
    // Hausdorff distance is nonzero.
    let mut witness = None;
    let mut gap = 0.0;
    for v in big.vertices() {
        let dv = k.distance_to(v)?;
        if dv > gap {
            gap = dv;
            witness = Some(*v);
        }
    }
    let complete = gap <= tol;
    Ok(CompletenessCertificate {
        complete,
        diameter: d,
        gap,
        tolerance: tol,
        resolution_error: err,
        witness: if complete { None } else { witness },
    })
}

/// Sampled values of one width function.
#[derive(Clone, Debug)]
pub struct MethodSamples {
    pub method: Method,
    pub samples: usize,
    /// Samples where the width could not be evaluated (e.g. no JCJL
    /// opposite point was found).
    pub failures: usize,
    pub min: f64,
    pub max: f64,
    /// Largest `|w - D|` over the samples.
    pub max_deviation: f64,
    pub worst: Option<WitnessParams>,
}

impl MethodSamples {
    fn new(method: Method) -> Self {
        MethodSamples {
            method,
            samples: 0,
            failures: 0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            max_deviation: 0.0,
            worst: None,
        }
    }

    fn record(&mut self, d: f64, w: f64, params: impl FnOnce() -> WitnessParams) {
        self.samples += 1;
        self.min = self.min.min(w);
        self.max = self.max.max(w);
        let dev = (w - d).abs();
        if dev > self.max_deviation || self.worst.is_none() {
            self.max_deviation = self.max_deviation.max(dev);
            self.worst = Some(params());
        }
    }

    fn passes(&self, tau: f64) -> bool {
        self.failures == 0 && self.max_deviation <= tau
    }
}

/// Sampled check that every boundary point `x` with outer normal `v` has
/// the point at distance `D` from `x` in direction `-v` on the body.
#[derive(Clone, Debug)]
pub struct DeksterCheck {
    pub samples: usize,
    /// Largest distance from such a point to the body.
    pub max_deviation: f64,
    pub worst: Option<(HPoint, HPoint)>,
}

/// Result of [`constant_width_report`].
#[derive(Clone, Debug)]
pub struct ConstantWidthReport {
    pub diameter: f64,
    pub tau: f64,
    pub methods: Vec<MethodSamples>,
    pub dekster: DeksterCheck,
    pub pass: bool,
}

impl ConstantWidthReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "diameter": self.diameter,
            "tau": self.tau,
            "pass": self.pass,
            "methods": self.methods.iter().map(|m| json!({
                "method": m.method,
                "samples": m.samples,
                "failures": m.failures,
                "min": m.min,
                "max": m.max,
                "max_deviation": m.max_deviation,
                "passes": m.passes(self.tau),
                "worst": m.worst.as_ref().map(|w| w.to_json()),
            })).collect::<Vec<_>>(),
            "dekster": {
                "samples": self.dekster.samples,
                "max_deviation": self.dekster.max_deviation,
                "worst": self.dekster.worst.map(|(x, y)| json!({
                    "boundary_klein": x.klein().to_vec(),
                    "target_klein": y.klein().to_vec(),
                })),
            },
        })
    }
}

fn random_unit(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-9 {
            return v.into_iter().map(|x| x / r).collect();
        }
    }
}

fn random_tangent(p: &HPoint, rng: &mut ChaCha8Rng) -> UnitTangent {
    let frame = tangent_frame(p);
    let c = random_unit(p.dim(), rng);
    let mut v = Vector::zeros(p.dim() + 1);
    for (f, x) in frame.iter().zip(&c) {
        v = v.axpy(*x, f.vec());
    }
    UnitTangent::project(*p, v).expect("combination of an orthonormal frame")
}

/// Samples every width function at `samples` random parameters and compares
/// with the diameter; the body passes at `tau` when every sampled width is
/// within `tau` of the diameter and the opposite-point check holds.
pub fn constant_width_report(k: &Body, samples: usize, tau: f64, seed: u64) -> Result<ConstantWidthReport> {
    k.require_facets()?;
    let d = k.diameter();
    let n = k.dim();
    let sampler = BoundarySampler::new(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let methods_used: Vec<Method> = Method::ALL
        .iter()
        .copied()
        .filter(|m| n == 2 || !m.planar_only())
        .collect();
    let mut out: Vec<MethodSamples> = methods_used.iter().map(|&m| MethodSamples::new(m)).collect();
    let p = k.centroid();
    let jopts = JcjlOptions::default();
    let mut dek = DeksterCheck {
        samples: 0,
        max_deviation: 0.0,
        worst: None,
    };
    for _ in 0..samples {
        for ms in out.iter_mut() {
            match ms.method {
                Method::Santalo => {
                    let (z, u) = sampler.sample(&mut rng);
                    let line = Line::new(UnitTangent::project(z, u)?);
                    let w = santalo_along(k, &line);
                    ms.record(d, w, || WitnessParams::Santalo {
                        z,
                        hyperplane: Hyperplane::from_spacelike(u).expect("unit normal"),
                    });
                }
                Method::Fillmore => {
                    let i = IdealPoint::from_direction(&random_unit(n, &mut rng))?;
                    let (lo, hi) = k.supporting_horoball_levels(&i);
                    ms.record(d, (hi / lo).ln(), || WitnessParams::Fillmore { ideal: i });
                }
                Method::Leichtweiss => {
                    let h = Hyperplane::through_with_normal(&random_tangent(&p, &mut rng));
                    let w = width_extended(k, &h)?;
                    ms.record(d, w, || WitnessParams::Leichtweiss { p, hyperplane: h });
                }
                Method::Extended => {
                    let line = Line::new(random_tangent(&p, &mut rng));
                    let (lo, hi) = k.support_along_line(&line);
                    let f: f64 = rng.random();
                    let h = line.orthogonal_hyperplane(lo + f * (hi - lo));
                    let w = width_extended(k, &h)?;
                    ms.record(d, w, || WitnessParams::Extended { hyperplane: h });
                }
                Method::Jcjl => {
                    let (z, u) = sampler.sample(&mut rng);
                    let lz = Hyperplane::from_spacelike(u)?;
                    match width_jcjl(k, &z, &lz, &jopts) {
                        Ok(sols) => {
                            for s in sols {
                                ms.record(d, s.width, || WitnessParams::Jcjl {
                                    z,
                                    line: lz,
                                    opposite: s.opposite,
                                    opposite_line: s.line,
                                });
                            }
                        }
                        Err(GeomError::NoResult(_)) => ms.failures += 1,
                        Err(e) => return Err(e),
                    }
                }
                Method::Gh => {
                    let th = rng.random::<f64>() * 2.0 * PI;
                    let i = IdealPoint::from_direction(&[th.cos(), th.sin()])?;
                    let r = width_gh(k, &i)?;
                    ms.record(d, r.value, || WitnessParams::Gh {
                        ideal: i,
                        second: r.second,
                    });
                }
            }
        }
        let (z, u) = sampler.sample(&mut rng);
        let y = UnitTangent::project(z, -u)?.point_at(d);
        let dev = k.distance_to(&y)?;
        dek.samples += 1;
        if dev > dek.max_deviation || dek.worst.is_none() {
            dek.max_deviation = dek.max_deviation.max(dev);
            dek.worst = Some((z, y));
        }
    }
    let pass = out.iter().all(|m| m.passes(tau)) && dek.max_deviation <= tau;
    Ok(ConstantWidthReport {
        diameter: d,
        tau,
        methods: out,
        dekster: dek,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::ball_body;

    #[test]
    fn exit_distance_from_the_center() {
        let c = HPoint::apex(2);
        let v = HPoint::from_klein(&[0.3, 0.1]).unwrap();
        let u = tangent_frame(&c)[1];
        let t = ray_exit(c.coords(), u.vec(), v.coords(), 1.7_f64.cosh());
        assert!((u.point_at(t).distance(&v) - 1.7).abs() < 1e-12);
    }

    #[test]
    fn ball_intersection_of_a_point_is_its_ball() {
        let z = HPoint::from_klein(&[0.1, 0.2]).unwrap();
        let k = Body::hull(&[z]).unwrap();
        let (b, err) = ball_intersection_body(&k, 0.5, 256).unwrap();
        for v in b.vertices().iter().filter(|v| v.distance(&z) > 1e-12) {
            assert!((v.distance(&z) - 0.5).abs() < 1e-12);
        }
        assert!(err > 0.0 && err < 1e-4);
    }

    #[test]
    fn ball_is_complete() {
        let z = HPoint::from_klein(&[0.1, 0.2]).unwrap();
        let b = ball_body(&z, 0.6, 512).unwrap();
        let tol = 2.0 * polygon_sag(0.6, 512);
        let cert = is_complete(&b, tol, 512).unwrap();
        assert!(cert.complete, "{cert:?}");
    }
}
