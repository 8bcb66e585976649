//! Random bodies and isometries shared by the integration tests.
#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperwidth::hyperboloid::UnitTangent;
use hyperwidth::{Body, HPoint, Hyperplane, IdealPoint, Line};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-6 {
            return v.into_iter().map(|x| x / r).collect();
        }
    }
}

/// Uniform point of the Klein ball of Euclidean radius `rmax`.
pub fn klein_point(rng: &mut ChaCha8Rng, n: usize, rmax: f64) -> Vec<f64> {
    let d = unit(rng, n);
    let r: f64 = rmax * rng.random::<f64>().powf(1.0 / n as f64);
    d.into_iter().map(|x| r * x).collect()
}

pub fn point(rng: &mut ChaCha8Rng, n: usize, rmax: f64) -> HPoint {
    HPoint::from_klein(&klein_point(rng, n, rmax)).unwrap()
}

pub fn ideal(rng: &mut ChaCha8Rng, n: usize) -> IdealPoint {
    IdealPoint::from_direction(&unit(rng, n)).unwrap()
}

pub fn tangent(rng: &mut ChaCha8Rng, p: &HPoint) -> UnitTangent {
    let frame = hyperwidth::hyperboloid::tangent_frame(p);
    let c = unit(rng, p.dim());
    let mut v = vec![0.0; p.dim() + 1];
    for (f, x) in frame.iter().zip(&c) {
        for (vi, fi) in v.iter_mut().zip(f.vec().as_slice()) {
            *vi += x * fi;
        }
    }
    UnitTangent::new(*p, &v, 1e-9).unwrap()
}

pub fn line(rng: &mut ChaCha8Rng, n: usize, rmax: f64) -> Line {
    let p = point(rng, n, rmax);
    Line::new(tangent(rng, &p))
}

/// A full-dimensional body: hull of `count` random Klein points in the ball
/// of radius `rmax` (retried until the hull is full-dimensional).
pub fn body(rng: &mut ChaCha8Rng, n: usize, count: usize, rmax: f64) -> Body {
    loop {
        let pts: Vec<HPoint> = (0..count).map(|_| point(rng, n, rmax)).collect();
        let k = Body::hull(&pts).unwrap();
        if k.affine_dim() == n && k.vertices().len() > n {
            return k;
        }
    }
}

pub fn polygon(rng: &mut ChaCha8Rng) -> Body {
    let count = rng.random_range(4..12);
    body(rng, 2, count, 0.7)
}

pub fn polytope(rng: &mut ChaCha8Rng) -> Body {
    let count = rng.random_range(6..14);
    body(rng, 3, count, 0.6)
}

/// A Lorentz isometry of `H^n` as an `(n+1) x (n+1)` matrix (time last):
/// a random rotation followed by a boost of rapidity up to `max_rapidity`.
#[derive(Clone, Debug)]
pub struct Isometry {
    m: Vec<Vec<f64>>,
}

impl Isometry {
    pub fn random(rng: &mut ChaCha8Rng, n: usize, max_rapidity: f64) -> Self {
        // Rotation: Gram-Schmidt on a Gaussian matrix.
        let mut rot: Vec<Vec<f64>> = Vec::with_capacity(n);
        while rot.len() < n {
            let mut v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
            for r in &rot {
                let d: f64 = v.iter().zip(r).map(|(a, b)| a * b).sum();
                for (vi, ri) in v.iter_mut().zip(r) {
                    *vi -= d * ri;
                }
            }
            let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if nv > 1e-6 {
                rot.push(v.into_iter().map(|x| x / nv).collect());
            }
        }
        let d = unit(rng, n);
        let phi = rng.random_range(-max_rapidity..max_rapidity);
        let (c, s) = (phi.cosh(), phi.sinh());
        let mut boost = vec![vec![0.0; n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                boost[i][j] = f64::from(u8::from(i == j)) + (c - 1.0) * d[i] * d[j];
            }
            boost[i][n] = s * d[i];
            boost[n][i] = s * d[i];
        }
        boost[n][n] = c;
        let mut full = vec![vec![0.0; n + 1]; n + 1];
        for i in 0..=n {
            for j in 0..=n {
                let mut acc = 0.0;
                for k in 0..=n {
                    let r = if k == n || j == n {
                        f64::from(u8::from(k == j))
                    } else {
                        rot[k][j]
                    };
                    acc += boost[i][k] * r;
                }
                full[i][j] = acc;
            }
        }
        Isometry { m: full }
    }

    pub fn apply_vec(&self, x: &[f64]) -> Vec<f64> {
        self.m
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn point(&self, p: &HPoint) -> HPoint {
        HPoint::new(&self.apply_vec(p.coords().as_slice()), 1e-8).unwrap()
    }

    pub fn plane(&self, h: &Hyperplane) -> Hyperplane {
        Hyperplane::new(&self.apply_vec(h.normal().as_slice()), 1e-8).unwrap()
    }

    pub fn ideal(&self, i: &IdealPoint) -> IdealPoint {
        IdealPoint::from_null(&self.apply_vec(i.null_vec().as_slice()), 1e-8).unwrap()
    }

    pub fn tangent(&self, u: &UnitTangent) -> UnitTangent {
        UnitTangent::new(self.point(u.base()), &self.apply_vec(u.vec().as_slice()), 1e-8).unwrap()
    }

    pub fn line(&self, l: &Line) -> Line {
        Line::new(self.tangent(l.direction()))
    }

    pub fn body(&self, k: &Body) -> Body {
        let pts: Vec<HPoint> = k.vertices().iter().map(|v| self.point(v)).collect();
        Body::hull(&pts).unwrap()
    }
}

/// Hyperbolic length of the Klein chord from `a` to `b` by composite
/// Gauss-Legendre quadrature of the Klein line element.
pub fn klein_chord_length(a: &[f64], b: &[f64]) -> f64 {
    const X: [f64; 5] = [
        0.0,
        -0.538_469_310_105_683,
        0.538_469_310_105_683,
        -0.906_179_845_938_664,
        0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_889,
        0.478_628_670_499_366,
        0.478_628_670_499_366,
        0.236_926_885_056_189,
        0.236_926_885_056_189,
    ];
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let dd: f64 = d.iter().map(|x| x * x).sum();
    let speed = |t: f64| {
        let k: Vec<f64> = a.iter().zip(&d).map(|(x, y)| x + t * y).collect();
        let w = 1.0 - k.iter().map(|x| x * x).sum::<f64>();
        let kd: f64 = k.iter().zip(&d).map(|(x, y)| x * y).sum();
        (dd / w + kd * kd / (w * w)).sqrt()
    };
    let panels = 400;
    let h = 1.0 / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in X.iter().zip(&W) {
            total += w * speed(mid + 0.5 * h * x) * 0.5 * h;
        }
    }
    total
}
