//! Wolfe's minimum-norm-point algorithm for the convex hull of a finite
//! Euclidean point set.

use crate::vector::{solve_linear, Vector};

/// Result of [`min_norm_point`].
#[derive(Clone, Debug)]
pub struct MinNorm {
    pub point: Vector,
    /// Indices and convex weights of the active points.
    pub support: Vec<(usize, f64)>,
}

/// Point of minimum Euclidean norm in `conv(points)`.
pub fn min_norm_point(points: &[Vector]) -> MinNorm {
    assert!(!points.is_empty(), "min_norm_point needs at least one point");
    let scale = points.iter().map(|p| p.norm_sq()).fold(0.0, f64::max).max(1e-300);
    let tol = 1e-13 * scale;

    let first = (0..points.len())
        .min_by(|&a, &b| points[a].norm_sq().total_cmp(&points[b].norm_sq()))
        .unwrap();
    let mut s: Vec<usize> = vec![first];
    let mut lam: Vec<f64> = vec![1.0];
    let mut x = points[first];

    for _major in 0..(50 * points.len() + 100) {
        let xx = x.norm_sq();
        let j = (0..points.len())
            .min_by(|&a, &b| x.dot(&points[a]).total_cmp(&x.dot(&points[b])))
            .unwrap();
        if x.dot(&points[j]) >= xx - tol || s.contains(&j) {
            break;
        }
        s.push(j);
        lam.push(0.0);
        loop {
            let mu = match affine_min_norm(points, &s) {
                Some(mu) => mu,
                None => {
                    // Affinely dependent support: drop the newest point.
                    s.pop();
                    lam.pop();
                    break;
                }
            };
            if mu.iter().all(|&m| m > 1e-15) {
                lam = mu;
                break;
            }
            let mut theta = 1.0_f64;
            for (l, m) in lam.iter().zip(&mu) {
                if *m <= 1e-15 {
                    let d = l - m;
                    if d > 0.0 {
                        theta = theta.min(l / d);
                    }
                }
            }
            for (l, m) in lam.iter_mut().zip(&mu) {
                *l += theta * (m - *l);
            }
            let mut k = 0;
            while k < s.len() {
                if lam[k] <= 1e-15 {
                    s.remove(k);
                    lam.remove(k);
                } else {
                    k += 1;
                }
            }
            if s.is_empty() {
                s.push(j);
                lam.push(1.0);
                break;
            }
            let total: f64 = lam.iter().sum();
            lam.iter_mut().for_each(|l| *l /= total);
        }
        x = combine(points, &s, &lam);
    }
    MinNorm {
        point: x,
        support: s.into_iter().zip(lam).collect(),
    }
}

fn combine(points: &[Vector], s: &[usize], lam: &[f64]) -> Vector {
    let mut x = Vector::zeros(points[0].len());
    for (&i, &l) in s.iter().zip(lam) {
        x = x.axpy(l, &points[i]);
    }
    x
}

fn affine_min_norm(points: &[Vector], s: &[usize]) -> Option<Vec<f64>> {
    let k = s.len();
    let mut a = vec![vec![0.0; k + 1]; k + 1];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = points[s[i]].dot(&points[s[j]]);
        }
        a[i][k] = 1.0;
        a[k][i] = 1.0;
    }
    let mut b = vec![0.0; k + 1];
    b[k] = 1.0;
    let sol = solve_linear(a, b)?;
    Some(sol[..k].to_vec())
}

/// Euclidean distance from `q` to `conv(points)`.
pub fn distance_to_hull(points: &[Vector], q: &Vector) -> f64 {
    let shifted: Vec<Vector> = points.iter().map(|p| *p - *q).collect();
    min_norm_point(&shifted).point.norm()
}
