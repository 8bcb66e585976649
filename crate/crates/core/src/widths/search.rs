//! Small derivative-free optimizers and sampling grids shared by the
//! width searches and the completion algorithm.

use std::f64::consts::PI;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on `[a, b]`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Compass (pattern) search minimizing `f` from `x0` with initial step
/// `h0`, halving the step until it drops below `h_min`.
pub fn compass_min<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    h0: f64,
    h_min: f64,
    max_evals: usize,
) -> (Vec<f64>, f64, usize) {
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut h = h0;
    let mut evals = 1;
    while h > h_min && evals < max_evals {
        let mut improved = false;
        for i in 0..x.len() {
            for s in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] += s * h;
                let fy = f(&y);
                evals += 1;
                if fy < fx {
                    x = y;
                    fx = fy;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (x, fx, evals)
}

/// Indices of the `count` smallest finite scores in increasing order.
pub fn smallest_k(scores: &[f64], count: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).filter(|&i| scores[i].is_finite()).collect();
    idx.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    idx.truncate(count);
    idx
}

/// Local minima of a cyclic or linear sequence, ordered by value.
pub fn local_minima(scores: &[f64], cyclic: bool, count: usize) -> Vec<usize> {
    let n = scores.len();
    let mut idx: Vec<usize> = (0..n)
        .filter(|&i| {
            let s = scores[i];
            if !s.is_finite() {
                return false;
            }
            let left = if i > 0 {
                scores[i - 1]
            } else if cyclic {
                scores[n - 1]
            } else {
                f64::INFINITY
            };
            let right = if i + 1 < n {
                scores[i + 1]
            } else if cyclic {
                scores[0]
            } else {
                f64::INFINITY
            };
            !(left < s) && !(right < s)
        })
        .collect();
    idx.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    idx.truncate(count);
    idx
}

/// Quasi-uniform points on the unit 2-sphere (Fibonacci lattice).
pub fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - 5.0_f64.sqrt());
    (0..count)
        .map(|k| {
            let h = 1.0 - (2 * k + 1) as f64 / count as f64;
            let r = (1.0 - h * h).sqrt();
            let phi = golden * k as f64;
            [r * phi.cos(), r * phi.sin(), h]
        })
        .collect()
}

/// Unit vector of R^3 with polar angle `theta` and azimuth `phi`.
pub fn spherical(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Inverse of [`spherical`].
pub fn to_spherical(v: &[f64; 3]) -> (f64, f64) {
    (v[2].clamp(-1.0, 1.0).acos(), v[1].atan2(v[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (x, v) = golden_max(|t| -(t - 0.3) * (t - 0.3) + 2.0, -1.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn compass_search_on_quadratic() {
        let (x, fx, _) = compass_min(
            |x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 0.5).powi(2),
            &[0.0, 0.0],
            0.5,
            1e-9,
            10_000,
        );
        assert!((x[0] - 1.0).abs() < 1e-8 && (x[1] + 0.5).abs() < 1e-8);
        assert!(fx < 1e-15);
    }

    #[test]
    fn ties_prefer_the_smaller_index() {
        let s = [3.0, 1.0, 2.0, 1.0];
        assert_eq!(smallest_k(&s, 1), vec![1]);
        assert_eq!(local_minima(&s, true, 5), vec![1, 3]);
    }

    #[test]
    fn fibonacci_points_are_unit() {
        for p in fibonacci_sphere(50) {
            let r = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
            assert!((r - 1.0).abs() < 1e-14);
            let (t, f) = to_spherical(&p);
            let q = spherical(t, f);
            assert!((q[0] - p[0]).abs() + (q[1] - p[1]).abs() + (q[2] - p[2]).abs() < 1e-12);
        }
    }
}
