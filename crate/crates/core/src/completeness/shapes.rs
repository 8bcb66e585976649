//! Test-corpus bodies: regular simplices, Reuleaux triangles and the body
//! on which the minimal Santaló width fails to be monotone.

use crate::body::{ball_body, Body};
use crate::error::{usage, Result};
use crate::hyperboloid::{check_dim, tangent_frame, tangent_toward, HPoint, Hyperplane, Line};
use crate::planar::{quarter_turn_tangent, rotate, signed_angle};
use crate::vector::Vector;

/// Unit vectors of `R^n` pointing to the vertices of a regular simplex
/// centered at the origin.
fn simplex_directions(n: usize) -> Vec<Vec<f64>> {
    // Rows of the Helmert basis of the sum-zero hyperplane of R^(n+1).
    let mut dirs = vec![vec![0.0; n]; n + 1];
    for k in 1..=n {
        let s = 1.0 / ((k * (k + 1)) as f64).sqrt();
        for (i, d) in dirs.iter_mut().enumerate() {
            d[k - 1] = if i < k {
                s
            } else if i == k {
                -(k as f64) * s
            } else {
                0.0
            };
        }
    }
    for d in &mut dirs {
        let r = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        d.iter_mut().for_each(|x| *x /= r);
    }
    dirs
}

/// Regular simplex of edge length `d` in `H^n` centered at the apex.
///
/// Vertices sit at distance `rho` from the apex in the directions of a
/// Euclidean regular simplex, whose directions have mutual inner product
/// `-1/n`; then `cosh d = 1 + sinh^2 rho (n + 1) / n`.
pub fn regular_simplex_body(n: usize, d: f64) -> Result<Body> {
    check_dim(n)?;
    if n < 2 {
        return Err(usage("simplex dimension must be at least 2"));
    }
    if !(d > 0.0) {
        return Err(usage(format!("edge length must be positive, got {d}")));
    }
    let rho = ((d.cosh() - 1.0) * n as f64 / (n as f64 + 1.0)).sqrt().asinh();
    let (s, c) = (rho.sinh(), rho.cosh());
    let pts: Vec<HPoint> = simplex_directions(n)
        .into_iter()
        .map(|dir| {
            let mut v: Vec<f64> = dir.iter().map(|x| x * s).collect();
            v.push(c);
            HPoint::from_timelike_unchecked(Vector::from_slice(&v))
        })
        .collect();
    Body::hull(&pts)
}

/// Interior angle of the regular triangle of side `d`.
pub fn triangle_angle(d: f64) -> f64 {
    (d.cosh() / (d.cosh() + 1.0)).acos()
}

/// Defect of the polygonal Reuleaux triangle: distance from an arc to the
/// chords between its `m` samples.
pub fn reuleaux_sag(d: f64, m: usize) -> f64 {
    let half = triangle_angle(d) / (2.0 * (m - 1) as f64);
    d - (d.tanh() * half.cos()).atanh()
}

/// Samples `count` points on the circle of radius `r` about `c` from the
/// direction of `a` to the direction of `b`, both ends included.
pub(crate) fn arc_points(c: &HPoint, a: &HPoint, b: &HPoint, r: f64, count: usize) -> Result<Vec<HPoint>> {
    let ta = *tangent_toward(c, a)?.vec();
    let tb = *tangent_toward(c, b)?.vec();
    let alpha = signed_angle(c, &ta, &tb);
    let count = count.max(2);
    Ok((0..count)
        .map(|j| rotate(c, &ta, alpha * j as f64 / (count - 1) as f64).point_at(r))
        .collect())
}

/// Polygonal Reuleaux triangle of width `d`: the hull of `m` samples on
/// each of the three arcs bounding the intersection of the balls of radius
/// `d` about the vertices of the regular triangle.
pub fn reuleaux_triangle(d: f64, m: usize) -> Result<Body> {
    if m < 8 {
        return Err(usage(format!("arc resolution must be at least 8, got {m}")));
    }
    let tri = regular_simplex_body(2, d)?;
    let v = tri.vertices();
    let mut pts = Vec::with_capacity(3 * m);
    for k in 0..3 {
        pts.extend(arc_points(&v[k], &v[(k + 1) % 3], &v[(k + 2) % 3], d, m)?);
    }
    Body::hull(&pts)
}

/// A ball together with two ultraparallel tangent lines and the hull of the
/// ball with the feet of their common perpendicular.
#[derive(Clone, Debug)]
pub struct Prop8 {
    pub ball: Body,
    pub center: HPoint,
    pub radius: f64,
    /// The common perpendicular, parametrized from the foot of the center.
    pub perpendicular: Line,
    /// Half the distance between the feet.
    pub half_gap: f64,
    pub feet: [HPoint; 2],
    /// Tangent lines at the feet, oriented with the body on the
    /// nonnegative side.
    pub tangents: [Hyperplane; 2],
    pub body: Body,
}

/// The non-monotonicity example in `H^2`: a ball of radius `r` about the
/// apex and the hull `K` of the ball with the feet `y1, y2` of the common
/// perpendicular of two lines tangent to the ball.
///
/// The perpendicular runs at distance `h = 1.5 r` from the center. With
/// `sinh a = sinh r / cosh h` the lines orthogonal to it at `+-a` are
/// tangent to the ball (Lambert quadrilateral), so both support `K` and
/// the Santaló width of `K` at `y1` is `2a < 2r`.
pub fn prop8_body(r: f64, m: usize) -> Result<Prop8> {
    if !(r > 0.0) {
        return Err(usage(format!("radius must be positive, got {r}")));
    }
    let center = HPoint::apex(2);
    let ball = ball_body(&center, r, m)?;
    let h = 1.5 * r;
    let frame = tangent_frame(&center);
    let foot = frame[0].point_at(h);
    let dir = quarter_turn_tangent(&frame[0].transported(h));
    let perpendicular = Line::new(dir);
    let a = (r.sinh() / h.cosh()).asinh();
    let feet = [perpendicular.point_at(a), perpendicular.point_at(-a)];
    debug_assert!(foot.distance(&perpendicular.point_at(0.0)) < 1e-12);
    let tangents = [
        perpendicular.orthogonal_hyperplane(a),
        perpendicular.orthogonal_hyperplane(-a).flipped(),
    ];
    let mut pts = ball.vertices().to_vec();
    pts.extend_from_slice(&feet);
    let body = Body::hull(&pts)?;
    Ok(Prop8 {
        ball,
        center,
        radius: r,
        perpendicular,
        half_gap: a,
        feet,
        tangents,
        body,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_edges_have_length_d() {
        for n in 2..=5 {
            let s = regular_simplex_body(n, 1.1).unwrap();
            assert_eq!(s.vertices().len(), n + 1);
            for i in 0..=n {
                for j in i + 1..=n {
                    let d = s.vertices()[i].distance(&s.vertices()[j]);
                    assert!((d - 1.1).abs() < 1e-12, "{n}: {d}");
                }
            }
        }
    }

    #[test]
    fn triangle_angle_matches_law_of_cosines() {
        let d: f64 = 0.7;
        let t = regular_simplex_body(2, d).unwrap();
        let v = t.vertices();
        let a = tangent_toward(&v[0], &v[1]).unwrap();
        let b = tangent_toward(&v[0], &v[2]).unwrap();
        assert!((a.angle_to(&b) - triangle_angle(d)).abs() < 1e-12);
    }

    #[test]
    fn reuleaux_contains_triangle_and_has_width_d() {
        let r = reuleaux_triangle(1.0, 64).unwrap();
        let t = regular_simplex_body(2, 1.0).unwrap();
        for v in t.vertices() {
            assert!(r.contains_point(v, 1e-12));
        }
        assert!((r.diameter() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn prop8_tangent_lines_support_both_bodies() {
        let p = prop8_body(1.0, 256).unwrap();
        for h in &p.tangents {
            for v in p.body.vertices() {
                assert!(h.side(v) >= -1e-12);
            }
            let near = p.ball.vertices().iter().map(|v| h.side(v).asinh()).fold(f64::INFINITY, f64::min);
            assert!(near < 1e-3);
        }
        assert!((p.feet[0].distance(&p.feet[1]) - 2.0 * p.half_gap).abs() < 1e-12);
        assert!(2.0 * p.half_gap < 2.0);
    }
}
