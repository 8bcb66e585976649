//! Helpers specific to the hyperbolic plane (`n = 2`).

use crate::error::{usage, Result};
use crate::hyperboloid::{HPoint, UnitTangent};
use crate::vector::Vector;

pub(crate) fn require_planar(n: usize, what: &str) -> Result<()> {
    if n == 2 {
        Ok(())
    } else {
        Err(usage(format!("{what} is only defined in the hyperbolic plane (got n = {n})")))
    }
}

fn det3(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Signed angle from `t1` to `t2` in `T_p`, counter-clockwise positive
/// (the orientation for which `det(e, e1, e2) = 1`).
pub fn signed_angle(p: &HPoint, t1: &Vector, t2: &Vector) -> f64 {
    let c = -t1.lorentz(t2);
    let s = det3(p.coords(), t1, t2);
    s.atan2(c)
}

/// The tangent obtained by rotating `t` by a right angle counter-clockwise.
pub fn quarter_turn(p: &HPoint, t: &Vector) -> Vector {
    // The Lorentz orthogonal complement of span(p, t) is spanned by the
    // Euclidean cross product of G p and G t, G = diag(-1, -1, 1).
    let gp = [-p.coords()[0], -p.coords()[1], p.coords()[2]];
    let gt = [-t[0], -t[1], t[2]];
    let w = Vector::from_slice(&[
        gp[1] * gt[2] - gp[2] * gt[1],
        gp[2] * gt[0] - gp[0] * gt[2],
        gp[0] * gt[1] - gp[1] * gt[0],
    ]);
    let q = (-w.lorentz(&w)).sqrt();
    let w = w * (1.0 / q);
    if det3(p.coords(), t, &w) < 0.0 {
        -w
    } else {
        w
    }
}

/// [`quarter_turn`] for a unit tangent.
pub fn quarter_turn_tangent(u: &UnitTangent) -> UnitTangent {
    UnitTangent::from_parts_unchecked(*u.base(), quarter_turn(u.base(), u.vec()))
}

/// `t` rotated by angle `theta` in `T_p`.
pub fn rotate(p: &HPoint, t: &Vector, theta: f64) -> UnitTangent {
    let j = quarter_turn(p, t);
    UnitTangent::from_parts_unchecked(*p, *t * theta.cos() + j * theta.sin())
}

/// The half-turn (point reflection) about `m`, applied to a vector.
#[inline]
pub fn half_turn(m: &HPoint, x: &Vector) -> Vector {
    *m.coords() * (2.0 * m.form(x)) - *x
}
