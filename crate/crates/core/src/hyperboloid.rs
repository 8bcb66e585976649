//! Hyperboloid model of `H^n`: points are future unit time-like vectors of
//! the Lorentz form `B(x, y) = ts - <x0, y0>`, with the last coordinate
//! playing the role of the apex `e`.
//!
//! Everything in this module is an exact formula; the only numerical care
//! taken is re-projection onto the hyperboloid after constructions and
//! clamping of inverse hyperbolic functions when the argument misses the
//! domain by roundoff.

use serde::{Deserialize, Serialize};

use crate::error::{degenerate, domain, usage, Result};
use crate::vector::{Vector, MAX_DIM, MIN_DIM};

/// Tolerance for the unit-norm invariants after renormalization.
pub const EPS_NORM: f64 = 1e-12;

/// Lorentz bilinear form on raw coordinate slices.
pub fn lorentz_form(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(usage(format!(
            "dimension mismatch: {} vs {} coordinates",
            x.len(),
            y.len()
        )));
    }
    if x.len() < MIN_DIM + 1 || x.len() > MAX_DIM + 1 {
        return Err(usage(format!(
            "unsupported ambient length {} (need n+1 with {MIN_DIM} <= n <= {MAX_DIM})",
            x.len()
        )));
    }
    Ok(Vector::from_slice(x).lorentz(&Vector::from_slice(y)))
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(usage(format!(
            "dimension {n} outside supported range {MIN_DIM}..={MAX_DIM}"
        )))
    }
}

/// A point of `H^n`.
#[derive(Clone, Copy, PartialEq)]
pub struct HPoint(Vector);

impl std::fmt::Debug for HPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HPoint{:?}", self.0)
    }
}

impl HPoint {
    /// The apex `e = (0, …, 0, 1)` of `H^n`.
    pub fn apex(n: usize) -> Self {
        HPoint(Vector::basis(n + 1, n))
    }

    /// Validates hyperboloid coordinates and re-projects them.
    ///
    /// `tol` bounds the admissible `|B(x,x) - 1|` before re-projection.
    pub fn new(coords: &[f64], tol: f64) -> Result<Self> {
        check_dim(coords.len().saturating_sub(1))?;
        let v = Vector::from_slice(coords);
        if !v.is_finite() {
            return Err(domain("non-finite hyperboloid coordinates"));
        }
        if v.time() < 1.0 - tol {
            return Err(domain(format!(
                "e-component {} < 1: not on the upper sheet",
                v.time()
            )));
        }
        let q = v.lorentz(&v);
        if (q - 1.0).abs() > tol * v.time().powi(2).max(1.0) {
            return Err(domain(format!("B(x,x) = {q}, expected 1")));
        }
        Ok(Self::lift(v.space()))
    }

    /// The point whose spatial part (coordinates orthogonal to `e`) is
    /// `space`. This is the canonical re-projection onto the hyperboloid.
    pub fn lift(space: Vector) -> Self {
        let t = (1.0 + space.norm_sq()).sqrt();
        HPoint(space.push(t))
    }

    /// Normalizes a vector known to be future time-like by construction.
    #[inline]
    pub(crate) fn from_timelike_unchecked(v: Vector) -> Self {
        let q = v.lorentz(&v);
        Self::lift((v * (1.0 / q.sqrt())).space())
    }

    pub fn from_klein(k: &[f64]) -> Result<Self> {
        check_dim(k.len())?;
        let kv = Vector::from_slice(k);
        let r2 = kv.norm_sq();
        if !(r2 < 1.0) {
            return Err(domain(format!(
                "Klein coordinates have norm {} >= 1 (ideal or exterior point)",
                r2.sqrt()
            )));
        }
        Ok(Self::lift(kv * (1.0 / (1.0 - r2).sqrt())))
    }

    pub fn from_poincare(p: &[f64]) -> Result<Self> {
        check_dim(p.len())?;
        let pv = Vector::from_slice(p);
        let r2 = pv.norm_sq();
        if !(r2 < 1.0) {
            return Err(domain(format!(
                "Poincare coordinates have norm {} >= 1 (ideal or exterior point)",
                r2.sqrt()
            )));
        }
        Ok(Self::lift(pv * (2.0 / (1.0 - r2))))
    }

    #[inline]
    pub fn coords(&self) -> &Vector {
        &self.0
    }

    /// Hyperbolic dimension `n`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    #[inline]
    pub fn klein(&self) -> Vector {
        self.0.space() * (1.0 / self.0.time())
    }

    #[inline]
    pub fn poincare(&self) -> Vector {
        self.0.space() * (1.0 / (1.0 + self.0.time()))
    }

    #[inline]
    pub fn form(&self, other: &Vector) -> f64 {
        self.0.lorentz(other)
    }

    /// Geodesic distance.
    #[inline]
    pub fn distance(&self, other: &HPoint) -> f64 {
        let b = self.0.lorentz(&other.0);
        if b < 1.5 {
            // 2 asinh(|p - q|/2) avoids the cancellation of acosh near 1.
            let d = self.0 - other.0;
            let s = (-d.lorentz(&d)).max(0.0).sqrt();
            2.0 * (0.5 * s).asinh()
        } else {
            b.acosh()
        }
    }
}

/// Hyperbolic distance between two points.
pub fn h_distance(p: &HPoint, q: &HPoint) -> f64 {
    p.distance(q)
}

/// A unit tangent vector `v` at `base`: `B(v, base) = 0`, `B(v, v) = -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitTangent {
    base: HPoint,
    vec: Vector,
}

impl UnitTangent {
    /// Checks the tangent invariants within `tol` and renormalizes.
    pub fn new(base: HPoint, vec: &[f64], tol: f64) -> Result<Self> {
        let v = Vector::from_slice(vec);
        if v.len() != base.0.len() {
            return Err(usage("tangent and base point have different dimensions"));
        }
        let scale = base.0.time().max(1.0);
        if base.form(&v).abs() > tol * scale * v.norm().max(1.0) {
            return Err(usage("vector is not tangent at the base point"));
        }
        if (v.lorentz(&v) + 1.0).abs() > tol * scale * scale {
            return Err(usage("tangent vector is not unit (B(v,v) != -1)"));
        }
        Self::project(base, v)
    }

    /// Projects an arbitrary vector onto `T_base` and normalizes it.
    pub fn project(base: HPoint, v: Vector) -> Result<Self> {
        let w = v.axpy(-base.form(&v), &base.0);
        let q = -w.lorentz(&w);
        if !(q > 1e-300) || !w.is_finite() {
            return Err(degenerate("tangent direction has zero length"));
        }
        Ok(UnitTangent {
            base,
            vec: w * (1.0 / q.sqrt()),
        })
    }

    #[inline]
    pub(crate) fn from_parts_unchecked(base: HPoint, vec: Vector) -> Self {
        UnitTangent { base, vec }
    }

    #[inline]
    pub fn base(&self) -> &HPoint {
        &self.base
    }

    #[inline]
    pub fn vec(&self) -> &Vector {
        &self.vec
    }

    /// `base cosh t + vec sinh t`, re-projected onto the hyperboloid.
    #[inline]
    pub fn point_at(&self, t: f64) -> HPoint {
        let v = self.base.0 * t.cosh() + self.vec * t.sinh();
        HPoint::lift(v.space())
    }

    /// The unit tangent of the same geodesic at parameter `t`.
    pub fn transported(&self, t: f64) -> UnitTangent {
        let p = self.point_at(t);
        let v = self.base.0 * t.sinh() + self.vec * t.cosh();
        UnitTangent::project(p, v).unwrap_or(UnitTangent { base: p, vec: v })
    }

    pub fn negated(&self) -> UnitTangent {
        UnitTangent {
            base: self.base,
            vec: -self.vec,
        }
    }

    /// Angle between two unit tangents at the same base point.
    pub fn angle_to(&self, other: &UnitTangent) -> f64 {
        (-self.vec.lorentz(&other.vec)).clamp(-1.0, 1.0).acos()
    }
}

/// Point at arclength `t` along the geodesic through `z` with direction `u`.
pub fn geodesic_point(z: &HPoint, u: &UnitTangent, t: f64) -> Result<HPoint> {
    if z.0.max_abs_diff(&u.base.0) > 1e-9 * z.0.time() {
        return Err(usage("tangent vector is not based at the given point"));
    }
    Ok(u.point_at(t))
}

/// Unit tangent at `p` pointing along the geodesic segment towards `q`.
pub fn tangent_toward(p: &HPoint, q: &HPoint) -> Result<UnitTangent> {
    let d = p.distance(q);
    if d <= EPS_NORM * p.0.time() {
        return Err(degenerate("coincident points have no connecting direction"));
    }
    // q - B(p,q) p, written to keep precision for nearby points.
    let b = p.form(&q.0);
    let w = (q.0 - p.0).axpy(1.0 - b, &p.0);
    UnitTangent::project(*p, w)
}

/// An orthonormal basis of the tangent space `T_p` with respect to `-B`.
pub fn tangent_frame(p: &HPoint) -> Vec<UnitTangent> {
    let n = p.dim();
    let mut frame: Vec<UnitTangent> = Vec::with_capacity(n);
    for i in 0..n {
        let mut w = Vector::basis(n + 1, i);
        w = w.axpy(-p.form(&w), &p.0);
        for f in &frame {
            // -B is the inner product on T_p.
            let c = -f.vec.lorentz(&w);
            w = w.axpy(-c, &f.vec);
        }
        let q = -w.lorentz(&w);
        frame.push(UnitTangent {
            base: *p,
            vec: w * (1.0 / q.sqrt()),
        });
    }
    frame
}

/// Tangent at `p` given by coordinates in the frame of [`tangent_frame`].
pub fn tangent_from_frame(frame: &[UnitTangent], coeffs: &[f64]) -> Result<UnitTangent> {
    let base = *frame[0].base();
    let mut v = Vector::zeros(base.0.len());
    for (f, c) in frame.iter().zip(coeffs) {
        v = v.axpy(*c, &f.vec);
    }
    UnitTangent::project(base, v)
}

/// A geodesic line, parametrized by arclength from its anchor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    dir: UnitTangent,
}

impl Line {
    pub fn new(direction: UnitTangent) -> Self {
        Line { dir: direction }
    }

    pub fn through(p: &HPoint, q: &HPoint) -> Result<Self> {
        Ok(Line {
            dir: tangent_toward(p, q)?,
        })
    }

    #[inline]
    pub fn anchor(&self) -> &HPoint {
        &self.dir.base
    }

    #[inline]
    pub fn direction(&self) -> &UnitTangent {
        &self.dir
    }

    #[inline]
    pub fn point_at(&self, t: f64) -> HPoint {
        self.dir.point_at(t)
    }

    pub fn tangent_at(&self, t: f64) -> UnitTangent {
        self.dir.transported(t)
    }

    pub fn reversed(&self) -> Line {
        Line {
            dir: self.dir.negated(),
        }
    }

    /// Foot-point parameter of `x` (see [`foot_on_line`]).
    #[inline]
    pub fn foot_param(&self, x: &Vector) -> f64 {
        let a = self.dir.base.0.lorentz(x);
        let v = self.dir.vec.lorentz(x);
        // tanh t* = -v / a; |v| < a for x on the hyperboloid.
        0.5 * ((a - v) / (a + v)).ln()
    }

    /// The hyperplane orthogonal to this line at parameter `t`, oriented so
    /// that its normal points towards increasing parameters (so the side
    /// of smaller parameters is the nonnegative one).
    pub fn orthogonal_hyperplane(&self, t: f64) -> Hyperplane {
        let tan = self.tangent_at(t);
        Hyperplane { normal: tan.vec }
    }
}

/// Nearest point of `line` to `x` and its arclength parameter.
pub fn foot_on_line(x: &HPoint, line: &Line) -> (HPoint, f64) {
    let t = line.foot_param(&x.0);
    (line.point_at(t), t)
}

/// Two ideal points of `line`: `forward` in the direction of the tangent,
/// `backward` in the opposite direction.
pub fn ideal_points_of_line(line: &Line) -> (IdealPoint, IdealPoint) {
    let p = line.anchor().0;
    let v = line.dir.vec;
    (
        IdealPoint::from_null_unchecked(p + v),
        IdealPoint::from_null_unchecked(p - v),
    )
}

/// An oriented hyperplane `{x : B(x, u) = 0}` with unit space-like normal.
///
/// The half-space `B(x, u) >= 0` is its nonnegative side; `u` and `-u`
/// describe the same point set with opposite orientations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyperplane {
    normal: Vector,
}

impl Hyperplane {
    /// Validates `B(u,u) = -1` within `tol` and renormalizes.
    pub fn new(normal: &[f64], tol: f64) -> Result<Self> {
        let u = Vector::from_slice(normal);
        check_dim(u.len().saturating_sub(1))?;
        let q = u.lorentz(&u);
        if (q + 1.0).abs() > tol * u.norm_sq().max(1.0) {
            return Err(domain(format!("hyperplane normal has B(u,u) = {q}, expected -1")));
        }
        Ok(Hyperplane {
            normal: u * (1.0 / (-q).sqrt()),
        })
    }

    /// Normalizes any space-like vector into a hyperplane normal.
    pub fn from_spacelike(u: Vector) -> Result<Self> {
        let q = u.lorentz(&u);
        if !(q < 0.0) || !u.is_finite() {
            return Err(degenerate(format!(
                "normal is not space-like (B(u,u) = {q}); the hyperplane misses H^n"
            )));
        }
        Ok(Hyperplane {
            normal: u * (1.0 / (-q).sqrt()),
        })
    }

    /// The hyperplane through `t.base()` with normal `t`.
    pub fn through_with_normal(t: &UnitTangent) -> Self {
        Hyperplane { normal: t.vec }
    }

    #[inline]
    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len() - 1
    }

    #[inline]
    pub fn side(&self, x: &HPoint) -> f64 {
        x.form(&self.normal)
    }

    pub fn flipped(&self) -> Hyperplane {
        Hyperplane {
            normal: -self.normal,
        }
    }

    /// Orthogonal projection of `x` onto the hyperplane.
    pub fn project(&self, x: &HPoint) -> HPoint {
        let s = x.form(&self.normal);
        HPoint::from_timelike_unchecked(x.0.axpy(s, &self.normal))
    }

    /// The unit normal as a tangent vector at a point of the hyperplane.
    pub fn normal_at(&self, p: &HPoint) -> Result<UnitTangent> {
        UnitTangent::project(*p, self.normal)
    }
}

/// Signed distance of `x` from `h`: `asinh B(x, u)`, positive on the
/// nonnegative side of the orientation.
#[inline]
pub fn signed_hyperplane_distance(x: &HPoint, h: &Hyperplane) -> f64 {
    x.form(&h.normal).asinh()
}

/// Distance between two disjoint hyperplanes along their common
/// perpendicular.
pub fn hyperplane_gap(h1: &Hyperplane, h2: &Hyperplane) -> Result<f64> {
    let c = h1.normal.lorentz(&h2.normal).abs();
    if c <= 1.0 + 1e-12 {
        return Err(domain(format!(
            "hyperplanes intersect or are asymptotically parallel (|B(u1,u2)| = {c})"
        )));
    }
    Ok(c.acosh())
}

/// An ideal point, stored as the null vector `z` with `B(z, e) = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdealPoint {
    null_vec: Vector,
}

impl IdealPoint {
    /// Ideal point in direction `dir` (a nonzero vector of length `n`) as seen
    /// from the apex; this is the boundary point `dir/|dir|` of both ball
    /// models.
    pub fn from_direction(dir: &[f64]) -> Result<Self> {
        check_dim(dir.len())?;
        let d = Vector::from_slice(dir);
        let r = d.norm();
        if !(r > 0.0) || !r.is_finite() {
            return Err(degenerate("ideal point direction has zero length"));
        }
        Ok(IdealPoint {
            null_vec: (d * (1.0 / r)).push(1.0),
        })
    }

    /// Validates a null vector (within `tol`) and rescales it canonically.
    pub fn from_null(z: &[f64], tol: f64) -> Result<Self> {
        let v = Vector::from_slice(z);
        check_dim(v.len().saturating_sub(1))?;
        if !(v.time() > 0.0) {
            return Err(domain("null vector must satisfy B(z, e) > 0"));
        }
        let v = v * (1.0 / v.time());
        if v.lorentz(&v).abs() > tol {
            return Err(domain("vector is not null"));
        }
        Self::from_direction(v.space().as_slice())
    }

    #[inline]
    pub(crate) fn from_null_unchecked(z: Vector) -> Self {
        let s = z.space();
        let r = s.norm();
        IdealPoint {
            null_vec: (s * (1.0 / r)).push(1.0),
        }
    }

    #[inline]
    pub fn null_vec(&self) -> &Vector {
        &self.null_vec
    }

    /// Unit vector of the boundary sphere of the ball models.
    pub fn direction(&self) -> Vector {
        self.null_vec.space()
    }

    pub fn dim(&self) -> usize {
        self.null_vec.len() - 1
    }

    /// Unit tangent at `p` pointing along the ray from `p` to this ideal
    /// point.
    pub fn tangent_from(&self, p: &HPoint) -> UnitTangent {
        let b = p.form(&self.null_vec);
        let w = self.null_vec * (1.0 / b) - p.0;
        UnitTangent::project(*p, w).unwrap_or(UnitTangent {
            base: *p,
            vec: w,
        })
    }

    /// The line through `p` with this ideal point as forward end.
    pub fn line_from(&self, p: &HPoint) -> Line {
        Line::new(self.tangent_from(p))
    }
}

/// Busemann coordinate of `x` relative to `base`: increases by `t` when
/// moving distance `t` from `base` towards `i`; its level sets are the
/// horospheres at `i`.
#[inline]
pub fn busemann_coordinate(i: &IdealPoint, x: &HPoint, base: &HPoint) -> f64 {
    (base.form(&i.null_vec) / x.form(&i.null_vec)).ln()
}

/// The horoball `{x : B(z, x) <= level}` at an ideal point `i`.
///
/// Smaller levels are horoballs closer to `i`; two horospheres at levels
/// `r > s` are at distance `ln(r/s)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Horoball {
    apex: IdealPoint,
    level: f64,
}

impl Horoball {
    pub fn new(apex: IdealPoint, level: f64) -> Result<Self> {
        if !(level > 0.0) || !level.is_finite() {
            return Err(usage(format!("horoball level must be positive, got {level}")));
        }
        Ok(Horoball { apex, level })
    }

    pub fn apex(&self) -> &IdealPoint {
        &self.apex
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn contains(&self, x: &HPoint, tol: f64) -> bool {
        x.form(&self.apex.null_vec) <= self.level * (1.0 + tol)
    }

    /// Distance between the horospheres of two horoballs at the same apex.
    pub fn gap(&self, other: &Horoball) -> Result<f64> {
        if self.apex.null_vec.max_abs_diff(&other.apex.null_vec) > 1e-12 {
            return Err(usage("horoballs have different ideal points"));
        }
        Ok((self.level / other.level).ln().abs())
    }
}

/// Coordinate models of `H^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Hyperboloid,
    Poincare,
    Klein,
}

impl Model {
    /// Coordinate arity for hyperbolic dimension `n`.
    pub fn arity(&self, n: usize) -> usize {
        match self {
            Model::Hyperboloid => n + 1,
            Model::Poincare | Model::Klein => n,
        }
    }

    /// Reads coordinates in this model as a point.
    pub fn to_point(&self, coords: &[f64], tol: f64) -> Result<HPoint> {
        match self {
            Model::Hyperboloid => HPoint::new(coords, tol),
            Model::Poincare => HPoint::from_poincare(coords),
            Model::Klein => HPoint::from_klein(coords),
        }
    }

    /// Writes a point in this model's coordinates.
    pub fn from_point(&self, p: &HPoint) -> Vector {
        match self {
            Model::Hyperboloid => *p.coords(),
            Model::Poincare => p.poincare(),
            Model::Klein => p.klein(),
        }
    }
}

impl std::str::FromStr for Model {
    type Err = crate::error::GeomError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hyperboloid" => Ok(Model::Hyperboloid),
            "poincare" => Ok(Model::Poincare),
            "klein" => Ok(Model::Klein),
            other => Err(usage(format!("unknown model '{other}'"))),
        }
    }
}

/// Converts coordinates between models.
pub fn convert_model(coords: &[f64], from: Model, to: Model) -> Result<Vec<f64>> {
    let p = from.to_point(coords, 1e-9)?;
    Ok(to.from_point(&p).to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(k: &[f64]) -> HPoint {
        HPoint::from_klein(k).unwrap()
    }

    #[test]
    fn apex_form_is_one() {
        let e = HPoint::apex(3);
        assert_eq!(lorentz_form(e.coords().as_slice(), e.coords().as_slice()).unwrap(), 1.0);
    }

    #[test]
    fn lorentz_form_rejects_mismatched_dimensions() {
        assert!(matches!(
            lorentz_form(&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 1.0]),
            Err(crate::GeomError::Usage(_))
        ));
    }

    #[test]
    fn distance_to_self_is_zero() {
        let p = pt(&[0.3, -0.4]);
        assert_eq!(p.distance(&p), 0.0);
    }

    #[test]
    fn geodesic_point_has_arclength_parameter() {
        let z = pt(&[0.1, 0.2]);
        let u = tangent_frame(&z)[0];
        let q = geodesic_point(&z, &u, 1.5).unwrap();
        assert!((z.distance(&q) - 1.5).abs() < 1e-12);
        assert_eq!(geodesic_point(&z, &u, 0.0).unwrap().coords().max_abs_diff(z.coords()), 0.0);
    }

    #[test]
    fn geodesic_point_rejects_foreign_tangent() {
        let z = pt(&[0.1, 0.2]);
        let u = tangent_frame(&pt(&[0.5, 0.0]))[0];
        assert!(geodesic_point(&z, &u, 1.0).is_err());
    }

    #[test]
    fn tangent_toward_rejects_coincident_points() {
        let p = pt(&[0.2, 0.2]);
        assert!(matches!(tangent_toward(&p, &p), Err(crate::GeomError::Degenerate(_))));
    }

    #[test]
    fn ideal_points_of_line_through_apex() {
        let e = HPoint::apex(2);
        let v = tangent_frame(&e)[0];
        let (fwd, bwd) = ideal_points_of_line(&Line::new(v));
        // e + v = (1, 0, 1)
        assert!(fwd.null_vec().max_abs_diff(&Vector::from_slice(&[1.0, 0.0, 1.0])) < 1e-15);
        assert!(bwd.null_vec().max_abs_diff(&Vector::from_slice(&[-1.0, 0.0, 1.0])) < 1e-15);
        let (f2, b2) = ideal_points_of_line(&Line::new(v).reversed());
        assert_eq!(f2, bwd);
        assert_eq!(b2, fwd);
    }

    #[test]
    fn busemann_gap_between_horospheres_is_log_ratio() {
        let i = IdealPoint::from_direction(&[0.6, 0.8]).unwrap();
        let base = pt(&[0.1, -0.3]);
        let line = i.line_from(&base);
        // Points on the horospheres at levels r > s along the ray to i.
        let (r, s) = (2.5, 0.7);
        let a = line.point_at(-(r / base.form(i.null_vec())).ln());
        let c = line.point_at(-(s / base.form(i.null_vec())).ln());
        assert!((a.form(i.null_vec()) - r).abs() < 1e-12);
        let gap = busemann_coordinate(&i, &c, &base) - busemann_coordinate(&i, &a, &base);
        assert!((gap - (r / s).ln()).abs() < 1e-12);
        let ha = Horoball::new(i, r).unwrap();
        let hc = Horoball::new(i, s).unwrap();
        assert!((ha.gap(&hc).unwrap() - (r / s).ln()).abs() < 1e-15);
        assert!(hc.contains(&c, 1e-12) && !hc.contains(&a, 1e-12));
    }

    #[test]
    fn busemann_at_base_is_zero() {
        let i = IdealPoint::from_direction(&[0.0, 1.0, 0.0]).unwrap();
        let b = pt(&[0.2, 0.1, 0.3]);
        assert_eq!(busemann_coordinate(&i, &b, &b), 0.0);
    }

    #[test]
    fn horoball_level_must_be_positive() {
        let i = IdealPoint::from_direction(&[1.0, 0.0]).unwrap();
        assert!(Horoball::new(i, 0.0).is_err());
    }

    #[test]
    fn hyperplane_gap_rejects_identical_planes() {
        let h = Hyperplane::new(&[1.0, 0.0, 0.0], 1e-12).unwrap();
        assert!(matches!(hyperplane_gap(&h, &h), Err(crate::GeomError::Domain(_))));
    }

    #[test]
    fn signed_distance_of_point_on_plane_is_zero() {
        let h = Hyperplane::new(&[1.0, 0.0, 0.0], 1e-12).unwrap();
        let x = pt(&[0.0, 0.7]);
        assert!(signed_hyperplane_distance(&x, &h).abs() < 1e-15);
    }

    #[test]
    fn signed_distance_along_normal() {
        // Moving along +u from a point of H decreases B(x,u): value -t.
        let z = pt(&[0.0, 0.4]);
        let h = Hyperplane::new(&[1.0, 0.0, 0.0], 1e-12).unwrap();
        let u = h.normal_at(&z).unwrap();
        let x = u.point_at(0.8);
        assert!((signed_hyperplane_distance(&x, &h) + 0.8).abs() < 1e-12);
        let y = u.point_at(-0.8);
        assert!((signed_hyperplane_distance(&y, &h) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn ball_model_rejects_boundary_points() {
        assert!(matches!(HPoint::from_poincare(&[1.0, 0.0]), Err(crate::GeomError::Domain(_))));
        assert!(convert_model(&[0.6, 0.8], Model::Klein, Model::Poincare).is_err());
    }

    #[test]
    fn apex_maps_to_ball_centers() {
        let e = HPoint::apex(2);
        assert_eq!(e.klein().as_slice(), &[0.0, 0.0]);
        assert_eq!(e.poincare().as_slice(), &[0.0, 0.0]);
        let back = convert_model(&[0.0, 0.0], Model::Poincare, Model::Hyperboloid).unwrap();
        assert_eq!(back, vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn hpoint_new_rejects_off_shell() {
        assert!(HPoint::new(&[0.0, 0.0, 1.1_f64.sqrt() * 1.0], 1e-6).is_err());
        assert!(HPoint::new(&[0.0, 0.0, -1.0], 1e-6).is_err());
    }

    #[test]
    fn unit_tangent_checks_invariants() {
        let e = HPoint::apex(2);
        assert!(UnitTangent::new(e, &[1.0, 0.0, 0.0], 1e-12).is_ok());
        assert!(UnitTangent::new(e, &[2.0, 0.0, 0.0], 1e-12).is_err());
        assert!(UnitTangent::new(e, &[1.0, 0.0, 0.5], 1e-12).is_err());
    }
}
