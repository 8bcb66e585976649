//! The six width functions of a convex body and their extremal values.
//!
//! Every width is computed from a support function evaluated at the
//! vertices of the body: foot parameters on a line (Santaló), Busemann
//! levels (Fillmore), signed hyperplane distances (Leichtweiss, extended,
//! G. Horváth) and supporting-line gaps (JCJL).

mod extremal;
mod gh;
mod jcjl;
pub(crate) mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::body::{Body, EPS_GEO};
use crate::error::{usage, GeomError, Result};
use crate::hyperboloid::{HPoint, Hyperplane, IdealPoint, Line, UnitTangent};

pub use extremal::{maximal_width, minimal_width, SearchOptions};
pub(crate) use extremal::BoundarySampler;
pub use gh::{gh_line, width_gh, GhResult};
pub use jcjl::{width_jcjl, JcjlOptions, JcjlSolution};

/// The width functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Santalo,
    Fillmore,
    Leichtweiss,
    Extended,
    Jcjl,
    Gh,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Santalo,
        Method::Fillmore,
        Method::Leichtweiss,
        Method::Extended,
        Method::Jcjl,
        Method::Gh,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Santalo => "santalo",
            Method::Fillmore => "fillmore",
            Method::Leichtweiss => "leichtweiss",
            Method::Extended => "extended",
            Method::Jcjl => "jcjl",
            Method::Gh => "gh",
        }
    }

    /// Methods defined only in the hyperbolic plane.
    pub fn planar_only(&self) -> bool {
        matches!(self, Method::Jcjl | Method::Gh)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = GeomError;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| usage(format!("unknown width method '{s}'")))
    }
}

/// Arguments at which a width was evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum WitnessParams {
    Santalo {
        z: HPoint,
        hyperplane: Hyperplane,
    },
    Fillmore {
        ideal: IdealPoint,
    },
    Leichtweiss {
        p: HPoint,
        hyperplane: Hyperplane,
    },
    Extended {
        hyperplane: Hyperplane,
    },
    Jcjl {
        z: HPoint,
        line: Hyperplane,
        opposite: HPoint,
        opposite_line: Hyperplane,
    },
    Gh {
        ideal: IdealPoint,
        second: IdealPoint,
    },
}

fn klein_json(p: &HPoint) -> serde_json::Value {
    serde_json::json!(p.klein().to_vec())
}

fn plane_json(h: &Hyperplane) -> serde_json::Value {
    serde_json::json!({ "normal": h.normal().to_vec() })
}

impl WitnessParams {
    /// Points in Klein coordinates, hyperplanes by their hyperboloid
    /// normals and ideal points by their boundary directions.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            WitnessParams::Santalo { z, hyperplane } => {
                json!({ "z": klein_json(z), "hyperplane": plane_json(hyperplane) })
            }
            WitnessParams::Fillmore { ideal } => json!({ "ideal": ideal.direction().to_vec() }),
            WitnessParams::Leichtweiss { p, hyperplane } => {
                json!({ "p": klein_json(p), "hyperplane": plane_json(hyperplane) })
            }
            WitnessParams::Extended { hyperplane } => json!({ "hyperplane": plane_json(hyperplane) }),
            WitnessParams::Jcjl {
                z,
                line,
                opposite,
                opposite_line,
            } => json!({
                "z": klein_json(z),
                "line": plane_json(line),
                "opposite": klein_json(opposite),
                "opposite_line": plane_json(opposite_line),
            }),
            WitnessParams::Gh { ideal, second } => json!({
                "ideal": ideal.direction().to_vec(),
                "second": second.direction().to_vec(),
            }),
        }
    }

    pub fn method(&self) -> Method {
        match self {
            WitnessParams::Santalo { .. } => Method::Santalo,
            WitnessParams::Fillmore { .. } => Method::Fillmore,
            WitnessParams::Leichtweiss { .. } => Method::Leichtweiss,
            WitnessParams::Extended { .. } => Method::Extended,
            WitnessParams::Jcjl { .. } => Method::Jcjl,
            WitnessParams::Gh { .. } => Method::Gh,
        }
    }
}

/// A width value together with the arguments that realize it.
#[derive(Clone, Debug, PartialEq)]
pub struct WidthWitness {
    pub method: Method,
    pub value: f64,
    pub params: WitnessParams,
    /// Number of width evaluations spent by the search (0 for direct
    /// evaluations and analytic witnesses).
    pub evaluations: usize,
    /// True when the witness comes from a diametral chord rather than the
    /// numerical search.
    pub analytic: bool,
}

impl WidthWitness {
    /// Evaluates the width of `k` at `params`.
    pub fn at(k: &Body, params: WitnessParams) -> Result<Self> {
        let value = evaluate(k, &params, EPS_GEO)?;
        Ok(WidthWitness {
            method: params.method(),
            value,
            params,
            evaluations: 1,
            analytic: false,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "method": self.method,
            "value": self.value,
            "analytic": self.analytic,
            "evaluations": self.evaluations,
            "params": self.params.to_json(),
        })
    }

    /// Evaluates the method again at the stored arguments.
    pub fn reevaluate(&self, k: &Body) -> Result<f64> {
        evaluate(k, &self.params, EPS_GEO)
    }
}

/// Evaluates a width at explicit arguments with incidence tolerance `tol`.
pub fn evaluate(k: &Body, params: &WitnessParams, tol: f64) -> Result<f64> {
    match params {
        WitnessParams::Santalo { z, hyperplane } => width_santalo_tol(k, z, hyperplane, tol),
        WitnessParams::Fillmore { ideal } => width_fillmore(k, ideal),
        WitnessParams::Leichtweiss { p, hyperplane } => width_leichtweiss(k, p, hyperplane),
        WitnessParams::Extended { hyperplane } => width_extended_tol(k, hyperplane, tol),
        WitnessParams::Jcjl {
            line,
            opposite_line,
            ..
        } => crate::hyperboloid::hyperplane_gap(line, opposite_line),
        WitnessParams::Gh { ideal, second } => {
            width_extended_tol(k, &gh_line(ideal, second)?, tol)
        }
    }
}

fn check_same_dim(k: &Body, n: usize) -> Result<()> {
    if k.dim() != n {
        return Err(usage(format!(
            "dimension mismatch: body in H^{}, argument in H^{n}",
            k.dim()
        )));
    }
    Ok(())
}

/// Distance between the two supporting hyperplanes of `k` orthogonal to
/// `line`.
pub fn santalo_along(k: &Body, line: &Line) -> f64 {
    let (lo, hi) = k.support_along_line(line);
    hi - lo
}

/// Santaló width at a boundary point `z` with supporting hyperplane `hz`.
pub fn width_santalo(k: &Body, z: &HPoint, hz: &Hyperplane) -> Result<f64> {
    width_santalo_tol(k, z, hz, EPS_GEO)
}

/// [`width_santalo`] with an explicit incidence tolerance.
pub fn width_santalo_tol(k: &Body, z: &HPoint, hz: &Hyperplane, tol: f64) -> Result<f64> {
    check_same_dim(k, z.dim())?;
    check_same_dim(k, hz.dim())?;
    if hz.side(z).abs() > tol {
        return Err(usage("the point does not lie on the supporting hyperplane"));
    }
    let out = outward_normal(k, hz, tol)?;
    if !k.contains_point(z, tol) {
        return Err(usage("the point is not on the boundary of the body"));
    }
    let dir = UnitTangent::project(*z, out)?;
    Ok(santalo_along(k, &Line::new(dir)))
}

/// Normal of a supporting hyperplane pointing away from the body, as a
/// vector; errors when the hyperplane does not support `k`.
pub(crate) fn outward_normal(
    k: &Body,
    h: &Hyperplane,
    tol: f64,
) -> Result<crate::vector::Vector> {
    let (lo, hi) = side_range(k, h);
    let s = tol.sinh();
    if lo >= -s {
        Ok(*h.normal())
    } else if hi <= s {
        Ok(-*h.normal())
    } else {
        Err(usage(format!(
            "hyperplane does not support the body (vertices on both sides: {:.3e}, {:.3e})",
            lo.asinh(),
            hi.asinh()
        )))
    }
}

fn side_range(k: &Body, h: &Hyperplane) -> (f64, f64) {
    k.vertices()
        .iter()
        .map(|v| h.side(v))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
            (lo.min(s), hi.max(s))
        })
}

/// Fillmore width: distance of the two supporting horospheres at `i`.
pub fn width_fillmore(k: &Body, i: &IdealPoint) -> Result<f64> {
    check_same_dim(k, i.dim())?;
    let (lo, hi) = k.supporting_horoball_levels(i);
    Ok((hi / lo).ln())
}

/// Extended width: thickness of the smallest equidistant slab about `h`
/// containing `k`.
pub fn width_extended(k: &Body, h: &Hyperplane) -> Result<f64> {
    width_extended_tol(k, h, EPS_GEO)
}

pub(crate) fn width_extended_tol(k: &Body, h: &Hyperplane, tol: f64) -> Result<f64> {
    check_same_dim(k, h.dim())?;
    let (lo, hi) = side_range(k, h);
    let (lo, hi) = (lo.asinh(), hi.asinh());
    if lo > tol || hi < -tol {
        return Err(usage(format!(
            "hyperplane misses the body (signed distances in [{lo:.3e}, {hi:.3e}])"
        )));
    }
    Ok(extended_from_range(lo, hi))
}

/// Slab thickness from the signed distance range; a supporting hyperplane
/// contributes only the far side.
#[inline]
pub(crate) fn extended_from_range(lo: f64, hi: f64) -> f64 {
    hi.max(0.0) - lo.min(0.0)
}

/// Leichtweiss width at an interior point `p` and a hyperplane through it.
pub fn width_leichtweiss(k: &Body, p: &HPoint, h: &Hyperplane) -> Result<f64> {
    check_same_dim(k, p.dim())?;
    check_interior(k, p)?;
    if h.side(p).abs() > EPS_GEO {
        return Err(usage("the hyperplane does not pass through the point"));
    }
    width_extended(k, h)
}

pub(crate) fn check_interior(k: &Body, p: &HPoint) -> Result<()> {
    if k.is_degenerate() {
        return Err(usage("a degenerate body has no interior points"));
    }
    let inside = match k.facets() {
        Some(_) => k.facet_clearance(p)? > EPS_GEO,
        None => k.contains_point(p, 0.0),
    };
    if inside {
        Ok(())
    } else {
        Err(usage("the point is not an interior point of the body"))
    }
}
