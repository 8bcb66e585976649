//! Planar scenes for rendering.
//!
//! All coordinates are Klein coordinates in the closed unit disk; points on
//! the unit circle are ideal points. A scene document looks like
//!
//! ```json
//! {
//!   "elements": [
//!     { "kind": "geodesic", "from": [-0.5, 0.2], "to": [0.4, 0.3], "full": true },
//!     { "kind": "circle", "center": [0.1, 0.0], "radius": 0.5,
//!       "style": { "stroke": "#1f77b4" } },
//!     { "kind": "label", "at": [0.1, 0.0], "text": "B" }
//!   ]
//! }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::completeness::Prop8;
use crate::document::{array_item_lines, read, DocumentError};
use crate::hyperboloid::{ideal_points_of_line, Hyperplane};

/// Slack for "inside the closed disk".
const DISK_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Style {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stroke: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fill: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dash: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opacity: Option<f64>,
}

impl Style {
    pub fn stroke(color: &str) -> Self {
        Style {
            stroke: Some(color.into()),
            ..Style::default()
        }
    }

    pub fn with_fill(mut self, color: &str) -> Self {
        self.fill = Some(color.into());
        self
    }

    pub fn with_dash(mut self, dash: &str) -> Self {
        self.dash = Some(dash.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Element {
    /// A convex polygon given by its vertices in boundary order.
    Body {
        vertices: Vec<[f64; 2]>,
        #[serde(default)]
        style: Style,
    },
    /// The segment between two points, or the whole line when `full`.
    Geodesic {
        from: [f64; 2],
        to: [f64; 2],
        #[serde(default)]
        full: bool,
        #[serde(default)]
        style: Style,
    },
    Circle {
        center: [f64; 2],
        radius: f64,
        #[serde(default)]
        style: Style,
    },
    /// The horocycle at the ideal point `ideal` passing through `through`.
    Horocycle {
        ideal: [f64; 2],
        through: [f64; 2],
        #[serde(default)]
        style: Style,
    },
    /// Both curves at distance `distance` from the line through `from` and
    /// `to`.
    HypercyclePair {
        from: [f64; 2],
        to: [f64; 2],
        distance: f64,
        #[serde(default)]
        style: Style,
    },
    Point {
        at: [f64; 2],
        #[serde(default)]
        style: Style,
    },
    Label {
        at: [f64; 2],
        text: String,
        #[serde(default)]
        style: Style,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    #[serde(default)]
    pub elements: Vec<Element>,
}

fn norm(p: &[f64; 2]) -> f64 {
    p[0].hypot(p[1])
}

impl Element {
    fn check(&self) -> Result<(), String> {
        let in_disk = |what: &str, p: &[f64; 2]| -> Result<(), String> {
            if !(p[0].is_finite() && p[1].is_finite()) {
                return Err(format!("{what} has a non-finite coordinate"));
            }
            if norm(p) > 1.0 + DISK_TOL {
                return Err(format!("{what} ({}, {}) lies outside the closed unit disk", p[0], p[1]));
            }
            Ok(())
        };
        let interior = |what: &str, p: &[f64; 2]| -> Result<(), String> {
            in_disk(what, p)?;
            if norm(p) >= 1.0 - DISK_TOL {
                return Err(format!("{what} must be an interior point"));
            }
            Ok(())
        };
        let distinct = |a: &[f64; 2], b: &[f64; 2]| -> Result<(), String> {
            if (a[0] - b[0]).hypot(a[1] - b[1]) < 1e-12 {
                return Err("the two points of a line coincide".into());
            }
            Ok(())
        };
        match self {
            Element::Body { vertices, .. } => {
                if vertices.is_empty() {
                    return Err("a body needs at least one vertex".into());
                }
                for (i, v) in vertices.iter().enumerate() {
                    in_disk(&format!("vertex {i}"), v)?;
                }
            }
            Element::Geodesic { from, to, .. } => {
                in_disk("from", from)?;
                in_disk("to", to)?;
                distinct(from, to)?;
            }
            Element::Circle { center, radius, .. } => {
                interior("center", center)?;
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(format!("radius must be positive and finite, got {radius}"));
                }
            }
            Element::Horocycle { ideal, through, .. } => {
                in_disk("ideal", ideal)?;
                if (norm(ideal) - 1.0).abs() > 1e-9 {
                    return Err("ideal must lie on the unit circle".into());
                }
                interior("through", through)?;
            }
            Element::HypercyclePair { from, to, distance, .. } => {
                in_disk("from", from)?;
                in_disk("to", to)?;
                distinct(from, to)?;
                if !(*distance >= 0.0 && distance.is_finite()) {
                    return Err(format!("distance must be nonnegative and finite, got {distance}"));
                }
            }
            Element::Point { at, .. } | Element::Label { at, .. } => in_disk("point", at)?,
        }
        Ok(())
    }
}

impl Scene {
    pub fn push(&mut self, e: Element) -> &mut Self {
        self.elements.push(e);
        self
    }

    /// Checks every element; `lines` gives the line of each element for
    /// diagnostics.
    pub fn validate(&self, lines: &[usize]) -> Result<(), DocumentError> {
        for (i, e) in self.elements.iter().enumerate() {
            e.check().map_err(|message| DocumentError::Invalid {
                line: lines.get(i).copied(),
                message: format!("element {i}: {message}"),
            })?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let scene: Scene = serde_json::from_str(text)?;
        scene.validate(&array_item_lines(text, "elements"))?;
        Ok(scene)
    }

    pub fn load(path: &Path) -> Result<Self, DocumentError> {
        Scene::parse(&read(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain scene");
        s.push('\n');
        s
    }
}

/// The two ideal endpoints of a line of `H^2`, in Klein coordinates.
pub fn line_endpoints(h: &Hyperplane) -> [[f64; 2]; 2] {
    // B(x, u) = 0 is the chord u_s . k = u_t of the Klein disk.
    let u = h.normal();
    let (a, b, c) = (u[0], u[1], u[2]);
    let s2 = a * a + b * b;
    let foot = [a * c / s2, b * c / s2];
    let half = (1.0 - c * c / s2).max(0.0).sqrt() / s2.sqrt();
    let dir = [-b, a];
    [
        [foot[0] + half * dir[0], foot[1] + half * dir[1]],
        [foot[0] - half * dir[0], foot[1] - half * dir[1]],
    ]
}

fn xy(v: &crate::vector::Vector) -> [f64; 2] {
    [v[0], v[1]]
}

/// The example picture: the disk `B`, the hull `K` with the two feet, the
/// tangent lines at the feet and their common perpendicular.
pub fn prop8_scene(p: &Prop8) -> Scene {
    let mut s = Scene::default();
    let k: Vec<[f64; 2]> = p.body.klein_vertices().iter().map(xy).collect();
    s.push(Element::Body {
        vertices: k,
        style: Style::stroke("#333333").with_fill("#f2c57c"),
    });
    s.push(Element::Circle {
        center: xy(&p.center.klein()),
        radius: p.radius,
        style: Style::stroke("#1f5fa8").with_fill("#a8c8ec"),
    });
    for t in &p.tangents {
        let [a, b] = line_endpoints(t);
        s.push(Element::Geodesic {
            from: a,
            to: b,
            full: true,
            style: Style::stroke("#b03030"),
        });
    }
    let (i, j) = ideal_points_of_line(&p.perpendicular);
    s.push(Element::Geodesic {
        from: xy(&i.direction()),
        to: xy(&j.direction()),
        full: true,
        style: Style::stroke("#555555").with_dash("6 4"),
    });
    for (f, name) in p.feet.iter().zip(["y1", "y2"]) {
        let at = xy(&f.klein());
        s.push(Element::Point {
            at,
            style: Style::default(),
        });
        s.push(Element::Label {
            at,
            text: name.into(),
            style: Style::default(),
        });
    }
    let c = xy(&p.center.klein());
    s.push(Element::Label {
        at: c,
        text: "B".into(),
        style: Style::default(),
    });
    s
}
