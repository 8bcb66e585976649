//! Convex bodies in hyperbolic space: width functions, constant-width
//! certification and completions.
//!
//! Points live on the hyperboloid model; bodies are convex polytopes stored
//! through their Klein-model vertices, where hyperbolic and Euclidean
//! convexity coincide.

pub mod error;
pub mod hyperboloid;
pub mod minnorm;
pub mod planar;
pub mod vector;
pub mod widths;

pub mod body;
pub mod completeness;
pub mod document;
pub mod scene;
pub mod svg;
mod hull;

pub use error::{GeomError, Result};
pub use hyperboloid::{
    busemann_coordinate, convert_model, foot_on_line, geodesic_point, h_distance,
    hyperplane_gap, ideal_points_of_line, lorentz_form, signed_hyperplane_distance,
    tangent_toward, HPoint, Horoball, Hyperplane, IdealPoint, Line, Model, UnitTangent,
};
pub use vector::Vector;
pub use body::{
    ball_body, convex_hull, diameter, distance_to_body, hausdorff_distance,
    klein_facet_to_hyperplane, parallel_domain, Body, Edge, Facet,
};
pub use document::{load_body, parse_body, save_body, BodyDocument, DocumentError};
pub use scene::{prop8_scene, Element, Scene, Style};
pub use svg::{render_svg, write_svg};
