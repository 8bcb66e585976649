//! Circumscribed and inscribed balls, completeness and constant-width
//! certificates, and completions preserving the circumscribed ball.

mod certify;
mod radii;
mod scott;
mod shapes;

pub use certify::{
    ball_intersection_body, constant_width_report, is_complete, CompletenessCertificate,
    ConstantWidthReport, DeksterCheck, MethodSamples,
};
pub use radii::{circumball, inball, radii, simplex_circumradius, RadiiReport};
pub use scott::{scott_completion, CompletionTrace, ScottOptions, Termination, TraceStep};
pub use shapes::{
    prop8_body, regular_simplex_body, reuleaux_sag, reuleaux_triangle, triangle_angle, Prop8,
};
