//! Poncelet triangles and quadrilaterals inscribed in a circle and
//! circumscribed about a parabola.
//!
//! Everything works in the canonical frame: parabola `y² = 2px + p²` with
//! focus at the origin and directrix `x = −p`, circle of radius 1 centered at
//! `E`. Use [`geom::normalize_frame`] to bring an arbitrary scene there.

pub mod common_tangents;
pub mod error;
pub mod geom;
pub mod joachimsthal;
pub mod oracle;
pub mod poly;
pub mod quad;
pub mod triangle;

pub use error::{GeometryError, Result};
pub use geom::{normalize_frame, CanonicalParabola, Circle, ConicMatrix, GeneralParabola, Line2, Point2, Similarity};

pub mod tol {
    /// Algebraic identities.
    pub const EPS_ALG: f64 = 1e-9;
    /// Coincidence of constructed points.
    pub const EPS_GEO: f64 = 1e-8;
    /// Vertex distance after an n-step orbit.
    pub const EPS_CLOSURE: f64 = 1e-8;
}
