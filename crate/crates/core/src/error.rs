use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("non-finite coordinate or parameter")]
    NonFinite,
    #[error("degenerate line: (a, b) = (0, 0)")]
    DegenerateLine,
    #[error("circle radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("degenerate parabola: {0}")]
    DegenerateParabola(String),
    #[error("indeterminate equation: all coefficients vanish")]
    Indeterminate,
    #[error("point lies inside the parabola (S = {s:.3e}); no real tangents")]
    PointInsideParabola { s: f64 },
    #[error("tangent line misses the circle")]
    TangentMissesCircle,
    #[error("no closure: circle does not satisfy the closure condition (residual {residual:.3e})")]
    NoClosure { residual: f64 },
    #[error("closed-form singularity: {0}")]
    FormulaSingularity(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid configuration: {0}")]
    Configuration(String),
    #[error("degenerate construction: {0}")]
    Degenerate(String),
    #[error("points are not concyclic (residual {residual:.3e})")]
    NotConcyclic { residual: f64 },
    #[error("quadrilateral admits no inscribed parabola (tangency residual {residual:.3e})")]
    InconsistentQuad { residual: f64 },
    #[error("degenerate pencil: determinant vanishes identically")]
    DegeneratePencil,
    #[error("validation failed: {0}")]
    Validation(String),
}
