//! Convex and Euclidean geometry: Newton polygons, Newton ellipsoids and their
//! mixed areas, the κ-embedding of a circle into the unit sphere of `Trig(Λ)`,
//! and the pseudovolume of polytopes in `Cⁿ`.

mod curve;
mod ellipsoid;
mod linalg;
mod polygon;
mod pvol;

use thiserror::Error;

use crate::spectra::SpectrumError;
use crate::zerocount::CountError;

pub use curve::{
    crofton_estimate, kappa_curve, kappa_length, kappa_point, kappa_speed, kappa_velocity,
    CroftonEstimate, SphericalCurve,
};
pub use ellipsoid::{
    ellipsoid_volume, mixed_area, newton_ellipsoid, support_area, unit_ball_volume, Ellipsoid,
    QUADRATURE_NODES,
};
pub use polygon::{convex_hull_2d, polygon_area, polygon_mixed_area, polygon_perimeter, Polygon2D};
pub use pvol::{
    pseudovolume, ComplexPolytope, FaceTerm, PseudovolumeEstimate, DEFAULT_ANGLE_SAMPLES,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPositiveSemidefinite(f64),
    #[error("operation needs dimension {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("quadratic form is singular")]
    Singular,
    #[error("point {index} of the curve has norm {norm}, expected 1")]
    NotOnSphere { index: usize, norm: f64 },
    #[error("trial count must be positive")]
    NoTrials,
    #[error("pseudovolume supports complex dimension 1 or 2, got {0}")]
    UnsupportedDimension(usize),
    #[error("vertices span real dimension {span}, need at least {needed}")]
    NotSpanning { span: usize, needed: usize },
    #[error("vertex {0} has the wrong number of coordinates")]
    VertexShape(usize),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(usize),
    #[error("too many vertices ({0}) for brute-force face enumeration")]
    TooManyVertices(usize),
    #[error("listed face {0} is not a face of the polytope")]
    InvalidFace(usize),
    #[error("empty point set")]
    Empty,
    #[error("invalid polytope JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Count(#[from] CountError),
}
