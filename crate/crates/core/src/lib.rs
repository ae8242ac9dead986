//! Curvature of implicit hypersurfaces `f⁻¹(c) ⊂ ℝᴺ`.
//!
//! Gradients and Hessians come from forward-mode automatic differentiation
//! ([`ad`]), the shape operator is assembled in an orthonormal tangent basis
//! ([`surface`]), and [`sl`] provides the exact geometry of `SL(n, ℝ)` at the
//! identity against which the numeric pipeline is checked.

pub mod ad;
pub mod cli;
pub mod field;
pub mod linalg;
pub mod sl;
pub mod surface;

pub use ad::{DualScalar, HyperDualScalar, Scalar};
pub use field::{Expr, FieldError, ScalarField};
pub use linalg::{Cluster, EigenSpectrum, LinalgError, RectMatrix, SquareMatrix};
pub use sl::{SLCurvatureSummary, SLPoint, SlError};
pub use surface::{CurvatureReport, ImplicitHypersurface, SurfaceError};
