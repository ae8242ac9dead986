//! Extrinsic curvature of implicit hypersurfaces `f⁻¹(c) ⊂ ℝᴺ`.
//!
//! The surface is oriented by `N = ∇f/‖∇f‖` and the Weingarten map is
//! `L = −dN` restricted to the tangent space. With that orientation a sphere
//! `Σxᵢ² = r²` has all principal curvatures equal to `−1/r`.
//!
//! Mean curvature is normalized as `trace(L)/(N−1)`.

use thiserror::Error;

use crate::ad;
use crate::field::{FieldError, ScalarField};
use crate::linalg::{
    cluster_multiplicities, complement_basis, dot, jacobi_eigh, norm2, Cluster, LinalgError,
    RectMatrix, SquareMatrix,
};

/// Below this gradient norm a point is treated as critical.
pub const CRITICAL_GRADIENT: f64 = 1e-10;
/// Relative tolerance for the tangency check in [`ImplicitHypersurface::weingarten_apply`].
pub const TANGENCY_TOL: f64 = 1e-8;
/// Off-diagonal target for the Jacobi eigensolver, relative to `‖W‖_F`.
pub const EIGEN_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("point is off the surface: |f(p) - c| = {residual:e} exceeds {tolerance:e}")]
    OffSurface { residual: f64, tolerance: f64 },
    #[error("gradient norm {norm:e} is below the critical-point threshold")]
    CriticalPoint { norm: f64 },
    #[error("vector is not tangent: |v·∇f| = {dot:e} exceeds {bound:e}")]
    NotTangent { dot: f64, bound: f64 },
    #[error("expected a point in R^{expected}, got R^{got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The level set `{p : f(p) = c}`.
#[derive(Debug, Clone)]
pub struct ImplicitHypersurface {
    field: ScalarField,
    level: f64,
    on_surface_tol: f64,
}

/// Shape operator in an orthonormal tangent basis.
#[derive(Debug, Clone)]
pub struct Weingarten {
    /// `N × (N−1)`, orthonormal columns spanning `∇f^⊥`.
    pub tangent_basis: RectMatrix,
    /// `(N−1) × (N−1)`, `−Tᵀ·Hess f·T / ‖∇f‖`.
    pub matrix: SquareMatrix,
}

#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub point: Vec<f64>,
    pub normal: Vec<f64>,
    pub tangent_basis: RectMatrix,
    pub weingarten: SquareMatrix,
    /// Eigenvalues of `weingarten`, descending, with repeats.
    pub principal: Vec<f64>,
    pub curvatures: Vec<Cluster>,
    pub gauss_kronecker: f64,
    pub mean: f64,
}

/// First-order data at a surface point.
struct Frame {
    gradient: Vec<f64>,
    grad_norm: f64,
}

impl ImplicitHypersurface {
    pub fn new(field: ScalarField, level: f64) -> Self {
        Self {
            field,
            level,
            on_surface_tol: 1e-9 * (1.0 + level.abs()),
        }
    }

    /// `SL(n, ℝ) = det⁻¹(1)` in `ℝ^{n²}`.
    pub fn special_linear(n: usize) -> Result<Self, FieldError> {
        Ok(Self::new(ScalarField::determinant(n)?, 1.0))
    }

    pub fn with_on_surface_tol(mut self, tol: f64) -> Self {
        self.on_surface_tol = tol;
        self
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn ambient_dim(&self) -> usize {
        self.field.arity()
    }

    pub fn on_surface_tol(&self) -> f64 {
        self.on_surface_tol
    }

    pub fn contains(&self, p: &[f64]) -> Result<bool, SurfaceError> {
        self.check_dim(p)?;
        Ok((self.field.value(p)? - self.level).abs() <= self.on_surface_tol)
    }

    fn check_dim(&self, p: &[f64]) -> Result<(), SurfaceError> {
        if p.len() != self.ambient_dim() {
            return Err(SurfaceError::DimensionMismatch {
                expected: self.ambient_dim(),
                got: p.len(),
            });
        }
        Ok(())
    }

    fn frame(&self, p: &[f64]) -> Result<Frame, SurfaceError> {
        self.check_dim(p)?;
        let residual = (self.field.value(p)? - self.level).abs();
        if !(residual <= self.on_surface_tol) {
            return Err(SurfaceError::OffSurface {
                residual,
                tolerance: self.on_surface_tol,
            });
        }
        let gradient = ad::gradient(&self.field, p)?;
        let grad_norm = norm2(&gradient);
        if !(grad_norm > CRITICAL_GRADIENT) {
            return Err(SurfaceError::CriticalPoint { norm: grad_norm });
        }
        Ok(Frame {
            gradient,
            grad_norm,
        })
    }

    /// `∇f(p)/‖∇f(p)‖`.
    pub fn unit_normal(&self, p: &[f64]) -> Result<Vec<f64>, SurfaceError> {
        let frame = self.frame(p)?;
        Ok(frame.gradient.iter().map(|g| g / frame.grad_norm).collect())
    }

    pub fn weingarten_matrix(&self, p: &[f64]) -> Result<Weingarten, SurfaceError> {
        let frame = self.frame(p)?;
        let tangent_basis = complement_basis(&frame.gradient)?;
        let hess = ad::hessian(&self.field, p)?;
        // dN = (I − NNᵀ)·Hess/‖∇f‖ and Tᵀ(I − NNᵀ) = Tᵀ.
        let matrix = tangent_basis
            .congruence(&hess)
            .scaled(-1.0 / frame.grad_norm);
        Ok(Weingarten {
            tangent_basis,
            matrix,
        })
    }

    /// `L_p(v)` as an ambient vector in the tangent space.
    pub fn weingarten_apply(&self, p: &[f64], v: &[f64]) -> Result<Vec<f64>, SurfaceError> {
        let frame = self.frame(p)?;
        self.check_dim(v)?;
        self.check_tangent(&frame, v)?;
        let hess = ad::hessian(&self.field, p)?;
        let normal: Vec<f64> = frame.gradient.iter().map(|g| g / frame.grad_norm).collect();
        let hv = hess.mul_vec(v);
        let along = dot(&normal, &hv);
        Ok(hv
            .iter()
            .zip(&normal)
            .map(|(h, n)| -(h - along * n) / frame.grad_norm)
            .collect())
    }

    fn check_tangent(&self, frame: &Frame, v: &[f64]) -> Result<(), SurfaceError> {
        let d = dot(v, &frame.gradient).abs();
        let bound = TANGENCY_TOL * norm2(v) * frame.grad_norm;
        if d > bound {
            return Err(SurfaceError::NotTangent { dot: d, bound });
        }
        Ok(())
    }

    /// `⟨L_p v, w⟩`.
    pub fn second_fundamental_form(
        &self,
        p: &[f64],
        v: &[f64],
        w: &[f64],
    ) -> Result<f64, SurfaceError> {
        let frame = self.frame(p)?;
        self.check_dim(w)?;
        self.check_tangent(&frame, w)?;
        Ok(dot(&self.weingarten_apply(p, v)?, w))
    }

    pub fn curvature_report(
        &self,
        p: &[f64],
        cluster_tol: f64,
    ) -> Result<CurvatureReport, SurfaceError> {
        let normal = self.unit_normal(p)?;
        let Weingarten {
            tangent_basis,
            matrix,
        } = self.weingarten_matrix(p)?;
        let principal = jacobi_eigh(&matrix, EIGEN_TOL)?.values;
        let curvatures = cluster_multiplicities(&principal, cluster_tol);
        let gauss_kronecker = principal.iter().product();
        let mean = principal.iter().sum::<f64>() / principal.len() as f64;
        Ok(CurvatureReport {
            point: p.to_vec(),
            normal,
            tangent_basis,
            weingarten: matrix,
            principal,
            curvatures,
            gauss_kronecker,
            mean,
        })
    }
}

/// Central-difference Hessian of `field` at `p`, symmetrized. Test oracle only.
pub fn fd_hessian_oracle(
    field: &ScalarField,
    p: &[f64],
    step: f64,
) -> Result<SquareMatrix, FieldError> {
    let n = p.len();
    let h = step;
    let mut x = p.to_vec();
    let mut eval_at = |di: (usize, f64), dj: (usize, f64)| -> Result<f64, FieldError> {
        x.copy_from_slice(p);
        x[di.0] += di.1;
        x[dj.0] += dj.1;
        field.value(&x)
    };
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let pp = eval_at((i, h), (j, h))?;
            let pm = eval_at((i, h), (j, -h))?;
            let mp = eval_at((i, -h), (j, h))?;
            let mm = eval_at((i, -h), (j, -h))?;
            out[(i, j)] = (pp - pm - mp + mm) / (4.0 * h * h);
        }
    }
    Ok(out.symmetrized())
}
