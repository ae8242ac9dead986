//! Forward-mode automatic differentiation.
//!
//! [`DualScalar`] carries a first-order payload (`a + a'ε`, `ε² = 0`) and
//! [`HyperDualScalar`] carries two independent first-order payloads plus the
//! mixed second-order coefficient (`ε₁² = ε₂² = 0`, `ε₁ε₂ ≠ 0`). Seeding slot
//! `i` in `ε₁` and slot `j` in `ε₂` and reading the `ε₁ε₂` coefficient yields
//! `∂²f/∂xᵢ∂xⱼ` with no truncation error.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{FieldError, ScalarField};
use crate::linalg::SquareMatrix;

/// Ring of values a [`ScalarField`] can be evaluated over.
///
/// Division is partial: it fails when the real part of the divisor is zero.
pub trait Scalar:
    Copy
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn constant(value: f64) -> Self;

    /// Real part.
    fn re(&self) -> f64;

    fn checked_div(self, rhs: Self) -> Option<Self>;

    fn zero() -> Self {
        Self::constant(0.0)
    }

    fn one() -> Self {
        Self::constant(1.0)
    }
}

impl Scalar for f64 {
    fn constant(value: f64) -> Self {
        value
    }

    fn re(&self) -> f64 {
        *self
    }

    fn checked_div(self, rhs: Self) -> Option<Self> {
        (rhs != 0.0).then(|| self / rhs)
    }
}

/// `value + deriv·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualScalar {
    pub value: f64,
    pub deriv: f64,
}

impl DualScalar {
    pub const fn new(value: f64, deriv: f64) -> Self {
        Self { value, deriv }
    }

    /// An independent variable: derivative payload 1.
    pub const fn variable(value: f64) -> Self {
        Self::new(value, 1.0)
    }
}

impl Add for DualScalar {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value, self.deriv + rhs.deriv)
    }
}

impl Sub for DualScalar {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value, self.deriv - rhs.deriv)
    }
}

impl Mul for DualScalar {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.value * rhs.value,
            self.value * rhs.deriv + self.deriv * rhs.value,
        )
    }
}

impl Neg for DualScalar {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.value, -self.deriv)
    }
}

impl Scalar for DualScalar {
    fn constant(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    fn re(&self) -> f64 {
        self.value
    }

    fn checked_div(self, rhs: Self) -> Option<Self> {
        if rhs.value == 0.0 {
            return None;
        }
        let q = self.value / rhs.value;
        Some(Self::new(q, (self.deriv - q * rhs.deriv) / rhs.value))
    }
}

/// `value + d1·ε₁ + d2·ε₂ + d12·ε₁ε₂` with `ε₁² = ε₂² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HyperDualScalar {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub d12: f64,
}

impl HyperDualScalar {
    pub const fn new(value: f64, d1: f64, d2: f64, d12: f64) -> Self {
        Self { value, d1, d2, d12 }
    }
}

impl Add for HyperDualScalar {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.value + rhs.value,
            self.d1 + rhs.d1,
            self.d2 + rhs.d2,
            self.d12 + rhs.d12,
        )
    }
}

impl Sub for HyperDualScalar {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.value - rhs.value,
            self.d1 - rhs.d1,
            self.d2 - rhs.d2,
            self.d12 - rhs.d12,
        )
    }
}

impl Mul for HyperDualScalar {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.value * rhs.value,
            self.value * rhs.d1 + self.d1 * rhs.value,
            self.value * rhs.d2 + self.d2 * rhs.value,
            // paired so that a·b and b·a round identically
            (self.value * rhs.d12 + self.d12 * rhs.value) + (self.d1 * rhs.d2 + self.d2 * rhs.d1),
        )
    }
}

impl Neg for HyperDualScalar {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.value, -self.d1, -self.d2, -self.d12)
    }
}

impl Scalar for HyperDualScalar {
    fn constant(value: f64) -> Self {
        Self::new(value, 0.0, 0.0, 0.0)
    }

    fn re(&self) -> f64 {
        self.value
    }

    fn checked_div(self, rhs: Self) -> Option<Self> {
        if rhs.value == 0.0 {
            return None;
        }
        // solve self = q·rhs coefficient by coefficient
        let b0 = rhs.value;
        let q0 = self.value / b0;
        let q1 = (self.d1 - q0 * rhs.d1) / b0;
        let q2 = (self.d2 - q0 * rhs.d2) / b0;
        let q12 = (self.d12 - q0 * rhs.d12 - q1 * rhs.d2 - q2 * rhs.d1) / b0;
        Some(Self::new(q0, q1, q2, q12))
    }
}

fn check_arity(field: &ScalarField, p: &[f64]) -> Result<(), FieldError> {
    if field.arity() != p.len() {
        return Err(FieldError::ArityMismatch {
            expected: field.arity(),
            got: p.len(),
        });
    }
    Ok(())
}

/// Exact gradient of `field` at `p`, one dual evaluation per coordinate.
pub fn gradient(field: &ScalarField, p: &[f64]) -> Result<Vec<f64>, FieldError> {
    check_arity(field, p)?;
    let mut args: Vec<DualScalar> = p.iter().map(|&x| DualScalar::constant(x)).collect();
    let mut grad = Vec::with_capacity(p.len());
    for k in 0..p.len() {
        args[k].deriv = 1.0;
        grad.push(field.evaluate(&args)?.deriv);
        args[k].deriv = 0.0;
    }
    Ok(grad)
}

/// Exact Hessian of `field` at `p`.
///
/// One hyper-dual evaluation per unordered pair `(i, j)`, `i ≤ j`; both
/// triangles are filled from the same number, so the result is bitwise
/// symmetric.
pub fn hessian(field: &ScalarField, p: &[f64]) -> Result<SquareMatrix, FieldError> {
    check_arity(field, p)?;
    let n = p.len();
    let mut args: Vec<HyperDualScalar> = p.iter().map(|&x| HyperDualScalar::constant(x)).collect();
    let mut h = SquareMatrix::zeros(n);
    for i in 0..n {
        args[i].d1 = 1.0;
        for j in i..n {
            args[j].d2 = 1.0;
            let d12 = field.evaluate(&args)?.d12;
            args[j].d2 = 0.0;
            h[(i, j)] = d12;
            h[(j, i)] = d12;
        }
        args[i].d1 = 0.0;
    }
    Ok(h)
}
