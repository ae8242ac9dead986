//! Closed-form extrinsic geometry of `SL(n, ℝ) = det⁻¹(1) ⊂ ℝ^{n²}`.
//!
//! Orientation is `N = ∇det/‖∇det‖`. Since `∇det(A) = cof(A) = (A⁻¹)ᵀ` on
//! `SL(n)`, the Gauss map is `A ↦ (A⁻¹)ᵀ/‖A⁻¹‖_F`, and its image is exactly the
//! set of unit-Frobenius-norm matrices with positive determinant.
//!
//! At the identity the tangent space is `sl_n` (trace-zero matrices), the
//! shape operator is `H ↦ Hᵀ/√n`, which acts as `+1/√n` on trace-zero
//! symmetric matrices and `−1/√n` on skew ones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{det_inverse, determinant, householder_qr, Cluster, LinalgError, SquareMatrix};

/// Allowed `|det − 1|` for an [`SLPoint`].
pub const DET_TOL: f64 = 1e-9;
/// Allowed `|‖U‖_F − 1|` for points of the unit sphere.
pub const UNIT_NORM_TOL: f64 = 1e-9;
/// Rejection threshold on `|det|` used by [`random_sl`].
pub const MIN_SAMPLE_DET: f64 = 0.05;
pub const MAX_SAMPLE_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SlError {
    #[error("determinant {det} is not 1")]
    DeterminantNotOne { det: f64 },
    #[error("Frobenius norm {norm} is not 1")]
    NotUnitNorm { norm: f64 },
    #[error("determinant {det} is not positive")]
    NonPositiveDeterminant { det: f64 },
    #[error("trace {trace:e} is not zero; matrix is not tangent at the identity")]
    NonZeroTrace { trace: f64 },
    #[error("n = {0} is too small; need n >= 2")]
    OrderTooSmall(usize),
    #[error("expected a {expected}x{expected} matrix, got {got}x{got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no sample with |det| >= {MIN_SAMPLE_DET} after {MAX_SAMPLE_ATTEMPTS} attempts")]
    SamplingExhausted,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A matrix of determinant one.
#[derive(Debug, Clone, PartialEq)]
pub struct SLPoint {
    matrix: SquareMatrix,
}

impl SLPoint {
    pub fn new(matrix: SquareMatrix) -> Result<Self, SlError> {
        let det = determinant(&matrix);
        if !((det - 1.0).abs() <= DET_TOL) {
            return Err(SlError::DeterminantNotOne { det });
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: SquareMatrix::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    /// Row-major flattening, a point of `ℝ^{n²}`.
    pub fn to_vec(&self) -> Vec<f64> {
        self.matrix.entries().to_vec()
    }
}

/// Exact principal-curvature data of `SL(n)` at the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SLCurvatureSummary {
    pub n: usize,
    pub kappa_plus: f64,
    pub mult_plus: usize,
    pub kappa_minus: f64,
    pub mult_minus: usize,
    pub gauss_kronecker: f64,
    pub mean: f64,
}

/// `(A⁻¹)ᵀ / ‖A⁻¹‖_F`.
pub fn gauss_map(a: &SLPoint) -> Result<SquareMatrix, SlError> {
    let (_, inv) = det_inverse(a.matrix())?;
    Ok(inv.transpose().scaled(1.0 / inv.frobenius_norm()))
}

fn check_unit(u: &SquareMatrix) -> Result<(), SlError> {
    let norm = u.frobenius_norm();
    if !((norm - 1.0).abs() <= UNIT_NORM_TOL) {
        return Err(SlError::NotUnitNorm { norm });
    }
    Ok(())
}

/// Whether the unit-norm matrix `u` lies in the image of the Gauss map.
pub fn spherical_image_contains(u: &SquareMatrix) -> Result<bool, SlError> {
    check_unit(u)?;
    Ok(determinant(u) > 0.0)
}

/// A point `B ∈ SL(n)` with `gauss_map(B) = u`.
///
/// With `d = det(u) > 0` and `C = d^{−1/n}·u` (so `det C = 1`), `B = (C⁻¹)ᵀ`.
pub fn gauss_map_preimage(u: &SquareMatrix) -> Result<SLPoint, SlError> {
    check_unit(u)?;
    let n = u.dim();
    let d = determinant(u);
    if !(d > 0.0) {
        return Err(SlError::NonPositiveDeterminant { det: d });
    }
    let c = u.scaled(d.powf(-1.0 / n as f64));
    let (_, c_inv) = det_inverse(&c)?;
    SLPoint::new(c_inv.transpose())
}

fn check_trace_zero(h: &SquareMatrix) -> Result<(), SlError> {
    let trace = h.trace();
    if !(trace.abs() <= 1e-9 * (1.0 + h.frobenius_norm())) {
        return Err(SlError::NonZeroTrace { trace });
    }
    Ok(())
}

fn check_tangent_at_identity(h: &SquareMatrix, n: usize) -> Result<(), SlError> {
    if h.dim() != n {
        return Err(SlError::DimensionMismatch {
            expected: n,
            got: h.dim(),
        });
    }
    check_trace_zero(h)
}

/// Shape operator at the identity: `H ↦ Hᵀ/√n` on `sl_n`.
pub fn weingarten_identity(h: &SquareMatrix, n: usize) -> Result<SquareMatrix, SlError> {
    check_tangent_at_identity(h, n)?;
    Ok(h.transpose().scaled(1.0 / (n as f64).sqrt()))
}

/// Splits a trace-zero `H` into its symmetric and skew-symmetric parts.
pub fn sym_skew_decompose(h: &SquareMatrix) -> Result<(SquareMatrix, SquareMatrix), SlError> {
    check_trace_zero(h)?;
    let t = h.transpose();
    Ok(((h + &t).scaled(0.5), (h - &t).scaled(0.5)))
}

fn check_order(n: usize) -> Result<(), SlError> {
    if n < 2 {
        return Err(SlError::OrderTooSmall(n));
    }
    Ok(())
}

/// `[(1/√n, (n²+n−2)/2), (−1/√n, (n²−n)/2)]`.
pub fn principal_curvatures_identity(n: usize) -> Result<Vec<Cluster>, SlError> {
    let s = curvature_summary(n)?;
    Ok(vec![
        Cluster {
            value: s.kappa_plus,
            multiplicity: s.mult_plus,
        },
        Cluster {
            value: s.kappa_minus,
            multiplicity: s.mult_minus,
        },
    ])
}

pub fn curvature_summary(n: usize) -> Result<SLCurvatureSummary, SlError> {
    check_order(n)?;
    let nf = n as f64;
    let kappa = (1.0 / nf).sqrt();
    let mult_plus = (n * n + n - 2) / 2;
    let mult_minus = (n * n - n) / 2;
    let sign = if mult_minus % 2 == 0 { 1.0 } else { -1.0 };
    Ok(SLCurvatureSummary {
        n,
        kappa_plus: kappa,
        mult_plus,
        kappa_minus: -kappa,
        mult_minus,
        gauss_kronecker: sign * nf.powf(-((n * n - 1) as f64) / 2.0),
        mean: 1.0 / (nf.sqrt() * (nf + 1.0)),
    })
}

/// `(tr(HᵀH), tr(H²)/√n)` for trace-zero `H`.
pub fn fundamental_forms(h: &SquareMatrix, n: usize) -> Result<(f64, f64), SlError> {
    check_tangent_at_identity(h, n)?;
    let first = h.entries().iter().map(|x| x * x).sum();
    let second = (h * h).trace() / (n as f64).sqrt();
    Ok((first, second))
}

fn uniform_matrix(n: usize, rng: &mut ChaCha8Rng) -> SquareMatrix {
    let entries = (0..n * n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    SquareMatrix::from_entries(entries).expect("n² entries")
}

/// Seeded sample of `SL(n)`: uniform entries in `[−1, 1]`, rejected while
/// `|det| < 0.05`, row 0 negated if `det < 0`, then scaled by `det^{−1/n}`.
pub fn random_sl(n: usize, seed: u64) -> Result<SLPoint, SlError> {
    check_order(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_SAMPLE_ATTEMPTS {
        let mut m = uniform_matrix(n, &mut rng);
        let mut det = determinant(&m);
        if det.abs() < MIN_SAMPLE_DET {
            continue;
        }
        if det < 0.0 {
            for j in 0..n {
                m[(0, j)] = -m[(0, j)];
            }
            det = -det;
        }
        return SLPoint::new(m.scaled(det.powf(-1.0 / n as f64)));
    }
    Err(SlError::SamplingExhausted)
}

/// Seeded sample of `SO(n)` via Householder QR of a uniform random matrix,
/// with `R`'s diagonal made positive and one column flipped if `det Q = −1`.
pub fn random_special_orthogonal(n: usize, seed: u64) -> Result<SLPoint, SlError> {
    check_order(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut q, r) = householder_qr(&uniform_matrix(n, &mut rng));
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    if determinant(&q) < 0.0 {
        for i in 0..n {
            q[(i, 0)] = -q[(i, 0)];
        }
    }
    SLPoint::new(q)
}

/// Seeded trace-zero matrix with entries of order one: a tangent vector at the identity.
pub fn random_trace_zero(n: usize, seed: u64) -> SquareMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = uniform_matrix(n, &mut rng);
    let shift = h.trace() / n as f64;
    for i in 0..n {
        h[(i, i)] -= shift;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    fn m(rows: &[[f64; 2]]) -> SquareMatrix {
        SquareMatrix::from_rows(rows)
    }

    fn assert_mat_close(a: &SquareMatrix, b: &SquareMatrix, tol: f64) {
        assert!((a - b).max_abs() <= tol, "{a:?} vs {b:?}");
    }

    #[test]
    fn sl_point_requires_unit_determinant() {
        assert!(SLPoint::new(SquareMatrix::diagonal(&[2.0, 0.5])).is_ok());
        assert!(matches!(
            SLPoint::new(SquareMatrix::diagonal(&[2.0, 1.0])),
            Err(SlError::DeterminantNotOne { .. })
        ));
    }

    #[test]
    fn gauss_map_examples() {
        let n = gauss_map(&SLPoint::identity(2)).unwrap();
        assert_mat_close(&n, &SquareMatrix::identity(2).scaled(1.0 / SQRT_2), 1e-16);

        let a = SLPoint::new(SquareMatrix::diagonal(&[2.0, 0.5])).unwrap();
        let r17 = 17f64.sqrt();
        assert_mat_close(
            &gauss_map(&a).unwrap(),
            &SquareMatrix::diagonal(&[1.0 / r17, 4.0 / r17]),
            1e-16,
        );

        let a = SLPoint::new(m(&[[1.0, 1.0], [0.0, 1.0]])).unwrap();
        let expected = m(&[[1.0, 0.0], [-1.0, 1.0]]).scaled(1.0 / 3f64.sqrt());
        assert_mat_close(&gauss_map(&a).unwrap(), &expected, 1e-16);
    }

    #[test]
    fn spherical_image_examples() {
        assert!(spherical_image_contains(&SquareMatrix::identity(2).scaled(1.0 / SQRT_2)).unwrap());
        assert!(!spherical_image_contains(
            &SquareMatrix::diagonal(&[1.0, -1.0]).scaled(1.0 / SQRT_2)
        )
        .unwrap());
        let minus_i3 = SquareMatrix::identity(3).scaled(-1.0 / 3f64.sqrt());
        assert!(!spherical_image_contains(&minus_i3).unwrap());
        // even n: −U stays in the image
        let minus_i2 = SquareMatrix::identity(2).scaled(-1.0 / SQRT_2);
        assert!(spherical_image_contains(&minus_i2).unwrap());
        assert!(matches!(
            spherical_image_contains(&SquareMatrix::identity(2)),
            Err(SlError::NotUnitNorm { .. })
        ));
        assert!(!spherical_image_contains(&m(&[[1.0, 0.0], [0.0, 0.0]])).unwrap());
    }

    #[test]
    fn preimage_examples() {
        let b = gauss_map_preimage(&SquareMatrix::identity(2).scaled(1.0 / SQRT_2)).unwrap();
        assert_mat_close(b.matrix(), &SquareMatrix::identity(2), 1e-15);

        let u = m(&[[1.0, 0.0], [-1.0, 1.0]]).scaled(1.0 / 3f64.sqrt());
        let b = gauss_map_preimage(&u).unwrap();
        assert_mat_close(b.matrix(), &m(&[[1.0, 1.0], [0.0, 1.0]]), 1e-14);
        assert_mat_close(&gauss_map(&b).unwrap(), &u, 1e-15);

        let neg = SquareMatrix::diagonal(&[1.0, -1.0]).scaled(1.0 / SQRT_2);
        assert!(matches!(
            gauss_map_preimage(&neg),
            Err(SlError::NonPositiveDeterminant { .. })
        ));
    }

    #[test]
    fn weingarten_identity_examples() {
        let e12 = SquareMatrix::unit(2, 0, 1);
        assert_mat_close(
            &weingarten_identity(&e12, 2).unwrap(),
            &SquareMatrix::unit(2, 1, 0).scaled(1.0 / SQRT_2),
            0.0,
        );
        let d = SquareMatrix::diagonal(&[1.0, -1.0]);
        assert_mat_close(
            &weingarten_identity(&d, 2).unwrap(),
            &d.scaled(1.0 / SQRT_2),
            0.0,
        );
        let j = m(&[[0.0, 1.0], [-1.0, 0.0]]);
        assert_mat_close(
            &weingarten_identity(&j, 2).unwrap(),
            &j.scaled(-1.0 / SQRT_2),
            0.0,
        );
        assert!(matches!(
            weingarten_identity(&SquareMatrix::identity(2), 2),
            Err(SlError::NonZeroTrace { .. })
        ));
        assert!(matches!(
            weingarten_identity(&e12, 3),
            Err(SlError::DimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let e12 = SquareMatrix::unit(2, 0, 1);
        let (sym, skew) = sym_skew_decompose(&e12).unwrap();
        assert_eq!(sym, m(&[[0.0, 0.5], [0.5, 0.0]]));
        assert_eq!(skew, m(&[[0.0, 0.5], [-0.5, 0.0]]));

        let d = SquareMatrix::diagonal(&[1.0, -1.0]);
        let (sym, skew) = sym_skew_decompose(&d).unwrap();
        assert_eq!(sym, d);
        assert_eq!(skew, SquareMatrix::zeros(2));

        let h = m(&[[0.0, 2.0], [0.0, 0.0]]);
        let (sym, skew) = sym_skew_decompose(&h).unwrap();
        assert_eq!(&sym + &skew, h);
        let ls = weingarten_identity(&sym, 2).unwrap();
        let lk = weingarten_identity(&skew, 2).unwrap();
        assert_mat_close(&ls, &sym.scaled(1.0 / SQRT_2), 1e-16);
        assert_mat_close(&lk, &skew.scaled(-1.0 / SQRT_2), 1e-16);
        assert_mat_close(&(&ls + &lk), &h.transpose().scaled(1.0 / SQRT_2), 1e-16);

        assert!(sym_skew_decompose(&SquareMatrix::identity(2)).is_err());
    }

    #[test]
    fn principal_curvature_table() {
        let c = principal_curvatures_identity(2).unwrap();
        assert_eq!(
            c[0],
            Cluster {
                value: std::f64::consts::FRAC_1_SQRT_2,
                multiplicity: 2
            }
        );
        assert_eq!(
            c[1],
            Cluster {
                value: -std::f64::consts::FRAC_1_SQRT_2,
                multiplicity: 1
            }
        );
        let c = principal_curvatures_identity(3).unwrap();
        assert_eq!((c[0].multiplicity, c[1].multiplicity), (5, 3));
        assert!((c[0].value - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let c = principal_curvatures_identity(4).unwrap();
        assert_eq!(
            c,
            vec![
                Cluster {
                    value: 0.5,
                    multiplicity: 9
                },
                Cluster {
                    value: -0.5,
                    multiplicity: 6
                },
            ]
        );
        assert_eq!(
            principal_curvatures_identity(1),
            Err(SlError::OrderTooSmall(1))
        );
    }

    #[test]
    fn summary_values() {
        let s = curvature_summary(2).unwrap();
        assert!((s.gauss_kronecker + 0.3535533906).abs() < 1e-10);
        assert!((s.mean - 0.2357022604).abs() < 1e-10);
        let s = curvature_summary(3).unwrap();
        assert!((s.gauss_kronecker + 1.0 / 81.0).abs() < 1e-16);
        assert!((s.mean - 1.0 / (4.0 * 3f64.sqrt())).abs() < 1e-16);
        let s = curvature_summary(4).unwrap();
        assert_eq!(s.gauss_kronecker, 2f64.powi(-15));
        assert!((s.mean - 0.1).abs() < 1e-16);
        for n in 2..=6 {
            let s = curvature_summary(n).unwrap();
            assert_eq!(s.mult_plus + s.mult_minus, n * n - 1);
        }
        assert!(curvature_summary(0).is_err());
    }

    #[test]
    fn fundamental_form_examples() {
        assert_eq!(
            fundamental_forms(&SquareMatrix::unit(2, 0, 1), 2).unwrap(),
            (1.0, 0.0)
        );
        let (a, b) = fundamental_forms(&SquareMatrix::diagonal(&[1.0, -1.0]), 2).unwrap();
        assert_eq!(a, 2.0);
        assert!((b - SQRT_2).abs() < 1e-15);
        let (a, b) = fundamental_forms(&m(&[[0.0, 1.0], [-1.0, 0.0]]), 2).unwrap();
        assert_eq!(a, 2.0);
        assert!((b + SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn random_sl_is_deterministic_and_unimodular() {
        assert_eq!(random_sl(2, 7).unwrap(), random_sl(2, 7).unwrap());
        assert_ne!(random_sl(2, 7).unwrap(), random_sl(2, 8).unwrap());
        for n in 2..=5 {
            for seed in 0..20 {
                let a = random_sl(n, seed).unwrap();
                assert!((determinant(a.matrix()) - 1.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn random_so2_has_rotation_form() {
        for seed in 0..10 {
            let q = random_special_orthogonal(2, seed).unwrap();
            let q = q.matrix();
            assert!((q[(0, 0)] - q[(1, 1)]).abs() <= 1e-12);
            assert!((q[(0, 1)] + q[(1, 0)]).abs() <= 1e-12);
            assert!((q[(0, 0)].powi(2) + q[(1, 0)].powi(2) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn random_special_orthogonal_is_orthogonal() {
        for n in 2..=4 {
            for seed in 0..100 {
                let q = random_special_orthogonal(n, seed).unwrap();
                let qtq = &q.matrix().transpose() * q.matrix();
                assert!((&qtq - &SquareMatrix::identity(n)).max_abs() <= 1e-12);
                assert!((determinant(q.matrix()) - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn random_trace_zero_is_tangent() {
        let h = random_trace_zero(4, 3);
        assert!(h.trace().abs() < 1e-15);
        assert_eq!(h, random_trace_zero(4, 3));
    }
}
