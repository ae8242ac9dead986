#![allow(dead_code)]

use hypercurv::linalg::{det_inverse, SquareMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> SquareMatrix {
    let entries = (0..n * n).map(|_| rng.gen_range(-scale..=scale)).collect();
    SquareMatrix::from_entries(entries).unwrap()
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> SquareMatrix {
    random_matrix(rng, n, 1.0).symmetrized()
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// Random matrix with `|det|` inside `[lo, hi]`.
pub fn random_with_det_in(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> SquareMatrix {
    loop {
        let m = random_matrix(rng, n, 2.0);
        if let Ok((det, _)) = det_inverse(&m) {
            if (lo..=hi).contains(&det.abs()) {
                return m;
            }
        }
    }
}

/// Central-difference gradient.
pub fn fd_gradient(f: impl Fn(&[f64]) -> f64, p: &[f64], h: f64) -> Vec<f64> {
    let mut x = p.to_vec();
    (0..p.len())
        .map(|k| {
            x[k] = p[k] + h;
            let fp = f(&x);
            x[k] = p[k] - h;
            let fm = f(&x);
            x[k] = p[k];
            (fp - fm) / (2.0 * h)
        })
        .collect()
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}
