#![allow(dead_code)]

use std::f64::consts::PI;

use concordance::laurent::{normalize_alexander, LaurentPoly};
use concordance::seifert::SeifertMatrix;
use nalgebra::{Complex, DMatrix};
use rand::Rng;

/// `V = S + P` with `S - S^T` the standard symplectic form and `P`
/// symmetric, then conjugated by a random unimodular matrix, so that
/// `V - V^T` stays congruent to the symplectic form.
pub fn random_seifert<R: Rng>(rng: &mut R, size: usize, bound: i64) -> SeifertMatrix {
    assert!(size % 2 == 0);
    let mut v = vec![vec![0i64; size]; size];
    for k in 0..size / 2 {
        v[2 * k][2 * k + 1] = 1;
    }
    for i in 0..size {
        for j in i..size {
            let x = rng.gen_range(-bound..=bound);
            v[i][j] += x;
            if i != j {
                v[j][i] += x;
            }
        }
    }
    for _ in 0..size {
        if size < 2 {
            break;
        }
        // column op c_a += s c_b followed by the matching row op
        let a = rng.gen_range(0..size);
        let mut b = rng.gen_range(0..size);
        while b == a {
            b = rng.gen_range(0..size);
        }
        let s = rng.gen_range(-1..=1);
        for row in v.iter_mut() {
            row[a] += s * row[b];
        }
        for col in 0..size {
            v[a][col] += s * v[b][col];
        }
    }
    SeifertMatrix::validate(v).expect("generator produces valid matrices")
}

pub fn random_even_size<R: Rng>(rng: &mut R, max: usize) -> usize {
    2 * rng.gen_range(1..=max / 2)
}

/// `|prod_{j=1}^{n-1} Delta(exp(2 pi i j / n))|` in floating point.
pub fn complex_product_order(delta: &LaurentPoly, n: u64) -> f64 {
    let delta = normalize_alexander(delta).unwrap();
    let mut prod = Complex::new(1.0, 0.0);
    for j in 1..n {
        let z = Complex::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
        prod *= delta.eval_complex(z);
    }
    prod.norm()
}

/// Signature of `(1 - w) V + (1 - conj w) V^T` from complex Hermitian
/// eigenvalues, or `None` when an eigenvalue is within `eps` of zero.
pub fn float_lt_signature(v: &SeifertMatrix, theta: f64, eps: f64) -> Option<i64> {
    let n = v.size();
    if n == 0 {
        return Some(0);
    }
    let w = Complex::from_polar(1.0, 2.0 * PI * theta);
    let one = Complex::new(1.0, 0.0);
    let a = one - w;
    let b = one - w.conj();
    let h = DMatrix::from_fn(n, n, |i, j| a * v.get(i, j) as f64 + b * v.get(j, i) as f64);
    let eig = h.symmetric_eigenvalues();
    let scale = eig.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    if eig.iter().any(|x| x.abs() <= eps * scale) {
        return None;
    }
    Some(eig.iter().map(|&x| if x > 0.0 { 1 } else { -1 }).sum())
}

/// Midpoint-rule integral of the signature over `samples` points,
/// skipping the points where the evaluation is ill-conditioned.
pub fn dense_rho(v: &SeifertMatrix, samples: usize) -> (f64, usize) {
    let mut total = 0.0;
    let mut used = 0;
    for k in 0..samples {
        let theta = (k as f64 + 0.5) / samples as f64;
        if let Some(s) = float_lt_signature(v, theta, 1e-12) {
            total += s as f64;
            used += 1;
        }
    }
    (total / used as f64, samples - used)
}
