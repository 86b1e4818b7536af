//! Exact determinants and signatures.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i8;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Gaussian rational `re + i*im`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, o: &Self) -> Self {
        let n = o.norm_sqr();
        let p = self.mul(&o.conj());
        Self::new(p.re / &n, p.im / n)
    }
}

/// Exact inertia of a Hermitian matrix over `Q(i)` by congruence
/// diagonalization. The input must be Hermitian; this is not checked.
pub fn hermitian_inertia(mut h: Vec<Vec<GaussRat>>) -> Inertia {
    let n = h.len();
    let mut inertia = Inertia::default();
    for p in 0..n {
        if h[p][p].re.is_zero() {
            if let Some(k) = (p + 1..n).find(|&k| !h[k][k].re.is_zero()) {
                h.swap(p, k);
                for row in h.iter_mut() {
                    row.swap(p, k);
                }
            } else if let Some(q) = (p + 1..n).find(|&q| !h[p][q].is_zero()) {
                // e_p += conj(h_pq) e_q makes the new diagonal 2|h_pq|^2 > 0.
                let lambda = h[p][q].conj();
                let lambda_bar = h[p][q].clone();
                for r in 0..n {
                    let v = h[r][p].add(&lambda.mul(&h[r][q]));
                    h[r][p] = v;
                }
                for c in 0..n {
                    let v = h[p][c].add(&lambda_bar.mul(&h[q][c]));
                    h[p][c] = v;
                }
            } else {
                // Row p (and column p) vanish on the remaining block.
                inertia.zero += 1;
                continue;
            }
        }
        let pivot = h[p][p].clone();
        if pivot.re.is_positive() {
            inertia.positive += 1;
        } else {
            inertia.negative += 1;
        }
        for r in p + 1..n {
            if h[r][p].is_zero() {
                continue;
            }
            let f = h[r][p].div(&pivot);
            let f_bar = f.conj();
            for c in p..n {
                let v = h[r][c].sub(&f.mul(&h[p][c]));
                h[r][c] = v;
            }
            for x in p..n {
                let v = h[x][r].sub(&f_bar.mul(&h[x][p]));
                h[x][r] = v;
            }
        }
    }
    inertia
}

/// Exact signature of a symmetric integer matrix.
pub fn symmetric_signature(m: &[Vec<i64>]) -> i64 {
    let h = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| GaussRat::real(BigRational::from_integer(x.into())))
                .collect()
        })
        .collect();
    hermitian_inertia(h).signature()
}

/// Floating signature of the Hermitian matrix `re + i*im` via its real
/// symmetric doubling `[[re, -im], [im, re]]`, which repeats each
/// eigenvalue twice. Returns `None` if some eigenvalue lies within
/// `gap * max(1, spectral radius)` of zero.
pub fn float_hermitian_signature(re: &DMatrix<f64>, im: &DMatrix<f64>, gap: f64) -> Option<i64> {
    let n = re.nrows();
    if n == 0 {
        return Some(0);
    }
    let mut doubled = DMatrix::<f64>::zeros(2 * n, 2 * n);
    doubled.view_mut((0, 0), (n, n)).copy_from(re);
    doubled.view_mut((n, n), (n, n)).copy_from(re);
    doubled.view_mut((0, n), (n, n)).copy_from(&(-im));
    doubled.view_mut((n, 0), (n, n)).copy_from(im);
    let eig = doubled.symmetric_eigenvalues();
    let radius = eig.iter().fold(1.0f64, |acc, &x| acc.max(x.abs()));
    let threshold = gap * radius;
    let mut sig = 0i64;
    for &x in eig.iter() {
        if x.abs() <= threshold || !x.is_finite() {
            return None;
        }
        sig += if x > 0.0 { 1 } else { -1 };
    }
    Some(sig / 2)
}
