use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::det_bareiss;

/// Ordinary polynomial with integer coefficients, ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `t^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] += BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact quotient by a monic divisor, or `None` when the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let d = divisor.degree().expect("nonzero divisor");
        debug_assert!(divisor.0[d].is_one());
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.degree().unwrap();
        if n < d {
            return None;
        }
        let mut rem = self.0.clone();
        let mut quot = vec![BigInt::zero(); n - d + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d].clone();
            if c.is_zero() {
                continue;
            }
            for (j, bj) in divisor.0.iter().enumerate() {
                if !bj.is_zero() {
                    rem[k + j] -= &c * bj;
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }
}

/// Resultant of two nonzero integer polynomials as the determinant of the
/// Sylvester matrix with the rows of `p` first. With this convention
/// `Res(p, q) = lc(p)^deg(q) * prod q(alpha)` over the roots `alpha` of `p`,
/// so `Res(t - 1, t - 2) = -1`.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    let m = p.degree().expect("resultant of zero polynomial");
    let n = q.degree().expect("resultant of zero polynomial");
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    // Row coefficients run from the leading term down.
    for r in 0..n {
        for (k, c) in p.0.iter().rev().enumerate() {
            rows[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in q.0.iter().rev().enumerate() {
            rows[n + r][r + k] = c.clone();
        }
    }
    det_bareiss(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&ip(&[-1, 1]), &ip(&[-2, 1])), BigInt::from(-1));
        let r = resultant(&ip(&[-1, 0, 1]), &ip(&[1, -1, 1]));
        assert_eq!(r.magnitude(), &3u32.into());
        let r = resultant(&ip(&[-1, 0, 0, 1]), &ip(&[1, -1, 1]));
        assert_eq!(r.magnitude(), &4u32.into());
    }

    #[test]
    fn constant_arguments() {
        assert_eq!(resultant(&ip(&[-1, 0, 1]), &ip(&[5])), BigInt::from(25));
        assert_eq!(resultant(&ip(&[3]), &ip(&[1, 1])), BigInt::from(3));
        assert_eq!(resultant(&ip(&[3]), &ip(&[7])), BigInt::from(1));
    }

    #[test]
    fn common_root_gives_zero() {
        let p = ip(&[-1, 0, 1]);
        let q = ip(&[1, 1]);
        assert_eq!(resultant(&p, &q), BigInt::from(0));
    }

    #[test]
    fn monic_division() {
        let p = ip(&[1, 0, 0, 1]);
        assert_eq!(p.div_exact_monic(&ip(&[1, 1])), Some(ip(&[1, -1, 1])));
        assert_eq!(ip(&[1, 0, 1]).div_exact_monic(&ip(&[1, 1])), None);
    }
}
