//! Laurent polynomials over the rationals, `Q[t, t^-1]`.
//!
//! A [`LaurentPoly`] is stored sparsely as a map from exponent to nonzero
//! coefficient, so equality is structural and the zero polynomial is the
//! empty map.

mod cyclotomic;
pub(crate) mod dense;
mod resultant;
mod serde_impl;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Complex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{
    cyclotomic, distinct_prime_factors, euler_phi, strip_cyclotomic_factors, CyclotomicFactor,
    CyclotomicFactorization,
};
pub use resultant::{resultant, IntPoly};
pub use serde_impl::from_json;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not an Alexander polynomial: {0}")]
    NotAlexander(&'static str),
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^exponent`.
    pub fn monomial(c: BigRational, exponent: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { terms }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// Builds `sum_k coeffs[k] * t^(min_exponent + k)`.
    pub fn from_coeffs(min_exponent: i64, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (min_exponent + k as i64, c))
            .collect();
        Self { terms }
    }

    pub fn from_ints(min_exponent: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            min_exponent,
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())),
        )
    }

    pub(crate) fn from_terms(terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exponent: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Nonzero monomials `c * t^k` are exactly the units of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Span `max - min` of the exponents; `None` is the sentinel degree of zero.
    pub fn degree(&self) -> Option<u64> {
        Some((self.max_exponent()? - self.min_exponent()?) as u64)
    }

    pub fn coeff(&self, exponent: i64) -> BigRational {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }

    /// `p(t^-1)`.
    pub fn inverse_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation; `None` at `t = 0` when negative exponents are present.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        if t.is_zero() {
            if self.min_exponent().is_some_and(|e| e < 0) {
                return None;
            }
            return Some(self.coeff(0));
        }
        let mut sum = BigRational::zero();
        for (&e, c) in &self.terms {
            let power = if e >= 0 {
                num_traits::pow(t.clone(), e as usize)
            } else {
                num_traits::pow(t.recip(), (-e) as usize)
            };
            sum += c * power;
        }
        Some(sum)
    }

    pub fn eval_int(&self, t: i64) -> Option<BigRational> {
        self.eval(&BigRational::from_integer(t.into()))
    }

    /// Floating-point evaluation at a complex point.
    pub fn eval_complex(&self, z: Complex<f64>) -> Complex<f64> {
        self.terms
            .iter()
            .map(|(&e, c)| z.powi(e as i32) * crate::rational::to_f64(c))
            .sum()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Dense ascending coefficients from the minimum exponent, plus that exponent.
    pub(crate) fn to_dense(&self) -> (i64, Vec<BigRational>) {
        let Some(lo) = self.min_exponent() else {
            return (0, Vec::new());
        };
        let hi = self.max_exponent().unwrap();
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (&e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    /// Clears denominators: returns `(poly, d, shift)` with
    /// `d * self = t^shift * poly(t)` and `poly` an ordinary integer polynomial.
    pub fn to_int_poly(&self) -> (IntPoly, BigInt, i64) {
        let d = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let (lo, dense) = self.to_dense();
        let coeffs = dense
            .into_iter()
            .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
            .collect();
        (IntPoly::new(coeffs), d, lo)
    }

    pub fn from_int_poly(p: &IntPoly, shift: i64) -> Self {
        Self::from_coeffs(
            shift,
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone())),
        )
    }

    /// Returns `r` with `divisor * r == self`, or `NotDivisible`.
    pub fn divide_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (lo_p, p) = self.to_dense();
        let (lo_q, q) = divisor.to_dense();
        let (quot, rem) = dense::div_rem(&p, &q);
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(LaurentError::NotDivisible);
        }
        Ok(Self::from_coeffs(lo_p - lo_q, quot))
    }

    /// Monic greatest common divisor, normalized to minimum exponent zero.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        Self::from_coeffs(0, dense::gcd(&a, &b))
    }

    /// Product of the distinct irreducible factors, monic with minimum exponent zero.
    pub fn squarefree_part(&self) -> LaurentPoly {
        let (_, a) = self.to_dense();
        let g = dense::gcd(&a, &dense::derivative(&a));
        let (q, _) = dense::div_rem(&a, &g);
        Self::from_coeffs(0, dense::monic(&q))
    }

    /// Whether `p(t) = s * t^k * p(t^-1)` for `k = min + max` and `s = +1`.
    pub fn is_palindromic(&self) -> bool {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => self
                .terms
                .iter()
                .all(|(&e, c)| self.terms.get(&(lo + hi - e)) == Some(c)),
            _ => true,
        }
    }

    /// Whether `p(t) = p(t^-1)` as Laurent polynomials.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Shifts a palindromic polynomial of even span so that it is symmetric.
    pub fn centered(&self) -> Option<LaurentPoly> {
        let (lo, hi) = (self.min_exponent()?, self.max_exponent()?);
        if (lo + hi) % 2 != 0 {
            return None;
        }
        Some(self.shift(-(lo + hi) / 2))
    }
}

/// Canonical representative of an Alexander polynomial: multiplied by a
/// unit `+-t^m` so that `p(1) = 1` and `p(t) = p(t^-1)`.
pub fn normalize_alexander(p: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
    if p.is_zero() {
        return Err(LaurentError::NotAlexander("zero polynomial"));
    }
    let at_one = p.eval_int(1).expect("t = 1 is a unit");
    let sign = if at_one.is_one() {
        BigRational::one()
    } else if (-&at_one).is_one() {
        -BigRational::one()
    } else {
        return Err(LaurentError::NotAlexander("value at t = 1 is not +-1"));
    };
    let p = p.scale(&sign);
    // p(1) = 1 rules out the antisymmetric case p(t) = -t^k p(t^-1).
    if !p.is_palindromic() {
        return Err(LaurentError::NotAlexander(
            "coefficients are not palindromic",
        ));
    }
    p.centered().ok_or(LaurentError::NotAlexander(
        "odd exponent span cannot be centered",
    ))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (lo_a, a) = self.to_dense();
        let (lo_b, b) = rhs.to_dense();
        LaurentPoly::from_coeffs(lo_a + lo_b, dense::mul(&a, &b))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| &acc + &p)
    }
}

/// Renders as e.g. `t - 1 + t^-1`, highest exponent first.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag_str = crate::rational::format_rational(&mag);
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                f.write_str(&mag_str)?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag_str}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(min, c)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(lp(0, &[-1, 1]) * lp(0, &[1, 1]), lp(0, &[-1, 0, 1]));
        let p = lp(-2, &[3, 0, -1, 5]);
        assert_eq!(&p * &LaurentPoly::one(), p);
        assert_eq!(lp(0, &[1, -1, 1]) * lp(0, &[1, 1]), lp(0, &[1, 0, 0, 1]));
    }

    #[test]
    fn mul_degree_is_additive() {
        let p = lp(-1, &[2, 0, 1]);
        let q = lp(3, &[1, 1, 1, 7]);
        assert_eq!((&p * &q).degree(), Some(2 + 3));
        assert_eq!(LaurentPoly::zero().degree(), None);
    }

    #[test]
    fn divide_exact_examples() {
        let quot = lp(0, &[1, 0, 0, 1]).divide_exact(&lp(0, &[1, 1])).unwrap();
        assert_eq!(quot, lp(0, &[1, -1, 1]));
        let p = lp(-3, &[1, 2, 0, -4]);
        assert!(p.divide_exact(&p).unwrap().is_one());
        assert_eq!(
            lp(0, &[1, 0, 1]).divide_exact(&lp(0, &[1, 1])),
            Err(LaurentError::NotDivisible)
        );
        assert_eq!(
            p.divide_exact(&LaurentPoly::zero()),
            Err(LaurentError::DivisionByZero)
        );
    }

    #[test]
    fn divide_exact_tracks_exponent_offsets() {
        let q = lp(-1, &[1, 1]);
        let r = lp(-4, &[2, -1, 3]);
        assert_eq!((&q * &r).divide_exact(&q).unwrap(), r);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            normalize_alexander(&lp(0, &[1, -1, 1])).unwrap(),
            lp(-1, &[1, -1, 1])
        );
        assert!(normalize_alexander(&LaurentPoly::one()).unwrap().is_one());
        assert_eq!(
            normalize_alexander(&lp(0, &[-1, 3, -1])).unwrap(),
            lp(-1, &[-1, 3, -1])
        );
        // sign flip and shift together
        assert_eq!(
            normalize_alexander(&lp(5, &[-1, 1, -1])).unwrap(),
            lp(-1, &[1, -1, 1])
        );
    }

    #[test]
    fn normalize_rejects_non_alexander() {
        assert!(normalize_alexander(&LaurentPoly::zero()).is_err());
        assert!(normalize_alexander(&lp(0, &[1, 1])).is_err());
        assert!(normalize_alexander(&lp(0, &[2, -1, 0])).is_err());
        let half = BigRational::new(1.into(), 2.into());
        let odd_span = LaurentPoly::from_coeffs(0, [half.clone(), half]);
        assert_eq!(
            normalize_alexander(&odd_span),
            Err(LaurentError::NotAlexander(
                "odd exponent span cannot be centered"
            ))
        );
    }

    #[test]
    fn display() {
        assert_eq!(lp(-1, &[1, -1, 1]).to_string(), "t - 1 + t^-1");
        assert_eq!(lp(-1, &[-1, 3, -1]).to_string(), "-t + 3 - t^-1");
        assert_eq!(lp(0, &[0, 0, 2]).to_string(), "2*t^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = lp(0, &[-1, 1]);
        let b = lp(0, &[1, 1]);
        let c = lp(0, &[1, -3, 1]);
        let p = &(&a * &a) * &(&b * &c);
        assert_eq!(p.squarefree_part(), &(&a * &b) * &c);
        assert_eq!((&p).gcd(&(&a * &c)), &a * &c);
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..3, prop::collection::vec(-5i64..=5, 0..5)).prop_map(|(m, c)| lp(m, &c))
    }

    proptest! {
        #[test]
        fn distributive(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        }

        #[test]
        fn mul_commutes_and_divides_back(p in small_poly(), q in small_poly()) {
            let pq = &p * &q;
            prop_assert_eq!(&pq, &(&q * &p));
            if !q.is_zero() {
                prop_assert_eq!(pq.divide_exact(&q).unwrap(), p);
            }
        }

        #[test]
        fn no_zero_coefficients_stored(p in small_poly(), q in small_poly()) {
            let s = &p - &q;
            prop_assert!(s.terms().all(|(_, c)| !c.is_zero()));
            prop_assert!((&p - &p).is_zero());
        }
    }
}
