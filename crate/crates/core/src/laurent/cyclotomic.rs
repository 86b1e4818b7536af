//! Cyclotomic polynomials and greedy removal of cyclotomic factors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{IntPoly, LaurentPoly};

/// Distinct prime divisors in increasing order.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

pub fn euler_phi(n: u64) -> u64 {
    distinct_prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

fn mobius(n: u64) -> i8 {
    let primes = distinct_prime_factors(n);
    if primes.iter().any(|p| n % (p * p) == 0) {
        0
    } else if primes.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `phi_n` as an integer polynomial, from
/// `phi_n = prod_{d | n} (t^d - 1)^mu(n/d)`. Multiplying and dividing by the
/// sparse binomials `t^d - 1` costs linear time per factor.
pub(crate) fn cyclotomic_int(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut coeffs = vec![BigInt::one()];
    let divs = divisors(n);
    for &d in &divs {
        if mobius(n / d) == 1 {
            coeffs = mul_binomial(&coeffs, d as usize);
        }
    }
    for &d in &divs {
        if mobius(n / d) == -1 {
            coeffs = div_binomial(&coeffs, d as usize);
        }
    }
    // The denominator factors contribute (-1)^k; phi_n is monic.
    if coeffs.last().is_some_and(|c| c.is_negative()) {
        coeffs.iter_mut().for_each(|c| *c = -c.clone());
    }
    IntPoly::new(coeffs)
}

/// `p * (t^d - 1)`.
fn mul_binomial(p: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + d];
    for (i, c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

/// `p / (t^d - 1)`; the division must be exact.
fn div_binomial(p: &[BigInt], d: usize) -> Vec<BigInt> {
    // p_i = q_{i-d} - q_i, so q_i = q_{i-d} - p_i.
    let qlen = p.len() - d;
    let mut q = vec![BigInt::zero(); qlen];
    for i in 0..qlen {
        let prev = if i >= d {
            q[i - d].clone()
        } else {
            BigInt::zero()
        };
        q[i] = prev - &p[i];
    }
    debug_assert_eq!(mul_binomial(&q, d), p);
    q
}

/// The `n`-th cyclotomic polynomial `phi_n(t)`: monic, degree `euler_phi(n)`,
/// and `prod_{d | n} phi_d = t^n - 1`.
pub fn cyclotomic(n: u64) -> LaurentPoly {
    LaurentPoly::from_int_poly(&cyclotomic_int(n), 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicFactor {
    pub index: u64,
    pub multiplicity: u32,
}

/// `input = unit_coefficient * t^unit_exponent * prod phi_n^mult * remainder`.
///
/// `remainder` has minimum exponent zero. It is `1` when the input is a
/// unit times cyclotomic factors; otherwise its leading coefficient is
/// positive and the unit coefficient is `+-1` times the rational content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub cyclotomic: Vec<CyclotomicFactor>,
    pub remainder: LaurentPoly,
    pub unit_coefficient: BigRational,
    pub unit_exponent: i64,
}

impl CyclotomicFactorization {
    pub fn reconstruct(&self) -> LaurentPoly {
        let unit = LaurentPoly::monomial(self.unit_coefficient.clone(), self.unit_exponent);
        let mut acc = &unit * &self.remainder;
        for f in &self.cyclotomic {
            acc = &acc * &cyclotomic(f.index).pow(f.multiplicity);
        }
        acc
    }

    pub fn remainder_is_unit(&self) -> bool {
        self.remainder.is_unit()
    }

    pub fn multiplicity(&self, index: u64) -> u32 {
        self.cyclotomic
            .iter()
            .find(|f| f.index == index)
            .map_or(0, |f| f.multiplicity)
    }
}

/// Greedily divides out every `phi_n` (with multiplicity) whose degree fits.
/// Candidates run over `n <= 2 * deg^2`, which contains every `n` with
/// `euler_phi(n) <= deg` because `euler_phi(n) >= sqrt(n / 2)`.
///
/// Panics on the zero polynomial.
pub fn strip_cyclotomic_factors(p: &LaurentPoly) -> CyclotomicFactorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let (int_poly, denom, shift) = p.to_int_poly();
    let content = int_poly
        .coeffs()
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut current = IntPoly::new(int_poly.coeffs().iter().map(|c| c / &content).collect());
    let mut scale = BigRational::new(content, denom);

    let mut factors = Vec::new();
    let initial_degree = current.degree().unwrap() as u64;
    let bound = 2 * initial_degree * initial_degree;
    let mut cache: HashMap<u64, IntPoly> = HashMap::new();
    for n in 1..=bound {
        let deg = current.degree().unwrap() as u64;
        if deg == 0 {
            break;
        }
        let phi = euler_phi(n);
        if phi > deg {
            continue;
        }
        let cyc = cache.entry(n).or_insert_with(|| cyclotomic_int(n));
        let mut mult = 0;
        while current.degree().unwrap_or(0) as u64 >= phi {
            match current.div_exact_monic(cyc) {
                Some(q) => {
                    current = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            factors.push(CyclotomicFactor {
                index: n,
                multiplicity: mult,
            });
        }
    }

    let remainder = if current.degree() == Some(0) {
        scale *= BigRational::from_integer(current.coeffs()[0].clone());
        LaurentPoly::one()
    } else {
        if current.coeffs().last().unwrap().is_negative() {
            scale = -scale;
            current = IntPoly::new(current.coeffs().iter().map(|c| -c).collect());
        }
        LaurentPoly::from_int_poly(&current, 0)
    };
    CyclotomicFactorization {
        cyclotomic: factors,
        remainder,
        unit_coefficient: scale,
        unit_exponent: shift,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(min, c)
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), lp(0, &[-1, 1]));
        assert_eq!(cyclotomic(2), lp(0, &[1, 1]));
        assert_eq!(cyclotomic(6), lp(0, &[1, -1, 1]));
        assert_eq!(cyclotomic(30), lp(0, &[1, 1, 0, -1, -1, -1, 0, 1, 1]));
        // first cyclotomic polynomial with a coefficient of absolute value 2
        assert_eq!(
            cyclotomic(105).coeff(7),
            BigRational::from_integer((-2).into())
        );
    }

    #[test]
    fn divisor_products_give_binomials() {
        for n in 1..=200u64 {
            let phi_n = cyclotomic(n);
            assert_eq!(phi_n.degree(), Some(euler_phi(n)), "n = {n}");
            assert!(phi_n.leading_coefficient().unwrap().is_one());
            let product: LaurentPoly = divisors(n).into_iter().map(cyclotomic).product();
            assert_eq!(
                product,
                lp(0, &[-1]) + LaurentPoly::monomial(BigRational::one(), n as i64)
            );
        }
    }

    #[test]
    fn recursive_division_agrees() {
        // (t^n - 1) / prod_{d | n, d < n} phi_d
        for n in [12u64, 30, 36, 60] {
            let mut acc =
                &LaurentPoly::monomial(BigRational::one(), n as i64) - &LaurentPoly::one();
            for d in divisors(n).into_iter().filter(|&d| d < n) {
                acc = acc.divide_exact(&cyclotomic(d)).unwrap();
            }
            assert_eq!(acc, cyclotomic(n));
        }
    }

    #[test]
    fn strip_examples() {
        let f = strip_cyclotomic_factors(&lp(0, &[1, -1, 1]));
        assert_eq!(
            f.cyclotomic,
            vec![CyclotomicFactor {
                index: 6,
                multiplicity: 1
            }]
        );
        assert!(f.remainder.is_one());

        let f = strip_cyclotomic_factors(&cyclotomic(30).pow(2));
        assert_eq!(
            f.cyclotomic,
            vec![CyclotomicFactor {
                index: 30,
                multiplicity: 2
            }]
        );
        assert!(f.remainder.is_one());

        let fig8 = lp(0, &[1, -3, 1]);
        let f = strip_cyclotomic_factors(&fig8);
        assert!(f.cyclotomic.is_empty());
        assert_eq!(f.remainder, fig8);
    }

    #[test]
    fn strip_records_units() {
        let p = lp(-1, &[-1, 3, -1]);
        let f = strip_cyclotomic_factors(&p);
        assert_eq!(f.unit_coefficient, BigRational::from_integer((-1).into()));
        assert_eq!(f.unit_exponent, -1);
        assert_eq!(f.reconstruct(), p);

        let q = cyclotomic(10)
            .scale(&BigRational::new(3.into(), 4.into()))
            .shift(4);
        let f = strip_cyclotomic_factors(&q);
        assert_eq!(f.multiplicity(10), 1);
        assert!(f.remainder.is_one());
        assert_eq!(f.reconstruct(), q);
    }

    #[test]
    fn prime_helpers() {
        assert_eq!(distinct_prime_factors(30), vec![2, 3, 5]);
        assert_eq!(distinct_prime_factors(1), Vec::<u64>::new());
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }
}
