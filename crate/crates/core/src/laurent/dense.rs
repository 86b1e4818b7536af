//! Dense ascending-coefficient polynomials over `Q`, used internally for
//! division, gcd and Sturm sequences.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn degree(v: &[BigRational]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Long division; panics on a zero divisor.
pub(crate) fn div_rem(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut rem: Vec<BigRational> = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b[..=db].iter().enumerate() {
            if !bj.is_zero() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn monic(a: &[BigRational]) -> Vec<BigRational> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = a[d].recip();
            a[..=d].iter().map(|c| c * &inv).collect()
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = monic(a);
    let mut y = monic(b);
    while degree(&y).is_some() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = monic(&r);
    }
    x
}

pub(crate) fn derivative(a: &[BigRational]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(k.into()))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn eval(a: &[BigRational], x: &BigRational) -> BigRational {
    a.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub(crate) fn sign(a: &[BigRational], x: &BigRational) -> i8 {
    let v = eval(a, x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...` of a polynomial.
pub(crate) fn sturm_chain(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut chain = vec![p.to_vec(), derivative(p)];
    loop {
        let n = chain.len();
        if degree(&chain[n - 1]).is_none() {
            chain.pop();
            break;
        }
        let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
        if degree(&r).is_none() {
            break;
        }
        // Positive rescaling keeps sign changes intact and coefficients small.
        let lead = r[degree(&r).unwrap()].abs();
        chain.push(r.iter().map(|c| -(c / &lead)).collect());
    }
    chain
}

fn sign_changes(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| sign(p, x))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]`.
pub(crate) fn count_roots(chain: &[Vec<BigRational>], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(chain, a).saturating_sub(sign_changes(chain, b))
}

pub(crate) fn one() -> Vec<BigRational> {
    vec![BigRational::one()]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vec<BigRational> {
        c.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sturm_counts_roots() {
        // (x - 1)(x + 2)(2x - 1) = 2x^3 + x^2 - 5x + 2
        let p = v(&[2, -5, 1, 2]);
        let chain = sturm_chain(&p);
        assert_eq!(count_roots(&chain, &q(-3, 1), &q(3, 1)), 3);
        assert_eq!(count_roots(&chain, &q(0, 1), &q(3, 4)), 1);
        assert_eq!(count_roots(&chain, &q(-1, 1), &q(0, 1)), 0);
        // the right endpoint is included
        assert_eq!(count_roots(&chain, &q(3, 4), &q(1, 1)), 1);
    }

    #[test]
    fn gcd_is_monic() {
        let a = mul(&v(&[1, 1]), &v(&[-2, 1]));
        let b = mul(&v(&[1, 1]), &v(&[3, 1]));
        assert_eq!(gcd(&a, &b), v(&[1, 1]));
        assert_eq!(gcd(&v(&[2, 4]), &[]), vec![q(1, 2), q(1, 1)]);
    }
}
