//! First homology of branched cyclic covers, and the polynomial criteria
//! deciding when every prime power cover is a homology sphere.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::laurent::{
    distinct_prime_factors, normalize_alexander, resultant, strip_cyclotomic_factors,
    CyclotomicFactor, IntPoly, LaurentError, LaurentPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("cover index must be at least 2, got {0}")]
    BadIndex(u64),
    #[error("the product over roots of unity is not an integer (non-integral coefficients)")]
    NonIntegral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub n: u64,
    /// `|H_1|`, with `0` standing for infinite homology.
    #[serde(with = "biguint_string")]
    pub order: BigUint,
    pub is_homology_sphere: bool,
}

mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `|H_1(Sigma_n)| = |prod_{j=1}^{n-1} Delta(zeta_n^j)|`, computed as
/// `|Res(t^n - 1, D * Delta)| / D^n` for the integer-cleared `D * Delta`
/// (normalized so that `Delta(1) = 1`).
pub fn cover_order(delta: &LaurentPoly, n: u64) -> Result<BigUint, CoverError> {
    if n < 2 {
        return Err(CoverError::BadIndex(n));
    }
    let delta = normalize_alexander(delta)?;
    let (poly, denom, _) = delta.to_int_poly();
    let res = resultant(&IntPoly::x_pow_minus_one(n as usize), &poly);
    let scale = num_traits::pow(denom, n as usize);
    if !(&res % &scale).is_zero() {
        return Err(CoverError::NonIntegral);
    }
    Ok((res / scale).magnitude().clone())
}

fn report(delta: &LaurentPoly, n: u64) -> Result<CoverReport, CoverError> {
    let order = cover_order(delta, n)?;
    Ok(CoverReport {
        n,
        is_homology_sphere: order.is_one(),
        order,
    })
}

pub fn is_prime_power(q: u64) -> bool {
    q >= 2 && distinct_prime_factors(q).len() == 1
}

/// Reports for every prime power `q <= bound`.
pub fn prime_power_cover_scan(
    delta: &LaurentPoly,
    bound: u64,
) -> Result<Vec<CoverReport>, CoverError> {
    if bound < 2 {
        return Err(CoverError::BadIndex(bound));
    }
    (2..=bound)
        .filter(|&q| is_prime_power(q))
        .map(|q| report(delta, q))
        .collect()
}

/// Reports for every `2 <= n <= bound`.
pub fn cover_scan(delta: &LaurentPoly, bound: u64) -> Result<Vec<CoverReport>, CoverError> {
    if bound < 2 {
        return Err(CoverError::BadIndex(bound));
    }
    (2..=bound).map(|n| report(delta, n)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OffendingFactor {
    /// `phi_index` with fewer than three distinct prime divisors.
    Cyclotomic { index: u64, distinct_primes: usize },
    NonCyclotomicRemainder {
        #[serde(with = "remainder_json")]
        remainder: LaurentPoly,
    },
}

mod remainder_json {
    use super::LaurentPoly;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(p: &LaurentPoly, s: S) -> Result<S::Ok, S::Error> {
        p.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<LaurentPoly, D::Error> {
        LaurentPoly::deserialize(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LivingstonClassification {
    pub all_prime_power_covers_trivial: bool,
    pub all_finite_covers_trivial: bool,
    pub offending_factor: Option<OffendingFactor>,
    /// Casson-Gordon invariants can be nontrivial only when some prime
    /// power cover has nontrivial homology.
    pub cg_applicable: bool,
    pub cyclotomic_factors: Vec<CyclotomicFactor>,
    pub remainder: LaurentPoly,
}

/// Classifies `Delta` by its cyclotomic factors: every prime power cover
/// is a homology sphere iff the non-cyclotomic remainder is a unit and
/// every `phi_n` present has `n` divisible by three distinct primes.
pub fn classify(delta: &LaurentPoly) -> Result<LivingstonClassification, CoverError> {
    let delta = normalize_alexander(delta)?;
    let f = strip_cyclotomic_factors(&delta);
    let offending_cyclotomic = f.cyclotomic.iter().find_map(|c| {
        let k = distinct_prime_factors(c.index).len();
        (k < 3).then_some(OffendingFactor::Cyclotomic {
            index: c.index,
            distinct_primes: k,
        })
    });
    let offending_factor = offending_cyclotomic.or_else(|| {
        (!f.remainder_is_unit()).then(|| OffendingFactor::NonCyclotomicRemainder {
            remainder: f.remainder.clone(),
        })
    });
    let all_pp = offending_factor.is_none();
    Ok(LivingstonClassification {
        all_prime_power_covers_trivial: all_pp,
        all_finite_covers_trivial: delta.is_one(),
        offending_factor,
        cg_applicable: !all_pp,
        cyclotomic_factors: f.cyclotomic,
        remainder: f.remainder,
    })
}
