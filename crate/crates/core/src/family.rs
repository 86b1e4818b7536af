//! Satellite descriptions, the witness family `J_1, J_2, ...`, and
//! exhaustive certificates that the infected knots `K_i` are pairwise
//! non-concordant.
//!
//! For `K_i # -K_j` the obstruction reads
//! `rho = sum_n e_i^n rho(J_i) - sum_n e_j^n rho(J_j)` for some unknown
//! 0/1 pattern `e` that is not identically zero. A certificate enumerates
//! every nonzero pattern and checks `|rho| > c`, where `c` bounds the
//! rho-invariants of the fixed 3-manifold `M_{K # -K}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::rational;
use crate::seifert::SeifertMatrix;
use crate::signature::{rho_integral, RhoValue, SignatureError, SignatureOptions};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("{curves} infection curves but {companions} companions")]
    LengthMismatch { curves: usize, companions: usize },
    #[error("band index {band} out of range 1..={bands}")]
    IndexError { band: usize, bands: usize },
    #[error("the bound c must be positive, got {0}")]
    NonPositiveBound(String),
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("a family needs at least {0} member(s)")]
    TooFewMembers(usize),
    #[error("multiplicity {0} is not a positive even integer")]
    BadMultiplicity(u64),
    #[error("rho value {given} for J_{index} does not equal 4m/3 = {expected}")]
    RhoMismatch {
        index: usize,
        given: String,
        expected: String,
    },
    #[error("multiplicity of J_{0} exceeds 2^63")]
    Overflow(usize),
    #[error("invalid pair ({i}, {j}) for a family of {len}; need 1 <= i < j <= {len}")]
    BadPair { i: usize, j: usize, len: usize },
}

/// Unknotted curve linking band `band_index` (1-based) of the Seifert surface once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfectionCurve {
    pub band_index: usize,
    pub family_tag: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Infection {
    pub curve: InfectionCurve,
    pub companion: KnotDescription,
}

/// A base Seifert matrix together with satellite infections along curves
/// in the complement of its Seifert surface. Companions may themselves be
/// infected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotDescription {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    base: SeifertMatrix,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    infections: Vec<Infection>,
}

impl KnotDescription {
    pub fn new(base: SeifertMatrix) -> Self {
        Self {
            name: None,
            base,
            infections: Vec::new(),
        }
    }

    pub fn named(name: impl Into<String>, base: SeifertMatrix) -> Self {
        Self {
            name: Some(name.into()),
            ..Self::new(base)
        }
    }

    /// The infection curves miss the Seifert surface, so the form is the base's.
    pub fn seifert_matrix(&self) -> &SeifertMatrix {
        &self.base
    }

    pub fn infections(&self) -> &[Infection] {
        &self.infections
    }

    /// Height of the companion tree; 0 for an uninfected knot.
    pub fn depth(&self) -> usize {
        self.infections
            .iter()
            .map(|inf| 1 + inf.companion.depth())
            .max()
            .unwrap_or(0)
    }

    /// Number of knots in the companion tree, this one included.
    pub fn node_count(&self) -> usize {
        1 + self
            .infections
            .iter()
            .map(|inf| inf.companion.node_count())
            .sum::<usize>()
    }

    /// Drops infections whose companion is (after normalization) unknotted.
    pub fn normalized(&self) -> Self {
        let infections = self
            .infections
            .iter()
            .map(|inf| Infection {
                curve: inf.curve.clone(),
                companion: inf.companion.normalized(),
            })
            .filter(|inf| !inf.companion.is_trivial())
            .collect();
        Self {
            name: self.name.clone(),
            base: self.base.clone(),
            infections,
        }
    }

    fn is_trivial(&self) -> bool {
        self.base.is_unknot() && self.infections.is_empty()
    }

    /// Reversed mirror image; companions are mirrored along with the base.
    pub fn mirror(&self) -> Self {
        Self {
            name: None,
            base: self.base.mirror_reverse(),
            infections: self
                .infections
                .iter()
                .map(|inf| Infection {
                    curve: inf.curve.clone(),
                    companion: inf.companion.mirror(),
                })
                .collect(),
        }
    }

    /// Connected sum; the bands of `other` are numbered after those of `self`.
    pub fn connected_sum(&self, other: &KnotDescription) -> Self {
        let offset = self.base.size();
        let mut infections = self.infections.clone();
        infections.extend(other.infections.iter().map(|inf| Infection {
            curve: InfectionCurve {
                band_index: inf.curve.band_index + offset,
                family_tag: inf.curve.family_tag.clone(),
            },
            companion: inf.companion.clone(),
        }));
        Self {
            name: None,
            base: self.base.connected_sum(&other.base),
            infections,
        }
    }
}

/// `K({eta_1..eta_k}, {J_1..J_k})`: ties the strands through each curve's
/// disk into the matching companion.
pub fn satellite_compose(
    base: &KnotDescription,
    curves: &[InfectionCurve],
    companions: &[KnotDescription],
) -> Result<KnotDescription, FamilyError> {
    if curves.len() != companions.len() {
        return Err(FamilyError::LengthMismatch {
            curves: curves.len(),
            companions: companions.len(),
        });
    }
    let bands = base.base.size();
    if let Some(c) = curves
        .iter()
        .find(|c| c.band_index == 0 || c.band_index > bands)
    {
        return Err(FamilyError::IndexError {
            band: c.band_index,
            bands,
        });
    }
    let mut out = base.clone();
    out.infections.extend(
        curves
            .iter()
            .zip(companions)
            .map(|(curve, companion)| Infection {
                curve: curve.clone(),
                companion: companion.clone(),
            }),
    );
    Ok(out)
}

/// One curve per band, `eta^1 .. eta^{2g}`, all carrying `tag`.
pub fn band_curves(genus: usize, tag: &str) -> Vec<InfectionCurve> {
    (1..=2 * genus)
        .map(|band_index| InfectionCurve {
            band_index,
            family_tag: tag.to_string(),
        })
        .collect()
}

/// Connected sums `J_i` of `m_i` left-handed trefoils, with `m_i` even
/// (so Arf vanishes) and `rho(J_i) = 4 m_i / 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessFamily {
    #[serde(with = "rational")]
    pub c: BigRational,
    pub g: usize,
    pub multiplicities: Vec<u64>,
    #[serde(with = "rational::vec")]
    pub rho_values: Vec<BigRational>,
}

fn trefoil_rho(m: u64) -> BigRational {
    BigRational::new(BigInt::from(4) * m, BigInt::from(3))
}

/// Smallest even `m > 0` with `4m/3 > threshold`.
fn minimal_even_above(threshold: &BigRational) -> Option<u64> {
    // 4m/3 > T  <=>  m > 3T/4; m = 2 (floor(3T/8) + 1) for T >= 0.
    let eighths = (threshold * BigRational::new(3.into(), 8.into())).floor();
    let k: u64 = if eighths.is_negative() {
        0
    } else {
        eighths.to_integer().try_into().ok()?
    };
    k.checked_add(1)?.checked_mul(2).filter(|m| *m <= 1 << 63)
}

/// `m_1` minimal even with `4 m_1 / 3 > c`, then `m_{i+1}` minimal even
/// with `4 m_{i+1} / 3 > c + 2g * 4 m_i / 3`.
pub fn build_witness_family(
    c: &BigRational,
    g: usize,
    count: usize,
) -> Result<WitnessFamily, FamilyError> {
    if !c.is_positive() {
        return Err(FamilyError::NonPositiveBound(rational::format_rational(c)));
    }
    if g == 0 {
        return Err(FamilyError::ZeroGenus);
    }
    if count == 0 {
        return Err(FamilyError::TooFewMembers(1));
    }
    let two_g = BigRational::from_integer(BigInt::from(2 * g));
    let mut multiplicities = Vec::with_capacity(count);
    let mut threshold = c.clone();
    for i in 1..=count {
        let m = minimal_even_above(&threshold).ok_or(FamilyError::Overflow(i))?;
        multiplicities.push(m);
        threshold = c + &two_g * trefoil_rho(m);
    }
    WitnessFamily::from_multiplicities(c.clone(), g, multiplicities)
}

impl WitnessFamily {
    /// Any positive even multiplicities; the growth condition is not
    /// enforced, see [`WitnessFamily::satisfies_recursion`].
    pub fn from_multiplicities(
        c: BigRational,
        g: usize,
        multiplicities: Vec<u64>,
    ) -> Result<Self, FamilyError> {
        if !c.is_positive() {
            return Err(FamilyError::NonPositiveBound(rational::format_rational(&c)));
        }
        if g == 0 {
            return Err(FamilyError::ZeroGenus);
        }
        if multiplicities.is_empty() {
            return Err(FamilyError::TooFewMembers(1));
        }
        if let Some(&m) = multiplicities.iter().find(|&&m| m == 0 || m % 2 != 0) {
            return Err(FamilyError::BadMultiplicity(m));
        }
        let rho_values = multiplicities.iter().map(|&m| trefoil_rho(m)).collect();
        Ok(Self {
            c,
            g,
            multiplicities,
            rho_values,
        })
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// `rho_1 > c` and `rho_{i+1} > c + 2g rho_i`, compared exactly.
    pub fn satisfies_recursion(&self) -> bool {
        let two_g = BigRational::from_integer(BigInt::from(2 * self.g));
        self.rho_values.first().is_some_and(|r| *r > self.c)
            && self
                .rho_values
                .windows(2)
                .all(|w| w[1] > &self.c + &two_g * &w[0])
    }

    /// Seifert matrix of `J_i` (1-based).
    pub fn companion(&self, i: usize) -> SeifertMatrix {
        SeifertMatrix::left_trefoils(self.multiplicities[i - 1] as usize)
    }

    /// `K_i = K({eta_i^1..eta_i^{2g}}, {J_i, .., J_i})`.
    pub fn infected_knot(
        &self,
        i: usize,
        base: &KnotDescription,
    ) -> Result<KnotDescription, FamilyError> {
        let companion = KnotDescription::named(format!("J_{i}"), self.companion(i));
        let curves = band_curves(self.g, &i.to_string());
        satellite_compose(base, &curves, &vec![companion; curves.len()])
    }

    /// Recomputes Arf and rho of every `J_i` from its Seifert matrix.
    pub fn verify_companions(
        &self,
        opts: &SignatureOptions,
    ) -> Result<Vec<CompanionCheck>, SignatureError> {
        (1..=self.len())
            .map(|i| {
                let v = self.companion(i);
                let rho = rho_integral(&v, opts)?;
                Ok(CompanionCheck {
                    index: i,
                    multiplicity: self.multiplicities[i - 1],
                    arf: v.arf(),
                    rho_matches: rho.is_exact() && rho.value == self.rho_values[i - 1],
                    rho,
                })
            })
            .collect()
    }
}

#[derive(Deserialize)]
struct RawFamily {
    #[serde(with = "rational")]
    c: BigRational,
    g: usize,
    multiplicities: Vec<u64>,
    #[serde(default, with = "optional_rationals")]
    rho_values: Option<Vec<BigRational>>,
}

mod optional_rationals {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer};

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<Vec<BigRational>>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "crate::rational::vec")] Vec<BigRational>);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

impl<'de> Deserialize<'de> for WitnessFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawFamily::deserialize(d)?;
        let fam = WitnessFamily::from_multiplicities(raw.c, raw.g, raw.multiplicities)
            .map_err(D::Error::custom)?;
        if let Some(given) = raw.rho_values {
            if given.len() != fam.len() {
                return Err(D::Error::custom(
                    "rho_values and multiplicities differ in length",
                ));
            }
            for (k, (g, e)) in given.iter().zip(&fam.rho_values).enumerate() {
                if g != e {
                    return Err(D::Error::custom(FamilyError::RhoMismatch {
                        index: k + 1,
                        given: rational::format_rational(g),
                        expected: rational::format_rational(e),
                    }));
                }
            }
        }
        Ok(fam)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionCheck {
    pub index: usize,
    pub multiplicity: u64,
    pub arf: u8,
    pub rho: RhoValue,
    pub rho_matches: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternCase {
    /// Some `e_j^n = 1`: `value <= 2g rho(J_i) - rho(J_j) < -c`.
    SomeJ,
    /// Only `e_i` components set: `value >= rho(J_i) > c`.
    OnlyI,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternResult {
    pub eps_i: Vec<u8>,
    pub eps_j: Vec<u8>,
    #[serde(with = "rational")]
    pub value: BigRational,
    pub case: PatternCase,
    /// `2g rho(J_i) - rho(J_j)` or `rho(J_i)`, by case.
    #[serde(with = "rational")]
    pub case_bound: BigRational,
    pub case_bound_holds: bool,
    /// `|value| > c`.
    pub passes: bool,
}

pub const ASSUMPTION_NOTE: &str = "Assumed, not computed: at least one e-component is nonzero. \
This follows from nonsingularity of the rational Blanchfield form of K#-K and the \
self-annihilating kernel of H_1(M; Q[t,t^-1]) -> H_1(W; Q[t,t^-1]) for a (1)-solution W, \
which involve 4-manifold data outside this model.";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub i: usize,
    pub j: usize,
    #[serde(with = "rational")]
    pub c: BigRational,
    pub g: usize,
    #[serde(with = "rational")]
    pub rho_i: BigRational,
    #[serde(with = "rational")]
    pub rho_j: BigRational,
    pub pattern_count: usize,
    pub patterns: Vec<PatternResult>,
    /// Every nonzero pattern has `|value| > c`.
    pub valid: bool,
    /// The per-case inequalities hold for every pattern.
    pub case_bounds_hold: bool,
    pub assumption_note: String,
}

/// Enumerates all `2^{4g} - 1` nonzero patterns for the pair `i < j` (1-based).
pub fn certify_pair(fam: &WitnessFamily, i: usize, j: usize) -> Result<Certificate, FamilyError> {
    if !(1 <= i && i < j && j <= fam.len()) {
        return Err(FamilyError::BadPair {
            i,
            j,
            len: fam.len(),
        });
    }
    let bands = 2 * fam.g;
    let rho_i = fam.rho_values[i - 1].clone();
    let rho_j = fam.rho_values[j - 1].clone();
    let c = &fam.c;
    let neg_c = -c;
    let some_j_bound = BigRational::from_integer(BigInt::from(bands)) * &rho_i - &rho_j;

    let total: u64 = 1u64 << (2 * bands);
    let mut patterns = Vec::with_capacity(total as usize - 1);
    for bits in 1..total {
        let eps_i: Vec<u8> = (0..bands).map(|n| ((bits >> n) & 1) as u8).collect();
        let eps_j: Vec<u8> = (0..bands)
            .map(|n| ((bits >> (bands + n)) & 1) as u8)
            .collect();
        let count_i: u32 = eps_i.iter().map(|&e| e as u32).sum();
        let count_j: u32 = eps_j.iter().map(|&e| e as u32).sum();
        let value = BigRational::from_integer(count_i.into()) * &rho_i
            - BigRational::from_integer(count_j.into()) * &rho_j;
        let (case, case_bound, case_bound_holds) = if count_j > 0 {
            let holds = value <= some_j_bound && some_j_bound < neg_c;
            (PatternCase::SomeJ, some_j_bound.clone(), holds)
        } else {
            let holds = value >= rho_i && rho_i > *c;
            (PatternCase::OnlyI, rho_i.clone(), holds)
        };
        let passes = value.abs() > *c;
        patterns.push(PatternResult {
            eps_i,
            eps_j,
            value,
            case,
            case_bound,
            case_bound_holds,
            passes,
        });
    }
    Ok(Certificate {
        i,
        j,
        c: c.clone(),
        g: fam.g,
        rho_i,
        rho_j,
        pattern_count: patterns.len(),
        valid: patterns.iter().all(|p| p.passes),
        case_bounds_hold: patterns.iter().all(|p| p.case_bound_holds),
        patterns,
        assumption_note: ASSUMPTION_NOTE.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonconcordanceReport {
    pub certificates: Vec<Certificate>,
    pub valid: bool,
}

/// Certificates for every pair `i < j`.
pub fn nonconcordance_report(fam: &WitnessFamily) -> Result<NonconcordanceReport, FamilyError> {
    if fam.len() < 2 {
        return Err(FamilyError::TooFewMembers(2));
    }
    let mut certificates = Vec::new();
    for i in 1..fam.len() {
        for j in i + 1..=fam.len() {
            certificates.push(certify_pair(fam, i, j)?);
        }
    }
    Ok(NonconcordanceReport {
        valid: certificates.iter().all(|c| c.valid),
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Brute force: first even m with 4m/3 > threshold.
    fn brute_minimal_even(threshold: &BigRational) -> u64 {
        (1..)
            .map(|k| 2 * k)
            .find(|&m| trefoil_rho(m) > *threshold)
            .unwrap()
    }

    #[test]
    fn minimal_even_matches_brute_force() {
        for n in -5..200 {
            for d in [1, 2, 3, 7] {
                let t = q(n, d);
                assert_eq!(minimal_even_above(&t), Some(brute_minimal_even(&t)), "{t}");
            }
        }
    }

    #[test]
    fn build_examples() {
        assert_eq!(
            build_witness_family(&q(10, 1), 1, 2)
                .unwrap()
                .multiplicities,
            vec![8, 24]
        );
        assert_eq!(
            build_witness_family(&q(1, 1), 1, 1).unwrap().multiplicities,
            vec![2]
        );
        assert_eq!(
            build_witness_family(&q(10, 1), 2, 2)
                .unwrap()
                .multiplicities,
            vec![8, 40]
        );
        let fam = build_witness_family(&q(10, 1), 1, 3).unwrap();
        assert_eq!(fam.multiplicities, vec![8, 24, 56]);
        assert_eq!(fam.rho_values, vec![q(32, 3), q(32, 1), q(224, 3)]);
        assert!(fam.satisfies_recursion());
    }

    #[test]
    fn build_rejects_bad_parameters() {
        assert!(matches!(
            build_witness_family(&q(0, 1), 1, 2),
            Err(FamilyError::NonPositiveBound(_))
        ));
        assert_eq!(
            build_witness_family(&q(1, 1), 0, 2),
            Err(FamilyError::ZeroGenus)
        );
        assert_eq!(
            WitnessFamily::from_multiplicities(q(1, 1), 1, vec![2, 3]),
            Err(FamilyError::BadMultiplicity(3))
        );
    }

    #[test]
    fn overflow_is_an_error() {
        assert_eq!(
            build_witness_family(&q(1, 1), 1, 80),
            Err(FamilyError::Overflow(63))
        );
        let huge = BigRational::from_integer(BigInt::from(u64::MAX));
        assert_eq!(
            build_witness_family(&huge, 1, 1),
            Err(FamilyError::Overflow(1))
        );
    }

    #[test]
    fn exact_boundary_thresholds() {
        // c = 8/3 = rho(2 trefoils) exactly: strict inequality forces m = 4
        assert_eq!(
            build_witness_family(&q(8, 3), 1, 1).unwrap().multiplicities,
            vec![4]
        );
    }

    #[test]
    fn certificate_examples() {
        let fam = build_witness_family(&q(10, 1), 1, 2).unwrap();
        let cert = certify_pair(&fam, 1, 2).unwrap();
        assert_eq!(cert.pattern_count, 15);
        assert!(cert.valid && cert.case_bounds_hold);
        let worst = cert
            .patterns
            .iter()
            .filter(|p| p.case == PatternCase::SomeJ)
            .map(|p| p.value.clone())
            .max()
            .unwrap();
        assert_eq!(worst, q(-32, 3));

        let single = cert
            .patterns
            .iter()
            .find(|p| p.eps_i == vec![1, 0] && p.eps_j == vec![0, 0])
            .unwrap();
        assert_eq!(single.value, fam.rho_values[0]);
        assert!(single.value > fam.c);
    }

    #[test]
    fn corrupted_family_fails() {
        let good = build_witness_family(&q(1, 1), 1, 2).unwrap();
        let m1 = good.multiplicities[0];
        let bad = WitnessFamily::from_multiplicities(q(1, 1), 1, vec![m1, m1]).unwrap();
        assert!(!bad.satisfies_recursion());
        let cert = certify_pair(&bad, 1, 2).unwrap();
        assert!(!cert.valid);
        let zero = cert
            .patterns
            .iter()
            .find(|p| p.eps_i == vec![1, 0] && p.eps_j == vec![1, 0])
            .unwrap();
        assert!(zero.value.is_zero() && !zero.passes);
    }

    #[test]
    fn certify_pair_rejects_bad_indices() {
        let fam = build_witness_family(&q(10, 1), 1, 2).unwrap();
        for (i, j) in [(0, 1), (2, 1), (1, 1), (1, 3)] {
            assert!(matches!(
                certify_pair(&fam, i, j),
                Err(FamilyError::BadPair { .. })
            ));
        }
    }

    #[test]
    fn report_examples() {
        let fam = build_witness_family(&q(10, 1), 1, 3).unwrap();
        let report = nonconcordance_report(&fam).unwrap();
        assert_eq!(report.certificates.len(), 3);
        assert!(report.valid);
        let fam2 = build_witness_family(&q(10, 1), 1, 2).unwrap();
        assert_eq!(nonconcordance_report(&fam2).unwrap().certificates.len(), 1);
        let fam1 = build_witness_family(&q(10, 1), 1, 1).unwrap();
        assert_eq!(
            nonconcordance_report(&fam1),
            Err(FamilyError::TooFewMembers(2))
        );
    }

    #[test]
    fn satellite_examples() {
        let trefoil = KnotDescription::named("trefoil", SeifertMatrix::right_trefoil());
        let unknot = KnotDescription::new(SeifertMatrix::unknot());
        let curves = band_curves(1, "a");
        let k = satellite_compose(&trefoil, &curves, &[unknot.clone(), unknot]).unwrap();
        assert_eq!(k.infections().len(), 2);
        assert_eq!(k.normalized(), trefoil);

        let j1 = KnotDescription::new(SeifertMatrix::left_trefoils(2));
        let k = satellite_compose(&trefoil, &curves, &[j1.clone(), j1]).unwrap();
        assert_eq!(k.seifert_matrix(), &SeifertMatrix::right_trefoil());
        assert_eq!(k.depth(), 1);
    }

    #[test]
    fn satellite_errors() {
        let trefoil = KnotDescription::new(SeifertMatrix::right_trefoil());
        let j = KnotDescription::new(SeifertMatrix::left_trefoil());
        let bad = vec![InfectionCurve {
            band_index: 3,
            family_tag: "x".into(),
        }];
        assert_eq!(
            satellite_compose(&trefoil, &bad, &[j.clone()]),
            Err(FamilyError::IndexError { band: 3, bands: 2 })
        );
        let zero = vec![InfectionCurve {
            band_index: 0,
            family_tag: "x".into(),
        }];
        assert!(satellite_compose(&trefoil, &zero, &[j.clone()]).is_err());
        assert!(matches!(
            satellite_compose(&trefoil, &band_curves(1, "x"), &[j]),
            Err(FamilyError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn difference_of_infected_knots_is_infected_double() {
        let base = KnotDescription::new(SeifertMatrix::figure_eight());
        let fam = build_witness_family(&q(1, 1), 1, 2).unwrap();
        let k1 = fam.infected_knot(1, &base).unwrap();
        let k2 = fam.infected_knot(2, &base).unwrap();
        let lhs = k1.connected_sum(&k2.mirror());

        let double = base.connected_sum(&base.mirror());
        let mut curves = band_curves(1, "1");
        curves.extend(band_curves(1, "2").into_iter().map(|c| InfectionCurve {
            band_index: c.band_index + 2,
            ..c
        }));
        let j1 = KnotDescription::named("J_1", fam.companion(1));
        let j2_mirror = KnotDescription::named("J_2", fam.companion(2)).mirror();
        let companions = vec![j1.clone(), j1, j2_mirror.clone(), j2_mirror];
        let rhs = satellite_compose(&double, &curves, &companions).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn companions_verify() {
        let fam = build_witness_family(&q(10, 1), 1, 3).unwrap();
        let checks = fam.verify_companions(&SignatureOptions::default()).unwrap();
        for (check, m) in checks.iter().zip(&fam.multiplicities) {
            assert_eq!(check.arf, 0);
            assert!(check.rho_matches, "m = {m}");
        }
    }

    #[test]
    fn family_json_round_trip() {
        let fam = build_witness_family(&q(10, 1), 1, 3).unwrap();
        let json = serde_json::to_string(&fam).unwrap();
        assert!(json.contains(r#""rho_values":["32/3","32","224/3"]"#));
        let back: WitnessFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(back, fam);
        let tampered = json.replace("\"32\"", "\"33\"");
        assert!(serde_json::from_str::<WitnessFamily>(&tampered).is_err());
    }
}
