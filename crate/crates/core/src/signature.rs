//! Levine-Tristram signatures and their normalized integral over the circle.
//!
//! The circle is parameterized as `omega = exp(2 pi i theta)` with
//! `theta` in `[0, 1)`. On it a symmetric Alexander polynomial becomes a
//! real polynomial in `x = cos(2 pi theta)` (via `t^k + t^-k = 2 T_k(x)`),
//! whose roots in `(-1, 1)` are isolated exactly with Sturm sequences.
//! Roots coming from cyclotomic factors are labeled with their exact
//! angle `k/n`; the others carry a certified rational enclosure.
//!
//! Sign convention: `sigma_omega` is the signature of
//! `(1 - omega) V + (1 - conj(omega)) V^T`, so the left-handed trefoil
//! `[[1, 0], [-1, 1]]` has `sigma = +2` between its jumps and `rho = +4/3`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::laurent::dense;
use crate::laurent::{strip_cyclotomic_factors, LaurentPoly};
use crate::linalg::{float_hermitian_signature, hermitian_inertia, GaussRat};
use crate::rational::{self, from_f64, to_f64};
use crate::seifert::SeifertMatrix;

/// Environment variable overriding [`SignatureOptions::isolation_width`].
pub const PRECISION_ENV: &str = "CONCORDANCE_PRECISION";

/// Numerical settings for signature evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignatureOptions {
    /// Relative eigenvalue gap below which the floating evaluation is
    /// abandoned in favour of exact arithmetic.
    pub gap_tolerance: f64,
    /// Target width, in `theta`, of every isolating interval of an
    /// irrational jump.
    pub isolation_width: f64,
}

impl Default for SignatureOptions {
    fn default() -> Self {
        Self {
            gap_tolerance: 1e-9,
            isolation_width: 1e-9,
        }
    }
}

impl SignatureOptions {
    /// Defaults, with the isolation width taken from `CONCORDANCE_PRECISION` when set.
    pub fn from_env() -> Result<Self, SignatureError> {
        let mut opts = Self::default();
        if let Ok(raw) = std::env::var(PRECISION_ENV) {
            let w: f64 = raw
                .trim()
                .parse()
                .map_err(|_| SignatureError::BadPrecision(raw.clone()))?;
            if !(w > 0.0 && w < 0.01) {
                return Err(SignatureError::BadPrecision(raw));
            }
            opts.isolation_width = w;
        }
        Ok(opts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("theta = {0} is within tolerance of a root of the Alexander polynomial")]
    AtJump(String),
    #[error("theta = {0} is outside (0, 1)")]
    OutOfRange(String),
    #[error("root isolation failed: {0}")]
    RootIsolationFailure(String),
    #[error("invalid precision {0:?}: expected a float in (0, 0.01)")]
    BadPrecision(String),
}

/// A jump of the signature function: exact when `lo == hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpAngle {
    #[serde(with = "rational")]
    pub lo: BigRational,
    #[serde(with = "rational")]
    pub hi: BigRational,
    /// `n` when the jump is a primitive `n`-th root of unity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclotomic_index: Option<u64>,
}

impl JumpAngle {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    fn mirrored(&self) -> Self {
        let one = BigRational::one();
        Self {
            lo: &one - &self.hi,
            hi: &one - &self.lo,
            cyclotomic_index: self.cyclotomic_index,
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into())))
    }
}

/// Integer step function on the circle: `values[k]` holds on the open arc
/// between `jumps[k - 1]` and `jumps[k]` (with `0` and `1` as the outer ends).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureFunction {
    pub jumps: Vec<JumpAngle>,
    pub values: Vec<i64>,
}

/// Normalized integral with a rigorous error bound (zero for exact jumps).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoValue {
    #[serde(with = "rational")]
    pub value: BigRational,
    #[serde(with = "rational")]
    pub error_bound: BigRational,
}

impl RhoValue {
    pub fn is_exact(&self) -> bool {
        self.error_bound.is_zero()
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.value)
    }

    pub fn lower(&self) -> BigRational {
        &self.value - &self.error_bound
    }

    pub fn upper(&self) -> BigRational {
        &self.value + &self.error_bound
    }
}

impl SignatureFunction {
    /// Sum of value times arc length; jump enclosures turn into an error bound.
    pub fn integral(&self) -> RhoValue {
        // integral = v_last + sum_j theta_j (v_{j-1} - v_j)
        let mut lo = BigRational::from_integer((*self.values.last().unwrap()).into());
        let mut hi = lo.clone();
        for (j, jump) in self.jumps.iter().enumerate() {
            let d = BigRational::from_integer((self.values[j] - self.values[j + 1]).into());
            let a = &jump.lo * &d;
            let b = &jump.hi * &d;
            if a <= b {
                lo += a;
                hi += b;
            } else {
                lo += b;
                hi += a;
            }
        }
        let two = BigRational::from_integer(2.into());
        RhoValue {
            value: (&lo + &hi) / &two,
            error_bound: (hi - lo) / two,
        }
    }

    /// Value on the arc containing `theta`, or `None` at (an enclosure of) a jump.
    pub fn value_at(&self, theta: f64) -> Option<i64> {
        let mut arc = 0;
        for jump in &self.jumps {
            let (lo, hi) = (to_f64(&jump.lo), to_f64(&jump.hi));
            if theta >= lo && theta <= hi {
                return None;
            }
            if theta > hi {
                arc += 1;
            }
        }
        Some(self.values[arc])
    }
}

/// A root of the Alexander polynomial on the upper half circle.
#[derive(Debug, Clone)]
struct CircleRoot {
    /// Exact enclosure of `cos(2 pi theta)`.
    x_lo: BigRational,
    x_hi: BigRational,
    angle: JumpAngle,
}

/// Distinct blocks of the Seifert matrix and the upper-half circle roots.
struct Analysis {
    blocks: Vec<(SeifertMatrix, usize)>,
    /// Sorted by increasing theta, i.e. decreasing x.
    roots: Vec<CircleRoot>,
}

fn centered_cos_poly(p: &LaurentPoly) -> Result<Vec<BigRational>, SignatureError> {
    let c = p
        .centered()
        .filter(|c| c.is_symmetric())
        .ok_or_else(|| SignatureError::RootIsolationFailure(format!("{p} is not palindromic")))?;
    Ok(cos_poly(&c))
}

/// For symmetric `p = a_0 + sum a_k (t^k + t^-k)`, the polynomial
/// `a_0 + sum 2 a_k T_k(x)` with `p(omega) = P(Re omega)` on the circle.
fn cos_poly(p: &LaurentPoly) -> Vec<BigRational> {
    let top = p.max_exponent().unwrap_or(0).max(0) as usize;
    let mut cheb: Vec<Vec<BigRational>> = vec![dense::one()];
    if top >= 1 {
        cheb.push(vec![BigRational::zero(), BigRational::one()]);
    }
    let two_x = vec![BigRational::zero(), BigRational::from_integer(2.into())];
    for k in 2..=top {
        let mut next = dense::mul(&two_x, &cheb[k - 1]);
        for (i, c) in cheb[k - 2].iter().enumerate() {
            next[i] -= c;
        }
        dense::trim(&mut next);
        cheb.push(next);
    }
    let mut out = vec![BigRational::zero(); top + 1];
    for (e, c) in p.terms() {
        if e < 0 {
            continue;
        }
        let w = if e == 0 {
            c.clone()
        } else {
            c * BigRational::from_integer(2.into())
        };
        for (i, t) in cheb[e as usize].iter().enumerate() {
            out[i] += &w * t;
        }
    }
    dense::trim(&mut out);
    out
}

fn theta_of_x(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).acos() / (2.0 * PI)
}

const ANGLE_MARGIN: f64 = 1e-15;

impl Analysis {
    fn new(v: &SeifertMatrix, opts: &SignatureOptions) -> Result<Self, SignatureError> {
        let blocks = v.blocks();
        let mut indices: Vec<u64> = Vec::new();
        let mut remainder = LaurentPoly::one();
        for (b, _) in &blocks {
            let f = strip_cyclotomic_factors(&b.alexander_poly());
            for c in &f.cyclotomic {
                if !indices.contains(&c.index) {
                    indices.push(c.index);
                }
            }
            remainder = &remainder * &f.remainder;
        }
        indices.sort_unstable();
        if let Some(&n) = indices.iter().find(|&&n| n <= 2) {
            return Err(SignatureError::RootIsolationFailure(format!(
                "cyclotomic factor phi_{n} cannot divide an Alexander polynomial"
            )));
        }
        let cyc_polys: Vec<(u64, Vec<BigRational>)> = indices
            .iter()
            .map(|&n| Ok((n, centered_cos_poly(&crate::laurent::cyclotomic(n))?)))
            .collect::<Result<_, SignatureError>>()?;
        let rem_poly = if remainder.is_unit() {
            dense::one()
        } else {
            centered_cos_poly(&remainder.squarefree_part())?
        };
        let total = cyc_polys
            .iter()
            .fold(rem_poly, |acc, (_, p)| dense::mul(&acc, p));
        let roots = isolate_roots(&total, &cyc_polys, opts)?;
        Ok(Self { blocks, roots })
    }

    fn upper_jumps(&self) -> Vec<JumpAngle> {
        self.roots.iter().map(|r| r.angle.clone()).collect()
    }

    fn full_jumps(&self) -> Vec<JumpAngle> {
        let mut jumps = self.upper_jumps();
        jumps.extend(self.roots.iter().rev().map(|r| r.angle.mirrored()));
        jumps
    }

    /// Exact x-bounds `(left, right)` of the upper-half arc with index `k`
    /// (arc 0 touches theta = 0, arc `roots.len()` touches theta = 1/2).
    fn arc_x_bounds(&self, k: usize) -> (BigRational, BigRational) {
        let one = BigRational::one();
        let upper = if k == 0 {
            one.clone()
        } else {
            self.roots[k - 1].x_lo.clone()
        };
        let lower = if k == self.roots.len() {
            -one
        } else {
            self.roots[k].x_hi.clone()
        };
        (lower, upper)
    }

    /// Signature at `theta`, known to lie in the upper-half arc `arc`
    /// (reflected when `theta > 1/2`).
    fn signature_in_arc(
        &self,
        theta: f64,
        arc: usize,
        lower_half: bool,
        opts: &SignatureOptions,
    ) -> Result<i64, SignatureError> {
        let (c, s) = ((2.0 * PI * theta).cos(), (2.0 * PI * theta).sin());
        let mut total = 0;
        for (b, count) in &self.blocks {
            let sig = match block_float_signature(b, c, s, opts.gap_tolerance) {
                Some(sig) => sig,
                None => {
                    let (x_min, x_max) = self.arc_x_bounds(arc);
                    let omega = rational_circle_point(&x_min, &x_max, lower_half)?;
                    block_exact_signature(b, &omega)?
                }
            };
            total += sig * *count as i64;
        }
        Ok(total)
    }

    /// Locates the upper-half arc of `theta`, or reports a jump.
    fn locate(
        &self,
        theta: &BigRational,
        opts: &SignatureOptions,
    ) -> Result<(usize, bool), SignatureError> {
        let half = BigRational::new(1.into(), 2.into());
        let lower_half = *theta > half;
        let folded = if lower_half {
            BigRational::one() - theta
        } else {
            theta.clone()
        };
        let w = from_f64(opts.isolation_width);
        let mut arc = 0;
        for r in &self.roots {
            if folded >= &r.angle.lo - &w && folded <= &r.angle.hi + &w {
                return Err(SignatureError::AtJump(rational::format_rational(theta)));
            }
            if folded > r.angle.hi {
                arc += 1;
            }
        }
        Ok((arc, lower_half))
    }
}

fn isolate_roots(
    total: &[BigRational],
    cyc_polys: &[(u64, Vec<BigRational>)],
    opts: &SignatureOptions,
) -> Result<Vec<CircleRoot>, SignatureError> {
    let fail = |m: String| SignatureError::RootIsolationFailure(m);
    if dense::degree(total).unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let one = BigRational::one();
    if dense::eval(total, &one).is_zero() || dense::eval(total, &-&one).is_zero() {
        return Err(fail("Alexander polynomial vanishes at t = +-1".into()));
    }
    let chain = dense::sturm_chain(total);
    let mut pending = vec![(-&one, one.clone())];
    let mut isolated = Vec::new();
    while let Some((a, b)) = pending.pop() {
        match dense::count_roots(&chain, &a, &b) {
            0 => {}
            1 => isolated.push(refine(total, &chain, a, b, opts)?),
            _ => {
                if &b - &a < from_f64(1e-30) {
                    return Err(fail("root cluster cannot be separated".into()));
                }
                let m = split_point(total, &a, &b);
                pending.push((a, m.clone()));
                pending.push((m, b));
            }
        }
    }
    // decreasing x is increasing theta
    isolated.sort_by(|p, q| q.0.cmp(&p.0));

    let mut roots: Vec<CircleRoot> = Vec::with_capacity(isolated.len());
    let mut labels: Vec<Option<u64>> = Vec::with_capacity(isolated.len());
    for (lo, hi) in &isolated {
        let mut label = None;
        for (n, p) in cyc_polys {
            let hit = if lo == hi {
                dense::eval(p, lo).is_zero()
            } else {
                dense::count_roots(&dense::sturm_chain(p), lo, hi) == 1
            };
            if hit {
                label = Some(*n);
                break;
            }
        }
        labels.push(label);
    }
    let mut next_k: Vec<(u64, u64)> = cyc_polys.iter().map(|(n, _)| (*n, 1)).collect();
    for ((lo, hi), label) in isolated.into_iter().zip(labels) {
        let angle = match label {
            Some(n) => {
                let slot = next_k.iter_mut().find(|(m, _)| *m == n).unwrap();
                while slot.1.gcd(&n) != 1 {
                    slot.1 += 1;
                }
                let k = slot.1;
                slot.1 += 1;
                if 2 * k >= n {
                    return Err(fail(format!("too many roots attributed to phi_{n}")));
                }
                let theta = BigRational::new(BigInt::from(k), BigInt::from(n));
                JumpAngle {
                    lo: theta.clone(),
                    hi: theta,
                    cyclotomic_index: Some(n),
                }
            }
            None => JumpAngle {
                lo: from_f64((theta_of_x(to_f64(&hi)) - ANGLE_MARGIN).max(0.0)),
                hi: from_f64((theta_of_x(to_f64(&lo)) + ANGLE_MARGIN).min(0.5)),
                cyclotomic_index: None,
            },
        };
        roots.push(CircleRoot {
            x_lo: lo,
            x_hi: hi,
            angle,
        });
    }
    for w in roots.windows(2) {
        if w[0].angle.hi >= w[1].angle.lo {
            return Err(fail("adjacent jump enclosures overlap".into()));
        }
    }
    Ok(roots)
}

/// A bisection point of `(a, b)` that is not itself a root.
fn split_point(p: &[BigRational], a: &BigRational, b: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let mid = (a + b) / &two;
    if !dense::eval(p, &mid).is_zero() {
        return mid;
    }
    let mut k = 3;
    loop {
        let m = a + (b - a) / BigRational::from_integer(k.into());
        if !dense::eval(p, &m).is_zero() {
            return m;
        }
        k += 1;
    }
}

/// Shrinks an interval `(a, b]` holding exactly one root until its angular
/// width is below the isolation width.
fn refine(
    p: &[BigRational],
    chain: &[Vec<BigRational>],
    mut a: BigRational,
    mut b: BigRational,
    opts: &SignatureOptions,
) -> Result<(BigRational, BigRational), SignatureError> {
    if dense::eval(p, &b).is_zero() {
        return Ok((b.clone(), b));
    }
    let two = BigRational::from_integer(2.into());
    for _ in 0..400 {
        let width = theta_of_x(to_f64(&a)) - theta_of_x(to_f64(&b));
        if width + 2.0 * ANGLE_MARGIN < opts.isolation_width {
            return Ok((a, b));
        }
        let m = (&a + &b) / &two;
        if dense::eval(p, &m).is_zero() {
            return Ok((m.clone(), m));
        }
        if dense::count_roots(chain, &a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
    Err(SignatureError::RootIsolationFailure(
        "interval refinement did not converge".into(),
    ))
}

fn block_float_signature(b: &SeifertMatrix, c: f64, s: f64, gap: f64) -> Option<i64> {
    let n = b.size();
    // (1 - omega) V + (1 - conj omega) V^T = (1 - c)(V + V^T) - i s (V - V^T)
    let re = DMatrix::from_fn(n, n, |i, j| (1.0 - c) * (b.get(i, j) + b.get(j, i)) as f64);
    let im = DMatrix::from_fn(n, n, |i, j| -s * (b.get(i, j) - b.get(j, i)) as f64);
    float_hermitian_signature(&re, &im, gap)
}

fn block_exact_signature(b: &SeifertMatrix, omega: &GaussRat) -> Result<i64, SignatureError> {
    let n = b.size();
    let one = GaussRat::real(BigRational::one());
    let left = one.sub(omega);
    let right = one.sub(&omega.conj());
    let h: Vec<Vec<GaussRat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let vij = GaussRat::real(BigRational::from_integer(b.get(i, j).into()));
                    let vji = GaussRat::real(BigRational::from_integer(b.get(j, i).into()));
                    left.mul(&vij).add(&right.mul(&vji))
                })
                .collect()
        })
        .collect();
    let inertia = hermitian_inertia(h);
    if inertia.zero != 0 {
        return Err(SignatureError::RootIsolationFailure(
            "exact evaluation point is a root of the Alexander polynomial".into(),
        ));
    }
    Ok(inertia.signature())
}

/// A rational point `((1 - s^2) + 2 i s) / (1 + s^2)` of the unit circle
/// with real part strictly inside `(x_min, x_max)`, in the lower half
/// plane when requested.
fn rational_circle_point(
    x_min: &BigRational,
    x_max: &BigRational,
    lower_half: bool,
) -> Result<GaussRat, SignatureError> {
    let one = BigRational::one();
    if *x_min == -&one {
        // omega = -1 lies on every arc through theta = 1/2.
        return Ok(GaussRat::real(-one));
    }
    let two = BigRational::from_integer(2.into());
    let target = (x_min + x_max) / &two;
    let xf = to_f64(&target);
    let s_float = ((1.0 - xf) / (1.0 + xf)).sqrt();
    let mut candidates = vec![from_f64(s_float)];
    // Small-denominator approximations first, exact float last.
    for digits in [4u32, 8, 12] {
        let scale = 10f64.powi(digits as i32);
        candidates.insert(
            candidates.len() - 1,
            BigRational::new(
                BigInt::from((s_float * scale).round() as i64),
                BigInt::from(10i64.pow(digits)),
            ),
        );
    }
    for s in candidates {
        if !s.is_positive() {
            continue;
        }
        let s2 = &s * &s;
        let denom = &one + &s2;
        let re = (&one - &s2) / &denom;
        if re > *x_min && re < *x_max {
            let im = (&two * &s) / &denom;
            return Ok(GaussRat::new(re, if lower_half { -im } else { im }));
        }
    }
    Err(SignatureError::RootIsolationFailure(
        "arc too narrow for an exact evaluation point".into(),
    ))
}

/// `sigma_omega(V)` at `omega = exp(2 pi i theta)`.
pub fn lt_signature_at(
    v: &SeifertMatrix,
    theta: &BigRational,
    opts: &SignatureOptions,
) -> Result<i64, SignatureError> {
    if !theta.is_positive() || *theta >= BigRational::one() {
        return Err(SignatureError::OutOfRange(rational::format_rational(theta)));
    }
    let analysis = Analysis::new(v, opts)?;
    let (arc, lower_half) = analysis.locate(theta, opts)?;
    analysis.signature_in_arc(to_f64(theta), arc, lower_half, opts)
}

/// Jumps and arc values over the whole circle; every arc is evaluated.
pub fn signature_function(
    v: &SeifertMatrix,
    opts: &SignatureOptions,
) -> Result<SignatureFunction, SignatureError> {
    let analysis = Analysis::new(v, opts)?;
    signature_function_of(&analysis, opts)
}

fn signature_function_of(
    analysis: &Analysis,
    opts: &SignatureOptions,
) -> Result<SignatureFunction, SignatureError> {
    let upper = analysis.upper_jumps();
    let r = upper.len();
    let mut values = Vec::with_capacity(2 * r + 1);
    for k in 0..=r {
        let theta = if k == r {
            0.5
        } else {
            let left = if k == 0 {
                0.0
            } else {
                to_f64(&upper[k - 1].hi)
            };
            (left + to_f64(&upper[k].lo)) / 2.0
        };
        values.push(analysis.signature_in_arc(theta, k, false, opts)?);
    }
    for k in (0..r).rev() {
        let left = if k == 0 {
            0.0
        } else {
            to_f64(&upper[k - 1].hi)
        };
        let theta = 1.0 - (left + to_f64(&upper[k].lo)) / 2.0;
        values.push(analysis.signature_in_arc(theta, k, true, opts)?);
    }
    Ok(SignatureFunction {
        jumps: analysis.full_jumps(),
        values,
    })
}

/// `rho = integral of sigma_omega over the circle of length one`.
pub fn rho_integral(
    v: &SeifertMatrix,
    opts: &SignatureOptions,
) -> Result<RhoValue, SignatureError> {
    Ok(signature_function(v, opts)?.integral())
}

/// `theta,sigma` rows at `samples` equally spaced arc midpoints, skipping
/// points within tolerance of a jump.
pub fn sample_csv(
    v: &SeifertMatrix,
    samples: usize,
    opts: &SignatureOptions,
) -> Result<String, SignatureError> {
    let analysis = Analysis::new(v, opts)?;
    let mut out = String::from("theta,sigma\n");
    for k in 0..samples {
        let theta = BigRational::new(BigInt::from(2 * k + 1), BigInt::from(2 * samples));
        match analysis.locate(&theta, opts) {
            Ok((arc, lower)) => {
                let t = to_f64(&theta);
                let sigma = analysis.signature_in_arc(t, arc, lower, opts)?;
                let _ = writeln!(out, "{t},{sigma}");
            }
            Err(SignatureError::AtJump(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
