//! Seifert matrices and the abelian invariants read off from them.
//!
//! Entries follow the convention `V[i][j] = lk(a_i, a_j^+)`. Every invariant
//! computed here is insensitive to replacing `V` by its transpose.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::laurent::{normalize_alexander, LaurentPoly};
use crate::linalg::{det_bareiss, symmetric_signature};

/// Entries are kept within this bound so that every derived integer
/// matrix (`V + V^T`, `-V^T`, ...) stays far from `i64` overflow.
pub const MAX_ENTRY: i64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeifertError {
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifert(InvalidReason),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvalidReason {
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    OddSize(usize),
    EntryOutOfRange {
        row: usize,
        col: usize,
    },
    SkewDeterminant(BigInt),
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotSquare { row, len, expected } => {
                write!(
                    f,
                    "matrix is not square (row {row} has {len} entries, expected {expected})"
                )
            }
            Self::OddSize(n) => write!(f, "size {n} is odd; a Seifert matrix has even size 2g"),
            Self::EntryOutOfRange { row, col } => {
                write!(
                    f,
                    "entry ({row}, {col}) exceeds the supported magnitude 2^31"
                )
            }
            Self::SkewDeterminant(d) => write!(f, "det(V - V^T) = {d}, expected 1"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl SeifertMatrix {
    /// Accepts a square matrix of even size with `det(V - V^T) = 1`.
    /// The empty matrix is the unknot.
    pub fn validate(rows: Vec<Vec<i64>>) -> Result<Self, SeifertError> {
        let invalid = |r| Err(SeifertError::InvalidSeifert(r));
        let size = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return invalid(InvalidReason::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: size,
                });
            }
            if let Some(j) = row.iter().position(|x| x.unsigned_abs() > MAX_ENTRY as u64) {
                return invalid(InvalidReason::EntryOutOfRange { row: i, col: j });
            }
        }
        if size % 2 != 0 {
            return invalid(InvalidReason::OddSize(size));
        }
        let m = Self {
            size,
            entries: rows.into_iter().flatten().collect(),
        };
        let skew: Vec<Vec<BigInt>> = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| BigInt::from(m.get(i, j) - m.get(j, i)))
                    .collect()
            })
            .collect();
        let det = det_bareiss(skew);
        if !det.is_one() {
            return invalid(InvalidReason::SkewDeterminant(det));
        }
        Ok(m)
    }

    fn from_parts(size: usize, entries: Vec<i64>) -> Self {
        Self { size, entries }
    }

    pub fn unknot() -> Self {
        Self::from_parts(0, Vec::new())
    }

    /// `[[-1, 1], [0, -1]]`, signature -2.
    pub fn right_trefoil() -> Self {
        Self::from_parts(2, vec![-1, 1, 0, -1])
    }

    /// `[[1, 0], [-1, 1]]`, signature +2.
    pub fn left_trefoil() -> Self {
        Self::right_trefoil().mirror_reverse()
    }

    /// `[[1, 1], [0, -1]]`.
    pub fn figure_eight() -> Self {
        Self::from_parts(2, vec![1, 1, 0, -1])
    }

    /// Connected sum of `copies` left-handed trefoils.
    pub fn left_trefoils(copies: usize) -> Self {
        let n = 2 * copies;
        let mut entries = vec![0; n * n];
        for k in 0..copies {
            let (a, b) = (2 * k, 2 * k + 1);
            entries[a * n + a] = 1;
            entries[b * n + a] = -1;
            entries[b * n + b] = 1;
        }
        Self::from_parts(n, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn genus(&self) -> usize {
        self.size / 2
    }

    pub fn is_unknot(&self) -> bool {
        self.size == 0
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.size.max(1))
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        Self::from_parts(n, (0..n * n).map(|k| self.get(k % n, k / n)).collect())
    }

    /// Block direct sum `V1 (+) V2`.
    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let n = self.size + other.size;
        let mut entries = vec![0; n * n];
        for i in 0..self.size {
            for j in 0..self.size {
                entries[i * n + j] = self.get(i, j);
            }
        }
        for i in 0..other.size {
            for j in 0..other.size {
                entries[(self.size + i) * n + self.size + j] = other.get(i, j);
            }
        }
        Self::from_parts(n, entries)
    }

    /// `-V^T`, a Seifert matrix for the reversed mirror image.
    pub fn mirror_reverse(&self) -> SeifertMatrix {
        let t = self.transpose();
        Self::from_parts(t.size, t.entries.into_iter().map(|x| -x).collect())
    }

    fn submatrix(&self, idx: &[usize]) -> SeifertMatrix {
        let entries = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        Self::from_parts(idx.len(), entries)
    }

    /// Splits into the diagonal blocks obtained from the connected
    /// components of the nonzero pattern of `V + |V^T|`, grouping identical
    /// blocks. A simultaneous row/column permutation is a congruence, so
    /// determinants and signatures factor over the blocks.
    pub fn blocks(&self) -> Vec<(SeifertMatrix, usize)> {
        let n = self.size;
        let mut component = vec![usize::MAX; n];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let id = groups.len();
            let mut members = vec![start];
            component[start] = id;
            let mut k = 0;
            while k < members.len() {
                let i = members[k];
                for j in 0..n {
                    if component[j] == usize::MAX && (self.get(i, j) != 0 || self.get(j, i) != 0) {
                        component[j] = id;
                        members.push(j);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            groups.push(members);
        }
        let mut out: Vec<(SeifertMatrix, usize)> = Vec::new();
        for g in groups {
            let b = self.submatrix(&g);
            match out.iter_mut().find(|(m, _)| *m == b) {
                Some((_, count)) => *count += 1,
                None => out.push((b, 1)),
            }
        }
        out
    }

    /// `det(V - t V^T)` as an ordinary polynomial in `t`.
    pub fn alexander_determinant(&self) -> LaurentPoly {
        let mut cache: HashMap<SeifertMatrix, LaurentPoly> = HashMap::new();
        self.blocks()
            .into_iter()
            .map(|(b, count)| {
                let d = cache
                    .entry(b.clone())
                    .or_insert_with(|| b.block_alexander_determinant());
                d.pow(count as u32)
            })
            .product()
    }

    /// Interpolates `det(V - k V^T)` from the integer points `k = 0..=size`.
    fn block_alexander_determinant(&self) -> LaurentPoly {
        let n = self.size;
        let values: Vec<BigInt> = (0..=n as i64)
            .map(|k| {
                let rows = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                BigInt::from(self.get(i, j)) - BigInt::from(k) * self.get(j, i)
                            })
                            .collect()
                    })
                    .collect();
                det_bareiss(rows)
            })
            .collect();
        lagrange_interpolate(&values)
    }

    /// Normalized Alexander polynomial: `det(V - t V^T)` centered with `value 1` at `t = 1`.
    pub fn alexander_poly(&self) -> LaurentPoly {
        normalize_alexander(&self.alexander_determinant())
            .expect("det(V - tV^T) of a valid Seifert matrix satisfies the Alexander conditions")
    }

    /// Arf invariant via Murasugi: zero iff `Delta(-1) = +-1 mod 8`.
    /// `Delta(-1)` is reduced block by block, so the full product is never expanded.
    pub fn arf(&self) -> u8 {
        let eight = BigInt::from(8);
        let residue = self
            .blocks()
            .into_iter()
            .fold(BigInt::one(), |acc, (b, count)| {
                let at_minus_one = normalize_alexander(&b.block_alexander_determinant())
                    .ok()
                    .and_then(|d| d.eval_int(-1))
                    .expect("blocks of a valid Seifert matrix are valid");
                let r = at_minus_one.to_integer().mod_floor(&eight);
                (acc * r.modpow(&BigInt::from(count), &eight)).mod_floor(&eight)
            });
        u8::from(residue != BigInt::from(1) && residue != BigInt::from(7))
    }

    /// Signature of `V + V^T`, computed exactly.
    pub fn ordinary_signature(&self) -> i64 {
        self.blocks()
            .into_iter()
            .map(|(b, count)| {
                let n = b.size;
                let sym: Vec<Vec<i64>> = (0..n)
                    .map(|i| (0..n).map(|j| b.get(i, j) + b.get(j, i)).collect())
                    .collect();
                symmetric_signature(&sym) * count as i64
            })
            .sum()
    }

    /// Presentation matrix `t V - V^T` of the rational Alexander module.
    pub fn alexander_module_presentation(&self) -> Vec<Vec<LaurentPoly>> {
        let n = self.size;
        let int = |x: i64| BigRational::from_integer(x.into());
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        &LaurentPoly::monomial(int(self.get(i, j)), 1)
                            - &LaurentPoly::constant(int(self.get(j, i)))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Zero iff the odd integer `Delta(-1)` is `+-1 mod 8`.
pub fn arf_from_alexander(delta: &LaurentPoly) -> u8 {
    let v = delta.eval_int(-1).expect("t = -1 is a unit").to_integer();
    let r = v.mod_floor(&BigInt::from(8)).to_u8().unwrap();
    match r {
        1 | 7 => 0,
        _ => 1,
    }
}

fn lagrange_interpolate(values: &[BigInt]) -> LaurentPoly {
    let n = values.len();
    let mut total = LaurentPoly::zero();
    for (k, y) in values.iter().enumerate() {
        let mut basis = LaurentPoly::constant(BigRational::from_integer(y.clone()));
        let mut denom = BigInt::one();
        for j in 0..n {
            if j == k {
                continue;
            }
            basis = &basis * &LaurentPoly::from_ints(0, &[-(j as i64), 1]);
            denom *= BigInt::from(k as i64 - j as i64);
        }
        total = &total + &basis.scale(&BigRational::new(BigInt::one(), denom));
    }
    total
}

impl fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeifertMatrix({:?})", self.rows())
    }
}

impl Serialize for SeifertMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.size == 0 {
            return Vec::<Vec<i64>>::new().serialize(s);
        }
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeifertMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        SeifertMatrix::validate(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(min, c)
    }

    #[test]
    fn validate_examples() {
        let t = SeifertMatrix::validate(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        assert_eq!(t.genus(), 1);
        assert_eq!(SeifertMatrix::validate(vec![]).unwrap().genus(), 0);
        assert_eq!(
            SeifertMatrix::validate(vec![vec![1, 0], vec![0, 1]]),
            Err(SeifertError::InvalidSeifert(
                InvalidReason::SkewDeterminant(0.into())
            ))
        );
    }

    #[test]
    fn validate_names_the_violation() {
        let e = SeifertMatrix::validate(vec![vec![1, 2], vec![3]]).unwrap_err();
        assert!(e.to_string().contains("not square"));
        let e = SeifertMatrix::validate(vec![vec![0]]).unwrap_err();
        assert!(e.to_string().contains("odd"));
        let e = SeifertMatrix::validate(vec![vec![i64::MIN, 0], vec![0, 0]]).unwrap_err();
        assert!(e.to_string().contains("magnitude"));
        // det(V - V^T) = -1 is impossible, but det = 4 is not
        let e = SeifertMatrix::validate(vec![vec![0, 2], vec![0, 0]]).unwrap_err();
        assert!(e.to_string().contains("= 4"));
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(
            SeifertMatrix::right_trefoil().alexander_poly(),
            lp(-1, &[1, -1, 1])
        );
        assert!(SeifertMatrix::unknot().alexander_poly().is_one());
        assert_eq!(
            SeifertMatrix::figure_eight().alexander_poly(),
            lp(-1, &[-1, 3, -1])
        );
        assert_eq!(
            SeifertMatrix::right_trefoil().alexander_determinant(),
            lp(0, &[1, -1, 1])
        );
        assert_eq!(
            SeifertMatrix::figure_eight().alexander_determinant(),
            lp(0, &[-1, 3, -1])
        );
    }

    #[test]
    fn arf_examples() {
        assert_eq!(SeifertMatrix::unknot().arf(), 0);
        assert_eq!(SeifertMatrix::right_trefoil().arf(), 1);
        assert_eq!(SeifertMatrix::left_trefoils(2).arf(), 0);
        assert_eq!(SeifertMatrix::figure_eight().arf(), 1);
    }

    #[test]
    fn signature_examples() {
        assert_eq!(SeifertMatrix::right_trefoil().ordinary_signature(), -2);
        assert_eq!(SeifertMatrix::left_trefoil().ordinary_signature(), 2);
        assert_eq!(SeifertMatrix::figure_eight().ordinary_signature(), 0);
        assert_eq!(SeifertMatrix::left_trefoils(5).ordinary_signature(), 10);
    }

    #[test]
    fn connected_sum_examples() {
        let t = SeifertMatrix::right_trefoil();
        assert_eq!(t.connected_sum(&SeifertMatrix::unknot()), t);
        let tt = t.connected_sum(&t);
        assert_eq!(tt.size(), 4);
        assert_eq!(tt.alexander_poly(), lp(-1, &[1, -1, 1]).pow(2));
        let t8 = t.connected_sum(&SeifertMatrix::figure_eight());
        assert_eq!(
            t8.alexander_poly(),
            lp(-1, &[1, -1, 1]) * lp(-1, &[-1, 3, -1])
        );
    }

    #[test]
    fn mirror_examples() {
        let l = SeifertMatrix::right_trefoil().mirror_reverse();
        assert_eq!(l.rows(), vec![vec![1, 0], vec![-1, 1]]);
        assert_eq!(
            SeifertMatrix::unknot().mirror_reverse(),
            SeifertMatrix::unknot()
        );
        let f = SeifertMatrix::figure_eight();
        assert_eq!(f.mirror_reverse().mirror_reverse(), f);
    }

    #[test]
    fn presentation_examples() {
        assert!(SeifertMatrix::unknot()
            .alexander_module_presentation()
            .is_empty());
        let p = SeifertMatrix::right_trefoil().alexander_module_presentation();
        // t V - V^T for V = [[-1, 1], [0, -1]]
        assert_eq!(p[0][0], lp(0, &[1, -1]));
        assert_eq!(p[0][1], lp(1, &[1]));
        assert_eq!(p[1][0], lp(0, &[-1]));
        assert_eq!(p[1][1], lp(0, &[1, -1]));
        let det = &(&p[0][0] * &p[1][1]) - &(&p[0][1] * &p[1][0]);
        assert_eq!(normalize_alexander(&det).unwrap(), lp(-1, &[1, -1, 1]));
    }

    #[test]
    fn blocks_group_identical_components() {
        let m = SeifertMatrix::left_trefoils(3).connected_sum(&SeifertMatrix::figure_eight());
        let b = m.blocks();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0], (SeifertMatrix::left_trefoil(), 3));
        assert_eq!(b[1], (SeifertMatrix::figure_eight(), 1));
    }

    #[test]
    fn left_trefoils_is_iterated_sum() {
        for k in 0..5 {
            let folded = (0..k).fold(SeifertMatrix::unknot(), |acc, _| {
                acc.connected_sum(&SeifertMatrix::left_trefoil())
            });
            assert_eq!(SeifertMatrix::left_trefoils(k), folded);
        }
    }

    #[test]
    fn large_block_sums_stay_fast() {
        let j = SeifertMatrix::left_trefoils(56);
        assert_eq!(j.alexander_poly(), lp(-1, &[1, -1, 1]).pow(56));
        assert_eq!(j.arf(), 0);
    }

    #[test]
    fn serde_validates() {
        let m: SeifertMatrix = serde_json::from_str("[[-1,1],[0,-1]]").unwrap();
        assert_eq!(m, SeifertMatrix::right_trefoil());
        assert!(serde_json::from_str::<SeifertMatrix>("[[1,0],[0,1]]").is_err());
        assert_eq!(
            serde_json::to_string(&SeifertMatrix::unknot()).unwrap(),
            "[]"
        );
    }
}
