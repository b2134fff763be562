//! Dense matrices over arbitrary-precision integers.
//!
//! Nothing in here touches floating point. Determinant and rank use
//! fraction-free (Bareiss) elimination so every intermediate value stays an
//! exact integer; pivots are the first nonzero entry in the column, which
//! keeps results (and row-swap signs) reproducible.

use std::fmt;
use std::ops::Index;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact nonnegative count, serialized as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(BigCount)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal count: {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::scalar(size, BigInt::one())
    }

    /// `c * I`.
    pub fn scalar(size: usize, c: BigInt) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.data[i * size + i] = c.clone();
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(size: usize) -> Self {
        ExactMatrix {
            rows: size,
            cols: size,
            data: vec![BigInt::one(); size * size],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Builds a matrix from equally long rows of small integers.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(bad) = rows.iter().find(|r| r.as_ref().len() != cols) {
            return Err(Error::Dimension {
                op: "from_rows",
                left: (rows.len(), cols),
                right: (1, bad.as_ref().len()),
            });
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| {
            BigInt::from(rows[i].as_ref()[j])
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    fn require_square(&self, op: &'static str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension {
                op,
                left: self.shape(),
                right: self.shape(),
            })
        }
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &ExactMatrix,
        op: &'static str,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<ExactMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &BigInt) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self + c * I`.
    pub fn add_identity(&self, c: &BigInt) -> Result<ExactMatrix> {
        self.require_square("add_identity")?;
        let mut m = self.clone();
        for i in 0..self.rows {
            m.data[i * self.cols + i] += c;
        }
        Ok(m)
    }

    /// Exact product. Output rows are computed in parallel; each entry is
    /// summed in the same order as the sequential loop, so results are
    /// identical regardless of scheduling.
    pub fn multiply(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                op: "multiply",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let cols = other.cols;
        let data: Vec<BigInt> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut out = vec![BigInt::zero(); cols];
                for (l, a) in self.row(i).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (o, b) in out.iter_mut().zip(other.row(l)) {
                        if !b.is_zero() {
                            *o += a * b;
                        }
                    }
                }
                out
            })
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// `self^e` by repeated multiplication; `e = 0` gives `I`.
    pub fn power(&self, e: u32) -> Result<ExactMatrix> {
        self.require_square("power")?;
        let mut acc = ExactMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<BigInt> {
        self.require_square("trace")?;
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    /// `sum_i coeffs[i] * self^i`, evaluated by Horner's rule.
    pub fn eval_poly(&self, coeffs: &[BigInt]) -> Result<ExactMatrix> {
        self.require_square("eval_poly")?;
        let mut acc = ExactMatrix::zeros(self.rows, self.cols);
        for c in coeffs.iter().rev() {
            acc = acc.multiply(self)?.add_identity(c)?;
        }
        Ok(acc)
    }

    /// Convenience wrapper over [`eval_poly`](Self::eval_poly) for small coefficients.
    pub fn eval_poly_i64(&self, coeffs: &[i64]) -> Result<ExactMatrix> {
        let coeffs: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        self.eval_poly(&coeffs)
    }

    /// The matrix with row `row` and column `col` removed.
    pub fn minor(&self, row: usize, col: usize) -> ExactMatrix {
        let mut data =
            Vec::with_capacity(self.rows.saturating_sub(1) * self.cols.saturating_sub(1));
        for i in (0..self.rows).filter(|&i| i != row) {
            for j in (0..self.cols).filter(|&j| j != col) {
                data.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            rows: self.rows - usize::from(row < self.rows),
            cols: self.cols - usize::from(col < self.cols),
            data,
        }
    }

    /// Determinant by Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        self.require_square("determinant")?;
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            let (head, tail) = a.split_at_mut(k + 1);
            let pivot_row = &head[k];
            bareiss_step(pivot_row, tail, k, k + 1, &prev);
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Rank over the rationals by fraction-free row echelon reduction.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (head, tail) = a.split_at_mut(r + 1);
            bareiss_step(&head[r], tail, col, col + 1, &prev);
            // the pivot column below the pivot is now implicitly zero
            for row in tail.iter_mut() {
                row[col] = BigInt::zero();
            }
            prev = a[r][col].clone();
            r += 1;
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// First entry where `self` and `other` differ, in row-major order.
    pub fn first_difference(&self, other: &ExactMatrix) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.cols, p % self.cols))
    }
}

/// One fraction-free elimination step against `pivot_row`, pivot in column
/// `pc`. Updates columns `from..` of every row in `rows`:
/// `a[i][j] = (a[i][j] * p - a[i][pc] * a[pc_row][j]) / prev`, exactly.
fn bareiss_step(
    pivot_row: &[BigInt],
    rows: &mut [Vec<BigInt>],
    pc: usize,
    from: usize,
    prev: &BigInt,
) {
    let pivot = &pivot_row[pc];
    let prev_is_one = prev.is_one();
    rows.par_iter_mut().for_each(|row| {
        let factor = row[pc].clone();
        for j in from..row.len() {
            let mut v = &row[j] * pivot;
            if !factor.is_zero() && !pivot_row[j].is_zero() {
                v -= &factor * &pivot_row[j];
            }
            if !prev_is_one && !v.is_zero() {
                let (q, r) = v.div_rem(prev);
                debug_assert!(r.is_zero(), "inexact Bareiss division");
                v = q;
            }
            row[j] = v;
        }
    });
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        self.get(i, j)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Converts a determinant known to be nonnegative into a count.
pub(crate) fn to_count(v: &BigInt) -> Option<BigUint> {
    v.to_biguint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(&[&[1, -2, 3], &[4, 5, -6]]);
        assert_eq!(ExactMatrix::identity(2).multiply(&a).unwrap(), a);
        assert_eq!(a.multiply(&ExactMatrix::identity(3)).unwrap(), a);
    }

    #[test]
    fn square_of_j_minus_i() {
        let a = ExactMatrix::ones(3).sub(&ExactMatrix::identity(3)).unwrap();
        let expected = ExactMatrix::ones(3).add(&ExactMatrix::identity(3)).unwrap();
        assert_eq!(a.power(2).unwrap(), expected);
    }

    #[test]
    fn dimension_errors() {
        let a = m(&[&[1, 2, 3]]);
        assert!(matches!(a.multiply(&a), Err(Error::Dimension { .. })));
        assert!(a.trace().is_err());
        assert!(a.determinant().is_err());
        assert!(a.eval_poly_i64(&[1]).is_err());
        assert!(ExactMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn trace_of_identity() {
        assert_eq!(ExactMatrix::identity(7).trace().unwrap(), big(7));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(ExactMatrix::identity(5).determinant().unwrap(), big(1));
        let k4 = m(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]);
        assert_eq!(k4.determinant().unwrap(), big(16));
        let l = ExactMatrix::scalar(4, big(4))
            .sub(&ExactMatrix::ones(4))
            .unwrap();
        assert_eq!(l.determinant().unwrap(), big(0));
        assert_eq!(ExactMatrix::zeros(0, 0).determinant().unwrap(), big(1));
        // needs a row swap
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), big(-1));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::ones(6).rank(), 1);
        assert_eq!(ExactMatrix::zeros(4, 3).rank(), 0);
        assert_eq!(ExactMatrix::identity(4).rank(), 4);
        assert_eq!(m(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]]).rank(), 2);
    }

    #[test]
    fn eval_poly_examples() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(
            a.eval_poly_i64(&[5]).unwrap(),
            ExactMatrix::scalar(2, big(5))
        );
        assert_eq!(a.eval_poly_i64(&[0, 1]).unwrap(), a);
        // A^2 - 5A - 2I = 0 (Cayley-Hamilton)
        assert!(a.eval_poly_i64(&[-2, -5, 1]).unwrap().is_zero());
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn inversions(p: &[usize]) -> usize {
        (0..p.len())
            .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count()
    }

    #[test]
    fn permutation_matrix_determinants() {
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        for p in perms {
            let pm = ExactMatrix::from_fn(4, 4, |i, j| BigInt::from(u8::from(p[i] == j)));
            let sign = if inversions(&p).is_multiple_of(2) {
                1
            } else {
                -1
            };
            assert_eq!(pm.determinant().unwrap(), big(sign), "{p:?}");
        }
    }

    fn cofactor_expansion(a: &ExactMatrix) -> BigInt {
        let n = a.rows();
        if n == 0 {
            return BigInt::one();
        }
        (0..n)
            .map(|j| {
                let term = a.get(0, j) * cofactor_expansion(&a.minor(0, j));
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    fn rational_rank(a: &ExactMatrix) -> usize {
        let mut rows: Vec<Vec<BigRational>> = (0..a.rows())
            .map(|i| {
                a.row(i)
                    .iter()
                    .map(|v| BigRational::from(v.clone()))
                    .collect()
            })
            .collect();
        let mut r = 0;
        for c in 0..a.cols() {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = &row[c] / &pivot[c];
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn small_matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..=9, r * c)
                .prop_map(move |v| ExactMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
        })
    }

    fn square_matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(-9i64..=9, n * n)
                .prop_map(move |v| ExactMatrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j])))
        })
    }

    /// Low-rank inputs exercise the zero-pivot and column-skip paths.
    fn low_rank_matrix() -> impl Strategy<Value = ExactMatrix> {
        (1usize..=5, 1usize..=5, 1usize..=3).prop_flat_map(|(r, c, k)| {
            (
                prop::collection::vec(-3i64..=3, r * k),
                prop::collection::vec(-3i64..=3, k * c),
            )
                .prop_map(move |(u, v)| {
                    let u = ExactMatrix::from_fn(r, k, |i, j| BigInt::from(u[i * k + j]));
                    let v = ExactMatrix::from_fn(k, c, |i, j| BigInt::from(v[i * c + j]));
                    u.multiply(&v).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(a in square_matrix(5)) {
            prop_assert_eq!(a.determinant().unwrap(), cofactor_expansion(&a));
        }

        #[test]
        fn rank_matches_rational_elimination(a in small_matrix(6)) {
            let r = a.rank();
            prop_assert_eq!(r, rational_rank(&a));
            prop_assert!(r <= a.rows().min(a.cols()));
        }

        #[test]
        fn rank_of_low_rank_products(a in low_rank_matrix()) {
            prop_assert_eq!(a.rank(), rational_rank(&a));
        }

        #[test]
        fn multiply_is_associative(
            dims in (1usize..5, 1usize..5, 1usize..5, 1usize..5),
            seed in prop::collection::vec(-9i64..=9, 64 * 3),
        ) {
            let (p, q, r, s) = dims;
            let mk = |rows, cols, off: usize| {
                ExactMatrix::from_fn(rows, cols, |i, j| BigInt::from(seed[off + i * cols + j]))
            };
            let a = mk(p, q, 0);
            let b = mk(q, r, 64);
            let c = mk(r, s, 128);
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn eval_poly_matches_explicit_powers(
            a in square_matrix(4),
            coeffs in prop::collection::vec(-5i64..=5, 1..5),
        ) {
            let mut expected = ExactMatrix::zeros(a.rows(), a.cols());
            for (i, &c) in coeffs.iter().enumerate() {
                expected = expected.add(&a.power(i as u32).unwrap().scale(&BigInt::from(c))).unwrap();
            }
            prop_assert_eq!(a.eval_poly_i64(&coeffs).unwrap(), expected);
        }
    }

    #[test]
    fn big_count_serializes_as_decimal_string() {
        let c = BigCount::from(173_946_175_488_000u64);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, "\"173946175488000\"");
        let back: BigCount = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<BigCount>("\"12x\"").is_err());
    }
}
