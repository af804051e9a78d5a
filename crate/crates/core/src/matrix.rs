//! Exact integer matrices.
//!
//! Entries are arbitrary-precision integers: products of transvections grow
//! fast enough that machine words overflow at desk scale. Serialization uses
//! row arrays of decimal strings for the same reason.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Index, IndexMut};

/// A dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from rows of machine integers (convenience for tests and tables).
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flat_map(|row| row.iter().map(|&v| BigInt::from(v))).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    /// The transvection `t_{ij}(a)`: identity plus `a` in position `(i, j)`, 1-based.
    pub fn transvection(n: usize, i: usize, j: usize, a: i64) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, rank: n });
        }
        if i == j {
            return Err(Error::Invalid(format!("transvection needs i != j, got ({i}, {j})")));
        }
        let mut m = IntMatrix::identity(n);
        m[(i - 1, j - 1)] = BigInt::from(a);
        Ok(m)
    }

    /// Diagonal matrix differing from the identity by `-1` in position `(i, i)`, 1-based.
    pub fn sign_flip(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        let mut m = IntMatrix::identity(n);
        m[(i - 1, i - 1)] = BigInt::from(-1);
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IntMatrix::identity(self.rows)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.entries.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&p| !at(&m, p, k).is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&m, k, k) * at(&m, i, j) - at(&m, i, k) * at(&m, k, j);
                    m[i * n + j] = num / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = at(&m, k, k);
        }
        Ok(sign * at(&m, n - 1, n - 1))
    }

    /// Reduces every entry mod 2 and compares with the identity.
    pub fn is_identity_mod2(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let odd = self[(i, j)].is_odd();
                if i == j { odd } else { !odd }
            })
        })
    }

    pub fn entry_i64(&self, i: usize, j: usize) -> Option<i64> {
        i64::try_from(&self[(i, j)]).ok()
    }

    /// Smith invariant factors `d_1 | d_2 | ... >= 0`, one per diagonal slot.
    ///
    /// Returns `min(rows, cols)` values: the nonzero factors in divisibility
    /// order followed by zeros for the rank deficiency.
    pub fn smith_invariant_factors(&self) -> Vec<BigInt> {
        let mut m = self.clone();
        let n = self.rows.min(self.cols);
        let mut diag: Vec<BigInt> = Vec::with_capacity(n);
        for k in 0..n {
            loop {
                // Pivot: smallest nonzero |entry| in the trailing block.
                let mut pivot: Option<(usize, usize)> = None;
                for i in k..m.rows {
                    for j in k..m.cols {
                        if !m[(i, j)].is_zero()
                            && pivot.is_none_or(|(pi, pj)| m[(i, j)].abs() < m[(pi, pj)].abs())
                        {
                            pivot = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = pivot else {
                    break;
                };
                m.swap_rows(k, pi);
                m.swap_cols(k, pj);
                if m[(k, k)].is_negative() {
                    m.negate_row(k);
                }

                let mut dirty = false;
                for i in k + 1..m.rows {
                    let q = div_nearest(&m[(i, k)], &m[(k, k)]);
                    if !q.is_zero() {
                        m.row_axpy(i, k, &-q);
                    }
                    if !m[(i, k)].is_zero() {
                        dirty = true;
                    }
                }
                for j in k + 1..m.cols {
                    let q = div_nearest(&m[(k, j)], &m[(k, k)]);
                    if !q.is_zero() {
                        m.col_axpy(j, k, &-q);
                    }
                    if !m[(k, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // Divisibility sweep: fold any entry the pivot does not divide
                // into the pivot row and retry.
                let d = m[(k, k)].clone();
                let bad = (k + 1..m.rows)
                    .flat_map(|i| (k + 1..m.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&m[(i, j)] % &d).is_zero());
                match bad {
                    Some((i, _)) => {
                        m.row_axpy(k, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            diag.push(m[(k, k)].clone());
        }
        diag
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self[(r, j)].clone();
            self[(r, j)] = v;
        }
    }

    /// row[dst] += c * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let t = c * &self[(src, j)];
            self[(dst, j)] += t;
        }
    }

    /// col[dst] += c * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let t = c * &self[(i, src)];
            self[(i, dst)] += t;
        }
    }
}

/// Rounded division: the quotient minimizing |a - q*b|.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Parses the JSON wire form: an array of rows of decimal strings.
pub fn matrix_from_json(value: &serde_json::Value) -> Result<IntMatrix> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::Invalid("matrix JSON must be an array of rows".into()))?;
    let mut parsed: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::Invalid("matrix row must be an array".into()))?;
        let mut out = Vec::with_capacity(cells.len());
        for cell in cells {
            let n = match cell {
                serde_json::Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| Error::Invalid(format!("bad integer string `{s}`")))?,
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::Invalid(format!("non-integer entry {n}")))?,
                other => return Err(Error::Invalid(format!("bad matrix entry {other}"))),
            };
            out.push(n);
        }
        parsed.push(out);
    }
    let r = parsed.len();
    let c = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|row| row.len() != c) {
        return Err(Error::Invalid("ragged matrix rows".into()));
    }
    Ok(IntMatrix { rows: r, cols: c, entries: parsed.into_iter().flatten().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transvection_matrices() {
        let t = IntMatrix::transvection(2, 1, 2, 2).unwrap();
        assert_eq!(t, IntMatrix::from_rows(&[&[1, 2], &[0, 1]]));
        let t = IntMatrix::transvection(3, 2, 1, 2).unwrap();
        assert_eq!(t.entry_i64(1, 0), Some(2));
        assert!(IntMatrix::transvection(3, 2, 2, 1).is_err());
        assert_eq!(IntMatrix::transvection(3, 1, 2, 0).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn matrix_product_and_det() {
        let a = IntMatrix::from_rows(&[&[1, 2], &[0, 1]]);
        let b = IntMatrix::from_rows(&[&[1, 0], &[2, 1]]);
        assert_eq!(a.mul(&b).unwrap(), IntMatrix::from_rows(&[&[5, 2], &[2, 1]]));
        assert_eq!(a.det().unwrap(), BigInt::one());
        let c = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(c.det().unwrap(), BigInt::from(6));
        let s = IntMatrix::from_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.det().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn smith_diagonal_cases() {
        let id = IntMatrix::identity(2);
        assert_eq!(id.smith_invariant_factors(), vec![BigInt::one(), BigInt::one()]);
        let d = IntMatrix::from_rows(&[&[2, 0], &[0, 4]]);
        assert_eq!(d.smith_invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn smith_needs_divisibility_fix() {
        // diag(2, 3) is not in Smith form; factors are (1, 6).
        let d = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(d.smith_invariant_factors(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn smith_rectangular() {
        let m = IntMatrix::from_rows(&[&[2, 0, 0], &[0, 0, 0]]);
        assert_eq!(m.smith_invariant_factors(), vec![BigInt::from(2), BigInt::zero()]);
        let known = IntMatrix::from_rows(&[
            &[-6, 111, -36, 6],
            &[5, -672, 210, 74],
            &[0, -255, 81, 24],
            &[-7, 255, -81, -10],
        ]);
        let f = known.smith_invariant_factors();
        assert_eq!(f, vec![BigInt::one(), BigInt::from(3), BigInt::from(21), BigInt::zero()]);
    }

    #[test]
    fn mod2_identity_test() {
        assert!(IntMatrix::from_rows(&[&[1, 2], &[4, -3]]).is_identity_mod2());
        assert!(!IntMatrix::from_rows(&[&[1, 1], &[0, 1]]).is_identity_mod2());
    }

    #[test]
    fn json_round_trip() {
        let m = IntMatrix::from_rows(&[&[1, -2], &[30, 4]]);
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v, serde_json::json!([["1", "-2"], ["30", "4"]]));
        assert_eq!(matrix_from_json(&v).unwrap(), m);
    }
}
