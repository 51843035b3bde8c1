//! Row-compressed square matrices over a [`Scalar`].
//!
//! Rows hold `(column, value)` pairs sorted by column with no stored zeros,
//! so two matrices are equal exactly when their storage is equal. All
//! accumulation goes through ordered maps, which keeps every result
//! independent of summation order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qscalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<S> {
    dim: usize,
    rows: Vec<Vec<(usize, S)>>,
}

fn compress<S: Scalar>(row: BTreeMap<usize, S>) -> Vec<(usize, S)> {
    row.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            rows: (0..dim).map(|_| Vec::new()).collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| S::one()).collect())
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let dim = entries.len();
        let rows = entries
            .into_iter()
            .enumerate()
            .map(|(i, v)| if v.is_zero() { Vec::new() } else { alloc::vec![(i, v)] })
            .collect();
        Self { dim, rows }
    }

    /// Sum duplicate entries; panics on out-of-range indices.
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (usize, usize, S)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, S>> = (0..dim).map(|_| BTreeMap::new()).collect();
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "entry ({r}, {c}) outside {dim}x{dim}");
            acc[r]
                .entry(c)
                .and_modify(|x| *x = x.plus(&v))
                .or_insert(v);
        }
        Self {
            dim,
            rows: acc.into_iter().map(compress).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let dim = rows.len();
        Self::from_triplets(
            dim,
            rows.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), dim, "dense input must be square");
                row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, S)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.rows[r]
            .binary_search_by_key(&c, |(col, _)| *col)
            .map(|i| self.rows[r][i].1.clone())
            .unwrap_or_else(|_| S::zero())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = alloc::vec![alloc::vec![S::zero(); self.dim]; self.dim];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseMatrix<T> {
        SparseMatrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .filter_map(|(c, v)| {
                            let w = f(v);
                            (!w.is_zero()).then_some((*c, w))
                        })
                        .collect()
                })
                .collect(),
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, S> = a.iter().cloned().collect();
                for (c, v) in b {
                    let v = if sign { v.clone() } else { v.negated() };
                    acc.entry(*c).and_modify(|x| *x = x.plus(&v)).or_insert(v);
                }
                compress(acc)
            })
            .collect();
        Self { dim: self.dim, rows }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.combine(other, true))
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.combine(other, false))
    }

    pub fn times(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let rows = self
            .rows
            .iter()
            .map(|a| {
                let mut acc: BTreeMap<usize, S> = BTreeMap::new();
                for (k, x) in a {
                    for (c, y) in &other.rows[*k] {
                        let p = x.times(y);
                        acc.entry(*c).and_modify(|v| *v = v.plus(&p)).or_insert(p);
                    }
                }
                compress(acc)
            })
            .collect();
        Ok(Self { dim: self.dim, rows })
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.times(other)?.minus(&other.times(self)?)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| v.times(c))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(r, c, v)| (c, r, v.clone())))
    }

    /// Kronecker product with `self` as the left (more significant) factor.
    pub fn kron(&self, other: &Self) -> Self {
        let db = other.dim;
        let dim = self.dim * db;
        let mut rows = Vec::with_capacity(dim);
        for a_row in &self.rows {
            for b_row in &other.rows {
                let mut row = Vec::with_capacity(a_row.len() * b_row.len());
                for (ca, va) in a_row {
                    for (cb, vb) in b_row {
                        let v = va.times(vb);
                        if !v.is_zero() {
                            row.push((ca * db + cb, v));
                        }
                    }
                }
                rows.push(row);
            }
        }
        Self { dim, rows }
    }

    pub fn apply(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(S::zero(), |acc, (c, x)| acc.plus(&x.times(&v[*c])))
            })
            .collect())
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(S::zero(), |acc, i| acc.plus(&self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.triplets().all(|(r, c, _)| r == c)
    }

    /// Largest entry magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.triplets().map(|(_, _, v)| v.magnitude()).fold(0.0, f64::max)
    }

    /// `max |self - other|` entrywise.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.minus(other)?.max_magnitude())
    }

    /// [`distance`](Self::distance) divided by `max(1, |self|, |other|)`.
    pub fn relative_distance(&self, other: &Self) -> Result<f64> {
        let scale = self.max_magnitude().max(other.max_magnitude()).max(1.0);
        Ok(self.distance(other)? / scale)
    }
}

/// `max_i |a_i - b_i| / max(1, |a|, |b|)`; infinite on length mismatch.
pub fn vector_distance<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let scale = a
        .iter()
        .chain(b)
        .map(Scalar::magnitude)
        .fold(1.0, f64::max);
    a.iter()
        .zip(b)
        .map(|(x, y)| x.minus(y).magnitude())
        .fold(0.0, f64::max)
        / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix(dim: usize) -> impl Strategy<Value = SparseMatrix<f64>> {
        proptest::collection::vec((0..dim, 0..dim, -3i32..=3), 0..12).prop_map(move |t| {
            SparseMatrix::from_triplets(dim, t.into_iter().map(|(r, c, v)| (r, c, f64::from(v))))
        })
    }

    #[test]
    fn triplets_drop_cancelling_entries() {
        let m = SparseMatrix::from_triplets(2, [(0, 1, 1.0), (0, 1, -1.0), (1, 0, 2.0)]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), 2.0);
        assert_eq!(m.get(0, 1), 0.0);
    }

    #[test]
    fn kron_ordering() {
        let a = SparseMatrix::from_dense(&[alloc::vec![0.0, 1.0], alloc::vec![0.0, 0.0]]);
        let id = SparseMatrix::<f64>::identity(2);
        let left = a.kron(&id);
        assert_eq!(left.get(0, 2), 1.0);
        assert_eq!(left.get(1, 3), 1.0);
        assert_eq!(left.nnz(), 2);
        let right = id.kron(&a);
        assert_eq!(right.get(0, 1), 1.0);
        assert_eq!(right.get(2, 3), 1.0);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = SparseMatrix::<f64>::identity(2);
        let b = SparseMatrix::<f64>::identity(3);
        assert!(a.times(&b).is_err());
        assert!(a.apply(&[1.0]).is_err());
    }

    proptest! {
        #[test]
        fn product_matches_dense(a in small_matrix(4), b in small_matrix(4)) {
            let p = a.times(&b).unwrap().to_dense();
            let (da, db) = (a.to_dense(), b.to_dense());
            for i in 0..4 {
                for j in 0..4 {
                    let want: f64 = (0..4).map(|k| da[i][k] * db[k][j]).sum();
                    prop_assert_eq!(p[i][j], want);
                }
            }
        }

        #[test]
        fn kron_is_mixed_product_compatible(a in small_matrix(2), b in small_matrix(2), c in small_matrix(2), d in small_matrix(2)) {
            let lhs = a.kron(&b).times(&c.kron(&d)).unwrap();
            let rhs = a.times(&c).unwrap().kron(&b.times(&d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
