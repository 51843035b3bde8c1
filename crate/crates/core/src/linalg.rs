//! Dense linear algebra: row reduction over any [`Scalar`] field, and thin
//! wrappers over nalgebra for spectra and subspace angles.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::qscalar::{QScalar, Scalar};
use crate::sparse::SparseMatrix;

/// Reduced row echelon form. Entries with magnitude `<= tol` count as zero
/// (use `0.0` for exact fields). Returns the pivot columns.
pub fn rref<S: Scalar>(rows: &mut [Vec<S>], tol: f64) -> Vec<usize> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let best = (r..n_rows)
            .filter(|&i| !rows[i][c].is_zero())
            .max_by(|&a, &b| rows[a][c].magnitude().total_cmp(&rows[b][c].magnitude()));
        let Some(p) = best.filter(|&p| rows[p][c].magnitude() > tol) else {
            for row in rows.iter_mut().skip(r) {
                row[c] = S::zero();
            }
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.try_div(&pivot).expect("pivot is nonzero");
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = x.minus(&factor.times(p));
            }
            row[c] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], tol: f64) -> usize {
    rref(&mut rows.to_vec(), tol).len()
}

/// Basis of `{x : A x = 0}`, one vector per free column.
pub fn null_space<S: Scalar>(rows: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut reduced = rows.to_vec();
    let pivots = rref(&mut reduced, tol);
    (0..n_cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = alloc::vec![S::zero(); n_cols];
            v[free] = S::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = reduced[r][free].negated();
            }
            v
        })
        .collect()
}

/// Rank of the stacked vectors.
pub fn span_rank<S: Scalar>(vectors: &[Vec<S>], tol: f64) -> usize {
    rank(vectors, tol)
}

/// Two finite families span the same subspace.
pub fn same_span<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], tol: f64) -> bool {
    let ra = span_rank(a, tol);
    let rb = span_rank(b, tol);
    let both: Vec<Vec<S>> = a.iter().chain(b).cloned().collect();
    ra == rb && span_rank(&both, tol) == ra
}

/// Evaluate a Laurent matrix at a rational `s = q^(1/4)`.
pub fn at_rational_s(m: &SparseMatrix<QScalar>, s: &BigRational) -> SparseMatrix<BigRational> {
    m.map(|x| x.evaluate_rational(s))
}

pub fn to_dmatrix(m: &SparseMatrix<f64>) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(m.dim(), m.dim());
    for (r, c, v) in m.triplets() {
        out[(r, c)] = *v;
    }
    out
}

/// Columns of the returned matrix are the given vectors.
pub fn columns(vectors: &[Vec<f64>]) -> DMatrix<f64> {
    let dim = vectors.first().map_or(0, Vec::len);
    DMatrix::from_fn(dim, vectors.len(), |r, c| vectors[c][r])
}

/// Orthonormal basis (as columns) of the span of `m`'s columns.
pub fn orthonormal_columns(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    if m.ncols() == 0 {
        return m.clone();
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > tol)
        .collect();
    DMatrix::from_fn(m.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

/// Sine of the largest principal angle between two subspaces given by
/// orthonormal columns; `1.0` when their dimensions differ.
pub fn max_principal_sine(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    if a.ncols() != b.ncols() {
        return 1.0;
    }
    if a.ncols() == 0 {
        return 0.0;
    }
    let residual = b - a * (a.transpose() * b);
    residual
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Eigenvalues and eigenvectors of a real symmetric matrix, ascending.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Eigenvalues of a general real matrix whose spectrum is known to be
/// real, ascending. Fails if an imaginary part exceeds `tol`.
pub fn real_eigenvalues(m: &DMatrix<f64>, tol: f64) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(m.nrows());
    for z in m.complex_eigenvalues().iter() {
        if z.im.abs() > tol {
            return Err(Error::ComplexEigenvalue(z.im));
        }
        out.push(z.re);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

pub fn dvector(v: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(v)
}
