//! The deformed inner product, the star involution and the projector onto
//! the q-symmetric subspace.

use alloc::vec::Vec;

use num_rational::BigRational;

use crate::coproduct::{chain_dim, site_bit, ChainOperator, SPIN_UP};
use crate::dicke::{q_dicke, q_symmetric_basis, QState};
use crate::error::{Error, Result};
use crate::linalg::{null_space, rank};
use crate::qscalar::{Backend, Exact, Numeric, QScalar, Scalar};
use crate::sparse::{vector_distance, SparseMatrix};
use crate::symgroup::{c_tau, q_perm_rep, Permutation};

/// Largest chain for which the `N!`-term projector is assembled.
pub const EXACT_PROJECTOR_CAP: usize = 5;
pub const NUMERIC_PROJECTOR_CAP: usize = 7;

/// Rational values of `s = q^(1/4)` used to probe linear independence of
/// exact vectors.
const PROBE_POINTS: [(i64, i64); 3] = [(3, 2), (5, 3), (2, 1)];

/// Diagonal metric `Q = ⊗_i q^(½ (N + 1 - 2i) J3_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricForm<S> {
    pub n_sites: usize,
    pub diagonal: Vec<S>,
}

impl<S: Scalar> MetricForm<S> {
    pub fn as_operator(&self) -> Result<ChainOperator<S>> {
        ChainOperator::from_matrix(self.n_sites, SparseMatrix::diagonal(self.diagonal.clone()))
    }

    /// `Σ_i conj(phi_i) Q_ii psi_i`; amplitudes here are real, so the
    /// conjugation is the identity.
    pub fn inner(&self, phi: &[S], psi: &[S]) -> Result<S> {
        let dim = self.diagonal.len();
        for v in [phi, psi] {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
        Ok(phi
            .iter()
            .zip(psi)
            .zip(&self.diagonal)
            .fold(S::zero(), |acc, ((a, b), d)| acc.plus(&a.times(d).times(b))))
    }
}

/// Exponent of `s` for the metric entry of one basis state.
fn metric_quarter_exponent(index: usize, n: usize) -> i32 {
    (1..=n)
        .map(|i| {
            let sign = if site_bit(index, i, n) == SPIN_UP { 1 } else { -1 };
            (n as i32 + 1 - 2 * i as i32) * sign
        })
        .sum()
}

pub fn metric_matrix<B: Backend>(n: usize, backend: &B) -> Result<MetricForm<B::Scalar>> {
    let dim = chain_dim(n)?;
    Ok(MetricForm {
        n_sites: n,
        diagonal: (0..dim)
            .map(|idx| backend.quarter_power(metric_quarter_exponent(idx, n)))
            .collect(),
    })
}

/// `Q(phi, psi)` on the stored amplitudes. For exact states the normalized
/// value is this divided by `sqrt(phi.norm_sq * psi.norm_sq)`.
pub fn q_inner<S: Scalar>(phi: &QState<S>, psi: &QState<S>, metric: &MetricForm<S>) -> Result<S> {
    metric.inner(&phi.amplitudes, &psi.amplitudes)
}

/// `A* = C(τ) A† C(τ)^-1`.
pub fn star_adjoint<B: Backend>(a: &ChainOperator<B::Scalar>, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    let n = a.n_sites();
    let metric = metric_matrix(n, backend)?.as_operator()?;
    c_tau(n, backend)?.compose(&a.adjoint())?.compose(&metric)
}

fn projector_cap<B: Backend>(backend: &B) -> usize {
    if backend.is_exact() {
        EXACT_PROJECTOR_CAP
    } else {
        NUMERIC_PROJECTOR_CAP
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `π_q = (1/N!) Σ_σ W^q(σ)`, summed over `S_N` in lexicographic order.
pub fn projector<B: Backend>(n: usize, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    let cap = projector_cap(backend);
    if n > cap {
        return Err(Error::ResourceCap { n, cap });
    }
    let terms = Permutation::all(n)
        .iter()
        .map(|p| q_perm_rep(p, backend))
        .collect::<Result<Vec<_>>>()?;
    projector_from_terms(n, &terms)
}

/// Average of precomputed `W^q(σ)` terms; the caller supplies all of `S_N`.
pub fn projector_from_terms<S: Scalar>(n: usize, terms: &[ChainOperator<S>]) -> Result<ChainOperator<S>> {
    let dim = chain_dim(n)?;
    let weight = S::from_ratio(1, factorial(n));
    let sum = SparseMatrix::from_triplets(
        dim,
        terms.iter().flat_map(|t| t.triplets().map(|(r, c, v)| (r, c, v.clone()))),
    );
    ChainOperator::from_matrix(n, sum.scale(&weight))
}

/// Image and kernel bases of a projector.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageKernel<S> {
    pub image_basis: Vec<Vec<S>>,
    pub kernel_basis: Vec<Vec<S>>,
}

/// Backends that can extract a kernel basis.
pub trait KernelSolver: Backend {
    /// Tolerance for the idempotence and image checks (zero when exact).
    fn kernel_tolerance(&self) -> f64;

    /// A basis of `ker(proj)` with `expected` elements.
    fn kernel_basis(&self, proj: &ChainOperator<Self::Scalar>, expected: usize) -> Result<Vec<Vec<Self::Scalar>>>;
}

impl KernelSolver for Numeric {
    fn kernel_tolerance(&self) -> f64 {
        1e-9
    }

    /// Row reduction with partial pivoting; vectors are normalized.
    fn kernel_basis(&self, proj: &ChainOperator<f64>, expected: usize) -> Result<Vec<Vec<f64>>> {
        let scale = proj.max_magnitude().max(1.0);
        let basis: Vec<Vec<f64>> = null_space(&proj.to_dense(), 1e-10 * scale)
            .into_iter()
            .map(|v| {
                let norm = libm::sqrt(v.iter().map(|x| x * x).sum());
                v.into_iter().map(|x| x / norm).collect()
            })
            .collect();
        if basis.len() != expected {
            return Err(Error::KernelRank { expected, found: basis.len() });
        }
        Ok(basis)
    }
}

impl KernelSolver for Exact {
    fn kernel_tolerance(&self) -> f64 {
        0.0
    }

    /// `ker π = im(1 - π)` for an idempotent, so the columns of `1 - π`
    /// span the kernel inside the ring. A maximal subset that is
    /// independent at some rational `s` is independent over the fraction
    /// field, hence a basis.
    fn kernel_basis(&self, proj: &ChainOperator<QScalar>, expected: usize) -> Result<Vec<Vec<QScalar>>> {
        let dim = proj.dim();
        let complement = SparseMatrix::identity(dim).minus(proj.matrix())?.transpose().to_dense();
        let mut found = 0;
        for (num, den) in PROBE_POINTS {
            let s = BigRational::new(num.into(), den.into());
            let mut chosen: Vec<Vec<QScalar>> = Vec::new();
            let mut probes: Vec<Vec<BigRational>> = Vec::new();
            for column in &complement {
                probes.push(column.iter().map(|x| x.evaluate_rational(&s)).collect());
                if rank(&probes, 0.0) == chosen.len() + 1 {
                    chosen.push(column.clone());
                } else {
                    probes.pop();
                }
            }
            if chosen.len() == expected {
                return Ok(chosen);
            }
            found = found.max(chosen.len());
        }
        Err(Error::KernelRank { expected, found })
    }
}

/// Image (the q-Dicke states, after checking `π D = D`) and kernel of an
/// idempotent projector on `n` sites.
pub fn image_kernel<B: KernelSolver>(proj: &ChainOperator<B::Scalar>, backend: &B) -> Result<ImageKernel<B::Scalar>> {
    let n = proj.n_sites();
    let tol = backend.kernel_tolerance();
    let idempotence = proj.compose(proj)?.matrix().relative_distance(proj.matrix())?;
    if idempotence > tol {
        return Err(Error::NotIdempotent(idempotence));
    }
    let image_basis: Vec<Vec<B::Scalar>> = q_symmetric_basis(n, backend)?
        .into_iter()
        .map(|d| d.amplitudes)
        .collect();
    let mut worst = 0.0f64;
    for d in &image_basis {
        worst = worst.max(vector_distance(&proj.apply(d)?, d));
    }
    if worst > tol {
        return Err(Error::ImageMismatch(worst));
    }
    let expected = proj.dim() - (n + 1);
    let kernel_basis = backend.kernel_basis(proj, expected)?;
    Ok(ImageKernel { image_basis, kernel_basis })
}

/// Largest `|Q(k, d)|` over kernel vectors `k` and q-Dicke states `d`.
pub fn kernel_q_orthogonality<S: Scalar>(split: &ImageKernel<S>, metric: &MetricForm<S>) -> Result<f64> {
    let mut worst = 0.0f64;
    for k in &split.kernel_basis {
        for d in &split.image_basis {
            worst = worst.max(metric.inner(k, d)?.magnitude());
        }
    }
    Ok(worst)
}

/// `π D = D` residual for every q-Dicke state.
pub fn projector_fixes_q_dicke<B: Backend>(proj: &ChainOperator<B::Scalar>, backend: &B) -> Result<f64> {
    let n = proj.n_sites();
    let mut worst = 0.0f64;
    for m in 0..=n {
        let d = q_dicke(n, m, backend)?;
        worst = worst.max(vector_distance(&proj.apply(&d.amplitudes)?, &d.amplitudes));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: i32) -> QScalar {
        QScalar::s_pow(k)
    }

    #[test]
    fn metric_examples() {
        let m = metric_matrix(2, &Exact::new()).unwrap();
        assert_eq!(m.diagonal, alloc::vec![s(0), s(2), s(-2), s(0)]);
        let m = metric_matrix(3, &Exact::new()).unwrap();
        assert_eq!(m.diagonal, alloc::vec![s(0), s(4), s(0), s(4), s(-4), s(0), s(-4), s(0)]);
        let m = metric_matrix(4, &Numeric::new(1.0).unwrap()).unwrap();
        assert!(m.diagonal.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn metric_inverts_c_tau() {
        let b = Exact::new();
        for n in 1..=5 {
            let q = metric_matrix(n, &b).unwrap().as_operator().unwrap();
            let c = c_tau(n, &b).unwrap();
            assert_eq!(q.compose(&c).unwrap(), ChainOperator::identity(n).unwrap());
        }
    }

    #[test]
    fn q_inner_of_two_site_dicke() {
        let b = Exact::new();
        let d = q_dicke(2, 1, &b).unwrap();
        let metric = metric_matrix(2, &b).unwrap();
        assert_eq!(q_inner(&d, &d, &metric).unwrap(), QScalar::from_int(2));
        assert_eq!(d.norm_sq, crate::qscalar::q_number(2));
    }

    #[test]
    fn two_site_projector() {
        let p = projector(2, &Exact::new()).unwrap();
        let half = QScalar::from_ratio(1, 2);
        assert_eq!(p.get(0, 0), QScalar::one());
        assert_eq!(p.get(1, 1), half);
        assert_eq!(p.get(1, 2), &half * &s(-2));
        assert_eq!(p.get(2, 1), &half * &s(2));
        assert_eq!(p.nnz(), 6);
    }

    #[test]
    fn projector_cap_is_enforced() {
        assert_eq!(
            projector(6, &Exact::new()).unwrap_err(),
            Error::ResourceCap { n: 6, cap: EXACT_PROJECTOR_CAP }
        );
    }

    #[test]
    fn exact_kernel_is_q_orthogonal() {
        let b = Exact::new();
        for n in 1..=3 {
            let p = projector(n, &b).unwrap();
            let split = image_kernel(&p, &b).unwrap();
            assert_eq!(split.kernel_basis.len(), (1 << n) - n - 1);
            for k in &split.kernel_basis {
                assert!(p.apply(k).unwrap().iter().all(Scalar::is_zero));
            }
            let metric = metric_matrix(n, &b).unwrap();
            assert_eq!(kernel_q_orthogonality(&split, &metric).unwrap(), 0.0);
        }
    }

    #[test]
    fn numeric_kernel() {
        let b = Numeric::new(2.0).unwrap();
        let p = projector(4, &b).unwrap();
        let split = image_kernel(&p, &b).unwrap();
        assert_eq!(split.kernel_basis.len(), 11);
        let metric = metric_matrix(4, &b).unwrap();
        assert!(kernel_q_orthogonality(&split, &metric).unwrap() < 1e-10);
    }

    #[test]
    fn non_projector_rejected() {
        let b = Numeric::new(2.0).unwrap();
        let twice = projector(2, &b).unwrap().scaled(&2.0);
        assert!(matches!(image_kernel(&twice, &b), Err(Error::NotIdempotent(_))));
    }

    #[test]
    fn star_of_q_transposition() {
        let b = Exact::new();
        for n in 2..=4 {
            for i in 1..n {
                let w = crate::symgroup::q_transposition(i, n, &b).unwrap();
                assert_eq!(star_adjoint(&w, &b).unwrap(), w);
            }
        }
    }
}
