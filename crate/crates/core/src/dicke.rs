//! Dicke and q-Dicke states.
//!
//! In the exact backend a state is a pair (ring amplitudes, ring squared
//! norm) and the normalized vector is `amplitudes / sqrt(norm_sq)`; no
//! square root is ever formed. Numeric states are normalized directly.

use alloc::vec::Vec;

use crate::coproduct::{chain_dim, delta_n, CoproductKind, Generator};
use crate::error::{Error, Result};
use crate::qscalar::{q_binomial, q_factorial, Backend, Scalar};
use crate::sparse::vector_distance;

#[derive(Debug, Clone, PartialEq)]
pub struct QState<S> {
    pub n_sites: usize,
    /// Ladder level (number of raised spins) for Dicke-type states.
    pub level: Option<usize>,
    pub amplitudes: Vec<S>,
    pub norm_sq: S,
}

impl<S: Scalar> QState<S> {
    /// A raw vector with its squared norm computed in the scalar ring.
    pub fn from_amplitudes(n_sites: usize, amplitudes: Vec<S>) -> Result<Self> {
        let dim = chain_dim(n_sites)?;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        let norm_sq = dot(&amplitudes, &amplitudes);
        Ok(Self {
            n_sites,
            level: None,
            amplitudes,
            norm_sq,
        })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `sum |a_i|^2` recomputed from the amplitudes.
    pub fn amplitude_norm_sq(&self) -> S {
        dot(&self.amplitudes, &self.amplitudes)
    }

    /// Standard (undeformed) inner product of the stored amplitudes.
    pub fn dot(&self, other: &Self) -> S {
        dot(&self.amplitudes, &other.amplitudes)
    }

    /// Residual of `v = lambda * self` where `v` is an arbitrary vector.
    pub fn eigen_residual(&self, image: &[S], eigenvalue: &S) -> f64 {
        let scaled: Vec<S> = self.amplitudes.iter().map(|a| a.times(eigenvalue)).collect();
        vector_distance(image, &scaled)
    }

    /// True if `other` is a scalar multiple of `self` (exactly parallel).
    pub fn parallel_to(&self, other: &[S]) -> bool {
        parallel(&self.amplitudes, other)
    }
}

pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc.plus(&x.times(y)))
}

/// `a_i b_k == a_k b_i` for a pivot `k`; exact for ring scalars.
pub(crate) fn parallel<S: Scalar>(a: &[S], b: &[S]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(Scalar::is_zero);
    };
    a.iter()
        .zip(b)
        .all(|(ai, bi)| ai.times(&b[k]).minus(&a[k].times(bi)).is_zero())
}

/// All spins down, the last computational basis vector.
pub fn ground_state<B: Backend>(n_sites: usize, _backend: &B) -> Result<QState<B::Scalar>> {
    let dim = chain_dim(n_sites)?;
    let mut amplitudes = alloc::vec![B::Scalar::zero(); dim];
    amplitudes[dim - 1] = B::Scalar::one();
    Ok(QState {
        n_sites,
        level: Some(0),
        amplitudes,
        norm_sq: B::Scalar::one(),
    })
}

/// `|D^m_N>_q = 1/([m]_q! sqrt(binom(N, m)_q)) (Δ(J+))^m |G>`.
///
/// Exact backend: amplitudes are `(Δ(J+))^m |G> / [m]_q!` (the division is
/// checked to be exact) and `norm_sq = binom(N, m)_q`.
pub fn q_dicke<B: Backend>(n_sites: usize, level: usize, backend: &B) -> Result<QState<B::Scalar>> {
    dicke_with(n_sites, level, CoproductKind::Deformed, backend)
}

/// Dicke ladder built with either coproduct. The undeformed kind gives the
/// classical Dicke states with weights `1/(m! sqrt(binom(N, m)))`.
pub fn dicke_with<B: Backend>(
    n_sites: usize,
    level: usize,
    kind: CoproductKind,
    backend: &B,
) -> Result<QState<B::Scalar>> {
    if level > n_sites {
        return Err(Error::LevelOutOfRange { m: level, n: n_sites });
    }
    let raise = delta_n(Generator::Jplus, n_sites, kind, backend)?;
    let mut v = ground_state(n_sites, backend)?.amplitudes;
    for _ in 0..level {
        v = raise.apply(&v)?;
    }
    let (factorial, binomial) = match kind {
        CoproductKind::Deformed => (
            q_factorial(level as u32),
            q_binomial(n_sites as u32, level as u32)?,
        ),
        CoproductKind::Undeformed => (
            crate::qscalar::QScalar::from_int(classical_factorial(level) as i64),
            crate::qscalar::QScalar::from_int(classical_binomial(n_sites, level) as i64),
        ),
    };
    let factorial = backend.lift(&factorial);
    let mut amplitudes = v
        .iter()
        .map(|a| {
            a.try_div(&factorial)
                .ok_or_else(|| Error::NotDivisible(alloc::format!("ladder amplitude by [{level}]_q!")))
        })
        .collect::<Result<Vec<_>>>()?;
    let norm_sq = if backend.is_exact() {
        backend.lift(&binomial)
    } else {
        let root = backend.ring_sqrt(&binomial)?;
        amplitudes = amplitudes
            .iter()
            .map(|a| a.try_div(&root).expect("binomial is positive"))
            .collect();
        B::Scalar::one()
    };
    Ok(QState {
        n_sites,
        level: Some(level),
        amplitudes,
        norm_sq,
    })
}

fn classical_factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

fn classical_binomial(n: usize, k: usize) -> u64 {
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// `[|D^0_N>_q, ..., |D^N_N>_q]`, a basis of the q-symmetric subspace.
pub fn q_symmetric_basis<B: Backend>(n_sites: usize, backend: &B) -> Result<Vec<QState<B::Scalar>>> {
    (0..=n_sites).map(|m| q_dicke(n_sites, m, backend)).collect()
}

/// Eigenvalue `[m]_q [N - m + 1]_q` of `Δ(J+) Δ(J-)` on `|D^m_N>_q`.
///
/// This is `[j]_q[j+1]_q - [j3]_q[j3-1]_q` with `j = N/2`, `j3 = m - N/2`,
/// rewritten as a product of integer q-numbers so it stays in the ring for
/// odd `N` as well.
pub fn ladder_eigenvalue<B: Backend>(n_sites: usize, level: usize, backend: &B) -> B::Scalar {
    use crate::qscalar::q_number;
    backend.lift(&(&q_number(level as i64) * &q_number((n_sites - level + 1) as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::{Exact, Numeric, QScalar};

    fn s(k: i32) -> QScalar {
        QScalar::s_pow(k)
    }

    #[test]
    fn ground_states() {
        let g = ground_state(2, &Exact::new()).unwrap();
        assert_eq!(g.amplitudes, alloc::vec![QScalar::zero(), QScalar::zero(), QScalar::zero(), QScalar::one()]);
        let g = ground_state(1, &Numeric::new(2.0).unwrap()).unwrap();
        assert_eq!(g.amplitudes, alloc::vec![0.0, 1.0]);
        assert_eq!(ground_state(3, &Exact::new()).unwrap().amplitudes[7], QScalar::one());
    }

    #[test]
    fn two_site_q_dicke() {
        let d = q_dicke(2, 1, &Exact::new()).unwrap();
        assert_eq!(d.amplitudes, alloc::vec![QScalar::zero(), s(-1), s(1), QScalar::zero()]);
        assert_eq!(d.norm_sq, &s(2) + &s(-2));
        assert_eq!(d.amplitude_norm_sq(), d.norm_sq);
        let top = q_dicke(2, 2, &Exact::new()).unwrap();
        assert_eq!(top.amplitudes[0], QScalar::one());
        assert!(top.norm_sq.is_one());
    }

    #[test]
    fn three_site_q_dicke() {
        let d = q_dicke(3, 1, &Exact::new()).unwrap();
        assert_eq!(d.amplitudes[6], s(2));
        assert_eq!(d.amplitudes[5], QScalar::one());
        assert_eq!(d.amplitudes[3], s(-2));
        assert_eq!(d.norm_sq, crate::qscalar::q_number(3));
        let top = q_dicke(3, 3, &Exact::new()).unwrap();
        let mut want = alloc::vec![QScalar::zero(); 8];
        want[0] = QScalar::one();
        assert_eq!(top.amplitudes, want);
    }

    #[test]
    fn classical_limit() {
        let b = Numeric::new(1.0).unwrap();
        for n in 1..=6usize {
            for m in 0..=n {
                let d = q_dicke(n, m, &b).unwrap();
                let weight = 1.0 / libm::sqrt(classical_binomial(n, m) as f64);
                for (i, a) in d.amplitudes.iter().enumerate() {
                    let ups = n - i.count_ones() as usize;
                    let want = if ups == m { weight } else { 0.0 };
                    assert!((a - want).abs() < 1e-12, "n={n} m={m} i={i}");
                }
            }
        }
    }

    #[test]
    fn level_out_of_range() {
        assert_eq!(q_dicke(2, 3, &Exact::new()).unwrap_err(), Error::LevelOutOfRange { m: 3, n: 2 });
    }

    #[test]
    fn parallel_detection() {
        let a = alloc::vec![QScalar::zero(), s(1), s(3)];
        let b: Vec<QScalar> = a.iter().map(|x| x * &crate::qscalar::q_number(2)).collect();
        assert!(parallel(&a, &b));
        assert!(!parallel(&a, &[QScalar::zero(), s(1), s(1)]));
    }
}
