//! N-fold coproducts of the generators on a chain of spin-1/2 sites.
//!
//! Site 1 is the leftmost tensor factor, i.e. the most significant bit of
//! a basis index; bit value 0 is spin up. Coproduct outputs keep their
//! decomposition into tensor words so a further coproduct can be applied
//! at any single site.

use alloc::vec::Vec;
use core::ops::Deref;

use crate::algebra::{cleared_q_number, generators, two_j3_q_number, Generators, IrrepLabel};
use crate::error::{Error, Result};
use crate::qscalar::{Backend, Scalar};
use crate::sparse::SparseMatrix;

/// Upper bound on chain length for any dense-ish construction.
pub const MAX_SITES: usize = 16;

/// Bit value of spin up at a site.
pub const SPIN_UP: usize = 0;

/// Spin bit (0 = up, 1 = down) of 1-based `site` in basis state `index`.
pub fn site_bit(index: usize, site: usize, n_sites: usize) -> usize {
    (index >> (n_sites - site)) & 1
}

/// `2 J3` eigenvalue of a computational basis state (`#up - #down`).
pub fn two_j3_of(index: usize, n_sites: usize) -> i64 {
    let down = index.count_ones() as i64;
    n_sites as i64 - 2 * down
}

pub fn chain_dim(n_sites: usize) -> Result<usize> {
    if n_sites == 0 {
        return Err(Error::ZeroSites);
    }
    if n_sites > MAX_SITES {
        return Err(Error::ResourceCap { n: n_sites, cap: MAX_SITES });
    }
    Ok(1 << n_sites)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoproductKind {
    Undeformed,
    Deformed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Jplus,
    Jminus,
    J3,
    /// `q^(J3/2)`, group-like.
    QPlus,
    /// `q^(-J3/2)`, group-like.
    QMinus,
}

/// Single-site factor of a tensor word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Id,
    Jplus,
    Jminus,
    J3,
    QPlus,
    QMinus,
}

impl From<Generator> for Letter {
    fn from(g: Generator) -> Self {
        match g {
            Generator::Jplus => Letter::Jplus,
            Generator::Jminus => Letter::Jminus,
            Generator::J3 => Letter::J3,
            Generator::QPlus => Letter::QPlus,
            Generator::QMinus => Letter::QMinus,
        }
    }
}

/// Tensor product of single-site letters, coefficient 1.
pub type TensorWord = Vec<Letter>;

impl Letter {
    /// Two-site coproduct image of a single letter.
    pub fn coproduct(self, kind: CoproductKind) -> Vec<[Letter; 2]> {
        use Letter::*;
        match (self, kind) {
            (Id, _) => alloc::vec![[Id, Id]],
            (J3, _) => alloc::vec![[J3, Id], [Id, J3]],
            (QPlus, _) => alloc::vec![[QPlus, QPlus]],
            (QMinus, _) => alloc::vec![[QMinus, QMinus]],
            (Jplus | Jminus, CoproductKind::Undeformed) => alloc::vec![[self, Id], [Id, self]],
            (Jplus | Jminus, CoproductKind::Deformed) => alloc::vec![[self, QPlus], [QMinus, self]],
        }
    }
}

/// Operator on the `2^n`-dimensional chain space.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainOperator<S> {
    n_sites: usize,
    matrix: SparseMatrix<S>,
    words: Option<Vec<TensorWord>>,
}

impl<S: Scalar> ChainOperator<S> {
    pub fn from_matrix(n_sites: usize, matrix: SparseMatrix<S>) -> Result<Self> {
        let dim = chain_dim(n_sites)?;
        if matrix.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.dim(),
            });
        }
        Ok(Self {
            n_sites,
            matrix,
            words: None,
        })
    }

    pub fn identity(n_sites: usize) -> Result<Self> {
        Self::from_matrix(n_sites, SparseMatrix::identity(chain_dim(n_sites)?))
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn matrix(&self) -> &SparseMatrix<S> {
        &self.matrix
    }

    pub fn into_matrix(self) -> SparseMatrix<S> {
        self.matrix
    }

    pub fn words(&self) -> Option<&[TensorWord]> {
        self.words.as_deref()
    }

    fn check_sites(&self, other: &Self) -> Result<()> {
        if self.n_sites != other.n_sites {
            return Err(Error::DimensionMismatch {
                expected: self.n_sites,
                found: other.n_sites,
            });
        }
        Ok(())
    }

    /// Product `self * other`; drops word decompositions.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_sites(other)?;
        Self::from_matrix(self.n_sites, self.matrix.times(&other.matrix)?)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_sites(other)?;
        Self::from_matrix(self.n_sites, self.matrix.plus(&other.matrix)?)
    }

    pub fn scaled(&self, c: &S) -> Self {
        Self {
            n_sites: self.n_sites,
            matrix: self.matrix.scale(c),
            words: None,
        }
    }

    /// Plain (unconjugated) transpose; all in-scope entries are real.
    pub fn adjoint(&self) -> Self {
        Self {
            n_sites: self.n_sites,
            matrix: self.matrix.transpose(),
            words: None,
        }
    }
}

impl<S> Deref for ChainOperator<S> {
    type Target = SparseMatrix<S>;
    fn deref(&self) -> &SparseMatrix<S> {
        &self.matrix
    }
}

fn letter_matrix<'a, S>(g: &'a Generators<S>, id: &'a SparseMatrix<S>, letter: Letter) -> &'a SparseMatrix<S> {
    match letter {
        Letter::Id => id,
        Letter::Jplus => &g.jplus,
        Letter::Jminus => &g.jminus,
        Letter::J3 => &g.j3,
        Letter::QPlus => &g.qplus,
        Letter::QMinus => &g.qminus,
    }
}

/// Sum of the Kronecker products spelled by `words` on fundamental sites.
pub fn assemble<B: Backend>(words: &[TensorWord], n_sites: usize, backend: &B) -> Result<SparseMatrix<B::Scalar>> {
    let dim = chain_dim(n_sites)?;
    let g = generators(IrrepLabel::FUNDAMENTAL, backend)?;
    let id = SparseMatrix::identity(2);
    let mut triplets = Vec::new();
    for word in words {
        if word.len() != n_sites {
            return Err(Error::DimensionMismatch {
                expected: n_sites,
                found: word.len(),
            });
        }
        let mut term = SparseMatrix::identity(1);
        for letter in word {
            term = term.kron(letter_matrix(&g, &id, *letter));
        }
        triplets.extend(term.triplets().map(|(r, c, v)| (r, c, v.clone())));
    }
    Ok(SparseMatrix::from_triplets(dim, triplets))
}

/// Tensor words of the N-fold coproduct of a generator.
pub fn coproduct_words(generator: Generator, n_sites: usize, kind: CoproductKind) -> Vec<TensorWord> {
    use Letter::*;
    match generator {
        Generator::QPlus | Generator::QMinus => alloc::vec![alloc::vec![Letter::from(generator); n_sites]],
        Generator::J3 => (0..n_sites)
            .map(|i| (0..n_sites).map(|k| if k == i { J3 } else { Id }).collect())
            .collect(),
        Generator::Jplus | Generator::Jminus => (0..n_sites)
            .map(|i| {
                (0..n_sites)
                    .map(|k| match (k.cmp(&i), kind) {
                        (core::cmp::Ordering::Equal, _) => Letter::from(generator),
                        (_, CoproductKind::Undeformed) => Id,
                        (core::cmp::Ordering::Less, CoproductKind::Deformed) => QMinus,
                        (core::cmp::Ordering::Greater, CoproductKind::Deformed) => QPlus,
                    })
                    .collect()
            })
            .collect(),
    }
}

/// `Δ^(N)(generator)`: for `J±` the deformed kind carries `q^(-J3/2)` on
/// every site left of the active one and `q^(J3/2)` on every site right
/// of it.
pub fn delta_n<B: Backend>(
    generator: Generator,
    n_sites: usize,
    kind: CoproductKind,
    backend: &B,
) -> Result<ChainOperator<B::Scalar>> {
    let words = coproduct_words(generator, n_sites, kind);
    let matrix = assemble(&words, n_sites, backend)?;
    Ok(ChainOperator {
        n_sites,
        matrix,
        words: Some(words),
    })
}

/// Apply the two-site coproduct to the factor at 1-based `site`, turning
/// an operator on `N - 1` sites into one on `N` sites.
pub fn delta_insert<B: Backend>(
    op: &ChainOperator<B::Scalar>,
    site: usize,
    kind: CoproductKind,
    backend: &B,
) -> Result<ChainOperator<B::Scalar>> {
    let words = op.words.as_ref().ok_or(Error::MissingWordDecomposition)?;
    if site == 0 || site > op.n_sites {
        return Err(Error::IndexOutOfRange {
            index: site,
            n: op.n_sites,
        });
    }
    let n_sites = op.n_sites + 1;
    let mut out = Vec::new();
    for word in words {
        for pair in word[site - 1].coproduct(kind) {
            let mut w = Vec::with_capacity(n_sites);
            w.extend_from_slice(&word[..site - 1]);
            w.extend_from_slice(&pair);
            w.extend_from_slice(&word[site..]);
            out.push(w);
        }
    }
    let matrix = assemble(&out, n_sites, backend)?;
    Ok(ChainOperator {
        n_sites,
        matrix,
        words: Some(out),
    })
}

/// Diagonal `f(2 J3)` on the chain.
pub(crate) fn j3_function<S: Scalar>(
    n_sites: usize,
    f: impl Fn(i64) -> Result<S>,
) -> Result<SparseMatrix<S>> {
    let dim = chain_dim(n_sites)?;
    let entries = (0..dim)
        .map(|idx| f(two_j3_of(idx, n_sites)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::diagonal(entries))
}

/// `Δ(J+) Δ(J-) + [Δ(J3)]_q [Δ(J3) - 1]_q` with the deformed coproduct.
///
/// Exact only for even `N`: odd chains have half-integer `J3` and the
/// diagonal leaves the ring.
pub fn chain_casimir<B: Backend>(n_sites: usize, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    let plus = delta_n(Generator::Jplus, n_sites, CoproductKind::Deformed, backend)?;
    let minus = delta_n(Generator::Jminus, n_sites, CoproductKind::Deformed, backend)?;
    let diag = j3_function(n_sites, |m| {
        Ok(backend.half_q_number(m)?.times(&backend.half_q_number(m - 2)?))
    })?;
    ChainOperator::from_matrix(n_sites, plus.matrix.times(&minus.matrix)?.plus(&diag)?)
}

/// `(q^(1/2) - q^(-1/2))^2` times [`chain_casimir`]. Lies in the ring for
/// every `N`, so exact odd chains can be checked through it.
pub fn chain_casimir_cleared<B: Backend>(n_sites: usize, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    let plus = delta_n(Generator::Jplus, n_sites, CoproductKind::Deformed, backend)?;
    let minus = delta_n(Generator::Jminus, n_sites, CoproductKind::Deformed, backend)?;
    let diag = j3_function(n_sites, |m| Ok(cleared_q_number(m, backend).times(&cleared_q_number(m - 2, backend))))?;
    let gap = cleared_q_number(2, backend);
    let ladder = plus.matrix.times(&minus.matrix)?.scale(&gap.times(&gap));
    ChainOperator::from_matrix(n_sites, ladder.plus(&diag)?)
}

/// `[2 Δ(J3)]_q` as a chain diagonal.
pub fn chain_two_j3_q_number<B: Backend>(n_sites: usize, backend: &B) -> Result<SparseMatrix<B::Scalar>> {
    let dim = chain_dim(n_sites)?;
    Ok(two_j3_q_number((0..dim).map(|i| two_j3_of(i, n_sites)), backend))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::{Exact, Numeric, QScalar};

    #[test]
    fn two_site_raising_on_ground() {
        let d = delta_n(Generator::Jplus, 2, CoproductKind::Deformed, &Exact::new()).unwrap();
        let v = d.apply(&[QScalar::zero(), QScalar::zero(), QScalar::zero(), QScalar::one()]).unwrap();
        assert_eq!(v, alloc::vec![QScalar::zero(), QScalar::s_pow(-1), QScalar::s_pow(1), QScalar::zero()]);
    }

    #[test]
    fn j3_coproduct_is_weight() {
        let d = delta_n(Generator::J3, 3, CoproductKind::Deformed, &Exact::new()).unwrap();
        for i in 0..8 {
            assert_eq!(d.get(i, i), QScalar::from_ratio(two_j3_of(i, 3), 2));
        }
        assert!(d.is_diagonal());
    }

    #[test]
    fn raising_has_expected_sparsity() {
        for n in 1..=6 {
            let d = delta_n(Generator::Jplus, n, CoproductKind::Deformed, &Numeric::new(2.0).unwrap()).unwrap();
            assert_eq!(d.nnz(), n << (n - 1));
        }
    }

    #[test]
    fn deformation_vanishes_at_q_one() {
        let b = Numeric::new(1.0).unwrap();
        for g in [Generator::Jplus, Generator::Jminus, Generator::J3] {
            let a = delta_n(g, 4, CoproductKind::Deformed, &b).unwrap();
            let c = delta_n(g, 4, CoproductKind::Undeformed, &b).unwrap();
            assert_eq!(a.matrix(), c.matrix());
        }
    }

    #[test]
    fn insertion_matches_direct_coproduct() {
        let b = Exact::new();
        for kind in [CoproductKind::Deformed, CoproductKind::Undeformed] {
            for g in [Generator::Jplus, Generator::Jminus, Generator::J3, Generator::QPlus] {
                for n in 2..=5 {
                    let lower = delta_n(g, n - 1, kind, &b).unwrap();
                    let direct = delta_n(g, n, kind, &b).unwrap();
                    for site in 1..n {
                        let ins = delta_insert(&lower, site, kind, &b).unwrap();
                        assert_eq!(ins.matrix(), direct.matrix(), "{g:?} n={n} site={site}");
                    }
                }
            }
        }
    }

    #[test]
    fn insertion_requires_words() {
        let b = Exact::new();
        let op = ChainOperator::<QScalar>::identity(2).unwrap();
        assert_eq!(
            delta_insert(&op, 1, CoproductKind::Deformed, &b),
            Err(Error::MissingWordDecomposition)
        );
        let d = delta_n(Generator::J3, 2, CoproductKind::Deformed, &b).unwrap();
        assert!(delta_insert(&d, 3, CoproductKind::Deformed, &b).is_err());
    }

    #[test]
    fn cleared_casimir_matches_at_even_n() {
        let b = Exact::new();
        let gap = cleared_q_number(2, &b);
        let full = chain_casimir(4, &b).unwrap();
        let cleared = chain_casimir_cleared(4, &b).unwrap();
        assert_eq!(full.matrix().scale(&(&gap * &gap)), *cleared.matrix());
        assert!(chain_casimir(3, &b).is_err());
        assert!(chain_casimir_cleared(3, &b).is_ok());
    }

    #[test]
    fn zero_sites_rejected() {
        assert_eq!(
            delta_n(Generator::J3, 0, CoproductKind::Deformed, &Exact::new()).unwrap_err(),
            Error::ZeroSites
        );
    }

    #[test]
    fn casimir_on_ground_state() {
        for n in 1..=6usize {
            let c = chain_casimir(n, &Numeric::new(1.0).unwrap()).unwrap();
            let last = (1 << n) - 1;
            let j = n as f64 / 2.0;
            assert!((c.get(last, last) - j * (j + 1.0)).abs() < 1e-12);
            assert_eq!(c.row(last).len(), 1);
        }
        let b = Numeric::new(2.0).unwrap();
        let c = chain_casimir(2, &b).unwrap();
        let want = b.half_q_number(2).unwrap() * b.half_q_number(4).unwrap();
        assert!((c.get(3, 3) - want).abs() < 1e-12);
        let site = crate::algebra::casimir(IrrepLabel::FUNDAMENTAL, &b).unwrap();
        assert!(chain_casimir(1, &b).unwrap().distance(&site).unwrap() < 1e-14);
    }

    #[test]
    fn exact_casimir_only_for_even_chains() {
        assert!(chain_casimir(2, &Exact::new()).is_ok());
        assert!(matches!(chain_casimir(3, &Exact::new()), Err(Error::OutsideRing(_))));
    }
}
