//! Permutations of the chain sites, q-transpositions and the
//! q-representation of the symmetric group.
//!
//! `W(σ)` acts by `W(σ)|ψ_1 … ψ_N> = |ψ_σ(1) … ψ_σ(N)>`. With that action
//! `W(σ)W(σ') = W(σσ')` holds for the left-to-right product
//! `(σσ')(k) = σ'(σ(k))`, which is the product implemented here.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::coproduct::{chain_dim, site_bit, ChainOperator, SPIN_UP};
use crate::error::{Error, Result};
use crate::qscalar::{Backend, Scalar};
use crate::sparse::SparseMatrix;

/// Element of `S_N`, stored as 0-based images together with a reduced word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    reduced_word: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images_one_based())
    }
}

impl Permutation {
    /// From 0-based images; rejects anything that is not a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &k in &images {
            if k >= n || seen[k] {
                return Err(Error::InvalidPermutation(alloc::format!("{images:?} is not a bijection")));
            }
            seen[k] = true;
        }
        let reduced_word = bubble_word(&images);
        Ok(Self { images, reduced_word })
    }

    /// From 1-based images, the serialized form.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero_based = images
            .iter()
            .map(|&k| k.checked_sub(1).ok_or_else(|| Error::InvalidPermutation("images are 1-based".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(zero_based)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
            reduced_word: Vec::new(),
        }
    }

    /// Adjacent transposition `t_i` swapping sites `i` and `i + 1` (1-based).
    pub fn transposition(i: usize, n: usize) -> Result<Self> {
        check_adjacent(i, n)?;
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Ok(Self {
            images,
            reduced_word: alloc::vec![i],
        })
    }

    /// Order-reversing permutation `k -> N + 1 - k`.
    pub fn reversal(n: usize) -> Self {
        Self::new((0..n).rev().collect()).expect("reversal is a bijection")
    }

    /// Permutation with `W(σ) = W(t_{a_M}) … W(t_{a_1})` for the word
    /// `[a_1, …, a_M]`.
    pub fn from_word(word: &[usize], n: usize) -> Result<Self> {
        Ok(crossing_counts(word, n)?.permutation)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|k| k + 1).collect()
    }

    /// A reduced word, letters are 1-based transposition indices applied
    /// left to right.
    pub fn reduced_word(&self) -> &[usize] {
        &self.reduced_word
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| k == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.len()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v] = k;
        }
        Self::new(inv).expect("inverse of a bijection")
    }

    /// Number of inversions, the length of every reduced word.
    pub fn inversions(&self) -> usize {
        let p = &self.images;
        (0..p.len())
            .flat_map(|a| (a + 1..p.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| p[a] > p[b])
            .count()
    }

    /// Every reduced word of this permutation.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        fn walk(arrangement: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, suffix: &mut Vec<usize>) {
            let descents: Vec<usize> = (0..arrangement.len().saturating_sub(1))
                .filter(|&k| arrangement[k] > arrangement[k + 1])
                .collect();
            if descents.is_empty() {
                out.push(suffix.iter().rev().copied().collect());
                return;
            }
            for k in descents {
                arrangement.swap(k, k + 1);
                suffix.push(k + 1);
                walk(arrangement, out, suffix);
                suffix.pop();
                arrangement.swap(k, k + 1);
            }
        }
        let mut out = Vec::new();
        walk(&mut self.images.clone(), &mut out, &mut Vec::new());
        out
    }

    /// A reduced word built by peeling off a uniformly chosen descent at
    /// each step.
    pub fn random_reduced_word<R: rand::Rng>(&self, rng: &mut R) -> Vec<usize> {
        let mut arrangement = self.images.clone();
        let mut suffix = Vec::new();
        loop {
            let descents: Vec<usize> = (0..arrangement.len().saturating_sub(1))
                .filter(|&k| arrangement[k] > arrangement[k + 1])
                .collect();
            if descents.is_empty() {
                suffix.reverse();
                return suffix;
            }
            let k = descents[rng.gen_range(0..descents.len())];
            arrangement.swap(k, k + 1);
            suffix.push(k + 1);
        }
    }

    /// All `N!` permutations in lexicographic order of their images.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self::new(current.clone()).expect("bijection"));
            if !next_permutation(&mut current) {
                return out;
            }
        }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// `(self * rhs)(k) = rhs(self(k))`, so that `W` is a homomorphism.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.len(), rhs.len(), "permutations of different degree");
        Permutation::new(self.images.iter().map(|&k| rhs.images[k]).collect()).expect("bijection")
    }
}

fn check_adjacent(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Bubble-sort the arrangement back to the identity; the swaps read
/// backwards build it up from the identity.
fn bubble_word(images: &[usize]) -> Vec<usize> {
    let mut a = images.to_vec();
    let mut swaps = Vec::new();
    for pass in 0..a.len() {
        for k in 0..a.len().saturating_sub(pass + 1) {
            if a[k] > a[k + 1] {
                a.swap(k, k + 1);
                swaps.push(k + 1);
            }
        }
    }
    swaps.reverse();
    swaps
}

/// A strand diagram: the word of crossings and the signed crossing count
/// of the strand that ends at each position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingDiagram {
    pub strands: usize,
    pub word: Vec<usize>,
    /// `m_counts[i]`: upper minus lower crossings of the strand ending at
    /// position `i` (0-based).
    pub m_counts: Vec<i64>,
    pub permutation: Permutation,
}

/// Follow the strands through the word. Each letter `i` swaps positions `i`
/// and `i + 1`; the strand moving up to `i + 1` passes over (+1), the one
/// moving down to `i` passes under (-1).
pub fn crossing_counts(word: &[usize], n: usize) -> Result<CrossingDiagram> {
    if n == 0 {
        return Err(Error::ZeroSites);
    }
    let mut origin: Vec<usize> = (0..n).collect();
    let mut counts = alloc::vec![0i64; n];
    for &i in word {
        check_adjacent(i, n)?;
        origin.swap(i - 1, i);
        counts.swap(i - 1, i);
        counts[i] += 1;
        counts[i - 1] -= 1;
    }
    let permutation = Permutation::new(origin)?;
    Ok(CrossingDiagram {
        strands: n,
        word: word.to_vec(),
        m_counts: counts,
        permutation,
    })
}

/// `±1` for the spin at 1-based `site` of basis state `index`.
fn spin_sign(index: usize, site: usize, n: usize) -> i32 {
    if site_bit(index, site, n) == SPIN_UP {
        1
    } else {
        -1
    }
}

/// Classical permutation operator `W(σ)`.
pub fn perm_rep<B: Backend>(sigma: &Permutation, _backend: &B) -> Result<ChainOperator<B::Scalar>> {
    let n = sigma.len();
    let dim = chain_dim(n)?;
    let triplets = (0..dim).map(|col| {
        let row = (0..n).fold(0usize, |acc, k| (acc << 1) | site_bit(col, sigma.images[k] + 1, n));
        (row, col, B::Scalar::one())
    });
    ChainOperator::from_matrix(n, SparseMatrix::from_triplets(dim, triplets))
}

/// `C^q_i = q^(-J3/2)` on site `i` and `q^(J3/2)` on site `i + 1`.
pub fn local_twist<B: Backend>(i: usize, n: usize, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    check_adjacent(i, n)?;
    diagonal_from_exponents(n, backend, |idx| spin_sign(idx, i + 1, n) - spin_sign(idx, i, n))
}

fn diagonal_from_exponents<B: Backend>(
    n: usize,
    backend: &B,
    quarter_exponent: impl Fn(usize) -> i32,
) -> Result<ChainOperator<B::Scalar>> {
    let dim = chain_dim(n)?;
    let entries = (0..dim).map(|idx| backend.quarter_power(quarter_exponent(idx))).collect();
    ChainOperator::from_matrix(n, SparseMatrix::diagonal(entries))
}

/// `W^q_i = C^q_i W_i`.
pub fn q_transposition<B: Backend>(i: usize, n: usize, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    let swap = perm_rep(&Permutation::transposition(i, n)?, backend)?;
    local_twist(i, n, backend)?.compose(&swap)
}

/// `W^q_{a_M} … W^q_{a_1}` for the word `[a_1, …, a_M]`, multiplied out.
pub fn q_transposition_product<B: Backend>(
    word: &[usize],
    n: usize,
    backend: &B,
) -> Result<ChainOperator<B::Scalar>> {
    let mut acc = ChainOperator::identity(n)?;
    for &i in word {
        acc = q_transposition(i, n, backend)?.compose(&acc)?;
    }
    Ok(acc)
}

/// `C(σ) = ⊗_i q^(J3 M_i / 2)` from a diagram's crossing counts.
pub fn c_sigma<B: Backend>(diagram: &CrossingDiagram, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    let n = diagram.strands;
    diagonal_from_exponents(n, backend, |idx| {
        diagram
            .m_counts
            .iter()
            .enumerate()
            .map(|(k, &m)| spin_sign(idx, k + 1, n) * m as i32)
            .sum()
    })
}

/// `W^q(σ) = C(σ) W(σ)` with `C(σ)` read off the reduced word's diagram.
pub fn q_perm_rep<B: Backend>(sigma: &Permutation, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    q_perm_rep_with_word(sigma, sigma.reduced_word(), backend)
}

/// `C(σ) W(σ)` using a caller-supplied word, which must spell `σ`.
pub fn q_perm_rep_with_word<B: Backend>(
    sigma: &Permutation,
    word: &[usize],
    backend: &B,
) -> Result<ChainOperator<B::Scalar>> {
    let diagram = crossing_counts(word, sigma.len())?;
    if diagram.permutation != *sigma {
        return Err(Error::InvalidPermutation(alloc::format!("word {word:?} does not spell {sigma:?}")));
    }
    c_sigma(&diagram, backend)?.compose(&perm_rep(sigma, backend)?)
}

/// `C(τ) = q^(-½ Σ_i (N + 1 - 2i) J3_i)`.
pub fn c_tau<B: Backend>(n: usize, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    diagonal_from_exponents(n, backend, |idx| {
        -(1..=n)
            .map(|i| (n as i32 + 1 - 2 * i as i32) * spin_sign(idx, i, n))
            .sum::<i32>()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::{Exact, Numeric, QScalar};
    use proptest::prelude::*;

    fn s(k: i32) -> QScalar {
        QScalar::s_pow(k)
    }

    #[test]
    fn two_site_q_transposition() {
        let w = q_transposition(1, 2, &Exact::new()).unwrap();
        let z = QScalar::zero;
        let one = QScalar::one;
        let want = SparseMatrix::from_dense(&[
            alloc::vec![one(), z(), z(), z()],
            alloc::vec![z(), z(), s(-2), z()],
            alloc::vec![z(), s(2), z(), z()],
            alloc::vec![z(), z(), z(), one()],
        ]);
        assert_eq!(*w.matrix(), want);
    }

    #[test]
    fn transposition_matrix_swaps_mixed_states() {
        let w = perm_rep(&Permutation::transposition(1, 2).unwrap(), &Numeric::new(1.0).unwrap()).unwrap();
        assert_eq!(w.get(1, 2), 1.0);
        assert_eq!(w.get(2, 1), 1.0);
        assert_eq!(w.get(0, 0), 1.0);
        assert_eq!(w.nnz(), 4);
    }

    #[test]
    fn reversal_crossings() {
        let d = crossing_counts(&[1, 2, 1], 3).unwrap();
        assert_eq!(d.m_counts, alloc::vec![-2, 0, 2]);
        assert_eq!(d.permutation, Permutation::reversal(3));
        let d = crossing_counts(&[2, 2], 3).unwrap();
        assert_eq!(d.m_counts, alloc::vec![0, 0, 0]);
        assert!(d.permutation.is_identity());
        assert!(crossing_counts(&[], 4).unwrap().m_counts.iter().all(|&m| m == 0));
    }

    #[test]
    fn reversal_twist_is_c_tau() {
        let b = Exact::new();
        for n in 1..=5 {
            let tau = Permutation::reversal(n);
            let d = crossing_counts(tau.reduced_word(), n).unwrap();
            assert_eq!(c_sigma(&d, &b).unwrap(), c_tau(n, &b).unwrap());
        }
    }

    #[test]
    fn c_tau_two_sites() {
        let c = c_tau(2, &Exact::new()).unwrap();
        assert_eq!(c.get(0, 0), QScalar::one());
        assert_eq!(c.get(1, 1), s(-2));
        assert_eq!(c.get(2, 2), s(2));
        assert_eq!(c.get(3, 3), QScalar::one());
        assert!(c_tau(1, &Exact::new()).unwrap().is_diagonal());
        assert_eq!(c_tau(1, &Exact::new()).unwrap(), ChainOperator::identity(1).unwrap());
    }

    #[test]
    fn reduced_words_spell_the_permutation() {
        for n in 1..=5 {
            for p in Permutation::all(n) {
                assert_eq!(p.reduced_word().len(), p.inversions());
                assert_eq!(Permutation::from_word(p.reduced_word(), n).unwrap(), p);
            }
        }
    }

    #[test]
    fn every_reduced_word_is_found() {
        let tau = Permutation::reversal(4);
        let words = tau.all_reduced_words();
        assert_eq!(words.len(), 16);
        for w in &words {
            assert_eq!(w.len(), 6);
            assert_eq!(Permutation::from_word(w, 4).unwrap(), tau);
        }
    }

    #[test]
    fn enumeration_has_factorial_size() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(1).len(), 1);
    }

    #[test]
    fn invalid_images_rejected() {
        assert!(Permutation::new(alloc::vec![0, 0]).is_err());
        assert!(Permutation::from_one_based(&[1, 3]).is_err());
        assert!(q_transposition(3, 3, &Exact::new()).is_err());
        assert!(q_transposition(0, 3, &Exact::new()).is_err());
    }

    #[test]
    fn closed_form_matches_product_for_all_words() {
        let b = Exact::new();
        for p in Permutation::all(4) {
            let closed = q_perm_rep(&p, &b).unwrap();
            for w in p.all_reduced_words() {
                assert_eq!(q_transposition_product(&w, 4, &b).unwrap(), closed, "{p:?} {w:?}");
            }
        }
    }

    fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn classical_rep_is_homomorphism(a in permutation(5), b in permutation(5)) {
            let bk = Numeric::new(1.0).unwrap();
            let lhs = perm_rep(&a, &bk).unwrap().compose(&perm_rep(&b, &bk).unwrap()).unwrap();
            prop_assert_eq!(lhs, perm_rep(&(&a * &b), &bk).unwrap());
            let inv = perm_rep(&a, &bk).unwrap().compose(&perm_rep(&a.inverse(), &bk).unwrap()).unwrap();
            prop_assert_eq!(inv, ChainOperator::identity(5).unwrap());
        }

        #[test]
        fn q_rep_is_homomorphism(a in permutation(4), b in permutation(4)) {
            let bk = Exact::new();
            let lhs = q_perm_rep(&a, &bk).unwrap().compose(&q_perm_rep(&b, &bk).unwrap()).unwrap();
            prop_assert_eq!(lhs, q_perm_rep(&(&a * &b), &bk).unwrap());
        }
    }
}
