//! The fundamental R-matrix, its site embeddings and the Hecke generators
//! `A_i = q^(1/4) W_i R_i`.

use alloc::vec::Vec;

use crate::algebra::{generators, IrrepLabel};
use crate::coproduct::{chain_dim, delta_n, ChainOperator, CoproductKind, Generator};
use crate::dicke::q_dicke;
use crate::error::{Error, Result};
use crate::linalg::{real_eigenvalues, to_dmatrix};
use crate::qscalar::{Backend, Numeric, QScalar, Scalar};
use crate::report::{Check, VerificationReport};
use crate::sparse::{vector_distance, SparseMatrix};
use crate::symgroup::{perm_rep, Permutation};

/// Numeric tolerance for identities that involve only a few products.
pub const TOLERANCE: f64 = 1e-12;

/// Hecke parameter `alpha = q^(1/2) - q^(-1/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeckeParams<S> {
    pub alpha: S,
}

impl<S: Scalar> HeckeParams<S> {
    pub fn new<B: Backend<Scalar = S>>(backend: &B) -> Self {
        Self {
            alpha: backend.quarter_power(2).minus(&backend.quarter_power(-2)),
        }
    }
}

fn spin_sign(bit: usize) -> i32 {
    1 - 2 * bit as i32
}

/// `q^(J3 ⊗ J3)` on two fundamental sites.
fn cartan_factor<B: Backend>(backend: &B, sign: i32) -> SparseMatrix<B::Scalar> {
    SparseMatrix::diagonal(
        (0..4)
            .map(|idx| backend.quarter_power(sign * spin_sign(idx >> 1) * spin_sign(idx & 1)))
            .collect(),
    )
}

/// `(q^(J3/2) J+) ⊗ (q^(-J3/2) J-)`, the only surviving term of the series.
fn ladder_term<B: Backend>(backend: &B) -> Result<SparseMatrix<B::Scalar>> {
    let g = generators(IrrepLabel::FUNDAMENTAL, backend)?;
    let left = g.qplus.times(&g.jplus)?;
    let right = g.qminus.times(&g.jminus)?;
    Ok(left.kron(&right))
}

fn one_minus_q_inverse<B: Backend>(backend: &B) -> B::Scalar {
    backend.lift(&(&QScalar::one() - &QScalar::s_pow(-4)))
}

/// `R = q^(J3⊗J3) (1 + (1 - q^-1) (q^(J3/2) J+) ⊗ (q^(-J3/2) J-))`,
/// the universal series truncated by `(J+)^2 = 0`.
pub fn r_matrix_fundamental<B: Backend>(backend: &B) -> Result<SparseMatrix<B::Scalar>> {
    let correction = ladder_term(backend)?.scale(&one_minus_q_inverse(backend));
    let series = SparseMatrix::identity(4).plus(&correction)?;
    cartan_factor(backend, 1).times(&series)
}

/// `R^-1 = (1 - (1 - q^-1) E) q^(-J3⊗J3)`, using `E^2 = 0`.
pub fn r_matrix_fundamental_inverse<B: Backend>(backend: &B) -> Result<SparseMatrix<B::Scalar>> {
    let correction = ladder_term(backend)?.scale(&one_minus_q_inverse(backend));
    let series = SparseMatrix::identity(4).minus(&correction)?;
    series.times(&cartan_factor(backend, -1))
}

fn embed<S: Scalar>(two_site: &SparseMatrix<S>, i: usize, n: usize) -> Result<ChainOperator<S>> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    chain_dim(n)?;
    let left = SparseMatrix::identity(1 << (i - 1));
    let right = SparseMatrix::identity(1 << (n - i - 1));
    ChainOperator::from_matrix(n, left.kron(two_site).kron(&right))
}

/// `R` acting on sites `i, i + 1` of an `n`-site chain.
pub fn r_matrix_site<B: Backend>(i: usize, n: usize, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    embed(&r_matrix_fundamental(backend)?, i, n)
}

pub fn r_matrix_site_inverse<B: Backend>(i: usize, n: usize, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    embed(&r_matrix_fundamental_inverse(backend)?, i, n)
}

/// Classical swap `W_i`.
pub fn swap<B: Backend>(i: usize, n: usize, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    perm_rep(&Permutation::transposition(i, n)?, backend)
}

/// `W_i R_i`.
pub fn braided_r<B: Backend>(i: usize, n: usize, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    swap(i, n, backend)?.compose(&r_matrix_site(i, n, backend)?)
}

/// `A_i = q^(1/4) W_i R_i`.
pub fn hecke_generator<B: Backend>(i: usize, n: usize, backend: &B) -> Result<ChainOperator<B::Scalar>> {
    Ok(braided_r(i, n, backend)?.scaled(&backend.quarter_power(1)))
}

/// `R_13` on three sites in the two conjugated forms `W_2 R_12 W_2` and
/// `W_1 R_23 W_1`.
pub fn r13_forms<B: Backend>(backend: &B) -> Result<[ChainOperator<B::Scalar>; 2]> {
    let w1 = swap(1, 3, backend)?;
    let w2 = swap(2, 3, backend)?;
    let a = w2.compose(&r_matrix_site(1, 3, backend)?)?.compose(&w2)?;
    let b = w1.compose(&r_matrix_site(2, 3, backend)?)?.compose(&w1)?;
    Ok([a, b])
}

fn residual<S: Scalar>(a: &ChainOperator<S>, b: &ChainOperator<S>) -> Result<f64> {
    a.matrix().relative_distance(b.matrix())
}

/// Yang-Baxter in both the `R_12 R_13 R_23` and the braid form.
pub fn verify_yang_baxter<B: Backend>(backend: &B) -> VerificationReport {
    let tag = backend.tag();
    let mut report = VerificationReport::new();
    let forms = r13_forms(backend);
    report.push(Check::from_result(
        "hecke.r13_conjugation_forms_agree",
        tag,
        forms.as_ref().map_err(Clone::clone).and_then(|[a, b]| residual(a, b)),
        TOLERANCE,
    ));
    let ybe = (|| {
        let [r13, _] = forms.clone()?;
        let r12 = r_matrix_site(1, 3, backend)?;
        let r23 = r_matrix_site(2, 3, backend)?;
        let lhs = r12.compose(&r13)?.compose(&r23)?;
        let rhs = r23.compose(&r13)?.compose(&r12)?;
        residual(&lhs, &rhs)
    })();
    report.push(Check::from_result("hecke.yang_baxter", tag, ybe, TOLERANCE));
    let braid = (|| {
        let a = braided_r(1, 3, backend)?;
        let b = braided_r(2, 3, backend)?;
        residual(&a.compose(&b)?.compose(&a)?, &b.compose(&a)?.compose(&b)?)
    })();
    report.push(Check::from_result("hecke.yang_baxter_braid_form", tag, braid, TOLERANCE));
    report
}

/// Eigenvalues of `W R` on two sites, ascending (numeric only).
pub fn braided_r_spectrum(backend: &Numeric) -> Result<Vec<f64>> {
    let wr = braided_r(1, 2, backend)?;
    real_eigenvalues(&to_dmatrix(wr.matrix()), 1e-9)
}

/// Largest deviation of a computed spectrum from an expected multiset.
pub fn spectrum_residual(computed: &[f64], expected: &[f64]) -> f64 {
    let mut want = expected.to_vec();
    want.sort_by(f64::total_cmp);
    if want.len() != computed.len() {
        return f64::INFINITY;
    }
    computed
        .iter()
        .zip(&want)
        .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
        .fold(0.0, f64::max)
}

const LADDER: [Generator; 3] = [Generator::Jplus, Generator::Jminus, Generator::J3];

/// All Hecke-algebra identities on an `n`-site chain.
pub fn verify_hecke<B: Backend>(n: usize, backend: &B, tolerance: f64) -> VerificationReport {
    let tag = backend.tag();
    let mut report = VerificationReport::new();
    let params = HeckeParams::new(backend);
    let gens: Result<Vec<_>> = (1..n).map(|i| hecke_generator(i, n, backend)).collect();
    let gens = match gens {
        Ok(g) => g,
        Err(e) => {
            report.push(Check::from_result("hecke.generators", tag, Err(e), tolerance));
            return report;
        }
    };
    let identity = ChainOperator::identity(n);

    let quadratic = (|| {
        let id = identity.clone()?;
        let mut worst = 0.0f64;
        for a in &gens {
            let rhs = a.scaled(&params.alpha).sum(&id)?;
            worst = worst.max(residual(&a.compose(a)?, &rhs)?);
        }
        Ok(worst)
    })();
    report.push(Check::from_result("hecke.quadratic_relation", tag, quadratic, tolerance));

    let braid = (|| {
        let mut worst = 0.0f64;
        for w in gens.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            worst = worst.max(residual(&a.compose(b)?.compose(a)?, &b.compose(a)?.compose(b)?)?);
        }
        Ok(worst)
    })();
    report.push(Check::from_result("hecke.braid", tag, braid, tolerance));

    let distant = (|| {
        let mut worst = 0.0f64;
        for (i, a) in gens.iter().enumerate() {
            for b in gens.iter().skip(i + 2) {
                worst = worst.max(residual(&a.compose(b)?, &b.compose(a)?)?);
            }
        }
        Ok(worst)
    })();
    report.push(Check::from_result("hecke.distant_commutation", tag, distant, tolerance));

    let commutant = (|| {
        let mut worst = 0.0f64;
        for g in LADDER {
            let d = delta_n(g, n, CoproductKind::Deformed, backend)?;
            for a in &gens {
                worst = worst.max(residual(&a.compose(&d)?, &d.compose(a)?)?);
            }
        }
        Ok(worst)
    })();
    report.push(Check::from_result("hecke.commutant", tag, commutant, tolerance));

    let intertwiner = (|| {
        let mut worst = 0.0f64;
        for i in 1..n {
            let w = swap(i, n, backend)?;
            let r = r_matrix_site(i, n, backend)?;
            let r_inv = r_matrix_site_inverse(i, n, backend)?;
            worst = worst.max(residual(&r.compose(&r_inv)?, &identity.clone()?)?);
            for g in LADDER {
                let d = delta_n(g, n, CoproductKind::Deformed, backend)?;
                let flipped = w.compose(&d)?.compose(&w)?;
                let conjugated = r.compose(&d)?.compose(&r_inv)?;
                worst = worst.max(residual(&flipped, &conjugated)?);
            }
        }
        Ok(worst)
    })();
    report.push(Check::from_result("hecke.r_matrix_intertwiner", tag, intertwiner, tolerance));

    let trivial = (|| {
        let eigen = backend.quarter_power(2);
        let mut worst = 0.0f64;
        for m in 0..=n {
            let d = q_dicke(n, m, backend)?;
            for a in &gens {
                let image = a.apply(&d.amplitudes)?;
                let want: Vec<_> = d.amplitudes.iter().map(|x| x.times(&eigen)).collect();
                worst = worst.max(vector_distance(&image, &want));
            }
        }
        Ok(worst)
    })();
    report.push(Check::from_result("hecke.q_dicke_eigenvalue", tag, trivial, tolerance));

    let characteristic = (|| {
        let a = hecke_generator(1, 2, backend)?;
        let id = ChainOperator::identity(2)?;
        let shift_up = id.scaled(&backend.quarter_power(2).negated());
        let shift_down = id.scaled(&backend.quarter_power(-2));
        let product = a.sum(&shift_up)?.compose(&a.sum(&shift_down)?)?;
        Ok(product.max_magnitude())
    })();
    report.push(Check::from_result(
        "hecke.characteristic_polynomial",
        tag,
        characteristic,
        tolerance,
    ));
    report
}

/// Compare the two-site spectra of `W R` and `A` with their closed forms.
pub fn verify_spectrum(backend: &Numeric, tolerance: f64) -> VerificationReport {
    let q = backend.q();
    let tag = backend.tag();
    let mut report = VerificationReport::new();
    let s = libm::pow(q, 0.25);
    let wr = braided_r_spectrum(backend)
        .map(|ev| spectrum_residual(&ev, &[s, s, s, -1.0 / (s * s * s)]));
    report.push(Check::from_result("hecke.braided_r_spectrum", tag, wr, tolerance));
    let a = hecke_generator(1, 2, backend)
        .and_then(|a| real_eigenvalues(&to_dmatrix(a.matrix()), 1e-9))
        .map(|ev| spectrum_residual(&ev, &[s * s, s * s, s * s, -1.0 / (s * s)]));
    report.push(Check::from_result("hecke.generator_spectrum", tag, a, tolerance));
    report
}
