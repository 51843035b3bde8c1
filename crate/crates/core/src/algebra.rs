//! Single-site representations of `U_q(su(2))`.
//!
//! Basis vectors are ordered by descending `j3`, so for spin 1/2 the first
//! basis vector is `|up> = (1, 0)` and the second `|down> = (0, 1)`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qscalar::{q_number, Backend, Scalar};
use crate::report::{Check, VerificationReport};
use crate::sparse::SparseMatrix;

pub type SiteOperator<S> = SparseMatrix<S>;

/// Spin label stored as `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrrepLabel {
    pub two_j: u32,
}

impl IrrepLabel {
    pub const FUNDAMENTAL: IrrepLabel = IrrepLabel { two_j: 1 };

    pub fn new(two_j: u32) -> Self {
        Self { two_j }
    }

    pub fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// `2 j3` of the basis vector at `index`.
    pub fn two_j3(self, index: usize) -> i64 {
        i64::from(self.two_j) - 2 * index as i64
    }

    pub fn j(self) -> f64 {
        f64::from(self.two_j) / 2.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generators<S> {
    pub jplus: SiteOperator<S>,
    pub jminus: SiteOperator<S>,
    pub j3: SiteOperator<S>,
    /// `q^(J3/2)`
    pub qplus: SiteOperator<S>,
    /// `q^(-J3/2)`
    pub qminus: SiteOperator<S>,
}

fn check_exact<B: Backend>(label: IrrepLabel, backend: &B) -> Result<()> {
    if backend.is_exact() && label.two_j > 1 {
        return Err(Error::OutsideRing(format!(
            "spin {}/2 generators need square roots of q-numbers",
            label.two_j
        )));
    }
    Ok(())
}

/// `J+`, `J-`, `J3`, `q^(±J3/2)` in the spin-`j` irrep.
///
/// `J± |j, m> = sqrt([j ∓ m]_q [j ± m + 1]_q) |j, m ± 1>`.
pub fn generators<B: Backend>(label: IrrepLabel, backend: &B) -> Result<Generators<B::Scalar>> {
    check_exact(label, backend)?;
    let dim = label.dim();
    let two_j = i64::from(label.two_j);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for a in 0..dim {
        let a_i = a as i64;
        if a > 0 {
            let w = &q_number(a_i) * &q_number(two_j - a_i + 1);
            plus.push((a - 1, a, backend.ring_sqrt(&w)?));
        }
        if a + 1 < dim {
            let w = &q_number(two_j - a_i) * &q_number(a_i + 1);
            minus.push((a + 1, a, backend.ring_sqrt(&w)?));
        }
    }
    let two_j3: Vec<i64> = (0..dim).map(|a| label.two_j3(a)).collect();
    Ok(Generators {
        jplus: SparseMatrix::from_triplets(dim, plus),
        jminus: SparseMatrix::from_triplets(dim, minus),
        j3: SparseMatrix::diagonal(two_j3.iter().map(|&m| B::Scalar::from_ratio(m, 2)).collect()),
        qplus: SparseMatrix::diagonal(two_j3.iter().map(|&m| backend.quarter_power(m as i32)).collect()),
        qminus: SparseMatrix::diagonal(two_j3.iter().map(|&m| backend.quarter_power(-m as i32)).collect()),
    })
}

/// `[j]_q [j+1]_q`, the Casimir eigenvalue on the spin-`j` irrep.
pub fn casimir_eigenvalue<B: Backend>(two_j: u32, backend: &B) -> Result<B::Scalar> {
    let two_j = i64::from(two_j);
    Ok(backend
        .half_q_number(two_j)?
        .times(&backend.half_q_number(two_j + 2)?))
}

/// Diagonal `f(J3)` where `f(m) = [m + shift_a/2]_q [m + shift_b/2]_q`.
fn q_number_product_diag<B: Backend>(
    two_j3: impl Iterator<Item = i64>,
    shift_a: i64,
    shift_b: i64,
    backend: &B,
) -> Result<SparseMatrix<B::Scalar>> {
    let entries = two_j3
        .map(|m| Ok(backend.half_q_number(m + shift_a)?.times(&backend.half_q_number(m + shift_b)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::diagonal(entries))
}

/// `C_q = J- J+ + [J3]_q [J3 + 1]_q`.
pub fn casimir<B: Backend>(label: IrrepLabel, backend: &B) -> Result<SiteOperator<B::Scalar>> {
    let g = generators(label, backend)?;
    let diag = q_number_product_diag((0..label.dim()).map(|a| label.two_j3(a)), 0, 2, backend)?;
    g.jminus.times(&g.jplus)?.plus(&diag)
}

/// The other ordering, `J+ J- + [J3]_q [J3 - 1]_q`.
pub fn casimir_raising_first<B: Backend>(label: IrrepLabel, backend: &B) -> Result<SiteOperator<B::Scalar>> {
    let g = generators(label, backend)?;
    let diag = q_number_product_diag((0..label.dim()).map(|a| label.two_j3(a)), 0, -2, backend)?;
    g.jplus.times(&g.jminus)?.plus(&diag)
}

/// `(q^(1/2) - q^(-1/2)) [two_x / 2]_q = s^two_x - s^-two_x`.
pub fn cleared_q_number<B: Backend>(two_x: i64, backend: &B) -> B::Scalar {
    let k = two_x as i32;
    backend.quarter_power(k).minus(&backend.quarter_power(-k))
}

/// `[2 J3]_q` as a diagonal matrix; always inside the ring since `2 J3` is
/// an integer.
pub fn two_j3_q_number<B: Backend>(two_j3: impl Iterator<Item = i64>, backend: &B) -> SparseMatrix<B::Scalar> {
    SparseMatrix::diagonal(two_j3.map(|m| backend.lift(&q_number(m))).collect())
}

/// Both Casimir orderings and the eigenvalue `[j][j+1]`. For half-integer
/// spin on the exact backend all three are multiplied by
/// `(q^(1/2) - q^(-1/2))^2`, which keeps them in the ring.
type CasimirForms<S> = (SiteOperator<S>, SiteOperator<S>, S);

fn casimir_forms<B: Backend>(label: IrrepLabel, g: &Generators<B::Scalar>, backend: &B) -> Result<CasimirForms<B::Scalar>> {
    match (casimir(label, backend), casimir_raising_first(label, backend), casimir_eigenvalue(label.two_j, backend)) {
        (Ok(c), Ok(c2), Ok(ev)) => return Ok((c, c2, ev)),
        (Err(Error::OutsideRing(_)), _, _) | (_, Err(Error::OutsideRing(_)), _) | (_, _, Err(Error::OutsideRing(_))) => {}
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return Err(e),
    }
    let gap = cleared_q_number(2, backend);
    let gap_sq = gap.times(&gap);
    let weights: Vec<i64> = (0..label.dim()).map(|a| label.two_j3(a)).collect();
    let cleared_diag = |shift: i64| {
        SparseMatrix::diagonal(
            weights
                .iter()
                .map(|&m| cleared_q_number(m, backend).times(&cleared_q_number(m + shift, backend)))
                .collect(),
        )
    };
    let c = g.jminus.times(&g.jplus)?.scale(&gap_sq).plus(&cleared_diag(2))?;
    let c2 = g.jplus.times(&g.jminus)?.scale(&gap_sq).plus(&cleared_diag(-2))?;
    let two_j = i64::from(label.two_j);
    let ev = cleared_q_number(two_j, backend).times(&cleared_q_number(two_j + 2, backend));
    Ok((c, c2, ev))
}

/// Checks the defining relations `[J3, J±] = ±J±`, `[J+, J-] = [2 J3]_q`,
/// Casimir centrality and the adjoint structure on one site.
pub fn verify_site_relations<B: Backend>(label: IrrepLabel, backend: &B) -> VerificationReport {
    const TOL: f64 = 1e-12;
    let tag = backend.tag();
    let mut report = VerificationReport::new();
    let g = match generators(label, backend) {
        Ok(g) => g,
        Err(e) => {
            report.push(Check::from_result("site.generators", tag, Err(e), TOL));
            return report;
        }
    };
    let name = |s: &str| format!("site(2j={}).{s}", label.two_j);

    let raise = g.j3.commutator(&g.jplus).and_then(|c| c.distance(&g.jplus));
    report.push(Check::from_result(name("[J3,J+]=J+"), tag, raise, TOL));
    let lower = g
        .j3
        .commutator(&g.jminus)
        .and_then(|c| c.distance(&g.jminus.scale(&B::Scalar::from_ratio(-1, 1))));
    report.push(Check::from_result(name("[J3,J-]=-J-"), tag, lower, TOL));
    let q2j3 = two_j3_q_number((0..label.dim()).map(|a| label.two_j3(a)), backend);
    let ladder = g.jplus.commutator(&g.jminus).and_then(|c| c.distance(&q2j3));
    report.push(Check::from_result(name("[J+,J-]=[2J3]_q"), tag, ladder, TOL));

    let adjoint = g.jplus.transpose().distance(&g.jminus);
    report.push(Check::from_result(name("J-=(J+)^T"), tag, adjoint, TOL));
    let selfadj = g.j3.transpose().distance(&g.j3);
    report.push(Check::from_result(name("J3 self-adjoint"), tag, selfadj, TOL));

    match casimir_forms(label, &g, backend) {
        Ok((c, c2, ev)) => {
            report.push(Check::from_result(name("casimir orderings agree"), tag, c.distance(&c2), TOL));
            let central = [&g.jplus, &g.jminus, &g.j3]
                .into_iter()
                .map(|x| c.commutator(x).map(|m| m.max_magnitude()))
                .try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)));
            report.push(Check::from_result(name("casimir central"), tag, central, TOL));
            let scalar = c.distance(&SparseMatrix::identity(label.dim()).scale(&ev));
            report.push(Check::from_result(name("casimir=[j][j+1]"), tag, scalar, TOL));
        }
        Err(e) => report.push(Check::from_result(name("casimir"), tag, Err(e), TOL)),
    }
    report
}

/// Classical spin-`j` matrices (the `q = 1` limit) as plain floats.
pub fn classical_generators(label: IrrepLabel) -> Generators<f64> {
    let dim = label.dim();
    let j = label.j();
    let m = |a: usize| label.two_j3(a) as f64 / 2.0;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for a in 0..dim {
        if a > 0 {
            plus.push((a - 1, a, libm::sqrt((j - m(a)) * (j + m(a) + 1.0))));
        }
        if a + 1 < dim {
            minus.push((a + 1, a, libm::sqrt((j + m(a)) * (j - m(a) + 1.0))));
        }
    }
    Generators {
        jplus: SparseMatrix::from_triplets(dim, plus),
        jminus: SparseMatrix::from_triplets(dim, minus),
        j3: SparseMatrix::diagonal((0..dim).map(m).collect()),
        qplus: SparseMatrix::identity(dim),
        qminus: SparseMatrix::identity(dim),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::{Exact, Numeric, QScalar};

    #[test]
    fn fundamental_is_undeformed() {
        let g = generators(IrrepLabel::FUNDAMENTAL, &Exact::new()).unwrap();
        let one = QScalar::one();
        assert_eq!(g.jplus, SparseMatrix::from_triplets(2, [(0, 1, one.clone())]));
        assert_eq!(g.jminus, SparseMatrix::from_triplets(2, [(1, 0, one)]));
        assert_eq!(
            g.j3,
            SparseMatrix::diagonal(alloc::vec![QScalar::from_ratio(1, 2), QScalar::from_ratio(-1, 2)])
        );
        assert_eq!(g.qplus, SparseMatrix::diagonal(alloc::vec![QScalar::s_pow(1), QScalar::s_pow(-1)]));
    }

    #[test]
    fn spin_one_entry() {
        let g = generators(IrrepLabel::new(2), &Numeric::new(2.0).unwrap()).unwrap();
        let want = libm::sqrt(libm::sqrt(2.0) + 1.0 / libm::sqrt(2.0));
        assert!((g.jplus.get(0, 1) - want).abs() < 1e-14);
        assert!((want - 1.456475).abs() < 1e-6);
    }

    #[test]
    fn exact_rejects_higher_spin() {
        assert!(matches!(generators(IrrepLabel::new(2), &Exact::new()), Err(Error::OutsideRing(_))));
        assert!(generators(IrrepLabel::new(0), &Exact::new()).is_ok());
    }

    #[test]
    fn casimir_values() {
        let c = casimir(IrrepLabel::FUNDAMENTAL, &Numeric::new(1.0).unwrap()).unwrap();
        assert_eq!(c, SparseMatrix::identity(2).scale(&0.75));

        let q: f64 = 4.0;
        let half = |x: f64| (q.powf(x / 2.0) - q.powf(-x / 2.0)) / (q.sqrt() - 1.0 / q.sqrt());
        let b = Numeric::new(q).unwrap();
        let c1 = casimir(IrrepLabel::FUNDAMENTAL, &b).unwrap();
        let c2 = casimir_raising_first(IrrepLabel::FUNDAMENTAL, &b).unwrap();
        let want = SparseMatrix::identity(2).scale(&(half(0.5) * half(1.5)));
        assert!(c1.distance(&want).unwrap() < 1e-13);
        assert!(c2.distance(&want).unwrap() < 1e-13);

        let q: f64 = 2.0;
        let half = |x: f64| (q.powf(x / 2.0) - q.powf(-x / 2.0)) / (q.sqrt() - 1.0 / q.sqrt());
        let c = casimir(IrrepLabel::new(3), &Numeric::new(q).unwrap()).unwrap();
        let want = SparseMatrix::identity(4).scale(&(half(1.5) * half(2.5)));
        assert!(c.distance(&want).unwrap() < 1e-12);
    }

    #[test]
    fn site_relations_hold() {
        assert!(verify_site_relations(IrrepLabel::FUNDAMENTAL, &Exact::new()).passed());
        for q in [0.5, 2.0] {
            for two_j in 0..=5 {
                let r = verify_site_relations(IrrepLabel::new(two_j), &Numeric::new(q).unwrap());
                assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
            }
        }
        let g = generators(IrrepLabel::FUNDAMENTAL, &Numeric::new(1.0).unwrap()).unwrap();
        let ladder = g.jplus.commutator(&g.jminus).unwrap();
        assert_eq!(ladder, g.j3.scale(&2.0));
    }

    #[test]
    fn classical_limit() {
        for two_j in 0..=4 {
            let label = IrrepLabel::new(two_j);
            let g = generators(label, &Numeric::new(1.0).unwrap()).unwrap();
            let c = classical_generators(label);
            assert!(g.jplus.distance(&c.jplus).unwrap() < 1e-14);
            assert!(g.jminus.distance(&c.jminus).unwrap() < 1e-14);
            assert!(g.j3.distance(&c.j3).unwrap() < 1e-14);
        }
    }
}
