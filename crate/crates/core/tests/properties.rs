use proptest::prelude::*;

use qsym_core::coproduct::{chain_casimir, ChainOperator};
use qsym_core::decompose::casimir_sectors;
use qsym_core::dicke::q_dicke;
use qsym_core::hecke::hecke_generator;
use qsym_core::metric::{metric_matrix, projector, star_adjoint};
use qsym_core::qscalar::{Backend, Exact, Numeric};
use qsym_core::sparse::vector_distance;
use qsym_core::symgroup::{q_perm_rep, Permutation};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn positive_q() -> impl Strategy<Value = f64> {
    (-2.3f64..2.3).prop_map(f64::exp)
}

fn close(a: &ChainOperator<f64>, b: &ChainOperator<f64>) -> f64 {
    a.matrix().relative_distance(b.matrix()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_and_numeric_representations_agree(sigma in permutation(5), q in positive_q()) {
        let numeric = Numeric::new(q).unwrap();
        let exact = q_perm_rep(&sigma, &Exact::new()).unwrap();
        let evaluated = exact.matrix().map(|x| numeric.lift(x));
        let direct = q_perm_rep(&sigma, &numeric).unwrap();
        prop_assert!(evaluated.relative_distance(direct.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn adjoint_is_inverse_at_inverse_q(sigma in permutation(5), q in positive_q()) {
        let at_q = q_perm_rep(&sigma, &Numeric::new(q).unwrap()).unwrap();
        let at_inverse = q_perm_rep(&sigma.inverse(), &Numeric::new(1.0 / q).unwrap()).unwrap();
        prop_assert!(close(&at_q.adjoint(), &at_inverse) < 1e-12);
    }

    #[test]
    fn star_adjoint_inverts(sigma in permutation(4), q in positive_q()) {
        let b = Numeric::new(q).unwrap();
        let w = q_perm_rep(&sigma, &b).unwrap();
        let inverse = q_perm_rep(&sigma.inverse(), &b).unwrap();
        prop_assert!(close(&star_adjoint(&w, &b).unwrap(), &inverse) < 1e-12);
        let product = w.compose(&inverse).unwrap();
        prop_assert!(close(&product, &ChainOperator::identity(4).unwrap()) < 1e-12);
    }

    #[test]
    fn q_dicke_states_are_fixed(sigma in permutation(5), m in 0usize..=5, q in positive_q()) {
        let b = Numeric::new(q).unwrap();
        let d = q_dicke(5, m, &b).unwrap();
        let image = q_perm_rep(&sigma, &b).unwrap().matrix().apply(&d.amplitudes).unwrap();
        prop_assert!(vector_distance(&image, &d.amplitudes) < 1e-11);
    }

    #[test]
    fn hecke_generators_on_q_dicke(n in 2usize..=5, i_frac in 0.0f64..1.0, m_frac in 0.0f64..1.0, q in positive_q()) {
        let b = Numeric::new(q).unwrap();
        let i = 1 + ((n - 1) as f64 * i_frac) as usize;
        let m = ((n + 1) as f64 * m_frac) as usize;
        let a = hecke_generator(i, n, &b).unwrap();
        let d = q_dicke(n, m, &b).unwrap();
        let image = a.matrix().apply(&d.amplitudes).unwrap();
        let expected: Vec<f64> = d.amplitudes.iter().map(|x| x * q.sqrt()).collect();
        prop_assert!(vector_distance(&image, &expected) < 1e-11);

        // A^2 = (q^1/2 - q^-1/2) A + 1
        let square = a.compose(&a).unwrap();
        let rhs = a.scaled(&(q.sqrt() - 1.0 / q.sqrt())).sum(&ChainOperator::identity(n).unwrap()).unwrap();
        prop_assert!(close(&square, &rhs) < 1e-12);
    }

    #[test]
    fn q_dicke_casimir_eigenvalue(n in 1usize..=6, m_frac in 0.0f64..1.0, q in positive_q()) {
        let b = Numeric::new(q).unwrap();
        let m = ((n + 1) as f64 * m_frac) as usize;
        let d = q_dicke(n, m, &b).unwrap();
        let c = chain_casimir(n, &b).unwrap();
        let eigenvalue = b.half_q_number(n as i64).unwrap() * b.half_q_number(n as i64 + 2).unwrap();
        let image = c.matrix().apply(&d.amplitudes).unwrap();
        let expected: Vec<f64> = d.amplitudes.iter().map(|x| x * eigenvalue).collect();
        let scale = eigenvalue.abs().max(1.0);
        prop_assert!(vector_distance(&image, &expected) / scale < 1e-11);
    }

    #[test]
    fn metric_is_positive(n in 1usize..=8, q in positive_q()) {
        let metric = metric_matrix(n, &Numeric::new(q).unwrap()).unwrap();
        prop_assert!(metric.diagonal.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn projector_is_idempotent_with_rank(n in 1usize..=4, q in positive_q()) {
        let pi = projector(n, &Numeric::new(q).unwrap()).unwrap();
        prop_assert!(close(&pi.compose(&pi).unwrap(), &pi) < 1e-12);
        prop_assert!((pi.matrix().trace() - (n + 1) as f64).abs() < 1e-11);
    }

    #[test]
    fn sector_multiplicities_do_not_depend_on_q(n in 1usize..=6, q in positive_q()) {
        let deformed = casimir_sectors(n, q).unwrap();
        let classical = casimir_sectors(n, 1.0).unwrap();
        prop_assert_eq!(deformed.multiplicities(), classical.multiplicities());
        prop_assert_eq!(deformed.total_dimension(), 1 << n);
    }
}
