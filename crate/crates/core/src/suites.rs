//! Identity suites, one per module, run at a fixed chain length on one
//! backend. Randomized checks draw from a seeded ChaCha stream so a report
//! depends only on its configuration.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{cleared_q_number, verify_site_relations, IrrepLabel};
use crate::coproduct::{
    chain_casimir, chain_casimir_cleared, chain_dim, chain_two_j3_q_number, delta_insert, delta_n, j3_function, ChainOperator, CoproductKind,
    Generator,
};
use crate::decompose::{verify_decompose, MAX_SPECTRUM_SITES};
use crate::dicke::{dicke_with, dot, ground_state, ladder_eigenvalue, q_dicke, QState};
use crate::error::{Error, Result};
use crate::hecke::{hecke_generator, r_matrix_fundamental, swap, verify_hecke, verify_spectrum, verify_yang_baxter};
use crate::metric::{
    image_kernel, kernel_q_orthogonality, metric_matrix, projector, projector_fixes_q_dicke, star_adjoint, KernelSolver,
    EXACT_PROJECTOR_CAP, NUMERIC_PROJECTOR_CAP,
};
use crate::qscalar::{Backend, BackendTag, Exact, Numeric, QScalar, Scalar};
use crate::report::{Check, VerificationReport};
use crate::sparse::{vector_distance, SparseMatrix};
use crate::symgroup::{
    c_tau, crossing_counts, perm_rep, q_perm_rep, q_perm_rep_with_word, q_transposition, q_transposition_product,
    Permutation,
};

/// Default numeric tolerance for suite residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Chains up to this length check every element of `S_N`; longer chains
/// draw a seeded sample.
pub const EXHAUSTIVE_PERMUTATIONS: usize = 4;

/// Values of `q` at which the metric is checked to be positive definite.
const POSITIVITY_PROBES: [f64; 4] = [0.1, 0.5, 2.0, 10.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Site,
    Coproduct,
    Dicke,
    Symgroup,
    Hecke,
    Metric,
    Decompose,
    Limit,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Site,
        Suite::Coproduct,
        Suite::Dicke,
        Suite::Symgroup,
        Suite::Hecke,
        Suite::Metric,
        Suite::Decompose,
        Suite::Limit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Site => "site",
            Suite::Coproduct => "coproduct",
            Suite::Dicke => "dicke",
            Suite::Symgroup => "symgroup",
            Suite::Hecke => "hecke",
            Suite::Metric => "metric",
            Suite::Decompose => "decompose",
            Suite::Limit => "limit",
        }
    }
}

impl core::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub n_sites: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Largest `N` for which the projector is assembled; `None` uses the
    /// backend default.
    pub projector_cap: Option<usize>,
    /// Random permutations or states per sampled identity.
    pub samples: usize,
}

impl SuiteConfig {
    pub fn new(n_sites: usize) -> Self {
        Self {
            n_sites,
            seed: 0,
            tolerance: DEFAULT_TOLERANCE,
            projector_cap: None,
            samples: 16,
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// Backends the suites can run on.
pub trait SuiteBackend: KernelSolver {
    /// `q` at which the decompose suite runs, if it applies.
    fn spectral_q(&self) -> Option<f64>;
    /// Two-site spectrum checks (numeric only).
    fn spectrum_report(&self, tolerance: f64) -> Option<VerificationReport>;
    /// Sufficient test for `x > 0` at every `q > 0`.
    fn is_positive(&self, x: &Self::Scalar) -> bool;
}

impl SuiteBackend for Exact {
    fn spectral_q(&self) -> Option<f64> {
        None
    }
    fn spectrum_report(&self, _tolerance: f64) -> Option<VerificationReport> {
        None
    }
    fn is_positive(&self, x: &QScalar) -> bool {
        !x.is_zero() && x.terms().all(|(_, c)| num_traits::Signed::is_positive(c))
    }
}

impl SuiteBackend for Numeric {
    fn spectral_q(&self) -> Option<f64> {
        Some(self.q())
    }
    fn spectrum_report(&self, tolerance: f64) -> Option<VerificationReport> {
        Some(verify_spectrum(self, tolerance))
    }
    fn is_positive(&self, x: &f64) -> bool {
        *x > 0.0
    }
}

pub fn run_suite<B: SuiteBackend>(suite: Suite, config: &SuiteConfig, backend: &B) -> VerificationReport {
    let mut report = match suite {
        Suite::Site => site_suite(backend),
        Suite::Coproduct => coproduct_suite(config, backend),
        Suite::Dicke => dicke_suite(config, backend),
        Suite::Symgroup => symgroup_suite(config, backend),
        Suite::Hecke => hecke_suite(config, backend),
        Suite::Metric => metric_suite(config, backend),
        Suite::Decompose => decompose_suite(config, backend),
        Suite::Limit => limit_suite(config.n_sites),
    };
    report.canonicalize();
    report
}

pub fn run_all<B: SuiteBackend>(config: &SuiteConfig, backend: &B) -> VerificationReport {
    let mut report: VerificationReport = Suite::ALL
        .into_iter()
        .flat_map(|s| run_suite(s, config, backend).checks)
        .collect();
    report.canonicalize();
    report
}

fn chain_residual<S: Scalar>(a: &ChainOperator<S>, b: &ChainOperator<S>) -> Result<f64> {
    a.matrix().relative_distance(b.matrix())
}

fn worst(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)))
}

/// Sample of `S_N`: everything up to [`EXHAUSTIVE_PERMUTATIONS`] sites,
/// otherwise seeded uniform shuffles plus the identity and the reversal.
fn permutation_sample(n: usize, config: &SuiteConfig, salt: u64) -> Vec<Permutation> {
    if n <= EXHAUSTIVE_PERMUTATIONS {
        return Permutation::all(n);
    }
    let mut rng = config.rng(salt);
    let mut out = alloc::vec![Permutation::identity(n), Permutation::reversal(n)];
    for _ in 0..config.samples {
        let mut images: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            images.swap(k, rng.gen_range(0..=k));
        }
        out.push(Permutation::new(images).expect("shuffle is a bijection"));
    }
    out
}

fn site_suite<B: Backend>(backend: &B) -> VerificationReport {
    let mut report = verify_site_relations(IrrepLabel::FUNDAMENTAL, backend);
    if !backend.is_exact() {
        for two_j in 2..=4 {
            report.extend(verify_site_relations(IrrepLabel::new(two_j), backend));
        }
    }
    report
}

const LADDER: [Generator; 3] = [Generator::Jplus, Generator::Jminus, Generator::J3];

fn coproduct_suite<B: Backend>(config: &SuiteConfig, backend: &B) -> VerificationReport {
    let n = config.n_sites;
    let tag = backend.tag();
    let tol = config.tolerance;
    let mut report = VerificationReport::new();
    let kind = CoproductKind::Deformed;
    let ops = (|| {
        Ok::<_, Error>((
            delta_n(Generator::Jplus, n, kind, backend)?,
            delta_n(Generator::Jminus, n, kind, backend)?,
            delta_n(Generator::J3, n, kind, backend)?,
        ))
    })();
    let (plus, minus, j3) = match ops {
        Ok(x) => x,
        Err(e) => {
            report.push(Check::from_result("coproduct.assembly", tag, Err(e), tol));
            return report;
        }
    };

    let ladder = (|| {
        let c = plus.matrix().commutator(minus.matrix())?;
        c.relative_distance(&chain_two_j3_q_number(n, backend)?)
    })();
    report.push(Check::from_result("coproduct.[J+,J-]=[2J3]_q", tag, ladder, tol));
    let raise = j3.matrix().commutator(plus.matrix()).and_then(|c| c.relative_distance(plus.matrix()));
    report.push(Check::from_result("coproduct.[J3,J+]=J+", tag, raise, tol));
    let lower = j3
        .matrix()
        .commutator(minus.matrix())
        .and_then(|c| c.relative_distance(&minus.matrix().scale(&B::Scalar::from_ratio(-1, 1))));
    report.push(Check::from_result("coproduct.[J3,J-]=-J-", tag, lower, tol));
    report.push(Check::from_result(
        "coproduct.J-=(J+)^T",
        tag,
        plus.matrix().transpose().relative_distance(minus.matrix()),
        tol,
    ));

    let group_like = (|| {
        let k = delta_n(Generator::QPlus, n, kind, backend)?;
        let direct = j3_function(n, |m| Ok(backend.quarter_power(m as i32)))?;
        k.matrix().relative_distance(&direct)
    })();
    report.push(Check::from_result("coproduct.K_group_like", tag, group_like, tol));

    if n >= 2 {
        let insertion = worst(LADDER.into_iter().flat_map(|g| {
            (1..n).map(move |site| {
                let shorter = delta_n(g, n - 1, kind, backend)?;
                chain_residual(&delta_insert(&shorter, site, kind, backend)?, &delta_n(g, n, kind, backend)?)
            })
        }));
        report.push(Check::from_result("coproduct.coassociative_insertion", tag, insertion, tol));
    }

    let central = casimir_with_top_eigenvalue(n, backend).and_then(|(c, _)| {
        worst([&plus, &minus, &j3].into_iter().map(|d| chain_residual(&c.compose(d)?, &d.compose(&c)?)))
    });
    report.push(Check::from_result("coproduct.casimir_central", tag, central, tol));
    report
}

/// The chain Casimir and its value on the top sector `j = N/2`. Where the
/// Casimir leaves the ring (exact, odd `N`) both are multiplied by
/// `(q^(1/2) - q^(-1/2))^2`.
fn casimir_with_top_eigenvalue<B: Backend>(n: usize, backend: &B) -> Result<(ChainOperator<B::Scalar>, B::Scalar)> {
    let top = n as i64;
    match chain_casimir(n, backend) {
        Ok(c) => Ok((c, backend.half_q_number(top)?.times(&backend.half_q_number(top + 2)?))),
        Err(Error::OutsideRing(_)) => Ok((
            chain_casimir_cleared(n, backend)?,
            cleared_q_number(top, backend).times(&cleared_q_number(top + 2, backend)),
        )),
        Err(e) => Err(e),
    }
}

fn dicke_suite<B: Backend>(config: &SuiteConfig, backend: &B) -> VerificationReport {
    let n = config.n_sites;
    let tag = backend.tag();
    let tol = config.tolerance;
    let mut report = VerificationReport::new();
    let states = match (0..=n).map(|m| q_dicke(n, m, backend)).collect::<Result<Vec<_>>>() {
        Ok(s) => s,
        Err(e) => {
            report.push(Check::from_result("dicke.construction", tag, Err(e), tol));
            return report;
        }
    };

    let gram = worst(states.iter().enumerate().flat_map(|(a, da)| {
        states.iter().enumerate().map(move |(b, db)| {
            let want = if a == b { da.norm_sq.clone() } else { B::Scalar::zero() };
            Ok(vector_distance(&[dot(&da.amplitudes, &db.amplitudes)], &[want]))
        })
    }));
    report.push(Check::from_result("dicke.orthonormality", tag, gram, tol));

    let ladder_ends = (|| {
        let plus = delta_n(Generator::Jplus, n, CoproductKind::Deformed, backend)?;
        let minus = delta_n(Generator::Jminus, n, CoproductKind::Deformed, backend)?;
        let top = plus.apply(&states[n].amplitudes)?;
        let bottom = minus.apply(&ground_state(n, backend)?.amplitudes)?;
        Ok(top.iter().chain(&bottom).map(Scalar::magnitude).fold(0.0, f64::max))
    })();
    report.push(Check::from_result("dicke.ladder_annihilation", tag, ladder_ends, tol));

    let ladder_eigen = (|| {
        let plus = delta_n(Generator::Jplus, n, CoproductKind::Deformed, backend)?;
        let minus = delta_n(Generator::Jminus, n, CoproductKind::Deformed, backend)?;
        let op = plus.compose(&minus)?;
        worst(states.iter().enumerate().map(|(m, d)| {
            Ok(d.eigen_residual(&op.apply(&d.amplitudes)?, &ladder_eigenvalue(n, m, backend)))
        }))
    })();
    report.push(Check::from_result("dicke.ladder_eigenvalue", tag, ladder_eigen, tol));

    let eigen = casimir_with_top_eigenvalue(n, backend).and_then(|(c, ev)| {
        worst(states.iter().map(|d| Ok(d.eigen_residual(&c.apply(&d.amplitudes)?, &ev))))
    });
    report.push(Check::from_result("dicke.casimir_eigenvalue", tag, eigen, tol));

    let j3_eigen = (|| {
        let j3 = delta_n(Generator::J3, n, CoproductKind::Deformed, backend)?;
        worst(states.iter().enumerate().map(|(m, d)| {
            let ev = B::Scalar::from_ratio(2 * m as i64 - n as i64, 2);
            Ok(d.eigen_residual(&j3.apply(&d.amplitudes)?, &ev))
        }))
    })();
    report.push(Check::from_result("dicke.j3_eigenvalue", tag, j3_eigen, tol));

    let reversal = (|| {
        let w = perm_rep(&Permutation::reversal(n), backend)?;
        let inverse = backend.inverse();
        worst(states.iter().enumerate().map(|(m, d)| {
            let flipped = q_dicke(n, m, &inverse)?;
            let image = w.apply(&d.amplitudes)?;
            Ok(vector_distance(&image, &flipped.amplitudes).max(vector_distance(core::slice::from_ref(&d.norm_sq), &[flipped.norm_sq])))
        }))
    })();
    report.push(Check::from_result("dicke.reversal_inverts_q", tag, reversal, tol));
    report
}

/// Random product state, its factors as integer ratios lifted to `S`.
fn random_product<S: Scalar>(n: usize, rng: &mut ChaCha8Rng) -> Vec<[S; 2]> {
    (0..n)
        .map(|_| loop {
            let a: i64 = rng.gen_range(-3..=3);
            let b: i64 = rng.gen_range(-3..=3);
            if a != 0 || b != 0 {
                break [S::from_ratio(a, 1), S::from_ratio(b, 1)];
            }
        })
        .collect()
}

fn kron_state<S: Scalar>(factors: &[[S; 2]]) -> Vec<S> {
    factors.iter().fold(alloc::vec![S::one()], |acc, f| {
        acc.iter().flat_map(|a| [a.times(&f[0]), a.times(&f[1])]).collect()
    })
}

fn symgroup_suite<B: Backend>(config: &SuiteConfig, backend: &B) -> VerificationReport {
    let n = config.n_sites;
    let tag = backend.tag();
    let tol = config.tolerance;
    let mut report = VerificationReport::new();
    if n < 2 {
        report.push(Check::skipped("symgroup", tag, "needs at least two sites"));
        return report;
    }
    let gens = match (1..n).map(|i| q_transposition(i, n, backend)).collect::<Result<Vec<_>>>() {
        Ok(g) => g,
        Err(e) => {
            report.push(Check::from_result("symgroup.q_transpositions", tag, Err(e), tol));
            return report;
        }
    };
    let Ok(identity) = ChainOperator::identity(n) else {
        report.push(Check::skipped("symgroup", tag, "chain too long"));
        return report;
    };

    let involution = worst(gens.iter().map(|w| chain_residual(&w.compose(w)?, &identity.clone())));
    report.push(Check::from_result("symgroup.involution", tag, involution, tol));
    let braid = worst(gens.windows(2).map(|w| {
        let (a, b) = (&w[0], &w[1]);
        chain_residual(&a.compose(b)?.compose(a)?, &b.compose(a)?.compose(b)?)
    }));
    report.push(Check::from_result("symgroup.braid", tag, braid, tol));
    let distant = worst(gens.iter().enumerate().flat_map(|(i, a)| {
        gens.iter().skip(i + 2).map(move |b| chain_residual(&a.compose(b)?, &b.compose(a)?))
    }));
    report.push(Check::from_result("symgroup.distant_commutation", tag, distant, tol));

    let invariance = worst((0..=n).map(|m| {
        let d = q_dicke(n, m, backend)?;
        worst(gens.iter().map(|w| Ok(vector_distance(&w.apply(&d.amplitudes)?, &d.amplitudes))))
    }));
    report.push(Check::from_result("symgroup.q_dicke_invariance", tag, invariance, tol));

    let inverse = backend.inverse();
    let adjoint = worst((1..n).map(|i| chain_residual(&gens[i - 1].adjoint(), &q_transposition(i, n, &inverse)?)));
    report.push(Check::from_result("symgroup.adjoint_transposition", tag, adjoint, tol));

    let sample = permutation_sample(n, config, 1);
    let mut rng = config.rng(2);
    let words = if n <= EXHAUSTIVE_PERMUTATIONS {
        worst(sample.iter().map(|p| {
            let closed = q_perm_rep(p, backend)?;
            worst(p.all_reduced_words().iter().map(|w| chain_residual(&q_transposition_product(w, n, backend)?, &closed)))
        }))
    } else {
        worst(sample.iter().map(|p| {
            let closed = q_perm_rep(p, backend)?;
            let other = p.random_reduced_word(&mut rng);
            let by_word = q_perm_rep_with_word(p, &other, backend)?;
            Ok(chain_residual(&q_transposition_product(p.reduced_word(), n, backend)?, &closed)?
                .max(chain_residual(&q_transposition_product(&other, n, backend)?, &closed)?)
                .max(chain_residual(&by_word, &closed)?))
        }))
    };
    report.push(Check::from_result("symgroup.word_independence", tag, words, tol));

    let homomorphism = worst(sample.iter().zip(sample.iter().rev()).map(|(a, b)| {
        chain_residual(&q_perm_rep(a, backend)?.compose(&q_perm_rep(b, backend)?)?, &q_perm_rep(&(a * b), backend)?)
    }));
    report.push(Check::from_result("symgroup.homomorphism", tag, homomorphism, tol));

    let dagger = worst(sample.iter().map(|p| {
        chain_residual(&q_perm_rep(p, backend)?.adjoint(), &q_perm_rep(&p.inverse(), &inverse)?)
    }));
    report.push(Check::from_result("symgroup.adjoint_is_inverse_at_inverse_q", tag, dagger, tol));

    let conjugation = (|| {
        let c = c_tau(n, backend)?;
        let c_inv = metric_matrix(n, backend)?.as_operator()?;
        worst(sample.iter().map(|p| {
            let lhs = c.compose(&q_perm_rep(p, backend)?.adjoint())?.compose(&c_inv)?;
            chain_residual(&lhs, &q_perm_rep(&p.inverse(), backend)?)
        }))
    })();
    report.push(Check::from_result("symgroup.c_tau_conjugation", tag, conjugation, tol));

    let mut rng = config.rng(3);
    let product_states = worst(sample.iter().take(config.samples.max(1)).map(|p| {
        let factors: Vec<[B::Scalar; 2]> = random_product(n, &mut rng);
        let diagram = crossing_counts(p.reduced_word(), n)?;
        let moved: Vec<[B::Scalar; 2]> = (0..n)
            .map(|i| {
                let [up, down] = &factors[p.images()[i]];
                let m = diagram.m_counts[i] as i32;
                [up.times(&backend.quarter_power(m)), down.times(&backend.quarter_power(-m))]
            })
            .collect();
        let image = q_perm_rep(p, backend)?.apply(&kron_state(&factors))?;
        Ok(vector_distance(&image, &kron_state(&moved)))
    }));
    report.push(Check::from_result("symgroup.product_state_action", tag, product_states, tol));
    report
}

fn hecke_suite<B: SuiteBackend>(config: &SuiteConfig, backend: &B) -> VerificationReport {
    let n = config.n_sites;
    let mut report = verify_yang_baxter(backend);
    if n >= 2 {
        report.extend(verify_hecke(n, backend, config.tolerance));
    }
    if let Some(spectra) = backend.spectrum_report(config.tolerance) {
        report.extend(spectra);
    }
    report
}

fn metric_suite<B: SuiteBackend>(config: &SuiteConfig, backend: &B) -> VerificationReport {
    let n = config.n_sites;
    let tag = backend.tag();
    let tol = config.tolerance;
    let mut report = VerificationReport::new();
    let metric = match metric_matrix(n, backend) {
        Ok(m) => m,
        Err(e) => {
            report.push(Check::from_result("metric.construction", tag, Err(e), tol));
            return report;
        }
    };

    let mut factorized = SparseMatrix::identity(1);
    for i in 1..=n {
        let k = n as i32 + 1 - 2 * i as i32;
        factorized = factorized.kron(&SparseMatrix::diagonal(alloc::vec![backend.quarter_power(k), backend.quarter_power(-k)]));
    }
    let factorized = SparseMatrix::diagonal(metric.diagonal.clone()).relative_distance(&factorized);
    report.push(Check::from_result("metric.local_factorization", tag, factorized, tol));
    let inverse_tau = (|| chain_residual(&metric.as_operator()?.compose(&c_tau(n, backend)?)?, &ChainOperator::identity(n)?))();
    report.push(Check::from_result("metric.inverse_of_c_tau", tag, inverse_tau, tol));

    let positive = metric.diagonal.iter().all(|d| backend.is_positive(d))
        && POSITIVITY_PROBES.iter().all(|&q| {
            Numeric::new(q)
                .and_then(|b| metric_matrix(n, &b))
                .is_ok_and(|m| m.diagonal.iter().all(|&d| d > 0.0))
        });
    report.push(Check::boolean("metric.positive_diagonal", tag, positive, None));

    let star_w = worst((1..n).map(|i| {
        let w = q_transposition(i, n, backend)?;
        chain_residual(&star_adjoint(&w, backend)?, &w)
    }));
    report.push(Check::from_result("metric.star_fixes_q_transpositions", tag, star_w, tol));
    let star_id = (|| {
        let id = ChainOperator::identity(n)?;
        chain_residual(&star_adjoint(&id, backend)?, &id)
    })();
    report.push(Check::from_result("metric.star_identity", tag, star_id, tol));

    let mut rng = config.rng(4);
    let involutive = (|| {
        let dim = chain_dim(n)?;
        let triplets: Vec<_> = (0..dim * 2)
            .map(|_| {
                let r = rng.gen_range(0..dim);
                let c = rng.gen_range(0..dim);
                (r, c, B::Scalar::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
            })
            .collect();
        let a = ChainOperator::from_matrix(n, SparseMatrix::from_triplets(dim, triplets))?;
        chain_residual(&star_adjoint(&star_adjoint(&a, backend)?, backend)?, &a)
    })();
    report.push(Check::from_result("metric.star_involutive", tag, involutive, tol));

    let sample = permutation_sample(n, config, 5);
    let unitary = worst(sample.iter().map(|p| {
        chain_residual(&star_adjoint(&q_perm_rep(p, backend)?, backend)?, &q_perm_rep(&p.inverse(), backend)?)
    }));
    report.push(Check::from_result("metric.star_unitary_q_representation", tag, unitary, tol));

    let cap = config.projector_cap.unwrap_or(if backend.is_exact() {
        EXACT_PROJECTOR_CAP
    } else {
        NUMERIC_PROJECTOR_CAP
    });
    if n > cap {
        report.push(Check::skipped("metric.projector", tag, format!("n={n} exceeds projector cap {cap}")));
        return report;
    }
    report.extend(projector_checks(n, backend, tol));
    report
}

fn projector_checks<B: SuiteBackend>(n: usize, backend: &B, tol: f64) -> VerificationReport {
    let tag = backend.tag();
    let mut report = VerificationReport::new();
    let proj = match projector(n, backend) {
        Ok(p) => p,
        Err(e) => {
            report.push(Check::from_result("metric.projector", tag, Err(e), tol));
            return report;
        }
    };
    report.push(Check::from_result(
        "metric.projector_idempotent",
        tag,
        proj.compose(&proj).and_then(|p2| chain_residual(&p2, &proj)),
        tol,
    ));
    report.push(Check::from_result(
        "metric.projector_star_self_adjoint",
        tag,
        star_adjoint(&proj, backend).and_then(|s| chain_residual(&s, &proj)),
        tol,
    ));
    report.push(Check::from_result(
        "metric.projector_dagger_is_inverse_q",
        tag,
        projector(n, &backend.inverse()).and_then(|p| chain_residual(&proj.adjoint(), &p)),
        tol,
    ));
    let trace = proj.trace();
    report.push(Check::from_residual(
        "metric.projector_trace_rank",
        tag,
        vector_distance(&[trace], &[B::Scalar::from_ratio(n as i64 + 1, 1)]),
        tol,
    ));
    report.push(Check::from_result(
        "metric.projector_fixes_q_dicke",
        tag,
        projector_fixes_q_dicke(&proj, backend),
        tol,
    ));
    match image_kernel(&proj, backend) {
        Ok(split) => {
            report.push(Check::boolean(
                "metric.image_kernel_dimensions",
                tag,
                split.image_basis.len() == n + 1 && split.kernel_basis.len() + n + 1 == proj.dim(),
                None,
            ));
            let metric = metric_matrix(n, backend);
            report.push(Check::from_result(
                "metric.kernel_q_orthogonal_to_image",
                tag,
                metric.and_then(|m| kernel_q_orthogonality(&split, &m)),
                tol,
            ));
            let annihilated = worst(split.kernel_basis.iter().map(|k| {
                Ok(proj.apply(k)?.iter().map(Scalar::magnitude).fold(0.0, f64::max))
            }));
            report.push(Check::from_result("metric.kernel_annihilated", tag, annihilated, tol));
        }
        Err(e) => report.push(Check::from_result("metric.image_kernel", tag, Err(e), tol)),
    }
    let asymmetry = proj.matrix().relative_distance(&proj.matrix().transpose());
    let undeformed = matches!(tag, BackendTag::Numeric(q) if q == 1.0) || n == 1;
    match asymmetry {
        Ok(a) if undeformed => report.push(Check::from_residual("metric.projector_orthogonal_at_q_one", tag, a, tol)),
        Ok(a) => report.push(Check::boolean(
            "metric.projector_not_self_adjoint",
            tag,
            a > 0.0,
            Some(format!("|π† - π| = {a:e}")),
        )),
        Err(e) => report.push(Check::from_result("metric.projector_self_adjointness", tag, Err(e), tol)),
    }
    report
}

fn decompose_suite<B: SuiteBackend>(config: &SuiteConfig, backend: &B) -> VerificationReport {
    match backend.spectral_q() {
        Some(_) if config.n_sites > MAX_SPECTRUM_SITES => core::iter::once(Check::skipped(
            "decompose",
            backend.tag(),
            format!("n={} exceeds spectrum cap {MAX_SPECTRUM_SITES}", config.n_sites),
        ))
        .collect(),
        Some(q) => verify_decompose(config.n_sites, q, config.tolerance),
        None => core::iter::once(Check::skipped(
            "decompose",
            backend.tag(),
            "sector decomposition runs on the numeric backend",
        ))
        .collect(),
    }
}

fn at_one(m: &SparseMatrix<QScalar>) -> SparseMatrix<BigRational> {
    let one = BigRational::from_integer(1.into());
    m.map(|x| x.evaluate_rational(&one))
}

fn state_at_one(d: &QState<QScalar>) -> (Vec<BigRational>, BigRational) {
    let one = BigRational::from_integer(1.into());
    (
        d.amplitudes.iter().map(|x| x.evaluate_rational(&one)).collect(),
        d.norm_sq.evaluate_rational(&one),
    )
}

/// Every deformed object specialized to `q = 1` equals its classical
/// counterpart, compared exactly over the rationals.
pub fn limit_suite(n: usize) -> VerificationReport {
    let tag = BackendTag::Exact;
    let b = Exact::new();
    let mut report = VerificationReport::new();
    let mut push = |name: &str, ok: Result<bool>| {
        let detail = ok.as_ref().err().map(ToString::to_string);
        report.push(Check::boolean(name, tag, ok.unwrap_or(false), detail));
    };

    push(
        "limit.coproducts",
        (|| {
            for g in LADDER {
                let deformed = delta_n(g, n, CoproductKind::Deformed, &b)?;
                let plain = delta_n(g, n, CoproductKind::Undeformed, &b)?;
                if at_one(deformed.matrix()) != at_one(plain.matrix()) {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
    );
    push(
        "limit.dicke_states",
        (|| {
            for m in 0..=n {
                let deformed = state_at_one(&q_dicke(n, m, &b)?);
                let plain = state_at_one(&dicke_with(n, m, CoproductKind::Undeformed, &b)?);
                if deformed != plain {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
    );
    push(
        "limit.metric_identity",
        metric_matrix(n, &b).map(|m| {
            let one = BigRational::from_integer(1.into());
            m.diagonal.iter().all(|d| d.evaluate_rational(&one) == one)
        }),
    );
    if n >= 2 {
        push(
            "limit.q_transposition_is_swap",
            (|| {
                for i in 1..n {
                    if at_one(q_transposition(i, n, &b)?.matrix()) != at_one(swap(i, n, &b)?.matrix()) {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
        );
        push(
            "limit.hecke_generator_is_swap",
            (|| {
                for i in 1..n {
                    if at_one(hecke_generator(i, n, &b)?.matrix()) != at_one(swap(i, n, &b)?.matrix()) {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
        );
    }
    push(
        "limit.r_matrix_identity",
        r_matrix_fundamental(&b).map(|r| at_one(&r) == SparseMatrix::identity(4)),
    );
    if n <= EXACT_PROJECTOR_CAP {
        push(
            "limit.projector_is_symmetrizer",
            (|| {
                let deformed = at_one(projector(n, &b)?.matrix());
                let dim = chain_dim(n)?;
                let perms = Permutation::all(n);
                let weight = BigRational::new(1.into(), (perms.len() as i64).into());
                let mut triplets = Vec::new();
                for p in &perms {
                    let w = perm_rep(p, &b)?;
                    triplets.extend(w.triplets().map(|(r, c, _)| (r, c, weight.clone())));
                }
                let symmetrizer = SparseMatrix::from_triplets(dim, triplets);
                Ok(deformed == symmetrizer && symmetrizer.transpose() == symmetrizer)
            })(),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_suites_pass() {
        for n in 1..=3 {
            let report = run_all(&SuiteConfig::new(n), &Exact::new());
            let failures: Vec<_> = report.failures().collect();
            assert!(failures.is_empty(), "n={n} {failures:#?}");
        }
    }

    #[test]
    fn numeric_suites_pass() {
        for q in [0.5, 2.0] {
            let report = run_all(&SuiteConfig::new(4), &Numeric::new(q).unwrap());
            let failures: Vec<_> = report.failures().collect();
            assert!(failures.is_empty(), "q={q} {failures:#?}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let config = SuiteConfig { seed: 7, ..SuiteConfig::new(5) };
        let b = Numeric::new(2.0).unwrap();
        assert_eq!(run_suite(Suite::Symgroup, &config, &b), run_suite(Suite::Symgroup, &config, &b));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
