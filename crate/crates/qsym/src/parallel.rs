//! Rayon-backed drivers. Work is split into fixed pieces and merged in a
//! fixed order, so results do not depend on the thread count.

use qsym_core::coproduct::{chain_dim, ChainOperator};
use qsym_core::metric::projector_from_terms;
use qsym_core::qscalar::{Backend, Exact, Numeric};
use qsym_core::report::VerificationReport;
use qsym_core::sparse::SparseMatrix;
use qsym_core::suites::{run_suite, Suite, SuiteConfig};
use qsym_core::symgroup::{q_perm_rep, Permutation};
use qsym_core::Error;
use rayon::prelude::*;

use crate::config::BackendChoice;

/// Permutations per partial sum in [`parallel_projector`].
pub const PROJECTOR_CHUNK: usize = 64;

#[derive(Debug, Clone, Copy)]
enum Job {
    Exact(Suite),
    Numeric(Suite, f64),
}

/// Run each suite on each backend of the grid concurrently and return the
/// merged, canonically ordered report. The limit suite does not depend on
/// the backend and runs once.
pub fn run_suites(suites: &[Suite], config: &SuiteConfig, backend: &BackendChoice) -> VerificationReport {
    let mut jobs = Vec::new();
    for &suite in suites {
        match backend {
            BackendChoice::Exact => jobs.push(Job::Exact(suite)),
            BackendChoice::Numeric(_) if suite == Suite::Limit => jobs.push(Job::Exact(suite)),
            BackendChoice::Numeric(qs) => jobs.extend(qs.iter().map(|&q| Job::Numeric(suite, q))),
        }
    }
    let parts: Vec<VerificationReport> = jobs
        .par_iter()
        .map(|job| match *job {
            Job::Exact(suite) => run_suite(suite, config, &Exact::new()),
            Job::Numeric(suite, q) => match Numeric::new(q) {
                Ok(b) => run_suite(suite, config, &b),
                Err(e) => core::iter::once(qsym_core::report::Check::from_result(
                    suite.name(),
                    qsym_core::qscalar::BackendTag::Numeric(q),
                    Err(e),
                    config.tolerance,
                ))
                .collect(),
            },
        })
        .collect();
    let mut report: VerificationReport = parts.into_iter().flat_map(|r| r.checks).collect();
    report.canonicalize();
    report
}

/// `π_q` with the `N!` terms built concurrently. Partial sums over fixed
/// chunks of the lexicographic order are added left to right.
pub fn parallel_projector<B: Backend>(n: usize, backend: &B, cap: usize) -> Result<ChainOperator<B::Scalar>, Error> {
    if n > cap {
        return Err(Error::ResourceCap { n, cap });
    }
    let dim = chain_dim(n)?;
    let perms = Permutation::all(n);
    let partials = perms
        .par_chunks(PROJECTOR_CHUNK)
        .map(|chunk| {
            let terms = chunk.iter().map(|p| q_perm_rep(p, backend)).collect::<Result<Vec<_>, _>>()?;
            let triplets = terms.iter().flat_map(|t| t.triplets().map(|(r, c, v)| (r, c, v.clone())).collect::<Vec<_>>());
            ChainOperator::from_matrix(n, SparseMatrix::from_triplets(dim, triplets))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut total = SparseMatrix::zeros(dim);
    for part in &partials {
        total = total.plus(part.matrix())?;
    }
    projector_from_terms(n, &[ChainOperator::from_matrix(n, total)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsym_core::metric::projector;

    #[test]
    fn parallel_projector_matches_serial() {
        let b = Exact::new();
        for n in 1..=4 {
            assert_eq!(parallel_projector(n, &b, 5).unwrap(), projector(n, &b).unwrap());
        }
    }

    #[test]
    fn parallel_projector_is_deterministic() {
        let b = Numeric::new(0.7).unwrap();
        let a = parallel_projector(6, &b, 7).unwrap();
        let c = parallel_projector(6, &b, 7).unwrap();
        assert_eq!(a, c);
        assert!(a.matrix().relative_distance(projector(6, &b).unwrap().matrix()).unwrap() < 1e-13);
    }

    #[test]
    fn grid_report_is_canonical() {
        let config = SuiteConfig::new(3);
        let grid = BackendChoice::Numeric(vec![2.0, 0.5]);
        let r = run_suites(&[Suite::Hecke, Suite::Limit], &config, &grid);
        assert!(r.passed());
        let names: Vec<_> = r.checks.iter().map(|c| c.identity.clone()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert_eq!(r.checks.iter().filter(|c| c.identity == "limit.r_matrix_identity").count(), 1);
    }
}
