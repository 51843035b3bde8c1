//! Splitting the chain into `U_q(su(2))` sectors through the spectrum of
//! the deformed Casimir.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::coproduct::{chain_casimir, chain_dim};
use crate::dicke::q_symmetric_basis;
use crate::error::{Error, Result};
use crate::linalg::{columns, max_principal_sine, null_space, orthonormal_columns, symmetric_eigen, to_dmatrix};
use crate::qscalar::{q_number_real, Numeric};
use crate::report::{Check, VerificationReport};
use crate::symgroup::{perm_rep, Permutation};

/// Chains longer than this are not diagonalized.
pub const MAX_SPECTRUM_SITES: usize = 10;

/// Width of an eigenvalue cluster, relative to `max(1, |λ|)`.
pub const CLUSTER_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct Sector {
    pub two_j: u32,
    /// Mean of the eigenvalues in the cluster.
    pub casimir_eigenvalue: f64,
    /// Closed form `[j]_q [j+1]_q`.
    pub expected_eigenvalue: f64,
    pub multiplicity: usize,
    /// `multiplicity * (2j + 1)`.
    pub dimension_check: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectorReport {
    pub n_sites: usize,
    pub q: f64,
    /// Sectors by decreasing `j`.
    pub sectors: Vec<Sector>,
}

impl SectorReport {
    pub fn total_dimension(&self) -> usize {
        self.sectors.iter().map(|s| s.dimension_check).sum()
    }

    /// Largest relative distance between a cluster and its closed form.
    pub fn max_eigenvalue_deviation(&self) -> f64 {
        self.sectors
            .iter()
            .map(|s| (s.casimir_eigenvalue - s.expected_eigenvalue).abs() / s.expected_eigenvalue.abs().max(1.0))
            .fold(0.0, f64::max)
    }

    /// `(2j, multiplicity)` pairs.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        self.sectors.iter().map(|s| (s.two_j, s.multiplicity)).collect()
    }
}

/// `[j]_q [j+1]_q` for `j = two_j / 2`.
pub fn sector_eigenvalue(two_j: u32, q: f64) -> Result<f64> {
    Ok(q_number_real(i64::from(two_j), q)? * q_number_real(i64::from(two_j) + 2, q)?)
}

fn allowed_two_j(n: usize) -> impl Iterator<Item = u32> {
    (0..=n as u32).rev().filter(move |t| (n as u32 - t).is_multiple_of(2))
}

struct Spectrum {
    values: Vec<f64>,
    vectors: DMatrix<f64>,
    /// Index ranges into `values`, one per cluster, ascending.
    clusters: Vec<core::ops::Range<usize>>,
}

fn scale(x: f64) -> f64 {
    x.abs().max(1.0)
}

fn casimir_spectrum(n: usize, backend: &Numeric) -> Result<Spectrum> {
    if n > MAX_SPECTRUM_SITES {
        return Err(Error::ResourceCap { n, cap: MAX_SPECTRUM_SITES });
    }
    chain_dim(n)?;
    let q = backend.q();
    let targets = allowed_two_j(n)
        .map(|t| sector_eigenvalue(t, q))
        .collect::<Result<Vec<_>>>()?;
    let min_gap = targets
        .windows(2)
        .map(|w| (w[0] - w[1]).abs() / scale(w[0]))
        .fold(f64::INFINITY, f64::min);
    if CLUSTER_TOLERANCE >= min_gap / 3.0 {
        return Err(Error::ClusteringAmbiguity { gap: min_gap, tolerance: CLUSTER_TOLERANCE });
    }
    let casimir = chain_casimir(n, backend)?;
    let (values, vectors) = symmetric_eigen(&to_dmatrix(casimir.matrix()));
    let mut clusters = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k] - values[k - 1] > CLUSTER_TOLERANCE * scale(values[k]) {
            clusters.push(start..k);
            start = k;
        }
    }
    Ok(Spectrum { values, vectors, clusters })
}

/// Diagonalize the chain Casimir at `q` and read off sectors and their
/// multiplicities.
pub fn casimir_sectors(n: usize, q: f64) -> Result<SectorReport> {
    let backend = Numeric::new(q)?;
    let spectrum = casimir_spectrum(n, &backend)?;
    let mut sectors = Vec::new();
    for range in &spectrum.clusters {
        let cluster = &spectrum.values[range.clone()];
        let mean = cluster.iter().sum::<f64>() / cluster.len() as f64;
        let mut matched = None;
        for two_j in allowed_two_j(n) {
            let expected = sector_eigenvalue(two_j, q)?;
            if (mean - expected).abs() <= CLUSTER_TOLERANCE * scale(expected) {
                matched = Some((two_j, expected));
            }
        }
        let (two_j, expected) = matched.ok_or(Error::UnmatchedEigenvalue(mean))?;
        let width = two_j as usize + 1;
        if cluster.len() % width != 0 {
            return Err(Error::UnmatchedEigenvalue(mean));
        }
        sectors.push(Sector {
            two_j,
            casimir_eigenvalue: mean,
            expected_eigenvalue: expected,
            multiplicity: cluster.len() / width,
            dimension_check: cluster.len(),
        });
    }
    sectors.sort_by_key(|s| core::cmp::Reverse(s.two_j));
    Ok(SectorReport { n_sites: n, q, sectors })
}

/// Orthonormal basis of the top (`j = N/2`) Casimir eigenspace.
pub fn top_sector_basis(n: usize, q: f64) -> Result<DMatrix<f64>> {
    let backend = Numeric::new(q)?;
    let spectrum = casimir_spectrum(n, &backend)?;
    let top = spectrum.clusters.last().cloned().unwrap_or(0..0);
    Ok(spectrum.vectors.columns(top.start, top.len()).into_owned())
}

/// Orthonormal basis of the q-Dicke span.
pub fn q_dicke_span(n: usize, q: f64) -> Result<DMatrix<f64>> {
    let states: Vec<Vec<f64>> = q_symmetric_basis(n, &Numeric::new(q)?)?
        .into_iter()
        .map(|d| d.amplitudes)
        .collect();
    Ok(orthonormal_columns(&columns(&states), 1e-12))
}

/// Orthonormal basis of the vectors fixed by every `W(σ)`, computed as the
/// joint kernel of `W_i - 1` over the adjacent transpositions.
pub fn classical_fixed_space(n: usize) -> Result<DMatrix<f64>> {
    let dim = chain_dim(n)?;
    let backend = Numeric::new(1.0)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for i in 1..n {
        let w = perm_rep(&Permutation::transposition(i, n)?, &backend)?.to_dense();
        for (r, mut row) in w.into_iter().enumerate() {
            row[r] -= 1.0;
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(DMatrix::identity(dim, dim));
    }
    Ok(orthonormal_columns(&columns(&null_space(&rows, 1e-12)), 1e-12))
}

/// The top Casimir sector has dimension `N + 1` and coincides with the
/// q-Dicke span.
pub fn symmetric_sector_check(n: usize, q: f64, tolerance: f64) -> VerificationReport {
    let tag = crate::qscalar::BackendTag::Numeric(q);
    let mut report = VerificationReport::new();
    let top = top_sector_basis(n, q);
    let dims = top.as_ref().map(|t| t.ncols()).map_err(Clone::clone);
    report.push(Check::boolean(
        "decompose.top_sector_dimension",
        tag,
        dims.as_ref().is_ok_and(|&d| d == n + 1),
        dims.err().map(|e| alloc::format!("{e}")),
    ));
    let angle = top.and_then(|t| Ok(max_principal_sine(&t, &q_dicke_span(n, q)?)));
    report.push(Check::from_result("decompose.top_sector_is_q_dicke_span", tag, angle, tolerance));
    report
}

/// Sector identities at one `q`: sum rule, closed-form eigenvalues,
/// multiplicities equal to the undeformed ones, and the top sector.
pub fn verify_decompose(n: usize, q: f64, tolerance: f64) -> VerificationReport {
    let tag = crate::qscalar::BackendTag::Numeric(q);
    let mut report = VerificationReport::new();
    let sectors = casimir_sectors(n, q);
    match &sectors {
        Ok(s) => {
            report.push(Check::boolean(
                "decompose.dimension_sum_rule",
                tag,
                s.total_dimension() == 1 << n,
                None,
            ));
            report.push(Check::from_residual(
                "decompose.sector_eigenvalues",
                tag,
                s.max_eigenvalue_deviation(),
                tolerance,
            ));
        }
        Err(e) => report.push(Check::from_result("decompose.casimir_sectors", tag, Err(e.clone()), tolerance)),
    }
    let classical = casimir_sectors(n, 1.0);
    report.push(Check::boolean(
        "decompose.multiplicities_match_undeformed",
        tag,
        matches!((&sectors, &classical), (Ok(a), Ok(b)) if a.multiplicities() == b.multiplicities()),
        None,
    ));
    report.extend(symmetric_sector_check(n, q, tolerance));
    if q == 1.0 {
        let angle = (|| Ok(max_principal_sine(&classical_fixed_space(n)?, &top_sector_basis(n, 1.0)?)))();
        report.push(Check::from_result("decompose.fixed_space_is_top_sector", tag, angle, tolerance));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sites_undeformed() {
        let r = casimir_sectors(2, 1.0).unwrap();
        assert_eq!(r.multiplicities(), alloc::vec![(2, 1), (0, 1)]);
        assert_eq!(r.total_dimension(), 4);
    }

    #[test]
    fn four_sites_deformed() {
        let r = casimir_sectors(4, 2.0).unwrap();
        assert_eq!(r.multiplicities(), alloc::vec![(4, 1), (2, 3), (0, 2)]);
        assert!(r.max_eigenvalue_deviation() < 1e-10);
    }

    #[test]
    fn three_sites_top_eigenvalue() {
        for q in [0.5, 2.0] {
            let r = casimir_sectors(3, q).unwrap();
            let top = &r.sectors[0];
            assert_eq!(top.two_j, 3);
            let closed = q_number_real(3, q).unwrap() * q_number_real(5, q).unwrap();
            assert!((top.casimir_eigenvalue - closed).abs() < 1e-10);
        }
    }

    #[test]
    fn single_site() {
        let r = casimir_sectors(1, 3.0).unwrap();
        assert_eq!(r.multiplicities(), alloc::vec![(1, 1)]);
        assert!(symmetric_sector_check(1, 3.0, 1e-10).passed());
    }

    #[test]
    fn top_sector_matches_q_dicke() {
        let report = symmetric_sector_check(3, 2.0, 1e-10);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn undeformed_fixed_space() {
        let report = verify_decompose(4, 1.0, 1e-10);
        assert!(report.passed(), "{report:?}");
        assert!(report.checks.iter().any(|c| c.identity == "decompose.fixed_space_is_top_sector"));
    }

    #[test]
    fn too_many_sites() {
        assert_eq!(
            casimir_sectors(11, 2.0).unwrap_err(),
            Error::ResourceCap { n: 11, cap: MAX_SPECTRUM_SITES }
        );
    }
}
