//! The `emit`, `verify` and `spectrum` subcommands, independent of argument
//! parsing.

use std::fs;
use std::io::Write as _;
use std::str::FromStr;

use qsym_core::decompose::casimir_sectors;
use qsym_core::dicke::q_dicke;
use qsym_core::hecke::{hecke_generator, r_matrix_fundamental, r_matrix_site};
use qsym_core::metric::{metric_matrix, EXACT_PROJECTOR_CAP, NUMERIC_PROJECTOR_CAP};
use qsym_core::qscalar::{Backend, Exact, Numeric};
use qsym_core::suites::{Suite, SuiteConfig};
use qsym_core::symgroup::{c_tau, q_perm_rep, q_transposition, Permutation};

use crate::config::{BackendChoice, RunConfig};
use crate::error::{CliError, CliResult};
use crate::format::{render, Document, MatrixDoc, PermutationDoc, ReportDoc, SectorReportDoc, StateDoc, TextScalar};
use crate::parallel::{parallel_projector, run_suites};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitObject {
    QDicke,
    QTransposition,
    QPerm,
    RMatrix,
    Hecke,
    Projector,
    Metric,
    CTau,
}

impl EmitObject {
    pub const ALL: [EmitObject; 8] = [
        EmitObject::QDicke,
        EmitObject::QTransposition,
        EmitObject::QPerm,
        EmitObject::RMatrix,
        EmitObject::Hecke,
        EmitObject::Projector,
        EmitObject::Metric,
        EmitObject::CTau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EmitObject::QDicke => "qdicke",
            EmitObject::QTransposition => "qtransposition",
            EmitObject::QPerm => "qperm",
            EmitObject::RMatrix => "rmatrix",
            EmitObject::Hecke => "hecke",
            EmitObject::Projector => "projector",
            EmitObject::Metric => "metric",
            EmitObject::CTau => "ctau",
        }
    }
}

impl FromStr for EmitObject {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        EmitObject::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown object `{s}`")))
    }
}

/// Object-specific parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmitParams {
    pub m: Option<usize>,
    pub i: Option<usize>,
    /// One-based images of a permutation.
    pub images: Option<Vec<usize>>,
}

impl EmitParams {
    fn level(&self) -> CliResult<usize> {
        self.m.ok_or_else(|| CliError::Usage("qdicke needs --m".into()))
    }

    /// Adjacent index `i`; two-site chains default to `i = 1`.
    fn site(&self, n: usize, object: EmitObject) -> CliResult<usize> {
        match (self.i, n) {
            (Some(i), _) => Ok(i),
            (None, 2) => Ok(1),
            (None, _) => Err(CliError::Usage(format!("{} needs --i", object.name()))),
        }
    }

    fn permutation(&self, n: usize) -> CliResult<Permutation> {
        let images = self.images.as_deref().ok_or_else(|| CliError::Usage("qperm needs --perm".into()))?;
        if images.len() != n {
            return Err(CliError::Usage(format!("--perm has {} images for n = {n}", images.len())));
        }
        Ok(Permutation::from_one_based(images)?)
    }
}

fn emit_with<B: Backend>(object: EmitObject, params: &EmitParams, n: usize, backend: &B) -> CliResult<Document>
where
    B::Scalar: TextScalar,
{
    let tag = backend.tag();
    let matrix = |m: &qsym_core::sparse::SparseMatrix<B::Scalar>| Document::Matrix(MatrixDoc::new(object.name(), n, tag, m));
    let doc = match object {
        EmitObject::QDicke => Document::State(StateDoc::new(tag, &q_dicke(n, params.level()?, backend)?)),
        EmitObject::QTransposition => matrix(q_transposition(params.site(n, object)?, n, backend)?.matrix()),
        EmitObject::QPerm => {
            let sigma = params.permutation(n)?;
            let mut doc = MatrixDoc::new(object.name(), n, tag, q_perm_rep(&sigma, backend)?.matrix());
            doc.permutation = Some(PermutationDoc::new(&sigma)?);
            Document::Matrix(doc)
        }
        EmitObject::RMatrix if n == 2 && params.i.unwrap_or(1) == 1 => matrix(&r_matrix_fundamental(backend)?),
        EmitObject::RMatrix => matrix(r_matrix_site(params.site(n, object)?, n, backend)?.matrix()),
        EmitObject::Hecke => matrix(hecke_generator(params.site(n, object)?, n, backend)?.matrix()),
        EmitObject::Projector => {
            let cap = if backend.is_exact() { EXACT_PROJECTOR_CAP } else { NUMERIC_PROJECTOR_CAP };
            matrix(parallel_projector(n, backend, cap)?.matrix())
        }
        EmitObject::Metric => matrix(metric_matrix(n, backend)?.as_operator()?.matrix()),
        EmitObject::CTau => matrix(c_tau(n, backend)?.matrix()),
    };
    Ok(doc)
}

pub fn emit(object: EmitObject, params: &EmitParams, config: &RunConfig) -> CliResult<Document> {
    config.check_cap()?;
    match config.single_q()? {
        None => emit_with(object, params, config.n_sites, &Exact::new()),
        Some(q) => emit_with(object, params, config.n_sites, &Numeric::new(q)?),
    }
}

/// Suites selected by a `verify` argument.
pub fn suites_for(name: &str) -> CliResult<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    name.parse::<Suite>()
        .map(|s| vec![s])
        .map_err(|_| CliError::Usage(format!("unknown suite `{name}`")))
}

/// Run the named suites; the document reports overall pass/fail.
pub fn verify(name: &str, config: &RunConfig) -> CliResult<ReportDoc> {
    let suites = suites_for(name)?;
    config.check_cap()?;
    let suite_config = SuiteConfig {
        seed: config.seed,
        ..SuiteConfig::new(config.n_sites)
    };
    let report = run_suites(&suites, &suite_config, &config.backend);
    Ok(ReportDoc::new(name, config.n_sites, &report))
}

pub fn spectrum(config: &RunConfig) -> CliResult<Document> {
    config.check_cap()?;
    let q = match &config.backend {
        BackendChoice::Exact => return Err(CliError::Usage("spectrum needs a numeric --q".into())),
        BackendChoice::Numeric(_) => config.single_q()?.expect("numeric backend has a q"),
    };
    Ok(Document::Sectors(SectorReportDoc::from(&casimir_sectors(config.n_sites, q)?)))
}

/// Render and write to `--out` (or standard output).
pub fn write_document(doc: &Document, config: &RunConfig) -> CliResult<()> {
    let text = render(doc, config.format)?;
    match config.output_path() {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn object_names_parse() {
        for o in EmitObject::ALL {
            assert_eq!(o.name().parse::<EmitObject>().unwrap(), o);
        }
        assert!("bogus".parse::<EmitObject>().is_err());
    }

    #[test]
    fn missing_parameters_are_usage_errors() {
        let config = RunConfig::new(3, BackendChoice::Exact);
        for object in [EmitObject::QDicke, EmitObject::QTransposition, EmitObject::QPerm] {
            let err = emit(object, &EmitParams::default(), &config).unwrap_err();
            assert_eq!(err.exit_code(), crate::error::EXIT_USAGE, "{object:?}");
        }
    }

    #[test]
    fn projector_cap_exit_code() {
        let config = RunConfig::new(6, BackendChoice::Exact);
        let err = emit(EmitObject::Projector, &EmitParams::default(), &config).unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_CAP);
    }

    #[test]
    fn qperm_carries_its_diagram() {
        let config = RunConfig::new(3, BackendChoice::Exact);
        let params = EmitParams { images: Some(vec![3, 2, 1]), ..Default::default() };
        let Document::Matrix(doc) = emit(EmitObject::QPerm, &params, &config).unwrap() else {
            panic!("expected a matrix");
        };
        let p = doc.permutation.unwrap();
        assert_eq!(p.images, vec![3, 2, 1]);
        assert_eq!(p.diagram.m_counts, vec![-2, 0, 2]);
    }
}
