//! Run configuration shared by every subcommand.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use qsym_core::qscalar::{parse_rational, rational_to_f64, BackendTag};

use crate::error::{CliError, CliResult};

/// Environment variable naming a directory that relative `--out` paths
/// resolve against.
pub const OUTPUT_DIR_VAR: &str = "QSYM_OUTPUT_DIR";

/// Default chain caps: exact arithmetic grows much faster than `f64`.
pub const DEFAULT_EXACT_MAX_N: usize = 8;
pub const DEFAULT_NUMERIC_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum BackendChoice {
    Exact,
    /// One or more values of `q`, run in the given order.
    Numeric(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            other => Err(CliError::Usage(format!("unknown format `{other}` (json, csv, pretty)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n_sites: usize,
    pub backend: BackendChoice,
    pub format: Format,
    /// Overrides the backend's default chain cap.
    pub max_n: Option<usize>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(n_sites: usize, backend: BackendChoice) -> Self {
        Self {
            n_sites,
            backend,
            format: Format::Json,
            max_n: None,
            seed: 0,
            out: None,
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n.unwrap_or(match self.backend {
            BackendChoice::Exact => DEFAULT_EXACT_MAX_N,
            BackendChoice::Numeric(_) => DEFAULT_NUMERIC_MAX_N,
        })
    }

    pub fn check_cap(&self) -> CliResult<()> {
        if self.n_sites == 0 {
            return Err(CliError::Core(qsym_core::Error::ZeroSites));
        }
        let cap = self.max_n();
        if self.n_sites > cap {
            return Err(CliError::Cap { n: self.n_sites, cap });
        }
        Ok(())
    }

    /// The single `q` of a numeric run; grids are rejected.
    pub fn single_q(&self) -> CliResult<Option<f64>> {
        match &self.backend {
            BackendChoice::Exact => Ok(None),
            BackendChoice::Numeric(qs) if qs.len() == 1 => Ok(Some(qs[0])),
            BackendChoice::Numeric(_) => Err(CliError::Usage("this command takes a single --q".into())),
        }
    }

    pub fn tags(&self) -> Vec<BackendTag> {
        match &self.backend {
            BackendChoice::Exact => vec![BackendTag::Exact],
            BackendChoice::Numeric(qs) => qs.iter().map(|&q| BackendTag::Numeric(q)).collect(),
        }
    }

    /// Output path after applying [`OUTPUT_DIR_VAR`] to relative paths.
    pub fn output_path(&self) -> Option<PathBuf> {
        let out = self.out.as_deref()?;
        Some(resolve_output(out, std::env::var_os(OUTPUT_DIR_VAR).as_deref().map(Path::new)))
    }
}

fn resolve_output(out: &Path, dir: Option<&Path>) -> PathBuf {
    match dir {
        Some(dir) if out.is_relative() => dir.join(out),
        _ => out.to_path_buf(),
    }
}

/// `q` as a decimal or `p/q`, parsed as an exact rational before rounding.
pub fn parse_q(text: &str) -> CliResult<f64> {
    let exact = parse_rational(text.trim())?;
    let q = rational_to_f64(&exact);
    if !(q > 0.0 && q.is_finite()) {
        return Err(CliError::Core(qsym_core::Error::NonPositiveQ(q)));
    }
    Ok(q)
}

/// Comma-separated grid of `q` values.
pub fn parse_q_grid(text: &str) -> CliResult<Vec<f64>> {
    text.split(',').map(parse_q).collect()
}

/// One-based permutation images, comma-separated.
pub fn parse_images(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad permutation image `{t}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_forms() {
        assert_eq!(parse_q("1/3").unwrap(), 1.0 / 3.0);
        assert_eq!(parse_q("0.5").unwrap(), 0.5);
        assert_eq!(parse_q("2").unwrap(), 2.0);
        assert!(parse_q("0").is_err());
        assert!(parse_q("-1/2").is_err());
        assert!(parse_q("abc").is_err());
        assert_eq!(parse_q_grid("1/2,2").unwrap(), vec![0.5, 2.0]);
    }

    #[test]
    fn caps() {
        let mut c = RunConfig::new(9, BackendChoice::Exact);
        assert!(matches!(c.check_cap(), Err(CliError::Cap { n: 9, cap: 8 })));
        c.max_n = Some(9);
        assert!(c.check_cap().is_ok());
        c.n_sites = 0;
        assert!(c.check_cap().is_err());
    }

    #[test]
    fn output_directory_override() {
        let dir = Path::new("/tmp/x");
        assert_eq!(resolve_output(Path::new("a.json"), Some(dir)), dir.join("a.json"));
        assert_eq!(resolve_output(Path::new("/abs.json"), Some(dir)), PathBuf::from("/abs.json"));
        assert_eq!(resolve_output(Path::new("a.json"), None), PathBuf::from("a.json"));
    }
}
