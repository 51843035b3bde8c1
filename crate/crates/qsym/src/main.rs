use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qsym::commands::{emit, spectrum, verify, write_document, EmitObject, EmitParams};
use qsym::config::{parse_images, parse_q_grid, BackendChoice, Format, RunConfig};
use qsym::error::{CliResult, EXIT_FAILED, EXIT_OK};
use qsym::format::Document;

#[derive(Debug, Parser)]
#[command(name = "qsym", version, about = "q-deformed symmetric subspace of qubit chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct one object and write it out.
    Emit {
        /// qdicke, qtransposition, qperm, rmatrix, hecke, projector, metric or ctau.
        object: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        /// One-based permutation images, e.g. `3,1,2`.
        #[arg(long)]
        perm: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run identity suites; exits 1 if any identity fails.
    Verify {
        /// site, coproduct, dicke, symgroup, hecke, metric, decompose, limit or all.
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Casimir sector table.
    Spectrum {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Number of sites.
    #[arg(long)]
    n: usize,
    /// q as a decimal or `p/q`; a comma-separated list runs a grid.
    #[arg(long, conflicts_with = "exact")]
    q: Option<String>,
    /// Exact Laurent arithmetic in q^(1/4) (default when --q is absent).
    #[arg(long)]
    exact: bool,
    /// json, csv or pretty.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the largest allowed chain for the chosen backend.
    #[arg(long = "max-n")]
    max_n: Option<usize>,
}

impl Common {
    fn config(&self) -> CliResult<RunConfig> {
        let backend = match &self.q {
            Some(q) if !self.exact => BackendChoice::Numeric(parse_q_grid(q)?),
            _ => BackendChoice::Exact,
        };
        Ok(RunConfig {
            format: self.format.parse::<Format>()?,
            max_n: self.max_n,
            seed: self.seed,
            out: self.out.clone(),
            ..RunConfig::new(self.n, backend)
        })
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Emit { object, m, i, perm, common } => {
            let config = common.config()?;
            let params = EmitParams {
                m,
                i,
                images: perm.as_deref().map(parse_images).transpose()?,
            };
            let doc = emit(object.parse::<EmitObject>()?, &params, &config)?;
            write_document(&doc, &config)?;
            Ok(EXIT_OK)
        }
        Command::Verify { suite, common } => {
            let config = common.config()?;
            let report = verify(&suite, &config)?;
            let pass = report.pass;
            write_document(&Document::Report(report), &config)?;
            Ok(if pass { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Spectrum { common } => {
            let config = common.config()?;
            write_document(&spectrum(&config)?, &config)?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qsym: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
