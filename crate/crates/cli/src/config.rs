//! Command-line arguments and their resolution into a validated run configuration.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use growth_core::families::{build_family_with, load_explicit};
use growth_core::{FamilySpec, GrowthOptions, GrowthProblem};

use crate::error::CliError;
use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "growth", version, about = "Growth of tensor powers in based algebras")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Built-in family (fibonacci, sl2, sl3-vector, gl2-vector, klein-four, sl2-f2, psl2-f7-cutoff, star, jordan, line-Z, young-lattice).
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Family parameter, e.g. `lambda=2` or `n=25`. Repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE", global = true)]
    pub params: Vec<String>,
    /// Highest weight of the sl2 generator (same as `--param lambda=`).
    #[arg(long, global = true)]
    pub lambda_weight: Option<u32>,
    /// Jordan parameter (same as `--param alpha=`).
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    /// Number of terms.
    #[arg(short = 'N', long = "n", global = true)]
    pub n: Option<usize>,
    /// Cutoff depth.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Convergence tolerance of the command.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Verdict threshold, e.g. `divergence=5` or `delta=0.02`. Repeatable.
    #[arg(long = "threshold", value_name = "KEY=VALUE", global = true)]
    pub thresholds: Vec<String>,
    /// Output directory.
    #[arg(long, default_value = ".", global = true)]
    pub out: PathBuf,
    /// Output formats; all applicable ones when omitted.
    #[arg(long, value_enum, value_delimiter = ',', global = true)]
    pub format: Vec<Format>,
    /// Graph in the JSON interchange format instead of a family.
    #[arg(long, global = true)]
    pub matrix: Option<PathBuf>,
    /// 0-based index of the distinguished vertex in `--matrix`.
    #[arg(long, global = true)]
    pub unit: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact summand counts b_n.
    Bn {
        /// Also tabulate b_n·λ^{-n} for these λ (comma separated, exact decimals or p/q).
        #[arg(long, value_delimiter = ',')]
        normalize: Vec<String>,
    },
    /// PF eigenvalues along the naive filtration and their limit.
    Pfdim,
    /// Class structure of a cutoff and recurrence verdict of the walk.
    Classify {
        /// Growth rate used to weight returns; defaults to the known or estimated rate.
        #[arg(long)]
        rate: Option<String>,
    },
    /// Asymptotic model a(n) and its agreement with b_n.
    Fit {
        /// Cutoff depths for infinite problems (comma separated, increasing).
        #[arg(long, value_delimiter = ',')]
        schedule: Vec<usize>,
    },
    /// Cutoff graph in the JSON interchange format.
    Dump,
    /// Regenerate the data and plot of a figure.
    Reproduce {
        #[arg(value_enum)]
        figure: Figure,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Sl2Logplots,
    ZVsHalfline,
    Sl3Heatmaps,
    KleinPlots,
    Psl2f7Plots,
}

pub enum Source {
    Family(FamilySpec),
    Matrix { path: PathBuf, unit: Option<usize> },
}

/// Validated configuration shared by all commands.
pub struct RunConfig {
    pub source: Option<Source>,
    pub n: Option<usize>,
    pub depth: Option<usize>,
    pub tol: Option<f64>,
    pub thresholds: BTreeMap<String, String>,
    pub out: PathBuf,
    pub formats: Vec<Format>,
    pub options: GrowthOptions,
}

fn key_values(items: &[String], what: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{what} must look like key=value, got {item:?}")))?;
        if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::Usage(format!("{what} {k:?} given twice")));
        }
    }
    Ok(map)
}

impl RunConfig {
    pub fn from_args(a: &CommonArgs) -> Result<Self, CliError> {
        let mut params = key_values(&a.params, "--param")?;
        if let Some(l) = a.lambda_weight {
            params.insert("lambda".into(), l.to_string());
        }
        if let Some(alpha) = &a.alpha {
            params.insert("alpha".into(), alpha.clone());
        }
        let source = match (&a.family, &a.matrix) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give either --family or --matrix, not both".into())),
            (Some(name), None) => Some(Source::Family(FamilySpec::from_name(name, &params)?)),
            (None, Some(path)) => {
                if !params.is_empty() {
                    return Err(CliError::Usage("family parameters do not apply to --matrix".into()));
                }
                Some(Source::Matrix { path: path.clone(), unit: a.unit })
            }
            (None, None) => None,
        };
        if a.unit.is_some() && a.matrix.is_none() {
            return Err(CliError::Usage("--unit only applies to --matrix".into()));
        }
        if a.n == Some(0) {
            return Err(CliError::Usage("-N must be positive".into()));
        }
        if let Some(t) = a.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
            }
        }
        Ok(RunConfig {
            source,
            n: a.n,
            depth: a.depth,
            tol: a.tol,
            thresholds: key_values(&a.thresholds, "--threshold")?,
            out: a.out.clone(),
            formats: a.format.clone(),
            options: GrowthOptions::from_env()?,
        })
    }

    pub fn problem(&self) -> Result<GrowthProblem, CliError> {
        match &self.source {
            Some(Source::Family(spec)) => Ok(build_family_with(spec, self.options.clone())?),
            Some(Source::Matrix { path, unit }) => Ok(load_explicit(path, *unit, self.options.clone())?),
            None => Err(CliError::Usage("this command needs --family or --matrix".into())),
        }
    }

    pub fn family_spec(&self) -> Option<&FamilySpec> {
        match &self.source {
            Some(Source::Family(spec)) => Some(spec),
            _ => None,
        }
    }

    /// Takes a threshold value, failing on unparsable input; unknown keys are reported by `finish_thresholds`.
    pub fn threshold<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>, CliError> {
        match self.thresholds.remove(key) {
            None => Ok(None),
            Some(v) => {
                v.parse().map(Some).map_err(|_| CliError::Usage(format!("threshold {key} has an invalid value {v:?}")))
            }
        }
    }

    pub fn finish_thresholds(&self, known: &[&str]) -> Result<(), CliError> {
        match self.thresholds.keys().next() {
            None => Ok(()),
            Some(k) => Err(CliError::Usage(format!("unknown threshold {k:?}; this command accepts {}", known.join(", ")))),
        }
    }
}

/// Builds a family with default options, for figure reproduction.
pub fn family(spec: FamilySpec, options: &GrowthOptions) -> Result<GrowthProblem, CliError> {
    Ok(build_family_with(&spec, options.clone())?)
}
