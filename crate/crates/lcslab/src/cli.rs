//! Argument parsing and the `run` entry point.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcslab_core::FieldSpec;
use serde::Serialize;

use crate::commands::{self, CmdError};
use crate::report::{write_atomic, Report};

#[derive(Parser, Debug)]
#[command(name = "lcslab", version, about = "Lower central series of free and finitely presented graded algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    #[value(alias = "q")]
    Exact,
    Modp,
}

#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct GlobalArgs {
    /// Coefficient field.
    #[arg(long, global = true, value_enum)]
    pub field: Option<FieldKind>,
    /// Prime for modular runs.
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    /// Second prime for cross-checked modular runs.
    #[arg(long, global = true)]
    pub second_prime: Option<u32>,
    /// Seed for random relations.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; falls back to LCSLAB_THREADS, then to all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Accept characteristic 2 or 3.
    #[arg(long, global = true)]
    pub allow_small_field: bool,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Exact series: necklaces, Witt numbers, Hilbert series, b and c series.
    Series {
        #[command(subcommand)]
        kind: SeriesKind,
    },
    /// Filtration table of the free algebra.
    FreeLcs(LcsArgs),
    /// Filtration table of a finitely presented algebra.
    QuotientLcs(QuotientArgs),
    /// Compare A_n with even differential forms under the star product.
    FsCheck(FsArgs),
    /// Ranks of the map from the free Lie algebra onto [A, A].
    Psi(PsiArgs),
    /// Exact identity suite and polylinear membership over several fields.
    VerifyIdentities,
    /// Reproduce the numbered experiments.
    Experiments(ExperimentArgs),
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    /// Necklace counts, degrees 1..=max.
    Necklaces {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        max: usize,
    },
    /// Witt numbers, degrees 1..=max.
    Witt {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        max: usize,
    },
    /// Hilbert series 1/(1 - n t + sum t^d_i), degrees 0..=max.
    Hilbert {
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        relations_degrees: Vec<usize>,
        #[arg(long)]
        max: usize,
    },
    /// Dimensions of A/[A, A] for a generic relation of degree d, degrees 1..=max.
    Bseries {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        max: usize,
    },
    /// Dimensions of [A, A] for a generic relation of degree d, degrees 0..=max.
    Cseries {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        max: usize,
    },
    /// Smallest k with 1/(1 - 2t + t^d + t^k) positive through max.
    Positivity {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = lcslab_core::series::DEFAULT_TRUNCATION)]
        max: usize,
    },
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct LcsArgs {
    /// Number of generators.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Truncation degree.
    #[arg(long = "max-deg", short = 'D', default_value_t = 8)]
    pub max_deg: usize,
    /// Largest filtration index.
    #[arg(long, default_value_t = 4)]
    pub i_max: usize,
    /// Also write the table as aligned TSV.
    #[arg(long)]
    pub tsv: Option<PathBuf>,
    /// Skip the structural checks.
    #[arg(long)]
    pub no_checks: bool,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct RelationInput {
    /// Relation file.
    #[arg(long, conflicts_with = "random")]
    pub relations: Option<PathBuf>,
    /// Degrees of random relations.
    #[arg(long, value_delimiter = ',')]
    pub random: Option<Vec<usize>>,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct QuotientArgs {
    #[command(flatten)]
    pub lcs: LcsArgs,
    #[command(flatten)]
    pub input: RelationInput,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct FsArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long = "max-deg", short = 'D', default_value_t = 8)]
    pub max_deg: usize,
    /// Largest degree for the kernel-of-ζ check; defaults to min(max-deg, 6).
    #[arg(long)]
    pub zeta_max: Option<usize>,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct PsiArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Degrees of random relations.
    #[arg(long, value_delimiter = ',', conflicts_with = "relations", alias = "random")]
    pub relations_degrees: Option<Vec<usize>>,
    /// Relation file.
    #[arg(long)]
    pub relations: Option<PathBuf>,
    /// Degree or range `lo..hi` (inclusive).
    #[arg(long, value_parser = parse_range)]
    pub deg: (usize, usize),
    /// Seed of the second run; defaults to seed + 1.
    #[arg(long)]
    pub second_seed: Option<u64>,
    /// One seed and one prime only.
    #[arg(long)]
    pub single: bool,
    /// Skip measuring dim [A, A][d].
    #[arg(long)]
    pub no_c: bool,
    /// Permit degrees above 19.
    #[arg(long)]
    pub allow_high_degree: bool,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct ExperimentArgs {
    /// Criteria to run, e.g. `1,2,12`; all by default.
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<usize>>,
    /// Include the degree 17..19 runs.
    #[arg(long)]
    pub extended: bool,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad degree `{t}`"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let d = parse(s)?;
            (d, d)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Everything a run depends on; embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub args: serde_json::Value,
    pub field: Option<String>,
    pub prime: u32,
    pub second_prime: u32,
    pub seed: u64,
    pub threads: usize,
    pub out: Option<PathBuf>,
}

impl GlobalArgs {
    pub fn prime(&self) -> u32 {
        self.prime.unwrap_or(FieldSpec::DEFAULT_PRIME)
    }

    pub fn second_prime(&self) -> u32 {
        self.second_prime.unwrap_or(FieldSpec::SECOND_PRIME)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(1)
    }

    /// The requested field, or `default` when none was given. A bare
    /// `--prime` selects modular arithmetic.
    pub fn field_spec(&self, default: FieldKind) -> Result<FieldSpec, CmdError> {
        let kind = match (self.field, self.prime) {
            (Some(k), _) => k,
            (None, Some(_)) => FieldKind::Modp,
            (None, None) => default,
        };
        let spec = match kind {
            FieldKind::Exact => FieldSpec::Rational,
            FieldKind::Modp => FieldSpec::Prime(self.prime()),
        };
        spec.validate(self.allow_small_field).map_err(|e| CmdError::Usage(e.to_string()))?;
        Ok(spec)
    }
}

pub fn thread_budget(flag: Option<usize>) -> usize {
    flag.filter(|&t| t > 0)
        .or_else(|| std::env::var("LCSLAB_THREADS").ok().and_then(|v| v.trim().parse().ok()).filter(|&t: &usize| t > 0))
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Series { .. } => "series",
        Command::FreeLcs(_) => "free-lcs",
        Command::QuotientLcs(_) => "quotient-lcs",
        Command::FsCheck(_) => "fs-check",
        Command::Psi(_) => "psi",
        Command::VerifyIdentities => "verify-identities",
        Command::Experiments(_) => "experiments",
    }
}

/// Result of one invocation: exit code, the report (absent on usage
/// errors) and the text destined for stdout and stderr.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<Report>,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command without
/// touching the process streams.
pub fn run_captured<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, report: None, stdout, stderr };
        }
    };
    execute(cli)
}

pub fn execute(cli: Cli) -> Outcome {
    let threads = thread_budget(cli.global.threads);
    let config = RunConfig {
        command: command_name(&cli.command).to_string(),
        args: serde_json::to_value(&cli.command).unwrap_or(serde_json::Value::Null),
        field: cli.global.field.map(|f| format!("{f:?}").to_lowercase()),
        prime: cli.global.prime(),
        second_prime: cli.global.second_prime(),
        seed: cli.global.seed(),
        threads,
        out: cli.global.out.clone(),
    };
    let mut report = Report::new(config);
    let mut stdout = String::new();
    let mut stderr = String::new();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome { code: 3, report: None, stdout, stderr: format!("error: thread pool: {e}\n") };
        }
    };
    let result = pool.install(|| commands::dispatch(&cli, &mut report, &mut stdout));
    report.finish();
    let code = match result {
        Ok(()) if report.failed() => 1,
        Ok(()) => 0,
        Err(CmdError::Usage(msg)) => {
            stderr.push_str(&format!("error: {msg}\n"));
            return Outcome { code: 2, report: None, stdout, stderr };
        }
        Err(e) => {
            report.error = Some(e.to_string());
            stderr.push_str(&format!("error: {e}\n"));
            e.exit_code()
        }
    };
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &report.to_json()) {
                stderr.push_str(&format!("error: writing {}: {e}\n", path.display()));
                return Outcome { code: 3, report: Some(report), stdout, stderr };
            }
            stderr.push_str(&report.summary());
        }
        None if stdout.is_empty() => {
            stdout = report.to_json();
            stdout.push('\n');
        }
        None => stderr.push_str(&report.summary()),
    }
    Outcome { code, report: Some(report), stdout, stderr }
}

/// Runs with the process arguments, printing to the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let out = run_captured(argv);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("14..19"), Ok((14, 19)));
        assert_eq!(parse_range("14..=19"), Ok((14, 19)));
        assert_eq!(parse_range("16"), Ok((16, 16)));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn field_resolution() {
        let mut g = GlobalArgs::default();
        assert_eq!(g.field_spec(FieldKind::Exact).unwrap(), FieldSpec::Rational);
        g.prime = Some(101);
        assert_eq!(g.field_spec(FieldKind::Exact).unwrap(), FieldSpec::Prime(101));
        g.prime = Some(3);
        assert!(g.field_spec(FieldKind::Exact).is_err());
        g.allow_small_field = true;
        assert_eq!(g.field_spec(FieldKind::Exact).unwrap(), FieldSpec::Prime(3));
        g.prime = Some(100);
        assert!(g.field_spec(FieldKind::Exact).is_err());
    }

    #[test]
    fn thread_flag_wins() {
        assert_eq!(thread_budget(Some(3)), 3);
        assert!(thread_budget(None) >= 1);
    }
}
