//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::genbinom::{gen_binom_bruteforce_all, row_gen_poly, DEFAULT_ORACLE_LIMIT};
use crate::identities::{IdentityCase, IdentityId};
use crate::partitions::{enumerate_partitions, z_value, Partition};
use crate::verifier::{run_sweep, FormSelection, InclusiveRange, Report, SweepConfig, SweepError, Verifier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "pident", version, about = "Exact checks of partition-sum identities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Human, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the partitions of n, optionally restricted by length.
    Partitions {
        n: u32,
        /// Length filter, `L` or `a..b`.
        #[arg(long)]
        len: Option<InclusiveRange>,
    },
    /// Print z_λ for a partition such as `2+1+1`.
    Zvalue { partition: Partition },
    /// Print the generalized binomial coefficient ⟨λ, r⟩.
    Genbinom {
        partition: Partition,
        r: usize,
        /// Print the whole table ⟨λ,0⟩ .. ⟨λ,|λ|⟩ instead.
        #[arg(long)]
        all: bool,
        /// Cross-check against brute-force subset counting.
        #[arg(long)]
        check: bool,
    },
    /// Evaluate both sides of one case, e.g. `CONJ2(n=2,s=2,form=SIGNED)`.
    Identity {
        case: IdentityCase,
        /// Evaluate boundary cases instead of marking them SKIPPED.
        #[arg(long)]
        no_skip: bool,
    },
    /// Run a parameter sweep and report every case.
    Sweep(SweepArgs),
}

#[derive(Debug, clap::Args)]
struct SweepArgs {
    /// JSON sweep configuration; flags given alongside override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated identity ids, e.g. `CONJ1,CONJ3`.
    #[arg(long, value_delimiter = ',')]
    ids: Option<Vec<IdentityId>>,
    #[arg(long)]
    n: Option<InclusiveRange>,
    #[arg(long)]
    r: Option<InclusiveRange>,
    #[arg(long)]
    s: Option<InclusiveRange>,
    /// SIGNED, UNSIGNED or BOTH.
    #[arg(long)]
    form: Option<FormSelection>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    oracle_limit: Option<u32>,
    /// Evaluate boundary cases instead of marking them SKIPPED.
    #[arg(long)]
    no_skip: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, hide = true)]
    perturb_rhs: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Runs the CLI with process stdout/stderr and returns the exit code: 0 on
/// success, 1 when a counterexample is found, 2 on malformed input.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Partitions { n, len } => {
            let (min_len, max_len) = match len {
                Some(range) => (range.lo as usize, Some(range.hi as usize)),
                None => (0, None),
            };
            let list = enumerate_partitions(n, min_len, max_len);
            match format {
                OutputFormat::Human => {
                    for lambda in &list {
                        writeln!(out, "{lambda}")?;
                    }
                }
                OutputFormat::Json => {
                    let text: Vec<String> = list.iter().map(Partition::to_string).collect();
                    writeln!(out, "{}", serde_json::to_string(&text).expect("string list"))?;
                }
                OutputFormat::Csv => {
                    writeln!(out, "partition,length,z")?;
                    for lambda in &list {
                        writeln!(out, "{lambda},{},{}", lambda.length(), z_value(lambda))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Zvalue { partition } => {
            writeln!(out, "{}", z_value(&partition))?;
            Ok(0)
        }
        Command::Genbinom {
            partition,
            r,
            all,
            check,
        } => {
            let table = row_gen_poly(&partition);
            if check {
                let counts = gen_binom_bruteforce_all(&partition, DEFAULT_ORACLE_LIMIT)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let agrees = counts
                    .iter()
                    .enumerate()
                    .all(|(k, &c)| table.coeff(k) == num_bigint::BigUint::from(c));
                if !agrees {
                    writeln!(out, "MISMATCH against brute force")?;
                    return Ok(1);
                }
            }
            if all {
                let values: Vec<String> = table.coeffs().iter().map(ToString::to_string).collect();
                match format {
                    OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&values).expect("list"))?,
                    _ => writeln!(out, "{}", values.join(","))?,
                }
            } else {
                writeln!(out, "{}", table.coeff(r))?;
            }
            Ok(0)
        }
        Command::Identity { case, no_skip } => {
            let verifier = Verifier::with_options(!no_skip, false);
            let result = verifier.compare_case(&case);
            match format {
                OutputFormat::Human => {
                    if let (Some(lhs), Some(rhs)) = (&result.lhs, &result.rhs) {
                        writeln!(out, "LHS = {lhs}")?;
                        writeln!(out, "RHS = {rhs}")?;
                    }
                    writeln!(out, "{}", result.status)?;
                }
                OutputFormat::Json => {
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&result).expect("case result")
                    )?;
                }
                OutputFormat::Csv => {
                    let report = Report {
                        config: SweepConfig::new(
                            [case.id()],
                            InclusiveRange::single(case.n()),
                            InclusiveRange::single(case.r().unwrap_or(1)),
                            InclusiveRange::single(case.s().unwrap_or(1)),
                            FormSelection::Both,
                        ),
                        results: vec![result.clone()],
                        summary: Default::default(),
                        total_ms: result.elapsed_ms,
                    };
                    write!(out, "{}", report.to_csv())?;
                }
            }
            Ok(i32::from(
                result.status == crate::verifier::CaseStatus::Counterexample,
            ))
        }
        Command::Sweep(args) => sweep(args, format, out),
    }
}

fn sweep_config(args: &SweepArgs) -> Result<SweepConfig, CliError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<SweepConfig>(&text)
                .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))?
        }
        None => {
            let ids = args
                .ids
                .clone()
                .ok_or_else(|| CliError::Usage("--ids is required without --config".into()))?;
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("--n is required without --config".into()))?;
            SweepConfig::new(
                ids,
                n,
                args.r.unwrap_or(InclusiveRange::single(1)),
                args.s.unwrap_or(InclusiveRange::single(1)),
                args.form.unwrap_or(FormSelection::Both),
            )
        }
    };
    if args.config.is_some() {
        if let Some(ids) = &args.ids {
            config.identity_ids = ids.iter().copied().collect();
        }
        if let Some(n) = args.n {
            config.n_range = n;
        }
        if let Some(r) = args.r {
            config.r_range = r;
        }
        if let Some(s) = args.s {
            config.s_range = s;
        }
        if let Some(form) = args.form {
            config.form = form;
        }
    }
    if let Some(workers) = args.workers {
        config.worker_count = workers;
    }
    if let Some(limit) = args.oracle_limit {
        config.oracle_limit = limit;
    }
    if args.no_skip {
        config.skip_conventional = false;
    }
    if args.perturb_rhs {
        config.perturb_rhs = true;
    }
    Ok(config)
}

fn render_human(report: &Report) -> String {
    let s = &report.summary;
    let mut text = format!(
        "{} cases: {} verified, {} counterexamples, {} skipped ({:.1} ms)\n",
        report.results.len(),
        s.verified,
        s.counterexamples,
        s.skipped,
        report.total_ms
    );
    for bad in report.counterexamples() {
        let side = |v: &Option<crate::identities::SideValue>| {
            v.as_ref().map(ToString::to_string).unwrap_or_default()
        };
        text.push_str(&format!(
            "COUNTEREXAMPLE {}: LHS = {}, RHS = {}\n",
            bad.case,
            side(&bad.lhs),
            side(&bad.rhs)
        ));
    }
    text
}

fn sweep(args: SweepArgs, format: OutputFormat, out: &mut dyn Write) -> Result<i32, CliError> {
    let config = sweep_config(&args)?;
    let report = run_sweep(&config)?;
    let body = match format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Human if args.out.is_some() => report.to_json() + "\n",
        OutputFormat::Human => render_human(&report),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, body)?;
            write!(out, "{}", render_human(&report))?;
        }
        None => write!(out, "{body}")?,
    }
    Ok(report.exit_code())
}
