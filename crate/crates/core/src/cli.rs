//! Command-line front end. Exit codes: 0 success, 1 verification mismatch,
//! 2 I/O or parse error, 3 invalid input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::benchmarks::{build, BenchError, Family, FamilyOptions};
use crate::circuit::json::from_json;
use crate::circuit::{Circuit, CircuitError};
use crate::decompose::expand;
use crate::linalg::{circuit_unitary, phase_distance, MAX_UNITARY_QUBITS};
use crate::noise::{build_fidelity_table, run_monte_carlo, McRow, NoiseError, Scenario};
use crate::plot::{depth_chart, fidelity_chart};
use crate::report::{
    depth_rows, ordering_violations, read_csv, suite_infidelity, write_csv, DepthRow, ReportError,
    Scheduler,
};
use crate::schedule::{asap_schedule, ExcludeRule, ScheduledCircuit};
use crate::synthesis::{
    reference_controlled_u, serialized_schedule, synth_controlled_u, ControlledUSpec,
    SynthesisError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => EXIT_IO,
            CliError::Invalid(_) => EXIT_INVALID,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        invalid(e)
    }
}

impl From<NoiseError> for CliError {
    fn from(e: NoiseError) -> Self {
        invalid(e)
    }
}

impl From<SynthesisError> for CliError {
    fn from(e: SynthesisError) -> Self {
        invalid(e)
    }
}

fn report_err(path: Option<&Path>, e: ReportError) -> CliError {
    let path = path.map_or_else(|| PathBuf::from("<output>"), Path::to_path_buf);
    match e {
        ReportError::Io(source) => CliError::Io { path, source },
        ReportError::Csv(c) if c.is_io_error() => CliError::Io {
            path,
            source: std::io::Error::other(c.to_string()),
        },
        ReportError::Csv(c) => CliError::Parse {
            path,
            message: c.to_string(),
        },
        other => invalid(other),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "fanout",
    version,
    about = "Fan-out based Controlled-U synthesis, scheduling and noise estimates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile controlled-U from a circuit JSON file into a scheduled circuit.
    Synth(SynthArgs),
    /// Check two circuits for equality up to global phase.
    Verify(VerifyArgs),
    /// Write one benchmark circuit as scheduled JSON.
    Gen(GenArgs),
    /// Depth table for a benchmark family.
    BenchDepth(BenchDepthArgs),
    /// Monte Carlo GHZ fidelity, simultaneous versus serial fan-out.
    Noise(NoiseArgs),
    /// Gate-fidelity-product infidelity for the five comparison benchmarks.
    Infidelity(InfidelityArgs),
    /// Render a depth or noise CSV as SVG.
    Plot(PlotArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Shared-control templates with fan-out.
    Simultaneous,
    /// Each controlled gate expanded and scheduled on its own.
    Serial,
    /// Expanded gate-by-gate reference, ASAP scheduled.
    Asap,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// Control qubit; must not be used by the input circuit.
    #[arg(long)]
    pub control: usize,
    #[arg(long, value_enum, default_value_t = Method::Simultaneous)]
    pub method: Method,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Gates per layer for the layered Hadamard-test circuits.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Implicit memory word size.
    #[arg(long)]
    pub bitwidth: Option<usize>,
}

impl FamilyArgs {
    fn options(&self) -> FamilyOptions {
        FamilyOptions {
            depth: self.depth,
            seed: self.seed,
            bitwidth: self.bitwidth,
            data: None,
        }
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub size: usize,
    #[arg(long)]
    pub output: PathBuf,
    #[command(flatten)]
    pub family_args: FamilyArgs,
}

#[derive(Args, Debug)]
pub struct BenchDepthArgs {
    /// Family name, or `all`.
    #[arg(long)]
    pub family: String,
    /// `A..B` (inclusive), `A..=B`, a single value or a comma list.
    #[arg(long, default_value = "1..4")]
    pub sizes: String,
    #[arg(
        long,
        default_value = "simultaneous,asap,serialized,formula:coarse,formula:qram,formula:qrom"
    )]
    pub schedulers: String,
    /// Depth exclusions such as `h` or `h@0`; an empty string counts everything.
    #[arg(long)]
    pub exclude: Option<String>,
    /// CSV path; standard output if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub family_args: FamilyArgs,
}

#[derive(Args, Debug)]
pub struct NoiseArgs {
    /// Scenario name, or `all`.
    #[arg(long, default_value = "current")]
    pub scenario: String,
    /// Fan-out sizes N.
    #[arg(long, default_value = "2..8")]
    pub sizes: String,
    #[arg(long, default_value_t = 100_000)]
    pub shots: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InfidelityArgs {
    /// Scenario name, or `all`.
    #[arg(long, default_value = "all")]
    pub scenario: String,
    #[arg(long, default_value_t = 100_000)]
    pub shots: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Depth,
    Fidelity,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, value_enum)]
    pub kind: PlotKind,
}

/// Parses `A..B` (inclusive), `A..=B`, `N` or `a,b,c`.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || invalid(format!("bad size list `{s}`"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let out = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and validates a circuit file. Diagnostics go to standard error.
pub fn load_circuit(path: &Path) -> Result<Circuit, CliError> {
    let c = from_json(&read_text(path)?).map_err(|e| match e {
        CircuitError::Parse { .. } | CircuitError::Version(_) => CliError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        },
        other => invalid(format!("{}: {other}", path.display())),
    })?;
    let diags = c.validate();
    if !diags.is_empty() {
        for d in &diags {
            eprintln!("{}: {d}", path.display());
        }
        return Err(invalid(format!("{}: invalid circuit", path.display())));
    }
    Ok(c)
}

fn with_output<F>(path: Option<&Path>, f: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), ReportError>,
{
    match path {
        Some(p) => {
            let file = fs::File::create(p).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            let mut w = std::io::BufWriter::new(file);
            f(&mut w).map_err(|e| report_err(Some(p), e))?;
            w.flush().map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock).map_err(|e| report_err(None, e))
        }
    }
}

fn scenarios(s: &str) -> Result<Vec<Scenario>, CliError> {
    if s == "all" {
        Ok(Scenario::ALL.to_vec())
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(CliError::from))
            .collect()
    }
}

pub fn cmd_synth(args: &SynthArgs) -> Result<ScheduledCircuit, CliError> {
    let u = load_circuit(&args.input)?;
    let spec = ControlledUSpec::new(args.control, u)?;
    let s = match args.method {
        Method::Simultaneous => synth_controlled_u(&spec)?,
        Method::Serial => serialized_schedule(&spec)?,
        Method::Asap => {
            let mut s = asap_schedule(&expand(&reference_controlled_u(&spec)?));
            s.num_qubits = spec.width();
            s
        }
    };
    let label = format!("controlled {} ({:?})", spec.u_circuit.label, args.method).to_lowercase();
    write_text(&args.output, &s.to_json(label.trim()))?;
    Ok(s)
}

/// Returns the maximum deviation and whether it is within `tol`.
pub fn cmd_verify(args: &VerifyArgs) -> Result<(f64, bool), CliError> {
    let a = load_circuit(&args.a)?;
    let b = load_circuit(&args.b)?;
    if a.num_qubits != b.num_qubits {
        return Err(invalid(format!(
            "width mismatch: {} vs {}",
            a.num_qubits, b.num_qubits
        )));
    }
    if a.num_qubits > MAX_UNITARY_QUBITS {
        return Err(invalid(format!(
            "{} qubits exceeds the limit of {MAX_UNITARY_QUBITS}",
            a.num_qubits
        )));
    }
    if a.has_measurement() || b.has_measurement() {
        return Err(invalid("circuits with MEASURE have no unitary"));
    }
    let ua = circuit_unitary(&a).map_err(invalid)?;
    let ub = circuit_unitary(&b).map_err(invalid)?;
    let dev = phase_distance(&ua, &ub).map_err(invalid)?;
    Ok((dev, dev <= args.tol))
}

pub fn cmd_gen(args: &GenArgs) -> Result<ScheduledCircuit, CliError> {
    let family: Family = args.family.parse()?;
    let b = build(family, args.size, &args.family_args.options())?;
    let s = b.simultaneous();
    write_text(&args.output, &s.to_json(&format!("{family} {}", args.size)))?;
    Ok(s)
}

pub fn cmd_bench_depth(args: &BenchDepthArgs) -> Result<Vec<DepthRow>, CliError> {
    let families = if args.family == "all" {
        Family::ALL.to_vec()
    } else {
        vec![args.family.parse()?]
    };
    let sizes = parse_sizes(&args.sizes)?;
    let schedulers = Scheduler::parse_list(&args.schedulers).map_err(invalid)?;
    let exclude = args
        .exclude
        .as_deref()
        .map(ExcludeRule::parse_list)
        .transpose()
        .map_err(invalid)?;
    let opts = args.family_args.options();
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for f in families {
        let ex = exclude.clone().unwrap_or_else(|| f.default_exclusions());
        notes.push(format!("{f}={}", ExcludeRule::format_list(&ex)));
        rows.extend(depth_rows(f, &sizes, &schedulers, Some(&ex), &opts).map_err(invalid)?);
    }
    for (f, size) in ordering_violations(&rows) {
        eprintln!("warning: {f} size {size} breaks simultaneous <= asap <= serialized");
    }
    let comment = format!("exclude {}", notes.join(" "));
    with_output(args.output.as_deref(), |w| {
        write_csv(&rows, w, Some(&comment))
    })?;
    Ok(rows)
}

pub fn cmd_noise(args: &NoiseArgs) -> Result<Vec<McRow>, CliError> {
    let ns = parse_sizes(&args.sizes)?;
    let mut rows = Vec::new();
    for sc in scenarios(&args.scenario)? {
        rows.extend(run_monte_carlo(&ns, sc, args.shots, args.seed)?);
    }
    with_output(args.output.as_deref(), |w| write_csv(&rows, w, None))?;
    Ok(rows)
}

pub fn cmd_infidelity(args: &InfidelityArgs) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for sc in scenarios(&args.scenario)? {
        let table = build_fidelity_table(sc, args.shots, args.seed)?;
        rows.extend(suite_infidelity(&table, args.seed).map_err(invalid)?);
    }
    with_output(args.output.as_deref(), |w| write_csv(&rows, w, None))
}

pub fn cmd_plot(args: &PlotArgs) -> Result<(), CliError> {
    let text = read_text(&args.input)?;
    let parse_err = |e: ReportError| report_err(Some(&args.input), e);
    let chart = match args.kind {
        PlotKind::Depth => {
            let rows: Vec<DepthRow> = read_csv(text.as_bytes()).map_err(parse_err)?;
            if rows.is_empty() {
                return Err(invalid("no rows to plot"));
            }
            depth_chart(&rows)
        }
        PlotKind::Fidelity => {
            let rows: Vec<McRow> = read_csv(text.as_bytes()).map_err(parse_err)?;
            if rows.is_empty() {
                return Err(invalid("no rows to plot"));
            }
            fidelity_chart(&rows)
        }
    };
    write_text(&args.output, &chart.to_svg())
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Synth(a) => cmd_synth(a).map(|s| {
            eprintln!("{} moments written to {}", s.len(), a.output.display());
            EXIT_OK
        }),
        Command::Verify(a) => cmd_verify(a).map(|(dev, ok)| {
            println!("max deviation {dev:.3e} (tol {:.1e})", a.tol);
            if ok {
                println!("equivalent");
                EXIT_OK
            } else {
                println!("not equivalent");
                EXIT_MISMATCH
            }
        }),
        Command::Gen(a) => cmd_gen(a).map(|_| EXIT_OK),
        Command::BenchDepth(a) => cmd_bench_depth(a).map(|_| EXIT_OK),
        Command::Noise(a) => cmd_noise(a).map(|_| EXIT_OK),
        Command::Infidelity(a) => cmd_infidelity(a).map(|_| EXIT_OK),
        Command::Plot(a) => cmd_plot(a).map(|_| EXIT_OK),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(parse_sizes("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_sizes("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_sizes("5").unwrap(), vec![5]);
        assert_eq!(parse_sizes("1,3").unwrap(), vec![1, 3]);
        assert!(parse_sizes("4..1").is_err());
        assert!(parse_sizes("x").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
