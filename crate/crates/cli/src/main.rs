use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};
use cohtele::states::{l1_coherence, mixed_qubit};
use cohtele::{Case, Outcome, PureQubit, Resource, Route};
use cohtele_cli::format::{numbers_json, record_json};
use cohtele_cli::verify::{parse_seed, resolve_seed, run_suite, SEED_ENV};
use cohtele_cli::{CliError, ExitCode, RunParams, Suite, SweepParam, SweepSpec};

#[derive(Parser)]
#[command(
    name = "cohtele",
    version,
    about = "One-cbit teleportation of l1 coherence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// l1 coherence of a qubit given by Bloch angles and radius
    Coherence(InputArgs),
    /// Run one protocol instance and print the result as JSON
    Teleport(RunArgs),
    /// Sweep one parameter and write CSV
    Sweep(SweepArgs),
    /// Run a seeded verification suite (exit 4 on failure)
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Polar angle in radians, [0, π]
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    /// Azimuth in radians, taken modulo 2π
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    /// Bloch radius; 1 is a pure state
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// maxent, nonmax:<re>+<im>i, mems:<p1>,<p2>,<p3>,<p4> or werner:<p>
    #[arg(long, default_value = "maxent", value_parser = parse_resource)]
    resource: Resource,
    /// POVM case: I, II or III
    #[arg(long, default_value = "I", value_parser = parse_case)]
    case: Case,
    /// Alice's outcome bit
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    outcome: u8,
    /// direct (partial trace) or theorem (map composition)
    #[arg(long, default_value = "direct", value_parser = parse_route)]
    route: Route,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// theta, phi, n_abs, n_arg, werner_p or mems_p1..mems_p4
    #[arg(long, value_parser = parse_param)]
    param: SweepParam,
    #[arg(long, allow_negative_numbers = true)]
    start: f64,
    #[arg(long, allow_negative_numbers = true)]
    stop: f64,
    /// Number of grid points, both ends included
    #[arg(long)]
    count: usize,
    /// Write CSV here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// theorem, formulas, basis, bounds or all
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    /// Overrides COHTELE_SEED; default 0x5EED_C0DE
    #[arg(long, value_parser = parse_seed_arg)]
    seed: Option<u64>,
}

fn parse_resource(s: &str) -> Result<Resource, String> {
    s.parse().map_err(|e: cohtele::Error| e.to_string())
}

fn parse_case(s: &str) -> Result<Case, String> {
    s.parse().map_err(|e: cohtele::Error| e.to_string())
}

fn parse_route(s: &str) -> Result<Route, String> {
    match s {
        "direct" => Ok(Route::Direct),
        "theorem" => Ok(Route::Theorem),
        other => Err(format!(
            "unknown route {other:?} (expected direct or theorem)"
        )),
    }
}

fn parse_param(s: &str) -> Result<SweepParam, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn parse_seed_arg(s: &str) -> Result<u64, String> {
    parse_seed(s).map_err(|e| e.to_string())
}

impl RunArgs {
    fn params(&self) -> RunParams {
        RunParams {
            theta: self.input.theta,
            phi: self.input.phi,
            radius: self.input.radius,
            resource: self.resource,
            case: self.case,
            outcome: if self.outcome == 0 {
                Outcome::Zero
            } else {
                Outcome::One
            },
            route: self.route,
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let stdout = io::stdout();
    match cli.command {
        Command::Coherence(a) => {
            let q = PureQubit::wrapped(a.theta, a.phi)?;
            let c = l1_coherence(&mixed_qubit(&q, a.radius)?, None)?;
            let json = numbers_json(&[
                ("theta", a.theta),
                ("phi", a.phi),
                ("radius", a.radius),
                ("coherence", c),
            ])?;
            writeln!(stdout.lock(), "{json}")?;
        }
        Command::Teleport(a) => {
            let record = a.params().run(0)?;
            writeln!(stdout.lock(), "{}", record_json(&record)?)?;
        }
        Command::Sweep(a) => {
            let spec = SweepSpec {
                param: a.param,
                start: a.start,
                stop: a.stop,
                count: a.count,
                base: a.run.params(),
            };
            spec.validate()?;
            match &a.output {
                Some(path) => spec.write_csv(BufWriter::new(File::create(path)?))?,
                None => spec.write_csv(stdout.lock())?,
            }
        }
        Command::Verify(a) => {
            let env = std::env::var(SEED_ENV).ok();
            let seed = resolve_seed(a.seed, env.as_deref())?;
            let report = run_suite(a.suite, seed);
            writeln!(stdout.lock(), "{report}")?;
            if !report.passed() {
                return Err(CliError::Verification);
            }
        }
    }
    Ok(ExitCode::Success)
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            if !matches!(e, CliError::Verification) {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    };
    process::exit(code as i32);
}
