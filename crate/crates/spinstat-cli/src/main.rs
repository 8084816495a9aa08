//! `spinstat`: verification suites and amplitude evaluation for
//! rotation-based exchange statistics.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on usage
//! or input errors.

mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{SuiteConfig, VerificationReport};
use spinstat::symmetrize::Statistics;
use spinstat::{feynman_amplitude, standard_amplitude, RotationSense, Superposition};
use suites::{run_suite, SuiteParams, SUITE_NAMES};

#[derive(Parser)]
#[command(name = "spinstat", version, about = "Verify exchange statistics built from spin-phase rotations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or all verification suites
    Verify(VerifyArgs),
    /// Compute a transition amplitude between two state fixtures
    Amplitude(AmplitudeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SenseArg {
    Ccw,
    Cw,
}

impl From<SenseArg> for RotationSense {
    fn from(s: SenseArg) -> RotationSense {
        match s {
            SenseArg::Ccw => RotationSense::Counterclockwise,
            SenseArg::Cw => RotationSense::Clockwise,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run, or "all"
    #[arg(long, default_value = "all")]
    suite: String,
    /// Number of particles for randomized instances
    #[arg(long, default_value_t = 3)]
    particles: usize,
    /// Twice the total spin per particle
    #[arg(long = "two-s", default_value_t = 1)]
    two_s: i32,
    /// Orbital dimension per particle
    #[arg(long = "orbital-dim", default_value_t = 2)]
    orbital_dim: usize,
    /// Random trials per randomized check
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Base random seed; per-trial seeds derive from it
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tolerance for amplitude comparisons
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Rotation sense used for every exchange
    #[arg(long, value_enum, default_value_t = SenseArg::Ccw)]
    sense: SenseArg,
    /// Write the JSON report to this path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print one line per check instead of per suite
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Feynman,
    Standard,
}

#[derive(Args)]
struct AmplitudeArgs {
    /// Fixture file for the final state
    #[arg(long)]
    bra: PathBuf,
    /// Fixture file for the initial state
    #[arg(long)]
    ket: PathBuf,
    /// Amplitude formula to use
    #[arg(long, value_enum, default_value_t = MethodArg::Feynman)]
    method: MethodArg,
    /// Rotation sense used for every exchange
    #[arg(long, value_enum, default_value_t = SenseArg::Ccw)]
    sense: SenseArg,
    /// Write the JSON result to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn enum_cap() -> usize {
    std::env::var("SPINSTAT_MAX_N")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(spinstat::DEFAULT_ENUM_CAP)
}

fn verify(args: &VerifyArgs) -> ExitCode {
    if args.two_s < 0 {
        eprintln!("error: --two-s must be non-negative");
        return ExitCode::from(2);
    }
    if args.particles == 0 || args.orbital_dim == 0 {
        eprintln!("error: --particles and --orbital-dim must be at least 1");
        return ExitCode::from(2);
    }
    let cap = enum_cap();
    if args.particles > cap {
        eprintln!("error: --particles {} exceeds the enumeration cap {cap}", args.particles);
        return ExitCode::from(2);
    }
    let names: Vec<&str> = if args.suite == "all" {
        SUITE_NAMES.to_vec()
    } else if SUITE_NAMES.contains(&args.suite.as_str()) {
        vec![args.suite.as_str()]
    } else {
        eprintln!(
            "error: unknown suite '{}'; expected one of: all, {}",
            args.suite,
            SUITE_NAMES.join(", ")
        );
        return ExitCode::from(2);
    };
    let params = SuiteParams {
        particles: args.particles,
        two_s: args.two_s,
        dim: args.orbital_dim,
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
        sense: args.sense.into(),
        cap,
    };
    let mut checks = Vec::new();
    for name in &names {
        let results = run_suite(name, &params).expect("suite name validated above");
        let failed = results.iter().filter(|c| !c.passed).count();
        if args.verbose {
            for c in &results {
                println!("{} {} ({})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
        } else {
            println!(
                "{} {} ({} checks)",
                if failed == 0 { "PASS" } else { "FAIL" },
                name,
                results.len()
            );
        }
        checks.extend(results);
    }
    let config = SuiteConfig {
        suite: args.suite.clone(),
        particles: args.particles,
        two_s: args.two_s,
        orbital_dim: args.orbital_dim,
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
        sense: match args.sense {
            SenseArg::Ccw => "ccw".into(),
            SenseArg::Cw => "cw".into(),
        },
        max_n: params.cap,
    };
    let report = VerificationReport::new(config, checks);
    println!("{} passed, {} failed", report.passed, report.failed);
    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write report to {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn load_fixture(path: &PathBuf) -> Result<Superposition, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Superposition::from_fixture_json(&text)
        .map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn amplitude(args: &AmplitudeArgs) -> ExitCode {
    let (bra, ket) = match (load_fixture(&args.bra), load_fixture(&args.ket)) {
        (Ok(b), Ok(k)) => (b, k),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match args.method {
        MethodArg::Feynman => feynman_amplitude(&bra, &ket, args.sense.into()),
        MethodArg::Standard => {
            standard_amplitude(&bra, &ket, Statistics::SpinDerived(bra.two_s()))
        }
    };
    match result {
        Ok(r) => {
            let json = serde_json::to_string_pretty(&r).expect("serialize amplitude");
            match &args.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, json) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => println!("{json}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Amplitude(args) => amplitude(args),
    }
}
