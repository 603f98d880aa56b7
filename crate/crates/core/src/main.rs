use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use noma_idnc::harness::{emit_results, run_sweep};
use noma_idnc::oracle::{self, InstanceSpec};
use noma_idnc::{Error, ExperimentConfig, Scheme};

#[derive(Parser)]
#[command(name = "noma-idnc", version, about = "NOMA-IDNC broadcast scheduling experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Experiment config file (key = value lines)
    #[arg(long)]
    config: PathBuf,
    /// Extra key=value assignments applied after the file
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep and write results.csv and summary.csv
    Run {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Comma-separated scheme names
        #[arg(long, value_delimiter = ',')]
        schemes: Vec<Scheme>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the solvers against exhaustive references on small instances, `trials` per suite
    OracleCheck {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
}

fn load(args: &ConfigArgs) -> Result<ExperimentConfig, Error> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", args.config.display())))?;
    let mut cfg = ExperimentConfig::parse(&text)?;
    for pair in &args.overrides {
        cfg.set_pair(pair)?;
    }
    if let Some(seed) = args.seed {
        cfg.base_seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cfg: ExperimentConfig, out: &Path) -> Result<(), Error> {
    let rows = run_sweep(&cfg)?;
    let (results, summary) = emit_results(&rows, out)?;
    println!("wrote {} rows to {}", rows.len(), results.display());
    println!("summary in {}", summary.display());
    Ok(())
}

fn oracle_check(cfg: ExperimentConfig) -> Result<(), Error> {
    let point = cfg.points()?[0];
    let spec = InstanceSpec {
        topology: cfg.topology_config(&point),
        max_receivers: 5,
        max_packets: 6,
    };
    let n = cfg.trials;
    let seed = cfg.base_seed;
    let reports = [
        oracle::check_cliques(&spec, n, seed)?,
        oracle::check_two_stage(&spec, n, seed, cfg.strict_sic)?,
        oracle::check_power(&spec, n, seed, 100_000)?,
        oracle::check_schemes(&spec, n, seed, &cfg.scheme_params())?,
    ];
    let mut failed = 0;
    for r in &reports {
        let status = if r.passed() { "ok" } else { "FAILED" };
        println!(
            "{:<10} {status} ({} checked, {} failures)",
            r.name,
            r.checked,
            r.failures.len()
        );
        for f in r.failures.iter().take(5) {
            println!("    {f}");
        }
        failed += r.failures.len();
    }
    if failed > 0 {
        return Err(Error::Invariant(format!("{failed} oracle mismatches")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Run { cfg, schemes, out } => load(&cfg).and_then(|mut c| {
            if !schemes.is_empty() {
                c.schemes = schemes;
            }
            run(c, &out)
        }),
        Command::OracleCheck { cfg } => load(&cfg).and_then(oracle_check),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Invariant(_) | Error::Contract(_) | Error::OracleRefused { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
