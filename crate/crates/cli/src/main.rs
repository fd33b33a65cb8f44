use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand};
use locinfo::{ReportOptions, Variant};
use locinfo_cli::figure::DEFAULT_INTERVALS;
use locinfo_cli::{
    run_figure, run_report, run_sdp_check, run_sweep, Budget, Format, SdpCheckConfig, StateSpec, SweepConfig, Table,
    EXIT_OK, EXIT_SOLVER, EXIT_USAGE,
};

/// Bounds on localizable information for bipartite quantum states.
#[derive(Debug, Parser)]
#[command(name = "bounds", version, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate I, B1, B2, rP, the deficit bounds, ER and EF over a family.
    Sweep(SweepArgs),
    /// Emit the data behind one of the standard figures.
    Figure(FigureArgs),
    /// Solve a PPT fidelity program and certify it with dual bounds.
    SdpCheck(SdpCheckArgs),
    /// Print the bound report of one state as JSON.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    /// werner or isotropic
    #[arg(long)]
    family: String,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long)]
    step: f64,
    /// Comma-separated subset of columns (also accepts g_raw, sigma_star).
    #[arg(long, value_delimiter = ',')]
    columns: Option<Vec<String>>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// One of 1, 2, 3, 4, 7, 8.
    #[arg(long)]
    id: u32,
    /// Grid intervals per curve.
    #[arg(long, default_value_t = DEFAULT_INTERVALS)]
    intervals: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["state", "file"])))]
#[command(allow_negative_numbers = true)]
struct StateArgs {
    /// singlet, max_entangled, product_pure, max_mixed, werner or isotropic
    #[arg(long)]
    state: Option<String>,
    /// JSON state file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Local dimension for max_entangled, max_mixed, werner and isotropic.
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Family parameter for werner and isotropic.
    #[arg(long)]
    param: Option<f64>,
}

impl StateArgs {
    fn spec(&self) -> StateSpec {
        match (&self.state, &self.file) {
            (_, Some(path)) => StateSpec::File(path.clone()),
            (Some(name), None) => StateSpec::Named {
                name: name.clone(),
                d: self.d,
                param: self.param,
            },
            (None, None) => unreachable!("clap requires --state or --file"),
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("budget").required(true).args(["rate", "k"])))]
#[command(allow_negative_numbers = true)]
struct SdpCheckArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Target rate r; sets K = 2^(n (log2(dA dB) - r)).
    #[arg(long)]
    rate: Option<f64>,
    /// Trace budget K of the n-copy program.
    #[arg(long = "K", id = "k")]
    k: Option<f64>,
    /// Use the two-sided constraint -I/Ks <= Π^Γ <= I/Ks.
    #[arg(long, requires = "ks")]
    mixed: bool,
    #[arg(long, requires = "mixed")]
    ks: Option<f64>,
    /// Allowed excess of the primal value over the dual bound.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Number of copies n of the state.
    #[arg(long, default_value_t = 1)]
    copies: u32,
    /// projected-ascent or commutant-lp
    #[arg(long, default_value = "projected-ascent")]
    solver: String,
    /// Random Hermitian operators added to the dual bank.
    #[arg(long, default_value_t = 100)]
    random_duals: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Iteration cap for the projected ascent solver.
    #[arg(long, default_value_t = locinfo::SdpOptions::default().max_iter)]
    max_iter: usize,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Random measurement bases tried for rP (general states only).
    #[arg(long, default_value_t = 50)]
    bases: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(table: &Table, output: &OutputArgs) -> Result<()> {
    let mut w = open_output(output.out.as_ref())?;
    table.write(output.format, &mut w)?;
    w.flush()?;
    Ok(())
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Sweep(a) => {
            let mut config = SweepConfig::new(&a.family, a.d, a.from, a.to, a.step);
            if let Some(columns) = a.columns {
                config.columns = columns.into_iter().map(|c| c.trim().to_string()).collect();
            }
            config.format = a.output.format;
            config.out = a.output.out.clone();
            emit(&run_sweep(&config)?, &a.output)?;
            Ok(EXIT_OK)
        }
        Command::Figure(a) => {
            emit(&run_figure(a.id, a.intervals)?, &a.output)?;
            Ok(EXIT_OK)
        }
        Command::SdpCheck(a) => {
            let budget = match (a.rate, a.k) {
                (Some(r), _) => Budget::Rate(r),
                (None, Some(k)) => Budget::K(k),
                (None, None) => unreachable!("clap requires --rate or --K"),
            };
            let mut config = SdpCheckConfig::new(a.state.spec(), budget);
            if a.mixed {
                config.variant = Variant::Mixed {
                    ks: a.ks.expect("clap requires --ks with --mixed"),
                };
            }
            config.tol = a.tol;
            config.copies = a.copies;
            config.solver = a.solver;
            config.random_duals = a.random_duals;
            config.seed = a.seed;
            config.max_iter = a.max_iter;
            let report = run_sdp_check(&config)?;
            let mut out = io::stdout().lock();
            if a.json {
                serde_json::to_writer_pretty(&mut out, &report)?;
                writeln!(out)?;
            } else {
                out.write_all(report.to_text().as_bytes())?;
            }
            if report.certified {
                return Ok(EXIT_OK);
            }
            if !report.converged {
                eprintln!("error: solver did not converge after {} iterations", report.iterations);
            } else if !report.feasible {
                eprintln!("error: solution violates the constraints beyond tolerance");
            } else {
                eprintln!("error: primal value exceeds the dual bound by {:e}", -report.gap);
            }
            Ok(EXIT_SOLVER)
        }
        Command::Report(a) => {
            let opts = ReportOptions {
                random_bases: a.bases,
                seed: a.seed,
            };
            let value = run_report(&a.state.spec(), opts)?;
            let mut out = io::stdout().lock();
            serde_json::to_writer_pretty(&mut out, &value)?;
            writeln!(out)?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are not errors
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
