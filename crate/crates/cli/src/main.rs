//! `qnc`: construct members of the counterexample family, verify them, probe
//! the family, and export grids for plotting.
//!
//! Exit codes: 0 when every check passes, 1 when a check or probe fails,
//! 2 on invalid input. Reports go to stdout as JSON; data files only to the
//! paths given.

mod csv;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qnc_core::analysis::{lemma2_probe, marty_probe, GridSpec, Quantity, Region};
use qnc_core::cpoly::ComplexValue;
use qnc_core::dynamic::{sweep, AnyFunction, SweepOptions};
use qnc_core::cpoly::real::{MAX_BITS, MIN_BITS};
use qnc_core::forge::{
    ConstructionConfig, ForgeError, DEFAULT_GRID, DEFAULT_SEED, MAX_GRID, MIN_GRID, NODE_TOL,
};
use qnc_core::io::{FunctionFile, ReportBody, ReportFile};

type C = ComplexValue<f64>;

#[derive(Debug, thiserror::Error)]
enum CliError {
    /// Bad arguments or unreadable input files.
    #[error("{0}")]
    Input(String),
    /// The computation ran but a required property failed.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "qnc", version, about = "Counterexample family f_n = a_n(z^n - 1)e^{p_n(z)}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build f_n and write it as a function file.
    Construct {
        #[arg(short = 'n', value_parser = parse_order)]
        n: u32,
        #[arg(long, default_value_t = 53)]
        precision: u32,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: u32,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Run the inequality, node-jet and max-modulus checks on a function file.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 512)]
        resolution: u32,
    },
    /// Marty blow-up or Lemma-2 decay probe over several members.
    Probe {
        kind: ProbeKind,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
        center: C,
        #[arg(long, default_value_t = 0.1)]
        radius: f64,
        #[arg(long, default_value = "0", value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
        points: Vec<C>,
        #[arg(long, default_value = "2", value_delimiter = ',')]
        orders: Vec<u32>,
    },
    /// Evaluate a quantity over a grid and export it as CSV.
    Grid {
        file: PathBuf,
        #[arg(long, value_parser = parse_quantity)]
        what: Quantity,
        #[arg(long, value_parser = parse_region)]
        region: Region,
        #[arg(long)]
        resolution: u32,
        #[arg(long)]
        export: PathBuf,
        /// Write ln(value) instead of the value.
        #[arg(long)]
        log: bool,
    },
    /// Construct and verify every member of a range of orders.
    Sweep {
        #[arg(long = "n-range", value_parser = parse_range)]
        n_range: (u32, u32),
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 53)]
        precision: u32,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: u32,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 512)]
        resolution: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProbeKind {
    Marty,
    Lemma2,
}

fn parse_order(s: &str) -> Result<u32, String> {
    match s.parse::<i64>() {
        Ok(n) if n >= 1 && n <= u32::MAX as i64 => Ok(n as u32),
        Ok(_) => Err("n must be ≥ 1".into()),
        Err(_) => Err(format!("not an integer: {s:?}")),
    }
}

fn parse_complex(s: &str) -> Result<C, String> {
    s.parse::<C>().map_err(|e| e.to_string())
}

fn parse_quantity(s: &str) -> Result<Quantity, String> {
    s.parse::<Quantity>().map_err(|e| e.to_string())
}

fn parse_region(s: &str) -> Result<Region, String> {
    s.parse::<Region>().map_err(|e| e.to_string())
}

/// `A..B` with `1 ≤ A ≤ B`.
fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a = parse_order(a)?;
    let b = parse_order(b)?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn load(path: &Path) -> Result<AnyFunction, CliError> {
    let file = FunctionFile::load(path).map_err(input)?;
    AnyFunction::from_file(&file).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn names(paths: &[PathBuf]) -> Vec<String> {
    paths.iter().map(|p| p.display().to_string()).collect()
}

fn emit(command: &str, inputs: Vec<String>, passed: bool, report: ReportBody) -> String {
    let file = ReportFile {
        command: command.into(),
        inputs,
        passed,
        report,
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    };
    let json = serde_json::to_string_pretty(&file).expect("report serializes");
    // A closed stdout (say, piped into `head`) is not an error of the run.
    let _ = writeln!(std::io::stdout().lock(), "{json}");
    json
}

fn outcome(passed: bool, what: &str) -> Result<(), CliError> {
    if passed {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{what} failed")))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Construct {
            n,
            precision,
            grid,
            output,
        } => {
            let config = ConstructionConfig {
                precision_bits: precision,
                grid,
                seed: DEFAULT_SEED,
            };
            let f = AnyFunction::construct(n, &config).map_err(|e| match e {
                ForgeError::InvalidOrder
                | ForgeError::OrderTooLarge { .. }
                | ForgeError::InvalidPrecision { .. }
                | ForgeError::GridTooCoarse { .. }
                | ForgeError::GridTooFine { .. } => input(e),
                e => CliError::Failed(format!("construction of f_{n} failed: {e}")),
            })?;
            f.to_file().save(&output).map_err(input)?;
            eprintln!(
                "f_{n}: degree {}, a = {}, c_hat = {}, written to {}",
                f.degree(),
                f.a(),
                f.c_hat(),
                output.display()
            );
            Ok(())
        }
        Command::Verify {
            file,
            samples,
            tol,
            seed,
            resolution,
        } => {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(CliError::Input(format!("invalid tolerance {tol}")));
            }
            let f = load(&file)?;
            let mm = f.max_modulus_check(resolution).map_err(input)?;
            let reports = vec![f.verify_inequality(samples, tol, seed), f.verify_node_jets(NODE_TOL), mm];
            let passed = reports.iter().all(|r| r.passed);
            emit("verify", names(&[file]), passed, ReportBody::Verification(reports));
            outcome(passed, "verification")
        }
        Command::Probe {
            kind,
            files,
            center,
            radius,
            points,
            orders,
        } => {
            let fs = files.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
            let (name, result) = match kind {
                ProbeKind::Marty => ("probe marty", marty_probe(&fs, &center, radius)),
                ProbeKind::Lemma2 => ("probe lemma2", lemma2_probe(&fs, &points, &orders)),
            };
            let result = result.map_err(input)?;
            let passed = result.is_positive();
            emit(name, names(&files), passed, ReportBody::Probe(result));
            outcome(passed, name)
        }
        Command::Grid {
            file,
            what,
            region,
            resolution,
            export,
            log,
        } => {
            let grid = GridSpec::new(region, resolution).map_err(input)?;
            let f = load(&file)?;
            let total = grid.points().len();
            let rows = f.grid_log_values(what, &grid);
            std::fs::write(&export, csv::render(&rows, log))
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", export.display())))?;
            eprintln!(
                "{what} on {region}: {total} grid points, {} excluded, {} rows written to {}",
                total - rows.len(),
                rows.len(),
                export.display()
            );
            Ok(())
        }
        Command::Sweep {
            n_range,
            output,
            precision,
            grid,
            samples,
            tol,
            resolution,
        } => {
            if !(MIN_BITS..=MAX_BITS).contains(&precision) {
                return Err(input(ForgeError::InvalidPrecision { bits: precision }));
            }
            if !(MIN_GRID..=MAX_GRID).contains(&grid) {
                return Err(CliError::Input(format!("grid {grid} outside {MIN_GRID}..={MAX_GRID}")));
            }
            let options = SweepOptions {
                construction: ConstructionConfig {
                    precision_bits: precision,
                    grid,
                    seed: DEFAULT_SEED,
                },
                samples,
                tol,
                resolution,
            };
            let result = sweep(n_range.0..=n_range.1, &options);
            eprintln!("{:>4} {:>6} {:>24} {:>24} {:>24} {:>24}  ok", "n", "deg", "c_hat", "a", "max ineq", "marty");
            let show = |w: &Option<qnc_core::forge::WideReal<f64>>| w.as_ref().map_or("-".into(), |w| w.to_string());
            for row in &result.rows {
                eprintln!(
                    "{:>4} {:>6} {:>24} {:>24} {:>24} {:>24}  {}",
                    row.n,
                    row.degree.map_or("-".into(), |d| d.to_string()),
                    show(&row.c_hat),
                    show(&row.a),
                    show(&row.max_inequality),
                    show(&row.marty_measurement),
                    if row.passed { "yes" } else { row.error.as_deref().unwrap_or("no") }
                );
            }
            let passed = result.passed;
            let range = format!("{}..{}", n_range.0, n_range.1);
            let json = emit("sweep", vec![range], passed, ReportBody::Sweep(result));
            if let Some(path) = output {
                std::fs::write(&path, json + "\n")
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            outcome(passed, "sweep")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
