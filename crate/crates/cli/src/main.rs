use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use schwinger_circuit::ReadoutBasis;
use schwinger_cli::export::{build_named, render, CircuitFormat, CircuitKind, CircuitSpec};
use schwinger_cli::{compare, gate_report, init_workers, preset, run, CompareOptions, ExperimentConfig, Overrides, Table};
use schwinger_model::ModelParams;

/// Quench experiments on the lattice Schwinger model: simulated circuits,
/// exact oracles and their comparison.
///
/// The worker-thread count is read from SCHWINGER_WORKERS.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a JSON config or a figure preset.
    Run {
        /// JSON config file.
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        config: Option<PathBuf>,
        /// One of fig2 … fig9.
        #[arg(long)]
        preset: Option<String>,
        #[command(flatten)]
        overrides: Overrides,
        /// Print the effective config and exit.
        #[arg(long)]
        dry_run: bool,
    },
    /// Compare a run table with an oracle table; exits non-zero on failure.
    Compare {
        run: PathBuf,
        oracle: PathBuf,
        /// Comma-separated columns (default: every shared value column).
        #[arg(long, value_delimiter = ',')]
        columns: Option<Vec<String>>,
        /// Absolute tolerance for columns without errors.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[arg(long, default_value_t = 3.0)]
        n_sigma: f64,
        /// Fraction of points required inside the σ band.
        #[arg(long, default_value_t = 0.95)]
        coverage: f64,
        /// Write per-point residuals to this CSV.
        #[arg(long)]
        residuals: Option<PathBuf>,
    },
    /// Gate counts of every circuit component; exits non-zero if an asserted row deviates.
    GateReport {
        /// Write the CSV here instead of printing a table.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a circuit as JSON or OpenQASM 2.0.
    ExportCircuit {
        #[arg(value_enum)]
        kind: CircuitKind,
        #[arg(long = "sites", default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0.9, allow_hyphen_values = true)]
        m: f64,
        #[arg(long, default_value_t = 0.0)]
        e: f64,
        #[arg(long, default_value_t = 1)]
        trotter_steps: usize,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long, default_value = "x")]
        basis: String,
        /// Momentum of the correlator circuit.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        q: i64,
        /// Correlator component index 0..8.
        #[arg(long, default_value_t = 0)]
        component: usize,
        #[arg(long, value_enum, default_value_t = CircuitFormat::Json)]
        format: CircuitFormat,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // A closed reader (e.g. `| head`) is not an error.
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> anyhow::Result<bool> {
    let cli = Cli::parse();
    init_workers()?;
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Run { config, preset: name, overrides, dry_run } => {
            let mut cfg = match (config, name) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    ExperimentConfig::from_json(&text)?
                }
                (None, Some(name)) => preset(&name)?,
                (None, None) => bail!("need --config or --preset"),
            };
            overrides.apply(&mut cfg);
            if dry_run {
                cfg.validate()?;
                writeln!(stdout, "{}", serde_json::to_string_pretty(&cfg)?)?;
                return Ok(true);
            }
            let summary = run(&cfg)?;
            for c in &summary.report.checks {
                writeln!(stdout, "{:<20} {}  {}", c.name, if c.pass { "PASS" } else { "FAIL" }, c.detail)?;
            }
            writeln!(stdout, "wrote {} ({:.2} s)", summary.output.display(), summary.manifest.wall_time_s)?;
            Ok(summary.report.pass)
        }
        Command::Compare { run, oracle, columns, tolerance, n_sigma, coverage, residuals } => {
            let opts = CompareOptions { columns, tolerance, n_sigma, coverage, ..Default::default() };
            let report = compare(&Table::read(&run)?, &Table::read(&oracle)?, &opts)?;
            if let Some(path) = residuals {
                std::fs::write(path, report.residuals.to_csv()?)?;
            }
            writeln!(stdout, "{report}")?;
            Ok(report.pass)
        }
        Command::GateReport { out } => {
            let rows = gate_report()?;
            if let Some(path) = out {
                std::fs::write(path, schwinger_cli::gates::gate_report_csv(&rows)?)?;
            } else {
                writeln!(stdout, "{:<34} {:>5} {:>10} {:>10}  status", "component", "N", "count", "table")?;
                for r in &rows {
                    let status = match (r.matches(), r.asserted) {
                        (true, _) => "match",
                        (false, true) => "MISMATCH",
                        (false, false) => "differs (reported)",
                    };
                    let n = r.n.map_or("mode".into(), |n| n.to_string());
                    writeln!(stdout, "{:<34} {:>5} {:>10} {:>10}  {status}", r.component, n, r.counts.to_string(), r.expected.to_string())?;
                }
            }
            Ok(rows.iter().all(|r| !r.asserted || r.matches()))
        }
        Command::ExportCircuit { kind, n, m, e, trotter_steps, t, basis, q, component, format, out } => {
            let params = ModelParams::new(n, m).with_coupling(e).with_trotter_steps(trotter_steps);
            params.validate()?;
            let basis = match basis.to_ascii_lowercase().as_str() {
                "x" => ReadoutBasis::X,
                "y" => ReadoutBasis::Y,
                other => bail!("basis must be x or y, got {other:?}"),
            };
            let c = build_named(&params, &CircuitSpec { kind, t, basis, q, component })?;
            let text = render(&c, format)?;
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => write!(stdout, "{text}")?,
            }
            Ok(true)
        }
    }
}
