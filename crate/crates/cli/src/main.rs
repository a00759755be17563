use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use entlink_cli::{plans, report, scenario, session, sweeps, HarnessError};
use entlink_core::apt::{self, AptError, AptPreset};

/// Desk-scale simulator for drone-based free-space entanglement links:
/// CHSH sessions, link budgets, tracking loops, and relay planning.
#[derive(Parser)]
#[command(name = "entlink", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded CHSH Monte Carlo session from a scenario file or a
    /// builtin (lab, field-day, field-clear-night, field-rainy-night)
    Chsh {
        scenario: String,
        /// Override the scenario seed
        #[arg(long)]
        seed: Option<u64>,
        /// Override the scenario trial count
        #[arg(long)]
        trials: Option<u64>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compute a diffraction-loss table from a sweep file or a builtin
    /// (widearea, local-distance, local-aperture)
    Linkbudget {
        sweep: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Simulate a tracking preset (ground, flight) and export the trace
    Apt {
        preset: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Plan a relay chain from a plan file or the builtin widearea-hap
    Plan {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Verify a stored session report against its own rows
    Report { path: PathBuf },
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), HarnessError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            std::io::stdout()
                .write_all(content.as_bytes())
                .map_err(|source| HarnessError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Chsh {
            scenario,
            seed,
            trials,
            out,
            format,
        } => {
            let mut scenario = scenario::resolve_scenario(&scenario)?;
            if let Some(seed) = seed {
                scenario.seed = seed;
            }
            if let Some(trials) = trials {
                scenario.trials = trials;
            }
            let report = session::run_chsh_session(&scenario)?;
            let body = match format {
                Format::Json => to_json(&report),
                Format::Csv => session::report_csv(&report),
            };
            emit(&out, &body)?;
            eprintln!("{}", session::summarize(&report));
            Ok(())
        }
        Command::Linkbudget { sweep, out, format } => {
            let spec = sweeps::resolve_sweep(&sweep)?;
            let rows = sweeps::run_linkbudget(&spec)?;
            let body = match format {
                Format::Csv => sweeps::sweep_csv(&spec, &rows),
                Format::Json => to_json(&rows),
            };
            emit(&out, &body)
        }
        Command::Apt {
            preset,
            seed,
            out,
            format,
        } => {
            let preset: AptPreset = preset
                .parse()
                .map_err(|e: AptError| HarnessError::Validation(e.to_string()))?;
            let trace = apt::simulate_preset::<f64>(preset, seed).map_err(|e| match e {
                AptError::Divergence { .. } => HarnessError::Divergence(e.to_string()),
                other => HarnessError::Validation(other.to_string()),
            })?;
            let body = match format {
                Format::Csv => {
                    let mut csv = String::from("t_s,coarse_error_rad,fine_error_m\n");
                    for (k, (coarse, fine)) in trace
                        .coarse_error
                        .iter()
                        .zip(trace.fine_error.iter())
                        .enumerate()
                    {
                        csv.push_str(&format!("{},{coarse},{fine}\n", k as f64 * trace.dt));
                    }
                    csv
                }
                Format::Json => {
                    let summary = serde_json::json!({
                        "preset": format!("{preset:?}").to_lowercase(),
                        "seed": seed,
                        "samples": trace.fine_error.len(),
                        "dt_s": trace.dt,
                        "locked_fraction": trace.locked_fraction,
                        "fine_rms_m": apt::rms(&trace.fine_error)
                            .map_err(|e| HarnessError::Validation(e.to_string()))?,
                        "coarse_rms_rad": apt::rms(&trace.coarse_error)
                            .map_err(|e| HarnessError::Validation(e.to_string()))?,
                        "jitter_rms_m": apt::jitter_summary(&trace)
                            .map_err(|e| HarnessError::Validation(e.to_string()))?,
                    });
                    to_json(&summary)
                }
            };
            emit(&out, &body)
        }
        Command::Plan { spec, out, format } => {
            let spec = plans::resolve_plan(&spec)?;
            let plan_report = plans::run_plan(&spec)?;
            let body = match format {
                Format::Json => to_json(&plan_report),
                Format::Csv => {
                    let mut csv = String::from("link,from,to,distance_m,total_db,feasible\n");
                    for (i, link) in plan_report.plan.links.iter().enumerate() {
                        csv.push_str(&format!(
                            "{i},{},{},{},{},{}\n",
                            link.from,
                            link.to,
                            link.distance,
                            link.budget.total_db,
                            plan_report.per_link_feasible[i]
                        ));
                    }
                    csv
                }
            };
            emit(&out, &body)?;
            eprintln!("{}", plans::summarize(&plan_report));
            Ok(())
        }
        Command::Report { path } => {
            let report = report::load_report(&path)?;
            report::verify_report(&report)?;
            eprintln!("{}", session::summarize(&report));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
