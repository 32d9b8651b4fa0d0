use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use centroframe::commands::{
    parse_params, resolve_surface, run_analyze, run_example, run_search, run_verify, search_summary, write_example,
    AnalyzeConfig, VerifyConfig,
};
use centroframe::homogeneous::{Family, Model, SearchConfig};
use centroframe::pipeline::PipelineConfig;
use centroframe::report::{to_json, write_records_csv, Envelope, Grid, GridSpec};
use centroframe::{Error, Result};

#[derive(Parser)]
#[command(name = "centroframe", version, about = "Moving frames for centroaffine surfaces in R^5")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a surface over a (u, v) grid.
    Analyze {
        /// Built-in name (h2, sphere, s21), surface file, or inline "x0; x1; x2; x3; x4".
        #[arg(long)]
        surface: String,
        /// Parameter definitions name=value.
        #[arg(long = "param")]
        params: Vec<String>,
        /// lo:hi:count for u, then optionally for v (defaults to the u grid).
        #[arg(long, num_args = 1, action = ArgAction::Append, default_values = ["-1:1:5"])]
        grid: Vec<String>,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Rank and null-plane threshold.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Directory for the report; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Sample a homogeneous model and write mesh and projection CSVs.
    Example {
        model: String,
        #[arg(long, num_args = 1, action = ArgAction::Append, default_values = ["-2:2:41"])]
        grid: Vec<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the named numerical checks; exits nonzero if any fails.
    Verify {
        /// Group (brackets, structure, search, pipeline, quadrics, exponentials,
        /// gauge, relations, fiber, taylor, numerics) or full check name.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Replaces every upper-bound threshold.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        restarts: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for constant solutions of the structure equations.
    Search {
        /// spacelike, spacelike+, spacelike-, timelike
        case: String,
        #[arg(long, default_value_t = 1000)]
        restarts: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn grid_spec(args: &[String]) -> Result<GridSpec> {
    if args.len() > 2 {
        return Err(Error::Config(format!("--grid takes one or two ranges, got {}", args.len())));
    }
    let u: Grid = args[0].parse()?;
    let v = match args.get(1) {
        Some(s) => s.parse()?,
        None => u,
    };
    Ok(GridSpec { u, v })
}

fn emit(out: Option<&Path>, file: &str, text: &str) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Error::Config(format!("cannot create {}: {e}", dir.display())))?;
            let path = dir.join(file);
            fs::write(&path, text).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::Config(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Analyze {
            surface,
            params,
            grid,
            degree,
            tol,
            format,
            out,
            jobs,
        } => {
            let spec = resolve_surface(&surface, &parse_params(&params)?)?;
            let mut pipeline = PipelineConfig {
                degree,
                ..PipelineConfig::default()
            };
            if degree < centroframe::pipeline::MIN_DEGREE {
                return Err(Error::DegreeTooLow {
                    have: degree,
                    need: centroframe::pipeline::MIN_DEGREE,
                });
            }
            if let Some(t) = tol {
                pipeline.tol.rank = t;
                pipeline.tol.null = t;
            }
            let cfg = AnalyzeConfig {
                surface: spec,
                grid: grid_spec(&grid)?,
                pipeline,
                jobs,
            };
            let report = run_analyze(&cfg)?;
            let stem = format!("analyze_{}", report.surface.name);
            match format {
                Format::Json => emit(out.as_deref(), &format!("{stem}.json"), &to_json(&Envelope::new("analyze", &report)))?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_records_csv(&mut buf, &report.records)?;
                    emit(out.as_deref(), &format!("{stem}.csv"), &String::from_utf8_lossy(&buf))?;
                }
            }
            if report.failures > 0 {
                eprintln!("{} of {} points failed: {:?}", report.failures, report.records.len(), report.failure_kinds());
            }
            Ok(true)
        }
        Command::Example { model, grid, out } => {
            let model: Model = model.parse()?;
            let data = run_example(model, &grid_spec(&grid)?)?;
            let files = write_example(&data, &out)?;
            #[derive(serde::Serialize)]
            struct Summary {
                model: Model,
                points: usize,
                max_quadric_residual: f64,
                files: Vec<String>,
            }
            let summary = Summary {
                model,
                points: data.points.len(),
                max_quadric_residual: data.max_quadric_residual,
                files: files.iter().map(|p| p.display().to_string()).collect(),
            };
            emit(None, "", &to_json(&Envelope::new("example", summary)))?;
            Ok(true)
        }
        Command::Verify {
            checks,
            tol,
            seed,
            restarts,
            jobs,
            out,
        } => {
            let report = run_verify(&VerifyConfig {
                checks,
                tol,
                seed,
                restarts,
                jobs,
            });
            for c in &report.checks {
                eprintln!(
                    "{} {:<40} {:.3e}  {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.measured,
                    c.detail
                );
            }
            emit(out.as_deref(), "verify.json", &to_json(&Envelope::new("verify", &report)))?;
            Ok(report.all_passed)
        }
        Command::Search {
            case,
            restarts,
            seed,
            jobs,
            out,
        } => {
            let family = Family::parse(&case)?;
            let report = run_search(
                family,
                &SearchConfig {
                    restarts,
                    seed,
                    jobs,
                    ..SearchConfig::default()
                },
            )?;
            eprint!("{}", search_summary(&report));
            let file = format!("search_{}.json", case.replace('+', "plus").replace('-', "minus"));
            emit(out.as_deref(), &file, &to_json(&Envelope::new("search", &report)))?;
            Ok(true)
        }
    }
}

/// `--grid -1:1:5 -1:1:5` becomes `--grid=-1:1:5 --grid=-1:1:5`, so that
/// ranges with a leading minus are not read as flags.
fn normalize_grid_args(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut pending = 0;
    let mut taken = 0;
    for a in args {
        if pending > 0 {
            if a.contains(':') && !a.starts_with("--") {
                out.push(format!("--grid={a}"));
                pending -= 1;
                taken += 1;
                continue;
            }
            if taken == 0 {
                out.push("--grid".into());
            }
            pending = 0;
        }
        if a == "--grid" {
            pending = 2;
            taken = 0;
        } else {
            out.push(a);
        }
    }
    if pending > 0 && taken == 0 {
        out.push("--grid".into());
    }
    out
}

fn main() -> ExitCode {
    match run(Cli::parse_from(normalize_grid_args(std::env::args()))) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
