//! Grid analysis with per-point error isolation, written as JSON and CSV.
//!
//! `cargo run --release --example analyze_grid -- h2 /tmp/out`

use std::collections::BTreeMap;
use std::path::PathBuf;

use centroframe::commands::{resolve_surface, run_analyze, AnalyzeConfig};
use centroframe::pipeline::PipelineConfig;
use centroframe::report::{to_json, write_records_csv, Envelope, Grid, GridSpec};

fn main() -> centroframe::Result<()> {
    let mut args = std::env::args().skip(1);
    let surface = args.next().unwrap_or_else(|| "sphere".into());
    let out = PathBuf::from(args.next().unwrap_or_else(|| std::env::temp_dir().display().to_string()));

    let cfg = AnalyzeConfig {
        surface: resolve_surface(&surface, &BTreeMap::new())?,
        // the sphere's coframe degenerates at v = ±π/2
        grid: GridSpec {
            u: Grid::new(-1.0, 1.0, 5)?,
            v: Grid::new(-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2, 5)?,
        },
        pipeline: PipelineConfig::default(),
        jobs: None,
    };
    let report = run_analyze(&cfg)?;
    println!("{} points, {} failed {:?}", report.records.len(), report.failures, report.failure_kinds());
    for r in report.records.iter().take(7) {
        match (&r.error, r.k_gauss) {
            (Some(e), _) => println!("  ({:+.3}, {:+.3}) {}", r.u, r.v, e.kind),
            (None, Some(k)) => println!("  ({:+.3}, {:+.3}) {} K={k:+.9}", r.u, r.v, r.surface_type.as_deref().unwrap_or("?")),
            (None, None) => {}
        }
    }

    std::fs::create_dir_all(&out).map_err(|e| centroframe::Error::Config(e.to_string()))?;
    let json = out.join(format!("analyze_{}.json", report.surface.name));
    std::fs::write(&json, to_json(&Envelope::new("analyze", &report))).map_err(|e| centroframe::Error::Config(e.to_string()))?;
    let csv = out.join(format!("analyze_{}.csv", report.surface.name));
    let file = std::fs::File::create(&csv).map_err(|e| centroframe::Error::Config(e.to_string()))?;
    write_records_csv(file, &report.records)?;
    println!("wrote {} and {}", json.display(), csv.display());
    Ok(())
}
