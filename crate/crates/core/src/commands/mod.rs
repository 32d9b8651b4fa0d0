//! The four CLI commands as library calls: each returns a serializable
//! report, and the binary only parses flags and writes files.

mod verify;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use verify::{run_verify, Bound, CheckResult, VerifyConfig, VerifyReport, CHECK_GROUPS};

use crate::dsl::{builtin_source, eval_point, load_surface_file, parse_surface_with, SurfaceSpec};
use crate::error::{Error, Result};
use crate::homogeneous::{quadric_residual, search_with, Family, Model, SearchConfig, SearchReport};
use crate::pipeline::{analyze_point, PipelineConfig};
use crate::report::{fmt_f64, GridSpec, PointRecord};

/// Runs `f` on a pool of `jobs` threads, or on the global pool.
pub fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        Some(n) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(f)),
        None => Ok(f()),
    }
}

/// Built-in name, path to a surface file, or inline `x0; x1; x2; x3; x4`.
pub fn resolve_surface(source: &str, params: &BTreeMap<String, f64>) -> Result<SurfaceSpec> {
    if let Some(src) = builtin_source(source) {
        return parse_surface_with(src, source, params);
    }
    let path = Path::new(source);
    if !source.contains(';') && path.is_file() {
        return load_surface_file(path, params);
    }
    if !source.contains(';') {
        return Err(Error::Config(format!(
            "`{source}` is neither a built-in surface, a readable file, nor an inline surface"
        )));
    }
    parse_surface_with(source, "inline", params)
}

/// Parses `name=value` pairs.
pub fn parse_params(items: &[String]) -> Result<BTreeMap<String, f64>> {
    items
        .iter()
        .map(|s| {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("parameter `{s}` is not name=value")))?;
            let x: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("parameter `{s}` has a non-numeric value")))?;
            Ok((k.trim().to_string(), x))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct AnalyzeConfig {
    pub surface: SurfaceSpec,
    pub grid: GridSpec,
    pub pipeline: PipelineConfig,
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceInfo {
    pub name: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub surface: SurfaceInfo,
    pub pipeline: PipelineConfig,
    pub effective_degree: usize,
    pub grid: GridSpec,
    pub failures: usize,
    pub records: Vec<PointRecord>,
}

impl AnalyzeReport {
    /// Counts of each error kind.
    pub fn failure_kinds(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for r in &self.records {
            if let Some(e) = &r.error {
                *out.entry(e.kind.clone()).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Analyzes every grid point; failures are recorded per point.
pub fn run_analyze(cfg: &AnalyzeConfig) -> Result<AnalyzeReport> {
    let points = cfg.grid.points();
    let records: Vec<PointRecord> = with_pool(cfg.jobs, || {
        points
            .par_iter()
            .map(|&(u, v)| match analyze_point(&cfg.surface, u, v, &cfg.pipeline) {
                Ok(p) => PointRecord::from_analysis(&p),
                Err(e) => PointRecord::failed(u, v, &e),
            })
            .collect()
    })?;
    Ok(AnalyzeReport {
        surface: SurfaceInfo {
            name: cfg.surface.name.clone(),
            source: cfg.surface.to_string(),
        },
        pipeline: cfg.pipeline,
        effective_degree: cfg.pipeline.effective_degree(),
        grid: cfg.grid,
        failures: records.iter().filter(|r| !r.ok()).count(),
        records,
    })
}

/// Sampled parametrization of a homogeneous model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleData {
    pub model: Model,
    pub grid: GridSpec,
    /// (u, v, x₀..x₄)
    pub points: Vec<(f64, f64, [f64; 5])>,
    pub max_quadric_residual: f64,
}

pub fn run_example(model: Model, grid: &GridSpec) -> Result<ExampleData> {
    let spec = model.spec();
    let mut points = Vec::with_capacity(grid.len());
    let mut worst: f64 = 0.0;
    for (u, v) in grid.points() {
        let x = eval_point(&spec, u, v)?;
        worst = quadric_residual(model, &x).iter().fold(worst, |m, q| m.max(q.abs()));
        points.push((u, v, x));
    }
    Ok(ExampleData {
        model,
        grid: *grid,
        points,
        max_quadric_residual: worst,
    })
}

/// File name of a projection, e.g. `h2_x1_x2_x0.csv`.
pub fn projection_file_name(model: Model, axes: &[usize; 3]) -> String {
    format!("{}_x{}_x{}_x{}.csv", model.name(), axes[0], axes[1], axes[2])
}

/// Writes `<model>_surface.csv` (u, v, x0..x4) and one file per projection
/// (u, v and the three projected coordinates). Returns the written paths.
pub fn write_example(data: &ExampleData, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::Config(format!("cannot create {}: {e}", dir.display())))?;
    let mut written = Vec::new();
    let surface = dir.join(format!("{}_surface.csv", data.model.name()));
    write_rows(
        &surface,
        &["u", "v", "x0", "x1", "x2", "x3", "x4"],
        data.points.iter().map(|(u, v, x)| {
            let mut row = vec![*u, *v];
            row.extend_from_slice(x);
            row
        }),
    )?;
    written.push(surface);
    for axes in data.model.projections() {
        let path = dir.join(projection_file_name(data.model, axes));
        let names = ["x0", "x1", "x2", "x3", "x4"];
        write_rows(
            &path,
            &["u", "v", names[axes[0]], names[axes[1]], names[axes[2]]],
            data.points.iter().map(|(u, v, x)| vec![*u, *v, x[axes[0]], x[axes[1]], x[axes[2]]]),
        )?;
        written.push(path);
    }
    Ok(written)
}

fn write_rows(path: &Path, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let io = |e: csv::Error| Error::Config(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(io)?;
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row.into_iter().map(fmt_f64)).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Config(e.to_string()))
}

pub fn run_search(family: Family, cfg: &SearchConfig) -> Result<SearchReport> {
    search_with(family, cfg)
}

/// One-line-per-cluster text summary of a search.
pub fn search_summary(report: &SearchReport) -> String {
    let mut s = String::new();
    for st in &report.stats {
        s += &format!(
            "{}: {} equations, {}/{} restarts converged\n",
            st.case.tag(),
            st.equations,
            st.converged,
            st.restarts
        );
    }
    for (k, c) in report.clusters.iter().enumerate() {
        s += &format!(
            "cluster {k} [{}]: {} members, residual {:.2e}, {}\n",
            c.constants.case.tag(),
            c.members,
            c.residual,
            if c.matches_known {
                "matches the homogeneous example".to_string()
            } else {
                format!("no match (distance {:.3e})", c.distance_to_known)
            }
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Grid;

    fn grid(n: usize) -> GridSpec {
        GridSpec {
            u: Grid::new(-1.0, 1.0, n).unwrap(),
            v: Grid::new(-1.0, 1.0, n).unwrap(),
        }
    }

    #[test]
    fn surface_sources() {
        let p = BTreeMap::new();
        assert_eq!(resolve_surface("h2", &p).unwrap().name, "h2");
        assert_eq!(resolve_surface("u; v; 1; 0; u*v", &p).unwrap().name, "inline");
        assert_eq!(resolve_surface("nosuchthing", &p).unwrap_err().kind(), "Config");
    }

    #[test]
    fn params() {
        let p = parse_params(&["a=2".into(), " b = -0.5".into()]).unwrap();
        assert_eq!(p["a"], 2.0);
        assert_eq!(p["b"], -0.5);
        assert!(parse_params(&["a".into()]).is_err());
    }

    #[test]
    fn analyze_is_ordered_and_isolates_failures() {
        let surface = resolve_surface("u; v; 1 + u*v; u^2 + v^2; u^3", &BTreeMap::new()).unwrap();
        let cfg = AnalyzeConfig {
            surface,
            grid: grid(3),
            pipeline: PipelineConfig::default(),
            jobs: Some(2),
        };
        let r = run_analyze(&cfg).unwrap();
        let uv: Vec<(f64, f64)> = r.records.iter().map(|p| (p.u, p.v)).collect();
        assert_eq!(uv, cfg.grid.points());
    }

    #[test]
    fn example_files() {
        let dir = tempfile::tempdir().unwrap();
        let data = run_example(Model::S21, &grid(4)).unwrap();
        let files = write_example(&data, dir.path()).unwrap();
        assert_eq!(files.len(), 6);
        assert!(data.max_quadric_residual < 1e-8);
    }
}
