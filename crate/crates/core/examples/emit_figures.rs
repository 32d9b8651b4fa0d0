//! Mesh and 3-D projection CSVs of every homogeneous model, ready for a
//! plotting tool.
//!
//! `cargo run --example emit_figures -- figures/`

use centroframe::commands::{run_example, write_example};
use centroframe::homogeneous::MODELS;
use centroframe::report::{Grid, GridSpec};

fn main() -> centroframe::Result<()> {
    let dir = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    let grid = GridSpec {
        u: Grid::new(-2.0, 2.0, 41)?,
        v: Grid::new(-2.0, 2.0, 41)?,
    };
    for model in MODELS {
        let data = run_example(model, &grid)?;
        let files = write_example(&data, &dir)?;
        println!("{model}: {} points, max quadric residual {:.1e}", data.points.len(), data.max_quadric_residual);
        for f in files {
            println!("  {}", f.display());
        }
    }
    Ok(())
}
