//! Random-restart search for constant solutions of the structure equations.
//!
//! `cargo run --release --example search_solutions -- [restarts] [seed]`

use centroframe::homogeneous::{search_constant_solutions, Family};

fn main() -> centroframe::Result<()> {
    let mut args = std::env::args().skip(1);
    let restarts = args.next().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    for family in [Family::SpaceLike, Family::TimeLike] {
        let t = std::time::Instant::now();
        let report = search_constant_solutions(family, restarts, seed)?;
        println!("{family:?}: {:.2?}", t.elapsed());
        for s in &report.stats {
            println!(
                "  {} equations={} converged {}/{} (mean {:.1} iterations)",
                s.case.tag(),
                s.equations,
                s.converged,
                s.restarts,
                s.mean_iterations
            );
        }
        for c in &report.clusters {
            let named: Vec<String> = c
                .constants
                .case
                .names()
                .iter()
                .zip(c.constants.values)
                .filter(|(_, v)| v.abs() > 1e-9)
                .map(|(n, v)| format!("{n}={v:.6}"))
                .collect();
            println!(
                "  cluster {} members={} residual={:.1e} known={} [{}]",
                c.constants.case.tag(),
                c.members,
                c.residual,
                c.matches_known,
                named.join(", ")
            );
        }
    }
    Ok(())
}
