//! Full invariant extraction at one point, with both Gauss curvature
//! routes and the consistency diagnostics.
//!
//! `cargo run --example invariants_at_point -- sphere 0.3 0.5`

use centroframe::dsl::builtin;
use centroframe::invariants::fiber_invariant_scalars;
use centroframe::pipeline::{analyze_point, PipelineConfig};

fn main() -> centroframe::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "s21".into());
    let u: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.2);
    let v: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.1);
    let spec = builtin(&name).ok_or_else(|| centroframe::Error::Config(format!("no built-in `{name}`")))?;

    let p = analyze_point(&spec, u, v, &PipelineConfig::default())?;
    let inv = &p.invariants;
    println!("{name} at ({u}, {v}): {} epsilon={:?}", inv.kind.name(), inv.epsilon);
    for (n, x) in &inv.h.0 {
        if x.abs() > 1e-9 {
            println!("  {n:<6} {x:+.12}");
        }
    }
    println!("alpha = ({:+.3e}, {:+.3e})", inv.alpha[0], inv.alpha[1]);
    println!("K (Gauss equation) = {:+.12}", inv.k);
    if let Some(k) = p.k_connection {
        println!("K (connection)     = {k:+.12}");
    }
    let [e, f, g] = p.metric.first;
    println!("metric E={e:.9} F={f:.9} G={g:.9} normal plane {}", p.metric.signature);

    let d = &p.diagnostics;
    println!(
        "diagnostics: vanishing {:.1e}  level-2 relations {:.1e}  level-3 relations {:.1e}",
        d.first_vanishing, d.level2_relations, d.level3_relations
    );
    for (n, s) in fiber_invariant_scalars(inv) {
        println!("  fiber scalar {n} = {s:+.9}");
    }
    Ok(())
}
